#include "bmdist/interval.hpp"

#include <array>
#include <utility>

#include "bmdist/errors.hpp"

namespace bmdist {

Interval::Interval(int precision_bits) : precision_(precision_bits) {
    if (precision_bits < MPFR_PREC_MIN || precision_bits > 1 << 24)
        throw OutOfRange("interval precision out of range");
    mpfr_init2(lo_, precision_bits);
    mpfr_init2(hi_, precision_bits);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& other) : precision_(other.precision_) {
    mpfr_init2(lo_, precision_);
    mpfr_init2(hi_, precision_);
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : precision_(other.precision_) {
    mpfr_init2(lo_, precision_);
    mpfr_init2(hi_, precision_);
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(Interval other) noexcept {
    std::swap(precision_, other.precision_);
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
    return *this;
}

Interval::~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Interval Interval::point_rational(const mpq_class& q, int precision_bits) {
    Interval r(precision_bits);
    mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
    return r;
}

Interval Interval::point_integer(long v, int precision_bits) {
    Interval r(precision_bits);
    mpfr_set_si(r.lo_, v, MPFR_RNDD);
    mpfr_set_si(r.hi_, v, MPFR_RNDU);
    return r;
}

Interval Interval::point_double(double v, int precision_bits) {
    Interval r(precision_bits);
    mpfr_set_d(r.lo_, v, MPFR_RNDD);
    mpfr_set_d(r.hi_, v, MPFR_RNDU);
    return r;
}

double Interval::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Interval::width() const {
    mpfr_t w;
    mpfr_init2(w, precision_);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    const double out = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return out;
}

bool Interval::contains(double v) const {
    return mpfr_cmp_d(lo_, v) <= 0 && mpfr_cmp_d(hi_, v) >= 0;
}

namespace {

std::string format_mpfr(mpfr_srcptr x, int digits, mpfr_rnd_t rnd) {
    char* out = nullptr;
    // %R*e consumes the rounding-mode argument before the value
    if (mpfr_asprintf(&out, "%.*R*e", digits, rnd, x) < 0) return "?";
    std::string s(out);
    mpfr_free_str(out);
    return s;
}

}  // namespace

std::string Interval::lo_string(int digits) const { return format_mpfr(lo_, digits, MPFR_RNDD); }
std::string Interval::hi_string(int digits) const { return format_mpfr(hi_, digits, MPFR_RNDU); }

bool Interval::hi_at_most(const mpq_class& threshold) const {
    return mpfr_cmp_q(hi_, threshold.get_mpq_t()) <= 0;
}

Interval operator+(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision_, b.precision_));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Interval operator-(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision_, b.precision_));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
}

Interval operator*(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision_, b.precision_));
    const std::array<std::pair<mpfr_srcptr, mpfr_srcptr>, 4> pairs{{
        {a.lo_, b.lo_}, {a.lo_, b.hi_}, {a.hi_, b.lo_}, {a.hi_, b.hi_}}};
    mpfr_t t;
    mpfr_init2(t, r.precision_);
    bool first = true;
    for (const auto& [x, y] : pairs) {
        mpfr_mul(t, x, y, MPFR_RNDD);
        if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
        mpfr_mul(t, x, y, MPFR_RNDU);
        if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
        first = false;
    }
    mpfr_clear(t);
    return r;
}

Interval operator/(const Interval& a, const Interval& b) {
    if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0)
        throw OutOfRange("interval division: divisor contains zero");
    Interval r(std::max(a.precision_, b.precision_));
    const std::array<std::pair<mpfr_srcptr, mpfr_srcptr>, 4> pairs{{
        {a.lo_, b.lo_}, {a.lo_, b.hi_}, {a.hi_, b.lo_}, {a.hi_, b.hi_}}};
    mpfr_t t;
    mpfr_init2(t, r.precision_);
    bool first = true;
    for (const auto& [x, y] : pairs) {
        mpfr_div(t, x, y, MPFR_RNDD);
        if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
        mpfr_div(t, x, y, MPFR_RNDU);
        if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
        first = false;
    }
    mpfr_clear(t);
    return r;
}

Interval exp(const Interval& a) {
    Interval r(a.precision_);
    mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
    return r;
}

Interval log(const Interval& a) {
    if (mpfr_sgn(a.lo_) <= 0) throw OutOfRange("interval log: requires lo > 0");
    Interval r(a.precision_);
    mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
    return r;
}

Interval sqrt(const Interval& a) {
    if (mpfr_sgn(a.lo_) < 0) throw OutOfRange("interval sqrt: requires lo >= 0");
    Interval r(a.precision_);
    mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
    return r;
}

Interval max(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision_, b.precision_));
    mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Interval min(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision_, b.precision_));
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Interval pow(const Interval& a, const mpq_class& e) {
    Interval exponent = Interval::point_rational(e, a.precision());
    return exp(exponent * log(a));
}

}  // namespace bmdist
