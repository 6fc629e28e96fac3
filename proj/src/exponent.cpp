#include "bmdist/exponent.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "bmdist/errors.hpp"

namespace bmdist {

Exponent::Exponent(double value) : value_(value) {
    if (!std::isfinite(value) || value < 1.0)
        throw OutOfRange("exponent must be a finite value >= 1 (use Exponent::infinity())");
}

Exponent Exponent::infinity() noexcept {
    Exponent p;
    p.infinite_ = true;
    return p;
}

Exponent Exponent::parse(std::string_view text) {
    if (text == "inf" || text == "oo") return infinity();
    std::string buf(text);
    char* end = nullptr;
    double v = std::strtod(buf.c_str(), &end);
    if (end == buf.c_str() || *end != '\0')
        throw ParseError("cannot parse exponent '" + buf + "'");
    if (std::isinf(v) && v > 0) return infinity();
    return Exponent(v);
}

double Exponent::value() const noexcept {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

std::string Exponent::str() const {
    if (infinite_) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value_);
    return buf;
}

Exponent conjugate(Exponent p) noexcept {
    if (p.is_infinite()) return Exponent(1.0);
    const double v = p.value();
    if (v == 1.0) return Exponent::infinity();
    if (v == 2.0) return Exponent(2.0);
    // long double keeps the round trip conjugate(conjugate(p)) near 1 ulp
    const long double lv = v;
    return Exponent(static_cast<double>(lv / (lv - 1.0L)));
}

namespace {

// |a|^e via exp(e ln a) with the 0^e := 0 guard; a >= 0.
inline double pow_abs(double a, double e) {
    if (a == 0.0) return 0.0;
    return std::exp(e * std::log(a));
}

}  // namespace

double p_norm(std::span<const double> v, Exponent p) {
    if (p.is_infinite()) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }
    double scale = 0.0;
    for (double x : v) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) return 0.0;
    const double pv = p.value();
    double sum = 0.0;
    for (double x : v) sum += pow_abs(std::abs(x) / scale, pv);
    return scale * pow_abs(sum, 1.0 / pv);
}

double dual_norm(std::span<const double> v, Exponent p) {
    return p_norm(v, conjugate(p));
}

}  // namespace bmdist
