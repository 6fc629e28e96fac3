#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace bmdist {

/// A closed interval [lo, hi] of reals carried at a fixed MPFR working
/// precision. Every operation rounds outward, so the result always encloses
/// the exact value; that is the entire rigor contract of the certifier.
class Interval {
  public:
    explicit Interval(int precision_bits);
    Interval(const Interval& other);
    Interval(Interval&& other) noexcept;
    Interval& operator=(Interval other) noexcept;
    ~Interval();

    static Interval point_rational(const mpq_class& q, int precision_bits);
    static Interval point_integer(long v, int precision_bits);
    static Interval point_double(double v, int precision_bits);

    int precision() const noexcept { return precision_; }
    mpfr_srcptr lo() const noexcept { return lo_; }
    mpfr_srcptr hi() const noexcept { return hi_; }

    double lo_double() const;  // rounded down
    double hi_double() const;  // rounded up
    double width() const;      // hi - lo, rounded up
    bool contains(double v) const;

    /// Decimal renderings rounded outward (lo down, hi up).
    std::string lo_string(int digits = 20) const;
    std::string hi_string(int digits = 20) const;

    /// Certified comparison against an exact rational threshold.
    bool hi_at_most(const mpq_class& threshold) const;

    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);
    /// Throws OutOfRange if the divisor interval contains zero.
    friend Interval operator/(const Interval& a, const Interval& b);

    friend Interval exp(const Interval& a);
    /// Throws OutOfRange unless a.lo > 0.
    friend Interval log(const Interval& a);
    friend Interval sqrt(const Interval& a);
    friend Interval max(const Interval& a, const Interval& b);
    friend Interval min(const Interval& a, const Interval& b);

    /// x^e for x > 0 and an exact rational exponent, via exp(e * log x).
    friend Interval pow(const Interval& a, const mpq_class& e);

  private:
    mpfr_t lo_;
    mpfr_t hi_;
    int precision_;
};

}  // namespace bmdist
