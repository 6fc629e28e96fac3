#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bmdist {

/// An exponent p in [1, inf]. Infinity is a distinguished case, never a
/// large float, so conjugation and the endpoint norms are exact.
class Exponent {
  public:
    Exponent() = default;  // self-dual p = 2
    explicit Exponent(double value);

    static Exponent infinity() noexcept;
    /// Accepts a decimal literal >= 1, or "inf" / "oo".
    static Exponent parse(std::string_view text);

    bool is_infinite() const noexcept { return infinite_; }
    /// Finite value, or +inf for the infinite case.
    double value() const noexcept;
    /// 1/p, exactly 0 at p = inf.
    double reciprocal() const noexcept { return infinite_ ? 0.0 : 1.0 / value_; }

    std::string str() const;

    friend bool operator==(Exponent a, Exponent b) noexcept {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }

  private:
    double value_ = 2.0;
    bool infinite_ = false;
};

/// Conjugate exponent q with 1/p + 1/q = 1; exact at p in {1, 2, inf}.
Exponent conjugate(Exponent p) noexcept;

using RealVector = std::vector<double>;

/// (sum |v_i|^p)^(1/p) for finite p, max |v_i| for p = inf. Entries are
/// rescaled by the largest magnitude before exponentiation so the optimizer
/// can explore large entries without overflow.
double p_norm(std::span<const double> v, Exponent p);

/// Norm of the functional x -> v.x on l_p, i.e. p_norm(v, conjugate(p)).
double dual_norm(std::span<const double> v, Exponent p);

}  // namespace bmdist
