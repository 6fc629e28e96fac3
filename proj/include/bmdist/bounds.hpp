#pragma once

#include <span>
#include <vector>

#include "bmdist/bound_result.hpp"
#include "bmdist/exponent.hpp"

namespace bmdist {

/// d_BM(l_p^n, l_q^n) = n^(1/p - 1/q) for 1 <= p <= q <= 2 or 2 <= p <= q <= inf.
/// Throws SidesStraddleTwo when p < 2 < q (no closed form exists there).
double exact_distance(Exponent p, Exponent q, int n);

/// The planar case: d_BM(l_p^2, l_inf^2) = 2^(1 - 1/p) for p in [1, 2).
double exact_distance_2d(Exponent p);

enum class ReferenceKind { taschuk, youssef, xue_l1, sqrt_pow2 };

/// Named dimension-only bounds:
///   taschuk    sqrt(n^2 - 2n + 2 + 2/(sqrt(n+2) - 1)), n >= 3
///   youssef    (2n)^(5/6)
///   xue_l1     (sqrt(2)+1) sqrt(n), valid for p = 1 only
///   sqrt_pow2  sqrt(n) for n a power of two, valid for every p
double reference_bound(int n, ReferenceKind kind);

/// Closed-form bound on d(p) for p in [1, 2]:
///   (4^p + 2)^(1/p) * (2*3^(p/(p-1)) + 1)^((p-1)/p) / 10,
/// continuously extended to 9/5 at p = 1.
double analytic_lp_bound(Exponent p);

// Diagnostics behind the analytic bound. With f(p) = p * ln(10 * bound(p)),
// the bound equals exp(r(p))/10 where r = f/p; w = p f' - f has r' = w/p^2.
double analytic_bound_log(double p);     // f
double analytic_bound_dlog(double p);    // f'
double analytic_bound_d2log(double p);   // f''
double analytic_bound_r(double p);       // f(p)/p
double analytic_bound_w(double p);       // p f'(p) - f(p)

/// Grid verification that r has a single interior minimum on (1, 2] and
/// stays below ln 18 up to the crossover at p = 1.7.
struct AnalyticBoundReport {
    std::vector<double> grid;        // p values in (1, 2]
    std::vector<double> r_values;
    std::vector<double> w_values;
    double sign_change_lo = 0.0;     // bracket for the root of w,
    double sign_change_hi = 0.0;     // refined by 50 bisection steps
    double r_max_on_range = 0.0;     // max of r over grid points <= 1.7
    bool verdict = false;            // w strictly increasing, one sign change,
                                     // and r <= ln 18 on (1, 1.7]
};

AnalyticBoundReport analytic_bound_report(double grid_step = 1e-3);

struct ChainAnchor {
    Exponent p{};
    double bound = 1.0;
};

/// Certified anchor bounds at p = 1.7, 1.8 and the exact value at p = 2.
std::vector<ChainAnchor> default_chain_anchors();

/// Multiplicativity: d(p) <= b0 * 3^|1/p0 - 1/p| for each anchor (p0, b0);
/// returns the smallest such bound. Anchors and p must lie in [1, 2].
BoundResult chain_bound(Exponent p, std::span<const ChainAnchor> anchors);

/// Best available upper bound on d(p) for n = 3: the minimum of the exact
/// formula (p >= 2), the chained anchors and the analytic bound (p <= 2).
/// Always <= 9/5.
BoundResult best_upper_bound(Exponent p);

/// Piece-diameter bound for partitioning a diameter-1 subset of l_p^3 into
/// 8 pieces: best_upper_bound(p)/2, never more than 0.9.
double borsuk_bound(Exponent p);

/// CSV export (header "p,value,method,certified") for a sweep grid.
void write_sweep_csv(std::ostream& out, std::span<const Exponent> grid);

}  // namespace bmdist
