#include "bmdist/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "bmdist/errors.hpp"

namespace bmdist {

double exact_distance(Exponent p, Exponent q, int n) {
    if (n < 1) throw OutOfRange("exact_distance: dimension must be >= 1");
    if (p.value() > q.value()) throw OutOfRange("exact_distance: requires p <= q");
    const bool low_side = q.value() <= 2.0;
    const bool high_side = p.value() >= 2.0;
    if (!low_side && !high_side)
        throw SidesStraddleTwo("exact_distance: p < 2 < q has no closed form");
    return std::pow(static_cast<double>(n), p.reciprocal() - q.reciprocal());
}

double exact_distance_2d(Exponent p) {
    if (p.is_infinite() || p.value() >= 2.0)
        throw OutOfRange("exact_distance_2d: requires p in [1, 2); use exact_distance for p >= 2");
    return std::pow(2.0, 1.0 - p.reciprocal());
}

double reference_bound(int n, ReferenceKind kind) {
    switch (kind) {
        case ReferenceKind::taschuk:
            if (n < 3) throw OutOfRange("reference_bound: taschuk requires n >= 3");
            return std::sqrt(n * (static_cast<double>(n) - 2.0) + 2.0 + 2.0 / (std::sqrt(n + 2.0) - 1.0));
        case ReferenceKind::youssef:
            if (n < 2) throw OutOfRange("reference_bound: requires n >= 2");
            return std::pow(2.0 * n, 5.0 / 6.0);
        case ReferenceKind::xue_l1:
            if (n < 2) throw OutOfRange("reference_bound: requires n >= 2");
            return (std::sqrt(2.0) + 1.0) * std::sqrt(static_cast<double>(n));
        case ReferenceKind::sqrt_pow2: {
            if (n < 2 || (n & (n - 1)) != 0)
                throw OutOfRange("reference_bound: sqrt_pow2 requires n a power of two");
            return std::sqrt(static_cast<double>(n));
        }
    }
    throw OutOfRange("reference_bound: unknown kind");
}

double analytic_lp_bound(Exponent p) {
    if (p.is_infinite() || p.value() < 1.0 || p.value() > 2.0)
        throw OutOfRange("analytic_lp_bound: requires p in [1, 2]");
    const double pv = p.value();
    if (pv == 1.0) return 1.8;
    // 3^(p/(p-1)) overflows near 1; fold one factor of 3 out of the second term
    const double t = pv / (pv - 1.0);
    const double term1 = std::pow(std::pow(4.0, pv) + 2.0, 1.0 / pv);
    const double term2 = 3.0 * std::pow(2.0 + std::pow(3.0, -t), (pv - 1.0) / pv);
    return term1 * term2 / 10.0;
}

namespace {
const double kLn3 = std::log(3.0);
const double kLn4 = std::log(4.0);
}  // namespace

double analytic_bound_log(double p) {
    const double t = p / (p - 1.0);
    return std::log(2.0 + std::pow(4.0, p)) + p * kLn3 + (p - 1.0) * std::log(2.0 + std::pow(3.0, -t));
}

double analytic_bound_dlog(double p) {
    const double t = p / (p - 1.0);
    const double f4 = std::pow(4.0, p);
    // last term -> 0 as p -> 1+ (the pow overflows to inf, giving exactly 0)
    return f4 / (2.0 + f4) * kLn4 + std::log(2.0 + std::pow(3.0, -t)) + kLn3 +
           kLn3 / ((p - 1.0) * (2.0 * std::pow(3.0, t) + 1.0));
}

double analytic_bound_d2log(double p) {
    const double f4 = std::pow(4.0, p);
    const double u = std::pow(3.0, -p / (p - 1.0));
    const double first = 2.0 * kLn4 * kLn4 * f4 / ((2.0 + f4) * (2.0 + f4));
    const double second = 2.0 * kLn3 * kLn3 / std::pow(p - 1.0, 3) * u / ((2.0 + u) * (2.0 + u));
    return first + second;
}

double analytic_bound_r(double p) { return analytic_bound_log(p) / p; }

double analytic_bound_w(double p) { return p * analytic_bound_dlog(p) - analytic_bound_log(p); }

AnalyticBoundReport analytic_bound_report(double grid_step) {
    if (!(grid_step > 0.0) || grid_step > 0.01)
        throw OutOfRange("analytic_bound_report: grid_step must be in (0, 0.01]");
    AnalyticBoundReport rep;
    const long count = std::lround(1.0 / grid_step);
    rep.grid.reserve(static_cast<size_t>(count));
    for (long k = 1; k <= count; ++k)
        rep.grid.push_back(k == count ? 2.0 : 1.0 + static_cast<double>(k) * grid_step);

    bool increasing = true;
    int crossings = 0;
    double prev_w = 0.0;
    rep.r_max_on_range = -std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < rep.grid.size(); ++k) {
        const double p = rep.grid[k];
        const double w = analytic_bound_w(p);
        const double r = analytic_bound_r(p);
        rep.w_values.push_back(w);
        rep.r_values.push_back(r);
        if (k > 0) {
            if (w <= prev_w) increasing = false;
            if (prev_w < 0.0 && w >= 0.0) {
                ++crossings;
                rep.sign_change_lo = rep.grid[k - 1];
                rep.sign_change_hi = p;
            }
        }
        if (p <= 1.7 + 1e-12) rep.r_max_on_range = std::max(rep.r_max_on_range, r);
        prev_w = w;
    }
    for (int it = 0; it < 50 && crossings == 1; ++it) {
        const double mid = 0.5 * (rep.sign_change_lo + rep.sign_change_hi);
        (analytic_bound_w(mid) < 0.0 ? rep.sign_change_lo : rep.sign_change_hi) = mid;
    }
    rep.verdict = increasing && crossings == 1 && rep.r_max_on_range <= std::log(18.0);
    return rep;
}

std::vector<ChainAnchor> default_chain_anchors() {
    return {
        ChainAnchor{Exponent(1.7), 1.6967},
        ChainAnchor{Exponent(1.8), 1.7033},
        ChainAnchor{Exponent(2.0), std::sqrt(3.0)},
    };
}

BoundResult chain_bound(Exponent p, std::span<const ChainAnchor> anchors) {
    if (anchors.empty()) throw EmptyAnchors("chain_bound: no anchors supplied");
    if (p.is_infinite() || p.value() < 1.0 || p.value() > 2.0)
        throw OutOfRange("chain_bound: requires p in [1, 2]");
    double best = std::numeric_limits<double>::infinity();
    for (const ChainAnchor& a : anchors) {
        if (a.p.is_infinite() || a.p.value() < 1.0 || a.p.value() > 2.0)
            throw OutOfRange("chain_bound: anchors must lie in [1, 2]");
        best = std::min(best, a.bound * std::pow(3.0, std::abs(a.p.reciprocal() - p.reciprocal())));
    }
    BoundResult r;
    r.p = p;
    r.n = 3;
    r.value = best;
    r.method = Method::chained;
    return r;
}

BoundResult best_upper_bound(Exponent p) {
    BoundResult best;
    best.p = p;
    best.n = 3;
    best.value = std::numeric_limits<double>::infinity();
    auto consider = [&](double value, Method method, bool certified) {
        if (value < best.value) {
            best.value = value;
            best.method = method;
            best.certified = certified;
        }
    };
    if (p.value() >= 2.0)
        consider(exact_distance(p, Exponent::infinity(), 3), Method::exact, true);
    if (!p.is_infinite() && p.value() <= 2.0) {
        const auto anchors = default_chain_anchors();
        consider(chain_bound(p, anchors).value, Method::chained, false);
        consider(analytic_lp_bound(p), Method::analytic_lp, false);
    }
    return best;
}

double borsuk_bound(Exponent p) { return best_upper_bound(p).value / 2.0; }

void write_sweep_csv(std::ostream& out, std::span<const Exponent> grid) {
    out << "p,value,method,certified\n";
    char buf[64];
    for (Exponent p : grid) {
        const BoundResult b = best_upper_bound(p);
        std::snprintf(buf, sizeof buf, "%.12g", b.value);
        out << p.str() << ',' << buf << ',' << method_name(b.method) << ','
            << (b.certified ? "true" : "false") << '\n';
    }
}

}  // namespace bmdist
