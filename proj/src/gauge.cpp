#include "bmdist/gauge.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "bmdist/errors.hpp"

namespace bmdist {

namespace {

// Cofactor matrix C with C_ij the cofactor of a_ij, closed form for n = 2, 3.
void cofactors_small(const SquareMatrix& a, SquareMatrix& c) {
    if (a.n == 2) {
        c.at(0, 0) = a.at(1, 1);
        c.at(0, 1) = -a.at(1, 0);
        c.at(1, 0) = -a.at(0, 1);
        c.at(1, 1) = a.at(0, 0);
        return;
    }
    auto minor2 = [&](int r0, int r1, int c0, int c1) {
        return a.at(r0, c0) * a.at(r1, c1) - a.at(r0, c1) * a.at(r1, c0);
    };
    for (int i = 0; i < 3; ++i) {
        const int r0 = (i == 0) ? 1 : 0, r1 = (i == 2) ? 1 : 2;
        for (int j = 0; j < 3; ++j) {
            const int c0 = (j == 0) ? 1 : 0, c1 = (j == 2) ? 1 : 2;
            const double m = minor2(r0, r1, c0, c1);
            c.at(i, j) = ((i + j) % 2 == 0) ? m : -m;
        }
    }
}

struct Lu {
    int n = 0;
    std::vector<double> lu;    // packed L\U, row-major
    std::vector<int> perm;     // row permutation: row i of PA is row perm[i] of A
    double det = 0.0;
    bool singular = false;

    double& at(int i, int j) { return lu[static_cast<size_t>(i) * n + j]; }
    double at(int i, int j) const { return lu[static_cast<size_t>(i) * n + j]; }
};

Lu lu_factor(const SquareMatrix& a) {
    Lu f;
    f.n = a.n;
    f.lu = a.entries;
    f.perm.resize(static_cast<size_t>(a.n));
    std::iota(f.perm.begin(), f.perm.end(), 0);
    double det = 1.0;
    for (int k = 0; k < f.n; ++k) {
        int piv = k;
        double best = std::abs(f.at(k, k));
        for (int i = k + 1; i < f.n; ++i) {
            const double v = std::abs(f.at(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best == 0.0) {
            f.singular = true;
            f.det = 0.0;
            return f;
        }
        if (piv != k) {
            for (int j = 0; j < f.n; ++j) std::swap(f.at(k, j), f.at(piv, j));
            std::swap(f.perm[static_cast<size_t>(k)], f.perm[static_cast<size_t>(piv)]);
            det = -det;
        }
        det *= f.at(k, k);
        for (int i = k + 1; i < f.n; ++i) {
            const double m = f.at(i, k) / f.at(k, k);
            f.at(i, k) = m;
            for (int j = k + 1; j < f.n; ++j) f.at(i, j) -= m * f.at(k, j);
        }
    }
    f.det = det;
    return f;
}

// Solve A^T z = e_j using PA = LU, i.e. U^T L^T P z = e_j.
RealVector solve_transposed_unit(const Lu& f, int j) {
    const int n = f.n;
    RealVector w(static_cast<size_t>(n), 0.0);
    w[static_cast<size_t>(j)] = 1.0;
    // forward: U^T u = e_j (U^T is lower triangular)
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < i; ++k) w[static_cast<size_t>(i)] -= f.at(k, i) * w[static_cast<size_t>(k)];
        w[static_cast<size_t>(i)] /= f.at(i, i);
    }
    // backward: L^T v = u (L^T is upper triangular, unit diagonal)
    for (int i = n - 1; i >= 0; --i)
        for (int k = i + 1; k < n; ++k) w[static_cast<size_t>(i)] -= f.at(k, i) * w[static_cast<size_t>(k)];
    // undo the row permutation: z[perm[i]] = v[i]
    RealVector z(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) z[f.perm[static_cast<size_t>(i)]] = w[static_cast<size_t>(i)];
    return z;
}

// Determinant of the minor of (row i, column j), each via its own LU.
double minor_det(const SquareMatrix& a, int i, int j) {
    SquareMatrix m{a.n - 1, std::vector<double>(static_cast<size_t>(a.n - 1) * (a.n - 1))};
    int r = 0;
    for (int ii = 0; ii < a.n; ++ii) {
        if (ii == i) continue;
        int c = 0;
        for (int jj = 0; jj < a.n; ++jj) {
            if (jj == j) continue;
            m.at(r, c) = a.at(ii, jj);
            ++c;
        }
        ++r;
    }
    return lu_factor(m).det;
}

}  // namespace

GaugeData decompose(const SquareMatrix& a) {
    GaugeData g;
    g.n = a.n;
    g.max_abs = a.max_abs_entry();
    g.columns.resize(static_cast<size_t>(a.n));
    for (int j = 0; j < a.n; ++j) g.columns[static_cast<size_t>(j)] = a.column(j);
    g.cofactor_columns.assign(static_cast<size_t>(a.n), RealVector(static_cast<size_t>(a.n)));

    if (a.n <= 3) {
        SquareMatrix c{a.n, std::vector<double>(static_cast<size_t>(a.n) * a.n)};
        cofactors_small(a, c);
        double det = 0.0;
        for (int j = 0; j < a.n; ++j) det += a.at(0, j) * c.at(0, j);
        g.det = det;
        for (int j = 0; j < a.n; ++j)
            for (int i = 0; i < a.n; ++i) g.cofactor_columns[static_cast<size_t>(j)][static_cast<size_t>(i)] = c.at(i, j);
        return g;
    }

    const Lu f = lu_factor(a);
    g.det = f.det;
    const double threshold = 1e-12 * std::pow(g.max_abs, a.n);
    if (!f.singular && std::abs(f.det) > threshold) {
        // y_j = det(A) * z with A^T z = e_j
        for (int j = 0; j < a.n; ++j) {
            RealVector z = solve_transposed_unit(f, j);
            for (double& v : z) v *= f.det;
            g.cofactor_columns[static_cast<size_t>(j)] = std::move(z);
        }
    } else {
        // near-singular: cofactors one minor at a time, still well-defined
        for (int i = 0; i < a.n; ++i)
            for (int j = 0; j < a.n; ++j) {
                const double m = minor_det(a, i, j);
                g.cofactor_columns[static_cast<size_t>(j)][static_cast<size_t>(i)] = ((i + j) % 2 == 0) ? m : -m;
            }
    }
    return g;
}

bool nearly_singular(const GaugeData& g) {
    return std::abs(g.det) <= 1e-12 * std::pow(g.max_abs, g.n);
}

std::vector<SignPattern> sign_patterns(int n) {
    std::vector<SignPattern> out;
    out.reserve(static_cast<size_t>(1) << (n - 1));
    for (std::uint32_t b = 0; b < (1u << (n - 1)); ++b) out.push_back(SignPattern{n, b});
    return out;
}

RealVector vertex_point(const GaugeData& g, const SignPattern& s) {
    RealVector v(static_cast<size_t>(g.n), 0.0);
    for (int i = 0; i < g.n; ++i) {
        const double sg = s.sign(i);
        const RealVector& x = g.columns[static_cast<size_t>(i)];
        for (int k = 0; k < g.n; ++k) v[static_cast<size_t>(k)] += sg * x[static_cast<size_t>(k)];
    }
    return v;
}

double gamma1(const GaugeData& g, Exponent p) {
    double best = 0.0;
    for (std::uint32_t b = 0; b < (1u << (g.n - 1)); ++b)
        best = std::max(best, p_norm(vertex_point(g, SignPattern{g.n, b}), p));
    return best;
}

double gamma2(const GaugeData& g, Exponent p) {
    if (nearly_singular(g)) throw SingularMatrix("gamma2: matrix is singular");
    double best = std::numeric_limits<double>::infinity();
    for (const RealVector& y : g.cofactor_columns)
        best = std::min(best, std::abs(g.det) / dual_norm(y, p));
    return best;
}

GaugePair gauges(const GaugeData& g, Exponent p) {
    return GaugePair{gamma1(g, p), gamma2(g, p)};
}

double objective(const GaugeData& g, Exponent p) {
    if (nearly_singular(g)) throw SingularMatrix("objective: matrix is singular");
    double dual_max = 0.0;
    for (const RealVector& y : g.cofactor_columns) dual_max = std::max(dual_max, dual_norm(y, p));
    return dual_max * gamma1(g, p) / std::abs(g.det);
}

double objective(const SquareMatrix& a, Exponent p) {
    return objective(decompose(a), p);
}

BoundResult distance_upper_from_witness(const SquareMatrix& a, Exponent p) {
    BoundResult r;
    r.p = p;
    r.n = a.n;
    r.value = objective(a, p);
    r.method = Method::witness;
    r.witness = a;
    r.certified = false;
    return r;
}

}  // namespace bmdist
