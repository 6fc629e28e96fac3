#pragma once

#include <cstdint>
#include <vector>

#include "bmdist/bound_result.hpp"
#include "bmdist/exponent.hpp"
#include "bmdist/matrix.hpp"

namespace bmdist {

/// Determinant, column vectors and cofactor columns of a matrix A.
/// The cofactor column y_j = (A_1j, ..., A_nj) is normal to the facet
/// hyperplanes of the parallelepiped A([-1,1]^n); y_i . x_j = det A * delta_ij.
struct GaugeData {
    int n = 0;
    double det = 0.0;
    double max_abs = 0.0;  // largest |a_ij|, for the singularity threshold
    std::vector<RealVector> columns;           // x_i
    std::vector<RealVector> cofactor_columns;  // y_j
};

/// Computes det and cofactor columns; closed form for n <= 3, LU with
/// partial pivoting and per-column solves otherwise. Never throws; a
/// singular A simply yields det = 0 and is flagged downstream.
GaugeData decompose(const SquareMatrix& a);

/// Scale-free singularity test: |det| <= 1e-12 * max|a_ij|^n.
bool nearly_singular(const GaugeData& g);

/// One choice of signs sigma in {-1,+1}^n with sigma_1 fixed to +1
/// (norms are symmetric, so half the vertex set suffices).
struct SignPattern {
    int n = 0;
    std::uint32_t bits = 0;  // bit i-1 set => sigma_i = -1, i >= 1
    int sign(int i) const { return (i == 0 || !((bits >> (i - 1)) & 1u)) ? 1 : -1; }
};

/// All 2^(n-1) sign patterns.
std::vector<SignPattern> sign_patterns(int n);

/// The parallelepiped vertex sum sigma_i x_i.
RealVector vertex_point(const GaugeData& g, const SignPattern& s);

/// Outer gauge: the smallest gamma with A([-1,1]^n) inside gamma * B_p,
/// i.e. the largest p-norm over the vertices.
double gamma1(const GaugeData& g, Exponent p);

/// Inner gauge: the largest gamma with gamma * B_p inside A([-1,1]^n),
/// i.e. min_i |det A| / dual_norm(y_i, p). Throws SingularMatrix.
double gamma2(const GaugeData& g, Exponent p);

struct GaugePair {
    double gamma1 = 0.0;
    double gamma2 = 0.0;
};

GaugePair gauges(const GaugeData& g, Exponent p);

/// g_p(A) = max_i max_sigma dual_norm(y_i) * p_norm(sum sigma_j x_j) / |det A|.
/// Equals gamma1/gamma2; an upper bound on d(p) for every nonsingular A.
double objective(const GaugeData& g, Exponent p);
double objective(const SquareMatrix& a, Exponent p);

/// Wraps objective(A, p) as a BoundResult carrying A as the witness.
BoundResult distance_upper_from_witness(const SquareMatrix& a, Exponent p);

}  // namespace bmdist
