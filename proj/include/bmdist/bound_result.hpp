#pragma once

#include <optional>
#include <string_view>

#include "bmdist/exponent.hpp"
#include "bmdist/matrix.hpp"

namespace bmdist {

/// How an upper bound on d(p) was obtained.
enum class Method {
    exact,       // closed form n^(1/p - 1/q)
    analytic_lp, // closed-form bound on [1, 2]
    witness,     // g_p(A) of a supplied matrix
    optimizer,   // derivative-free search result
    chained,     // anchor bound times a closed-form bridge
    taschuk,
    youssef,
    xue_l1,
    sqrt_pow2,
};

std::string_view method_name(Method m);
Method method_from_name(std::string_view name);

/// An upper bound on d(p) = d_BM(l_p^n, l_inf^n).
struct BoundResult {
    Exponent p{};
    int n = 3;
    double value = 1.0;
    Method method = Method::exact;
    std::optional<SquareMatrix> witness;
    /// Set only by the certify module or an exact formula.
    bool certified = false;
};

}  // namespace bmdist
