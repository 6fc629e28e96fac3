#pragma once

#include <initializer_list>
#include <vector>

namespace bmdist {

/// Dense n x n real matrix, row-major.
struct SquareMatrix {
    int n = 0;
    std::vector<double> entries;

    double at(int i, int j) const { return entries[static_cast<size_t>(i) * n + j]; }
    double& at(int i, int j) { return entries[static_cast<size_t>(i) * n + j]; }

    std::vector<double> column(int j) const;
    double max_abs_entry() const;
};

SquareMatrix identity_matrix(int n);
SquareMatrix matrix_from_rows(std::initializer_list<std::initializer_list<double>> rows);
/// Reshapes a flat row-major vector; the length must be a perfect square >= 4.
SquareMatrix matrix_from_flat(std::vector<double> flat);

}  // namespace bmdist
