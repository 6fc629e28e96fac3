#include "bmdist/matrix.hpp"

#include <cmath>
#include <cstdlib>

#include "bmdist/errors.hpp"

namespace bmdist {

std::vector<double> SquareMatrix::column(int j) const {
    std::vector<double> c(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) c[static_cast<size_t>(i)] = at(i, j);
    return c;
}

double SquareMatrix::max_abs_entry() const {
    double m = 0.0;
    for (double x : entries) m = std::max(m, std::abs(x));
    return m;
}

SquareMatrix identity_matrix(int n) {
    SquareMatrix m{n, std::vector<double>(static_cast<size_t>(n) * n, 0.0)};
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

SquareMatrix matrix_from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    SquareMatrix m;
    m.n = static_cast<int>(rows.size());
    m.entries.reserve(static_cast<size_t>(m.n) * m.n);
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != m.n)
            throw OutOfRange("matrix_from_rows: row length does not match row count");
        m.entries.insert(m.entries.end(), row.begin(), row.end());
    }
    return m;
}

SquareMatrix matrix_from_flat(std::vector<double> flat) {
    int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(flat.size()))));
    if (n < 2 || static_cast<size_t>(n) * n != flat.size())
        throw OutOfRange("matrix_from_flat: length is not a perfect square >= 4");
    return SquareMatrix{n, std::move(flat)};
}

}  // namespace bmdist
