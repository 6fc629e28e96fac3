#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bmdist/matrix.hpp"

namespace bmdist {

/// A matrix as read from text: dimension plus the n^2 entries in row-major
/// order. The literal strings are preserved so the certifier can re-parse
/// them exactly.
struct ParsedMatrix {
    int n = 0;
    std::vector<std::string> literals;
};

/// Format: first token n (>= 2), then n^2 decimal entries separated by
/// whitespace. Throws ParseError on malformed input.
ParsedMatrix parse_matrix(std::istream& in);
ParsedMatrix read_matrix_file(const std::string& path);

SquareMatrix to_square(const ParsedMatrix& m);

/// Writes "n" on the first line, then n rows of entries (round-trip exact).
void write_matrix(std::ostream& out, const SquareMatrix& m);
void write_matrix_file(const std::string& path, const SquareMatrix& m);

}  // namespace bmdist
