#include "bmdist/matrix_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bmdist/errors.hpp"

namespace bmdist {

namespace {

double parse_entry(const std::string& token) {
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0')
        throw ParseError("matrix entry '" + token + "' is not a number");
    return v;
}

}  // namespace

ParsedMatrix parse_matrix(std::istream& in) {
    ParsedMatrix m;
    if (!(in >> m.n)) throw ParseError("matrix file: missing dimension");
    if (m.n < 2) throw ParseError("matrix file: dimension must be >= 2");
    const size_t count = static_cast<size_t>(m.n) * static_cast<size_t>(m.n);
    m.literals.reserve(count);
    std::string token;
    for (size_t k = 0; k < count; ++k) {
        if (!(in >> token))
            throw ParseError("matrix file: expected " + std::to_string(count) + " entries");
        parse_entry(token);  // validate now, keep the exact text
        m.literals.push_back(token);
    }
    if (in >> token) throw ParseError("matrix file: trailing content '" + token + "'");
    return m;
}

ParsedMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open matrix file '" + path + "'");
    return parse_matrix(in);
}

SquareMatrix to_square(const ParsedMatrix& m) {
    SquareMatrix out{m.n, {}};
    out.entries.reserve(m.literals.size());
    for (const std::string& lit : m.literals) out.entries.push_back(parse_entry(lit));
    return out;
}

void write_matrix(std::ostream& out, const SquareMatrix& m) {
    out << m.n << '\n';
    char buf[40];
    for (int i = 0; i < m.n; ++i) {
        for (int j = 0; j < m.n; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", m.at(i, j));
            out << (j ? " " : "") << buf;
        }
        out << '\n';
    }
}

void write_matrix_file(const std::string& path, const SquareMatrix& m) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    write_matrix(out, m);
}

}  // namespace bmdist
