#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "bmdist/exponent.hpp"
#include "bmdist/interval.hpp"
#include "bmdist/matrix_io.hpp"

namespace bmdist {

/// Parses a decimal literal ("-24", "1.5", "2.4e-2") into an exact rational.
mpq_class rational_from_decimal(const std::string& text);

/// An exponent held as an exact rational (or infinity), so conjugation and
/// the certified norms introduce no rounding at all.
class RationalExponent {
  public:
    static RationalExponent infinity();
    static RationalExponent from_rational(mpq_class value);
    static RationalExponent from_decimal(const std::string& text);
    /// Every double is an exact rational; the certificate then covers that
    /// precise value.
    static RationalExponent from_exponent(Exponent p);

    bool is_infinite() const noexcept { return infinite_; }
    bool is_one() const { return !infinite_ && value_ == 1; }
    const mpq_class& value() const { return value_; }
    RationalExponent conjugate() const;
    Exponent to_exponent() const;

  private:
    RationalExponent() = default;
    mpq_class value_{1};
    bool infinite_ = false;
};

/// A matrix whose entries are exact rationals, parsed from decimal literals
/// with no floating conversion.
struct ExactMatrix {
    int n = 0;
    std::vector<mpq_class> entries;         // row-major
    std::vector<std::string> literals;      // source text, preserved

    const mpq_class& at(int i, int j) const { return entries[static_cast<size_t>(i) * n + j]; }
};

ExactMatrix exact_matrix_from_literals(int n, std::vector<std::string> literals);
ExactMatrix exact_matrix_from_integers(int n, const std::vector<long>& values);
/// The exact view of a parsed matrix file (its literal strings, unrounded).
ExactMatrix exact_matrix_from_parsed(const ParsedMatrix& parsed);

mpq_class exact_determinant(const ExactMatrix& a);
/// Column j holds the cofactors (A_1j, ..., A_nj), computed exactly.
std::vector<std::vector<mpq_class>> exact_cofactor_columns(const ExactMatrix& a);

/// The built-in integer witnesses whose objectives certify the anchor
/// bounds at p = 1.7 and p = 1.8.
ExactMatrix witness_matrix_p17();
ExactMatrix witness_matrix_p18();

struct Enclosure {
    double lo = 0.0;
    double hi = 0.0;
    std::string lo_str;
    std::string hi_str;
    int precision = 0;
    double width() const { return hi - lo; }
};

/// Rigorous enclosure of g_p(A): determinant, cofactors and sign-pattern
/// vertices in exact rational arithmetic; fractional powers through outward-
/// rounded interval exp/log at work_precision bits. For p in {1, inf} the
/// whole computation stays rational and the enclosure is a point.
/// Throws SingularMatrix on exact det = 0 and PrecisionExhausted if the
/// enclosure is wider than 1e-4.
Enclosure certified_objective_enclosure(const ExactMatrix& a, const RationalExponent& p,
                                        int work_precision = 128);

/// Upper endpoint of the enclosure: a mathematically guaranteed bound
/// g_p(A) <= U, hence d(p) <= U.
double certified_objective_upper(const ExactMatrix& a, const RationalExponent& p,
                                 int work_precision = 128);
double certified_objective_upper(const ExactMatrix& a, Exponent p, int work_precision = 128);

/// Enclosure of base^e for an exact rational exponent (the chain bridges
/// 3^(1/p0 - 1/p1)).
Enclosure certified_power_enclosure(long base, const mpq_class& e, int work_precision = 128);

struct CertificationLink {
    std::string name;
    std::string detail;
    Enclosure enclosure;
    std::string threshold_str;  // exact decimal the upper endpoint must not exceed
    bool pass = false;
};

struct CertificationReport {
    int precision = 0;
    std::vector<CertificationLink> links;
    bool all_pass = false;
};

/// Certifies the full 9/5 bound chain on [1.7, 2]: the two witness bounds,
/// the three bridge constants, and the three products below 9/5. Failures
/// are report entries, never exceptions.
CertificationReport certify_nine_fifths(int work_precision = 128);
CertificationReport certify_nine_fifths(const ExactMatrix& witness17, const ExactMatrix& witness18,
                                        int work_precision);

std::string report_to_text(const CertificationReport& report);

}  // namespace bmdist
