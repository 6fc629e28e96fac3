#include "bmdist/certify.hpp"

#include <cctype>
#include <cstdint>
#include <sstream>
#include <utility>

#include "bmdist/errors.hpp"

namespace bmdist {

mpq_class rational_from_decimal(const std::string& text) {
    size_t i = 0;
    const size_t len = text.size();
    bool negative = false;
    if (i < len && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';

    std::string digits;
    long frac_len = 0;
    bool any = false;
    for (; i < len && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
        digits += text[i];
        any = true;
    }
    if (i < len && text[i] == '.') {
        ++i;
        for (; i < len && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
            digits += text[i];
            ++frac_len;
            any = true;
        }
    }
    long exponent = 0;
    if (any && i < len && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool exp_neg = false;
        if (i < len && (text[i] == '+' || text[i] == '-')) exp_neg = text[i++] == '-';
        bool exp_any = false;
        for (; i < len && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
            exponent = exponent * 10 + (text[i] - '0');
            exp_any = true;
            if (exponent > 1000000) throw ParseError("decimal exponent too large in '" + text + "'");
        }
        if (!exp_any) throw ParseError("malformed exponent in '" + text + "'");
        if (exp_neg) exponent = -exponent;
    }
    if (!any || i != len) throw ParseError("'" + text + "' is not a decimal literal");

    mpz_class mantissa(digits.empty() ? "0" : digits, 10);
    if (negative) mantissa = -mantissa;
    const long shift = exponent - frac_len;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    mpq_class q = shift < 0 ? mpq_class(mantissa, pow10) : mpq_class(mantissa * pow10);
    q.canonicalize();
    return q;
}

RationalExponent RationalExponent::infinity() {
    RationalExponent p;
    p.infinite_ = true;
    return p;
}

RationalExponent RationalExponent::from_rational(mpq_class value) {
    if (value < 1) throw OutOfRange("exponent must be >= 1");
    RationalExponent p;
    p.value_ = std::move(value);
    return p;
}

RationalExponent RationalExponent::from_decimal(const std::string& text) {
    if (text == "inf" || text == "oo") return infinity();
    return from_rational(rational_from_decimal(text));
}

RationalExponent RationalExponent::from_exponent(Exponent p) {
    if (p.is_infinite()) return infinity();
    return from_rational(mpq_class(p.value()));
}

RationalExponent RationalExponent::conjugate() const {
    if (infinite_) return from_rational(mpq_class(1));
    if (value_ == 1) return infinity();
    return from_rational(value_ / (value_ - 1));
}

Exponent RationalExponent::to_exponent() const {
    return infinite_ ? Exponent::infinity() : Exponent(value_.get_d());
}

ExactMatrix exact_matrix_from_literals(int n, std::vector<std::string> literals) {
    if (n < 2 || literals.size() != static_cast<size_t>(n) * n)
        throw OutOfRange("exact matrix: need n >= 2 and n^2 literals");
    ExactMatrix m;
    m.n = n;
    m.entries.reserve(literals.size());
    for (const std::string& lit : literals) m.entries.push_back(rational_from_decimal(lit));
    m.literals = std::move(literals);
    return m;
}

ExactMatrix exact_matrix_from_integers(int n, const std::vector<long>& values) {
    std::vector<std::string> literals;
    literals.reserve(values.size());
    for (long v : values) literals.push_back(std::to_string(v));
    return exact_matrix_from_literals(n, std::move(literals));
}

ExactMatrix exact_matrix_from_parsed(const ParsedMatrix& parsed) {
    return exact_matrix_from_literals(parsed.n, parsed.literals);
}

namespace {

mpq_class det_recursive(const std::vector<mpq_class>& a, int n) {
    if (n == 1) return a[0];
    if (n == 2) return a[0] * a[3] - a[1] * a[2];
    mpq_class det(0);
    std::vector<mpq_class> minor(static_cast<size_t>(n - 1) * (n - 1));
    for (int j = 0; j < n; ++j) {
        if (a[static_cast<size_t>(j)] != 0) {
            size_t idx = 0;
            for (int i = 1; i < n; ++i)
                for (int k = 0; k < n; ++k)
                    if (k != j) minor[idx++] = a[static_cast<size_t>(i) * n + k];
            const mpq_class sub = det_recursive(minor, n - 1);
            det += (j % 2 == 0 ? 1 : -1) * a[static_cast<size_t>(j)] * sub;
        }
    }
    return det;
}

mpq_class exact_minor(const ExactMatrix& a, int row, int col) {
    std::vector<mpq_class> minor(static_cast<size_t>(a.n - 1) * (a.n - 1));
    size_t idx = 0;
    for (int i = 0; i < a.n; ++i) {
        if (i == row) continue;
        for (int j = 0; j < a.n; ++j)
            if (j != col) minor[idx++] = a.at(i, j);
    }
    return det_recursive(minor, a.n - 1);
}

}  // namespace

mpq_class exact_determinant(const ExactMatrix& a) {
    return det_recursive(a.entries, a.n);
}

std::vector<std::vector<mpq_class>> exact_cofactor_columns(const ExactMatrix& a) {
    std::vector<std::vector<mpq_class>> cols(static_cast<size_t>(a.n),
                                             std::vector<mpq_class>(static_cast<size_t>(a.n)));
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) {
            mpq_class c = exact_minor(a, i, j);
            if ((i + j) % 2 != 0) c = -c;
            cols[static_cast<size_t>(j)][static_cast<size_t>(i)] = std::move(c);
        }
    return cols;
}

ExactMatrix witness_matrix_p17() {
    return exact_matrix_from_integers(3, {13, -24, 24, -24, 13, 24, 24, 24, 13});
}

ExactMatrix witness_matrix_p18() {
    return exact_matrix_from_integers(3, {9, -17, 17, -17, 9, 17, 17, 17, 9});
}

namespace {

bool all_zero(const std::vector<mpq_class>& v) {
    for (const mpq_class& x : v)
        if (x != 0) return false;
    return true;
}

// Enclosure of the p-norm of an exact rational vector. Exact (a point
// interval) for p in {1, inf}; otherwise sum |v_i|^p via interval exp/log
// and one final 1/p power.
Interval norm_interval(const std::vector<mpq_class>& v, const RationalExponent& p, int prec) {
    if (all_zero(v)) return Interval::point_integer(0, prec);
    if (p.is_infinite()) {
        mpq_class m(0);
        for (const mpq_class& x : v) {
            mpq_class ax = abs(x);
            if (ax > m) m = ax;
        }
        return Interval::point_rational(m, prec);
    }
    if (p.is_one()) {
        mpq_class s(0);
        for (const mpq_class& x : v) s += abs(x);
        return Interval::point_rational(s, prec);
    }
    const mpq_class& pv = p.value();
    const mpq_class inv_p = mpq_class(1) / pv;
    Interval sum = Interval::point_integer(0, prec);
    for (const mpq_class& x : v) {
        if (x == 0) continue;
        sum = sum + pow(Interval::point_rational(abs(x), prec), pv);
    }
    return pow(sum, inv_p);
}

Interval objective_interval(const ExactMatrix& a, const RationalExponent& p, int prec) {
    if (a.n < 2) throw OutOfRange("certified objective: need n >= 2");
    const mpq_class det = exact_determinant(a);
    if (det == 0) throw SingularMatrix("certified objective: exact determinant is zero");

    const auto cofactor_cols = exact_cofactor_columns(a);
    const RationalExponent q = p.conjugate();

    Interval dual_max = Interval::point_integer(0, prec);
    for (const auto& y : cofactor_cols) dual_max = max(dual_max, norm_interval(y, q, prec));

    // vertices sum sigma_j x_j over the 2^(n-1) patterns with sigma_1 = +1
    Interval vertex_max = Interval::point_integer(0, prec);
    std::vector<mpq_class> vertex(static_cast<size_t>(a.n));
    for (std::uint64_t bits = 0; bits < (1ull << (a.n - 1)); ++bits) {
        for (int k = 0; k < a.n; ++k) vertex[static_cast<size_t>(k)] = a.at(k, 0);
        for (int j = 1; j < a.n; ++j) {
            const bool negate = (bits >> (j - 1)) & 1ull;
            for (int k = 0; k < a.n; ++k) {
                if (negate)
                    vertex[static_cast<size_t>(k)] -= a.at(k, j);
                else
                    vertex[static_cast<size_t>(k)] += a.at(k, j);
            }
        }
        vertex_max = max(vertex_max, norm_interval(vertex, p, prec));
    }

    const Interval det_abs = Interval::point_rational(abs(det), prec);
    return dual_max * vertex_max / det_abs;
}

Enclosure to_enclosure(const Interval& g) {
    Enclosure out;
    out.lo = g.lo_double();
    out.hi = g.hi_double();
    out.lo_str = g.lo_string();
    out.hi_str = g.hi_string();
    out.precision = g.precision();
    return out;
}

}  // namespace

Enclosure certified_objective_enclosure(const ExactMatrix& a, const RationalExponent& p,
                                        int work_precision) {
    const Interval g = objective_interval(a, p, work_precision);
    if (g.width() > 1e-4)
        throw PrecisionExhausted("certified objective: enclosure wider than 1e-4 at " +
                                 std::to_string(work_precision) + " bits");
    return to_enclosure(g);
}

double certified_objective_upper(const ExactMatrix& a, const RationalExponent& p,
                                 int work_precision) {
    return certified_objective_enclosure(a, p, work_precision).hi;
}

double certified_objective_upper(const ExactMatrix& a, Exponent p, int work_precision) {
    return certified_objective_upper(a, RationalExponent::from_exponent(p), work_precision);
}

Enclosure certified_power_enclosure(long base, const mpq_class& e, int work_precision) {
    return to_enclosure(pow(Interval::point_integer(base, work_precision), e));
}

CertificationReport certify_nine_fifths(int work_precision) {
    return certify_nine_fifths(witness_matrix_p17(), witness_matrix_p18(), work_precision);
}

CertificationReport certify_nine_fifths(const ExactMatrix& witness17, const ExactMatrix& witness18,
                                        int work_precision) {
    CertificationReport report;
    report.precision = work_precision;
    const int prec = work_precision;

    const mpq_class p17(17, 10), p18(9, 5), p19(19, 10), p20(2);
    const mpq_class nine_fifths(9, 5);
    const mpq_class bridge_e_a = mpq_class(1) / p17 - mpq_class(1) / p18;
    const mpq_class bridge_e_b = mpq_class(1) / p18 - mpq_class(1) / p19;
    const mpq_class bridge_e_c = mpq_class(1) / p19 - mpq_class(1) / p20;

    auto emit = [&](std::string name, std::string detail, const Interval& value,
                    const mpq_class& threshold, const std::string& threshold_str, bool strict) {
        CertificationLink link;
        link.name = std::move(name);
        link.detail = std::move(detail);
        link.enclosure = to_enclosure(value);
        link.threshold_str = threshold_str;
        const int cmp = mpfr_cmp_q(value.hi(), threshold.get_mpq_t());
        link.pass = strict ? cmp < 0 : cmp <= 0;
        report.links.push_back(std::move(link));
    };
    auto emit_failure = [&](std::string name, std::string detail, const std::string& threshold_str) {
        CertificationLink link;
        link.name = std::move(name);
        link.detail = std::move(detail);
        link.threshold_str = threshold_str;
        link.pass = false;
        report.links.push_back(std::move(link));
    };

    // the two witness objectives; a failed enclosure is a failed link
    std::vector<Interval> witness_bounds;
    const struct {
        const ExactMatrix* matrix;
        mpq_class p;
        const char* name;
        const char* threshold;
    } witness_cases[] = {
        {&witness17, p17, "witness-1.7", "1.6967"},
        {&witness18, p18, "witness-1.8", "1.7033"},
    };
    for (const auto& item : witness_cases) {
        const std::string detail = std::string("objective of the ") + item.name + " matrix";
        try {
            Interval g = objective_interval(*item.matrix, RationalExponent::from_rational(item.p), prec);
            if (g.width() > 1e-4) throw PrecisionExhausted("enclosure wider than 1e-4");
            emit(item.name, detail, g, rational_from_decimal(item.threshold), item.threshold, false);
            witness_bounds.push_back(std::move(g));
        } catch (const std::exception& e) {
            emit_failure(item.name, detail + ": " + e.what(), item.threshold);
            witness_bounds.push_back(Interval::point_integer(1000, prec));  // poison the products
        }
    }

    const Interval bridge_a = pow(Interval::point_integer(3, prec), bridge_e_a);
    const Interval bridge_b = pow(Interval::point_integer(3, prec), bridge_e_b);
    const Interval bridge_c = pow(Interval::point_integer(3, prec), bridge_e_c);
    emit("bridge-1.7-1.8", "3^(1/1.7 - 1/1.8)", bridge_a, rational_from_decimal("1.0366"), "1.0366", false);
    emit("bridge-1.8-1.9", "3^(1/1.8 - 1/1.9)", bridge_b, rational_from_decimal("1.0327"), "1.0327", false);
    emit("bridge-1.9-2.0", "3^(1/1.9 - 1/2)", bridge_c, rational_from_decimal("1.0294"), "1.0294", false);

    const Interval sqrt3 = sqrt(Interval::point_integer(3, prec));
    emit("product-1.7-1.8", "bound on d(p) for p in [1.7, 1.8]", witness_bounds[0] * bridge_a,
         nine_fifths, "9/5", true);
    emit("product-1.8-1.9", "bound on d(p) for p in [1.8, 1.9]", witness_bounds[1] * bridge_b,
         nine_fifths, "9/5", true);
    emit("product-1.9-2.0", "bound on d(p) for p in [1.9, 2]", sqrt3 * bridge_c, nine_fifths, "9/5",
         true);

    report.all_pass = true;
    for (const CertificationLink& link : report.links) report.all_pass = report.all_pass && link.pass;
    return report;
}

std::string report_to_text(const CertificationReport& report) {
    std::ostringstream out;
    out << "certification at " << report.precision << " bits\n";
    for (const CertificationLink& link : report.links) {
        out << "  [" << (link.pass ? "PASS" : "FAIL") << "] " << link.name << ": " << link.detail;
        if (!link.enclosure.hi_str.empty())
            out << "\n         enclosure [" << link.enclosure.lo_str << ", " << link.enclosure.hi_str
                << "]";
        out << "  threshold " << (link.pass ? "<=" : "vs") << " " << link.threshold_str << "\n";
    }
    out << "  overall: " << (report.all_pass ? "PASS" : "FAIL") << "\n";
    return out.str();
}

}  // namespace bmdist
