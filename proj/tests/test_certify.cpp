#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "bmdist/certify.hpp"
#include "bmdist/errors.hpp"
#include "bmdist/gauge.hpp"
#include "bmdist/interval.hpp"
#include "oracles.hpp"

using namespace bmdist;

TEST_CASE("decimal literals become exact rationals") {
    CHECK(rational_from_decimal("13") == mpq_class(13));
    CHECK(rational_from_decimal("-24") == mpq_class(-24));
    CHECK(rational_from_decimal("1.5") == mpq_class(3, 2));
    CHECK(rational_from_decimal("2.4e-2") == mpq_class(3, 125));
    CHECK(rational_from_decimal("0.1") == mpq_class(1, 10));
    CHECK(rational_from_decimal("+12e1") == mpq_class(120));
    CHECK_THROWS_AS(rational_from_decimal("abc"), ParseError);
    CHECK_THROWS_AS(rational_from_decimal("1.2.3"), ParseError);
    CHECK_THROWS_AS(rational_from_decimal(""), ParseError);
    CHECK_THROWS_AS(rational_from_decimal("1e"), ParseError);
}

TEST_CASE("rational exponents conjugate exactly") {
    const RationalExponent p17 = RationalExponent::from_decimal("1.7");
    CHECK(p17.value() == mpq_class(17, 10));
    CHECK(p17.conjugate().value() == mpq_class(17, 7));
    CHECK(RationalExponent::from_decimal("1").conjugate().is_infinite());
    CHECK(RationalExponent::infinity().conjugate().value() == 1);
    CHECK(RationalExponent::from_decimal("2").conjugate().value() == 2);
    CHECK_THROWS_AS(RationalExponent::from_decimal("0.5"), OutOfRange);
}

TEST_CASE("interval arithmetic encloses exact results") {
    const int prec = 64;
    const Interval third = Interval::point_integer(1, prec) / Interval::point_integer(3, prec);
    CHECK(third.lo_double() <= 1.0 / 3.0);
    CHECK(third.hi_double() >= 1.0 / 3.0);
    CHECK(third.width() < 1e-18);

    // exp(log(x)) must contain x
    std::mt19937_64 rng(31);
    for (int it = 0; it < 200; ++it) {
        const long num = 1 + static_cast<long>(rng() % 1000);
        const long den = 1 + static_cast<long>(rng() % 1000);
        const mpq_class q(num, den);
        const Interval x = Interval::point_rational(q, prec);
        const Interval round_trip = exp(log(x));
        CHECK(mpfr_cmp_q(round_trip.lo(), q.get_mpq_t()) <= 0);
        CHECK(mpfr_cmp_q(round_trip.hi(), q.get_mpq_t()) >= 0);
    }

    // compound expressions contain the sampled results; operands are small
    // multiples of 1/64 so the double-computed references are themselves exact
    for (int it = 0; it < 200; ++it) {
        const double a = static_cast<double>(static_cast<long long>(rng() % 2001) - 1000) / 64.0;
        const double b = static_cast<double>(static_cast<long long>(rng() % 2001) - 1000) / 64.0;
        const Interval ia = Interval::point_double(a, prec);
        const Interval ib = Interval::point_double(b, prec);
        CHECK((ia * ib).contains(a * b));
        CHECK((ia - ib).contains(a - b));
        CHECK((ia + ib).contains(a + b));
        CHECK(min(ia, ib).contains(std::min(a, b)));
        CHECK(max(ia, ib).contains(std::max(a, b)));
    }

    CHECK_THROWS_AS(log(Interval::point_integer(0, prec)), OutOfRange);
    CHECK_THROWS_AS(Interval::point_integer(1, prec) / Interval::point_integer(0, prec), OutOfRange);
}

TEST_CASE("interval sqrt(3) is the real thing") {
    const Interval s = sqrt(Interval::point_integer(3, 128));
    CHECK(s.lo_double() <= std::sqrt(3.0));
    CHECK(s.hi_double() >= std::sqrt(3.0));
    CHECK(s.width() < 1e-30);
}

TEST_CASE("exact determinants and cofactors") {
    const ExactMatrix w17 = witness_matrix_p17();
    CHECK(exact_determinant(w17) == mpq_class(-47915));
    CHECK(exact_determinant(witness_matrix_p18()) == mpq_class(-16900));
    const auto cols = exact_cofactor_columns(w17);
    // cofactor identity in exact arithmetic
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            mpq_class dot(0);
            for (int k = 0; k < 3; ++k) dot += cols[static_cast<size_t>(i)][static_cast<size_t>(k)] * w17.at(k, j);
            CHECK(dot == (i == j ? mpq_class(-47915) : mpq_class(0)));
        }

    const ExactMatrix singular = exact_matrix_from_integers(3, {1, 2, 3, 4, 5, 6, 7, 8, 9});
    CHECK(exact_determinant(singular) == 0);
    CHECK_THROWS_AS(certified_objective_upper(singular, RationalExponent::from_decimal("2")),
                    SingularMatrix);
}

TEST_CASE("certified witness bounds") {
    const Enclosure e17 =
        certified_objective_enclosure(witness_matrix_p17(), RationalExponent::from_decimal("1.7"));
    CHECK(e17.hi <= 1.6967);
    CHECK(e17.lo >= 1.6966);
    CHECK(e17.width() <= 1e-10);

    const Enclosure e18 =
        certified_objective_enclosure(witness_matrix_p18(), RationalExponent::from_decimal("1.8"));
    CHECK(e18.hi <= 1.7033);
    CHECK(e18.lo >= 1.7032);

    // the Exponent overload certifies the binary-rational p nearest 1.7
    CHECK(certified_objective_upper(witness_matrix_p17(), Exponent(1.7)) <= 1.6967);
}

TEST_CASE("matrix files feed the certifier without rounding") {
    std::istringstream in("3\n0.1 0 0\n0 0.1 0\n0 0 0.1\n");
    const ExactMatrix m = exact_matrix_from_parsed(parse_matrix(in));
    CHECK(m.at(0, 0) == mpq_class(1, 10));  // not the nearest double
    CHECK(exact_determinant(m) == mpq_class(1, 1000));
    // scale invariance holds exactly through the certifier
    const ExactMatrix id = exact_matrix_from_integers(3, {1, 0, 0, 0, 1, 0, 0, 0, 1});
    const Enclosure scaled = certified_objective_enclosure(m, RationalExponent::from_decimal("1.5"));
    const Enclosure unit = certified_objective_enclosure(id, RationalExponent::from_decimal("1.5"));
    CHECK(scaled.hi == doctest::Approx(unit.hi).epsilon(1e-12));
}

TEST_CASE("certified identity objective at p = 2") {
    const ExactMatrix id = exact_matrix_from_integers(3, {1, 0, 0, 0, 1, 0, 0, 0, 1});
    const Enclosure e = certified_objective_enclosure(id, RationalExponent::from_decimal("2"));
    CHECK(e.lo <= std::sqrt(3.0));
    CHECK(e.hi >= std::sqrt(3.0));
    CHECK(e.hi - std::sqrt(3.0) <= 1e-10);
}

TEST_CASE("exact arithmetic at p in {1, inf}") {
    std::mt19937_64 rng(32);
    int done = 0;
    while (done < 25) {
        const auto rows = oracle::random_int_matrix(rng, 3, 9);
        std::vector<long> flat;
        for (const auto& row : rows)
            for (double v : row) flat.push_back(static_cast<long>(v));
        const ExactMatrix m = exact_matrix_from_integers(3, flat);
        if (exact_determinant(m) == 0) continue;
        ++done;
        for (const char* ptext : {"1", "inf"}) {
            const RationalExponent p = RationalExponent::from_decimal(ptext);
            const Enclosure e = certified_objective_enclosure(m, p);
            // integer data and endpoint norms stay rational all the way: the
            // enclosure collapses to one value up to the final double rounding
            const double reference = oracle::objective(rows, ptext[0] == '1' ? 1.0 : oracle::kInf);
            CHECK(e.hi - e.lo <= 4.5e-16 * reference);
            CHECK(e.lo <= reference * (1.0 + 1e-15));
            CHECK(e.hi >= reference * (1.0 - 1e-15));
            CHECK(e.hi == doctest::Approx(reference).epsilon(1e-14));
        }
    }
}

TEST_CASE("enclosures contain the floating objective") {
    std::mt19937_64 rng(33);
    int done = 0;
    while (done < 100) {
        const auto rows = oracle::random_int_matrix(rng, 3, 9);
        std::vector<long> flat;
        std::vector<double> dflat;
        for (const auto& row : rows)
            for (double v : row) {
                flat.push_back(static_cast<long>(v));
                dflat.push_back(v);
            }
        const ExactMatrix m = exact_matrix_from_integers(3, flat);
        if (exact_determinant(m) == 0) continue;
        ++done;
        for (const char* ptext : {"1", "1.5", "2"}) {
            const Enclosure e = certified_objective_enclosure(m, RationalExponent::from_decimal(ptext));
            const double floating = objective(matrix_from_flat(dflat), Exponent::parse(ptext));
            // the float value carries ~1e-15 rounding of its own
            CHECK(floating >= e.lo - 1e-9 * std::abs(e.lo));
            CHECK(floating <= e.hi + 1e-9 * std::abs(e.hi));
            CHECK(floating >= e.hi - 1e-6);
            CHECK(e.width() <= 1e-6);
        }
    }
}

TEST_CASE("doubling the precision never raises the upper bound") {
    std::mt19937_64 rng(34);
    int done = 0;
    while (done < 10) {
        const auto rows = oracle::random_int_matrix(rng, 3, 9);
        std::vector<long> flat;
        for (const auto& row : rows)
            for (double v : row) flat.push_back(static_cast<long>(v));
        const ExactMatrix m = exact_matrix_from_integers(3, flat);
        if (exact_determinant(m) == 0) continue;
        ++done;
        const RationalExponent p = RationalExponent::from_decimal("1.5");
        const double u64 = certified_objective_upper(m, p, 64);
        const double u128 = certified_objective_upper(m, p, 128);
        const double u256 = certified_objective_upper(m, p, 256);
        CHECK(u128 <= u64);
        CHECK(u256 <= u128);
    }
}

TEST_CASE("too little precision fails loudly, never falsely") {
    CHECK_THROWS_AS(
        certified_objective_enclosure(witness_matrix_p17(), RationalExponent::from_decimal("1.7"), 8),
        PrecisionExhausted);
    // 32 bits is already enough for a ~1e-8 enclosure
    const CertificationReport r = certify_nine_fifths(32);
    CHECK(r.all_pass);
}

TEST_CASE("the full nine-fifths certification") {
    const CertificationReport report = certify_nine_fifths(128);
    CHECK(report.all_pass);
    REQUIRE(report.links.size() == 8);
    for (const CertificationLink& link : report.links) CHECK(link.pass);

    CHECK(report.links[0].enclosure.hi <= 1.6967);
    CHECK(report.links[1].enclosure.hi <= 1.7033);
    CHECK(report.links[2].enclosure.hi <= 1.0366);
    CHECK(report.links[3].enclosure.hi <= 1.0327);
    CHECK(report.links[4].enclosure.hi <= 1.0294);
    // product values pinned by the interval evaluation itself
    CHECK(report.links[5].enclosure.hi == doctest::Approx(1.7586454534870012).epsilon(1e-12));
    CHECK(report.links[6].enclosure.hi == doctest::Approx(1.7588199075289117).epsilon(1e-12));
    CHECK(report.links[7].enclosure.hi == doctest::Approx(1.7828567508958272).epsilon(1e-12));
    for (int k = 5; k <= 7; ++k) CHECK(report.links[static_cast<size_t>(k)].enclosure.hi < 1.8);

    const std::string text = report_to_text(report);
    CHECK(text.find("overall: PASS") != std::string::npos);
}

TEST_CASE("negative control: a bad witness fails its link") {
    const ExactMatrix id = exact_matrix_from_integers(3, {1, 0, 0, 0, 1, 0, 0, 0, 1});
    const CertificationReport report = certify_nine_fifths(witness_matrix_p17(), id, 128);
    CHECK(!report.all_pass);
    CHECK(report.links[0].pass);   // witness at 1.7 is untouched
    CHECK(!report.links[1].pass);  // 3^(1/1.8) = 1.8411 > 1.7033
    CHECK(!report.links[6].pass);  // 1.8411 * 1.0327 > 9/5
    CHECK(report.links[2].pass);   // bridges are independent of the witnesses
}
