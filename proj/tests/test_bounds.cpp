#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fieldcount/bounds/exponents.hpp"
#include "fieldcount/bounds/galois_chain.hpp"
#include "fieldcount/bounds/sqfree.hpp"
#include "fieldcount/errors.hpp"

using namespace fieldcount;
using namespace fieldcount::bounds;
using algebra::Integer;
using algebra::Rational;

namespace {

Integer pow_int(long b, unsigned long e) {
    Integer out = 1;
    for (unsigned long i = 0; i < e; ++i) out *= b;
    return out;
}

Integer choose(unsigned long a, unsigned long b) {
    Integer out = 1;
    for (unsigned long i = 1; i <= b; ++i) {
        out *= a - b + i;
        out /= i;
    }
    return out;
}

// r from exp(k^2) <= n, c from an upward scan.
PaperParameters oracle_parameters(unsigned long n) {
    unsigned long r = 0;
    while (std::exp(double((r + 1) * (r + 1))) <= double(n)) ++r;
    Integer fact = 1;
    for (unsigned long i = 2; i <= r; ++i) fact *= i;
    unsigned long c = 1;
    while (pow_int(long(c), r) < fact * n) ++c;
    return {r, c};
}

Rational oracle_exponent(unsigned long n, unsigned long r, unsigned long c) {
    Rational q(Integer(4 * c) * choose(r + 4 * c, r), Integer(n - 2));
    q.canonicalize();
    return q;
}

// Full grid scan, no monotonicity assumptions.
Optimum oracle_optimum(unsigned long n, unsigned long rmax, unsigned long cmax) {
    Optimum best;
    bool found = false;
    for (unsigned long r = 1; r <= rmax; ++r)
        for (unsigned long c = 1; c <= cmax; ++c) {
            if (2 * choose(r + c, r) <= n) continue;
            Rational e = oracle_exponent(n, r, c);
            e.canonicalize();
            if (!found || e < best.exponent) best = {r, c, e}, found = true;
        }
    return best;
}

std::uint64_t brute_count_mod(long m, auto&& f) {
    std::uint64_t cnt = 0;
    for (long a = 0; a < m; ++a)
        for (long b = 0; b < m; ++b)
            if (f(a, b) % m == 0) ++cnt;
    return cnt;
}

}  // namespace

TEST_CASE("bounds: schmidt and lower exponents") {
    CHECK(schmidt_exponent(3) == Rational(5, 4));
    CHECK(schmidt_exponent(6) == 2);
    CHECK(schmidt_exponent(2) == 1);
    CHECK(lower_exponent(3) == Rational(11, 18));
    CHECK(lower_exponent(4) == Rational(9, 16));
    for (unsigned long n = 3; n < 200; ++n) {
        CHECK(lower_exponent(n + 1) < lower_exponent(n));
        CHECK(lower_exponent(n) > Rational(1, 2));
    }
    CHECK_THROWS_AS(schmidt_exponent(1), DomainError);
    CHECK_THROWS_AS(lower_exponent(2), DomainError);
}

TEST_CASE("bounds: default parameters and exponent") {
    auto p3 = paper_parameters(3);
    CHECK(p3.r == 1);
    CHECK(p3.c == 3);
    CHECK(rc_exponent(3, 1, 3) == 156);
    auto p100 = paper_parameters(100);
    CHECK(p100.r == 2);
    CHECK(p100.c == 15);
    CHECK(rc_exponent(100, 2, 15) == Rational(56730, 49));
    auto rep = exponent_report(1000000, false);
    CHECK(rep.paper_exponent < schmidt_exponent(1000000));
    CHECK(rep.schmidt == Rational(500001, 2));
    CHECK(rep.best_known == rep.paper_exponent);
    CHECK(exponent_report(3, false).best_known == Rational(5, 4));
    CHECK_THROWS_AS(paper_parameters(2), DomainError);
}

TEST_CASE("bounds: parameters match an independent scan and the chain holds") {
    for (unsigned long n = 3; n <= 3000; ++n) {
        const auto p = paper_parameters(n);
        const auto o = oracle_parameters(n);
        REQUIRE(p.r == o.r);
        REQUIRE(p.c == o.c);
        REQUIRE(check_chain(n, p).all());
        REQUIRE(rc_exponent(n, p.r, p.c) == oracle_exponent(n, p.r, p.c));
    }
    for (unsigned long n : {10000UL, 54598UL, 54599UL, 100000UL, 1000000UL}) {
        const auto p = paper_parameters(n);
        const auto o = oracle_parameters(n);
        CHECK(p.r == o.r);
        CHECK(p.c == o.c);
        CHECK(check_chain(n, p).all());
    }
}

TEST_CASE("bounds: optimizer is the exact grid minimizer") {
    const auto o = optimize_exponent(3, 3, 8);
    CHECK(o.r == 1);
    CHECK(o.c == 1);
    CHECK(o.exponent == 20);
    for (unsigned long n : {3UL, 4UL, 7UL, 20UL, 55UL, 100UL, 500UL, 2000UL}) {
        for (unsigned long rmax : {1UL, 2UL, 4UL})
            for (unsigned long cmax : {5UL, 12UL, 40UL}) {
                const auto oracle = oracle_optimum(n, rmax, cmax);
                if (oracle.exponent == 0) {
                    CHECK_THROWS_AS(optimize_exponent(n, rmax, cmax), DomainError);
                    continue;
                }
                const auto got = optimize_exponent(n, rmax, cmax);
                CHECK(got.exponent == oracle.exponent);
                CHECK(got.r == oracle.r);
                CHECK(got.c == oracle.c);
            }
        const auto p = paper_parameters(n);
        const auto def = optimize_exponent(n);
        CHECK(def.exponent <= rc_exponent(n, p.r, p.c));
        CHECK(optimize_exponent(n, p.r + 6, 2 * p.c).exponent <= def.exponent);
    }
    CHECK_THROWS_AS(optimize_exponent(100, 1, 3), DomainError);
}

TEST_CASE("bounds: exponent shape is bounded") {
    double worst = 0;
    for (unsigned long n = 3; n <= 10000; n += 7) worst = std::max(worst, exponent_shape(exponent_report(n, false).paper_exponent, n));
    for (unsigned long n : {100000UL, 1000000UL})
        worst = std::max(worst, exponent_shape(exponent_report(n, false).paper_exponent, n));
    CHECK(worst < 6.0);
    CHECK(exponent_shape(Rational(156), 3) == doctest::Approx(std::log(156.0) / std::sqrt(std::log(3.0))));
}

TEST_CASE("bounds: galois bookkeeping examples") {
    CHECK(beta(5) == Rational(3, 8));
    CHECK(beta(4) == Rational(1, 2));
    CHECK(beta(2) == 1);

    GaloisChainSpec top{{GaloisStep::abelian(2, 2, 6)}};
    auto b = galois_exponent(top);
    CHECK(b.at_most_three_eighths);
    CHECK(b.certified == Rational(3, 8));
    // (r/2 + 3/8)/4 versus (2/6 + 3/8)/4
    CHECK(b.upper == Rational(11, 32));

    auto z2 = galois_exponent({{GaloisStep::z2_refined(6)}});
    CHECK(z2.upper == Rational(17, 48));
    CHECK(z2.at_most_three_eighths);

    auto na = galois_exponent({{GaloisStep::non_abelian(60, 60, 1)}});
    const double want = 0.25 + 1.0 / (2.0 * std::sqrt(60.0)) + 1.0 / 60.0;
    CHECK(Rational(na.upper - na.lower).get_d() <= 1e-6);
    CHECK(na.lower.get_d() <= want + 1e-12);
    CHECK(na.upper.get_d() >= want - 1e-12);
    CHECK(na.at_most_three_eighths);

    CHECK(galois_exponent({{GaloisStep::s3()}}).upper == Rational(1, 3));
    CHECK(galois_exponent({{GaloisStep::nilpotent_order8()}}).upper == Rational(1, 4));
}

TEST_CASE("bounds: every admissible abelian step is below 3/8 outside the excluded cases") {
    for (unsigned long p : {2UL, 3UL, 5UL, 7UL, 11UL, 13UL})
        for (unsigned long r = 1; r <= 8; ++r) {
            if (std::pow(double(p), double(r)) > 5000) break;
            for (unsigned long q = 2; q <= 60; ++q) {
                const auto s = GaloisStep::abelian(p, r, q);
                const auto b = step_exponent(s);
                // Independent evaluation in doubles.
                const double bt = q >= 5 ? 0.375 : (q >= 3 ? 0.5 : 1.0);
                const double h = std::pow(double(p), double(r));
                const double e = std::max((r / 2.0 + bt) / h, (double(p) / ((p - 1.0) * q) + bt) / h);
                CHECK(b.upper.get_d() == doctest::Approx(e).epsilon(1e-12));
                CHECK(b.at_most_three_eighths == !excluded_abelian_case(s.h, q));
            }
        }
    for (unsigned long h : {60UL, 120UL, 168UL, 360UL, 3600UL, 216000UL})
        for (unsigned long q : {1UL, 2UL, 7UL}) {
            unsigned long h0 = h;
            if (h == 3600) h0 = 60;
            if (h == 216000) h0 = 3600;
            CHECK(galois_exponent({{GaloisStep::non_abelian(h, h0, q)}}).at_most_three_eighths);
        }
    for (unsigned long q = 6; q <= 40; ++q) CHECK(galois_exponent({{GaloisStep::z2_refined(q)}}).at_most_three_eighths);
    // Nested chain: G of order 48 over Q of order 12 over Q' = S3.
    GaloisChainSpec chain{{GaloisStep::abelian(2, 2, 12), GaloisStep::z2_refined(6), GaloisStep::s3()}};
    CHECK(galois_exponent(chain).at_most_three_eighths);
}

TEST_CASE("bounds: galois chain validation") {
    auto bad = GaloisStep::abelian(2, 2, 6);
    bad.g = 25;
    CHECK_THROWS_AS(step_exponent(bad), DomainError);
    auto bad_h = GaloisStep::abelian(2, 2, 6);
    bad_h.h = 6;
    bad_h.g = 36;
    CHECK_THROWS_AS(step_exponent(bad_h), DomainError);
    CHECK_THROWS_AS(step_exponent(GaloisStep::abelian(4, 1, 6)), DomainError);
    CHECK_THROWS_AS(step_exponent(GaloisStep::abelian(2, 1, 1)), DomainError);
    CHECK_THROWS_AS(step_exponent(GaloisStep::non_abelian(60, 5, 2)), DomainError);
    CHECK_THROWS_AS(step_exponent(GaloisStep::non_abelian(24, 24, 2)), DomainError);
    CHECK_THROWS_AS(galois_exponent({{GaloisStep::abelian(2, 1, 5), GaloisStep::s3()}}), DomainError);
    CHECK_THROWS_AS(galois_exponent({}), DomainError);
}

TEST_CASE("bounds: squarefree values of x match the Moebius count") {
    const std::int64_t n = 100000;
    // Oracle: sum_{d} mu(d) floor(N/d^2).
    std::vector<int> mu(400, 1);
    std::vector<bool> comp(400, false);
    for (int p = 2; p < 400; ++p) {
        if (comp[p]) continue;
        for (int m = p; m < 400; m += p) {
            if (m > p) comp[m] = true;
            mu[m] = -mu[m];
            if ((m / p) % p == 0) mu[m] = 0;
        }
    }
    std::int64_t oracle = 0;
    for (std::int64_t d = 1; d * d <= n; ++d) oracle += mu[d] * (n / (d * d));
    const auto f = algebra::MPoly::parse("x");
    const auto rep = sqfree_density(f, {{1, n}}, 100);
    CHECK(rep.squarefree == std::uint64_t(oracle));
    CHECK(rep.points == std::uint64_t(n));
    CHECK(rep.empirical_fraction.get_d() == doctest::Approx(0.6079).epsilon(0.001));
    const double six = 6.0 / (std::numbers::pi * std::numbers::pi);
    CHECK(rep.truncated_product.get_d() > six);
    CHECK(rep.truncated_product.get_d() - six < 0.003);
    for (const auto& l : rep.local) CHECK(l.rho == 1);
}

TEST_CASE("bounds: constant polynomials and errors") {
    const auto one = algebra::MPoly::parse("1");
    const auto rep = sqfree_density(one, {}, 50);
    CHECK(rep.empirical_fraction == 1);
    CHECK(rep.truncated_product == 1);
    const auto four = algebra::MPoly::parse("4");
    CHECK(sqfree_density(four, {}, 10).truncated_product == 0);
    CHECK_THROWS_AS(sqfree_density(algebra::MPoly::parse("x - x"), {{0, 3}}, 10), DomainError);
    CHECK_THROWS_AS(sqfree_density(algebra::MPoly::parse("x*y"), {{0, 3}}, 10), DomainError);
    CHECK_THROWS_AS(sqfree_density(algebra::MPoly::parse("x"), {{3, 0}}, 10), DomainError);
}

TEST_CASE("bounds: cubic discriminant experiment") {
    const auto f = algebra::MPoly::parse("-4*a^3 - 27*b^2");
    CHECK(rho_p2(f, 2) == brute_count_mod(4, [](long a, long b) { return -4 * a * a * a - 27 * b * b; }));
    CHECK(rho_p2(f, 3) == brute_count_mod(9, [](long a, long b) { return -4 * a * a * a - 27 * b * b; }));
    CHECK(rho_p2(f, 7) == brute_count_mod(49, [](long a, long b) { return -4 * a * a * a - 27 * b * b; }));
    const std::vector<Range> box{{-60, 60}, {-60, 60}};
    const auto par = sqfree_density(f, box, 30);
    const auto ser = sqfree_density_serial(f, box, 30);
    CHECK(par.squarefree == ser.squarefree);
    CHECK(par.truncated_product == ser.truncated_product);
    // Oracle count by direct trial division.
    std::uint64_t sf = 0;
    for (long a = -60; a <= 60; ++a)
        for (long b = -60; b <= 60; ++b) {
            long v = std::labs(-4 * a * a * a - 27 * b * b);
            bool ok = v != 0;
            for (long d = 2; ok && d * d <= v; ++d)
                if (v % (d * d) == 0) ok = false;
            sf += ok;
        }
    CHECK(par.squarefree == sf);
    Rational prev = 1;
    for (std::uint32_t P : {2u, 3u, 5u, 10u, 20u, 30u, 50u}) {
        const auto r = sqfree_density(f, {{0, 0}, {0, 0}}, P);
        CHECK(r.truncated_product <= prev);
        prev = r.truncated_product;
    }
}

TEST_CASE("bounds: large values take the GMP path") {
    const auto f = algebra::MPoly::parse("x^5 * 1000000000000 + 1");
    const auto rep = sqfree_density_serial(f, {{-20, 20}}, 5);
    std::uint64_t sf = 0;
    for (long x = -20; x <= 20; ++x) {
        Integer v = Integer(1000000000000.0) * pow_int(x, 5) + 1;
        sf += is_squarefree(v);
    }
    CHECK(rep.squarefree == sf);
    CHECK(is_squarefree(Integer("1000000000000000000000000000057")) == (algebra::square_part_root(Integer("1000000000000000000000000000057")) == 1));
    CHECK_FALSE(is_squarefree(Integer("340282366920938463463374607431768211456")));
}
