#include <random>

#include "doctest.h"
#include "fieldcount/algebra/disc_fast.hpp"
#include "fieldcount/algebra/factor.hpp"
#include "fieldcount/algebra/fp_poly.hpp"
#include "fieldcount/algebra/lattice.hpp"
#include "fieldcount/algebra/matrix.hpp"
#include "fieldcount/algebra/mpoly.hpp"
#include "fieldcount/algebra/poly.hpp"
#include "fieldcount/algebra/roots.hpp"

using namespace fieldcount::algebra;
using fieldcount::DomainError;

TEST_CASE("integer helpers") {
    CHECK(factor_integer(Integer(360)) == std::vector<std::pair<Integer, unsigned>>{{2, 3}, {3, 2}, {5, 1}});
    // Product of two 40-bit primes forces the rho path.
    const Integer p("1099511627791"), q("1099511628401");
    auto f = factor_integer(p * q);
    REQUIRE(f.size() == 2);
    CHECK(f[0].first * f[1].first == p * q);
    CHECK(square_part_root(Integer(-2 * 9 * 25 * 7)) == 15);
    CHECK(from_i128(to_i128(Integer("-123456789012345678901234567890"))) == Integer("-123456789012345678901234567890"));
    CHECK(primes_up_to(30).size() == 10);
}

TEST_CASE("polynomial text round trip") {
    auto f = MonicIntPoly::parse("x^3 - 3*x - 1");
    CHECK(f.degree() == 3);
    CHECK(f.to_string() == "x^3 - 3*x - 1");
    CHECK(parse_zpoly("2x^2+3x-x^2") == ZPoly{0, 3, 1});
    CHECK_THROWS_AS(parse_zpoly("x^"), DomainError);
    CHECK(MonicIntPoly::parse("x^2 + 1") < MonicIntPoly::parse("x^2 + x"));
    CHECK(MonicIntPoly::parse("x^2 + 5") < MonicIntPoly::parse("x^3"));
}

TEST_CASE("discriminants: closed forms against the resultant") {
    // Oracle: b^2 - 4c and -4p^3 - 27q^2.
    CHECK(poly_discriminant(MonicIntPoly::parse("x^2 + 3*x + 1")) == 5);
    CHECK(poly_discriminant(MonicIntPoly::parse("x^3 - 3*x - 1")) == 81);
    CHECK(poly_discriminant(MonicIntPoly::parse("x^3 - x - 1")) == -23);
    CHECK(poly_discriminant(MonicIntPoly::parse("x^5 - x - 1")) == 2869);
    CHECK(poly_discriminant(parse_zpoly("2x^2 + x - 1")) == 9);
    std::mt19937_64 rng(7);
    for (int n = 2; n <= 6; ++n)
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<std::int64_t> a(static_cast<std::size_t>(n));
            // Stay inside the proven no-overflow range of the closed forms.
            const std::int64_t lim = n <= 4 ? 50 : (n == 5 ? 20 : 8);
            std::uniform_int_distribution<std::int64_t> d(-lim, lim);
            for (auto& v : a) v = d(rng);
            std::vector<Integer> lower(a.begin(), a.end());
            i128 fast;
            REQUIRE(disc_int128(a.data(), n, fast));
            CHECK(from_i128(fast) == poly_discriminant(MonicIntPoly(lower)));
        }
    std::vector<std::int64_t> huge{1, 0, 0, 0, std::int64_t(1) << 40};
    i128 dummy;
    CHECK_FALSE(disc_int128(huge.data(), 5, dummy));
    std::vector<Integer> hl(huge.begin(), huge.end());
    CHECK(disc_exact(huge.data(), 5) == poly_discriminant(MonicIntPoly(hl)));
}

TEST_CASE("Sturm real root count") {
    CHECK(count_real_roots(parse_zpoly("x^3 - 3x - 1")) == 3);
    CHECK(count_real_roots(parse_zpoly("x^3 - x - 1")) == 1);
    CHECK(count_real_roots(parse_zpoly("x^4 + 1")) == 0);
    CHECK(count_real_roots(parse_zpoly("x^2-2")) == 2);
}

TEST_CASE("linear algebra") {
    ZMatrix m = ZMatrix::from_rows({{2, 0, 1}, {1, 3, 2}, {1, 1, 2}});
    CHECK(determinant(m) == 6);
    QMatrix q = to_qmatrix(m);
    CHECK(determinant(q) == Rational(determinant(m)));
    CHECK(inverse(q) * q == QMatrix::identity(3));
    // charpoly of companion matrix is the polynomial itself
    QMatrix c(3, 3);
    c(1, 0) = 1;
    c(2, 1) = 1;
    c(0, 2) = 1;
    c(1, 2) = 3;
    c(2, 2) = 0;
    CHECK(charpoly(c) == to_qpoly(parse_zpoly("x^3 - 3x - 1")));
    ZMatrix h = hermite_normal_form(ZMatrix::from_rows({{4, 6}, {2, 2}, {6, 0}}));
    CHECK(determinant(h) == 4);  // gcd of the 2x2 minors -4, -36, -12
    CHECK(h(1, 0) == 0);
    QMatrix k = right_kernel(QMatrix::from_rows({{1, 2, 3}, {2, 4, 6}}));
    CHECK(k.rows() == 2);
    FpMatrix fm{{1, 2}, {2, 4}};
    auto lk = left_kernel_mod_p(fm, 5, 2, 2);
    REQUIRE(lk.size() == 1);
    CHECK((lk[0][0] * 1 + lk[0][1] * 2) % 5 == 0);
}

TEST_CASE("factorization mod p and over Z") {
    std::mt19937_64 rng(1);
    FpPoly f = FpPoly::from_zpoly(parse_zpoly("x^4 + 1"), 17);  // splits completely mod 17
    auto fac = factor_mod_p(f, rng);
    CHECK(fac.size() == 4);
    FpPoly prod = FpPoly::one(17);
    for (auto& [g, e] : fac) prod = prod * g;
    CHECK(prod == f);
    CHECK(splitting_type(parse_zpoly("x^4 + 1"), 3) == std::vector<int>{2, 2});
    CHECK(splitting_type(parse_zpoly("x^3 - x - 1"), 23).empty());
    FpPoly sq = FpPoly::from_zpoly(parse_zpoly("x^2 + 1") * parse_zpoly("x^2+1") * parse_zpoly("x+1"), 2);
    auto fs = factor_mod_p(sq, rng);
    unsigned total = 0;
    for (auto& [g, e] : fs) total += static_cast<unsigned>(g.degree()) * e;
    CHECK(total == 5);

    CHECK(is_irreducible(parse_zpoly("x^4 + 1")));  // reducible mod every prime
    CHECK_FALSE(is_irreducible(parse_zpoly("x^4 + 4")));
    auto z = factor_over_Z(parse_zpoly("x^4 + 4") * parse_zpoly("x^4 + 4") * parse_zpoly("x - 7"));
    REQUIRE(z.size() == 3);
    CHECK(z[0].first == parse_zpoly("x - 7"));
    CHECK(z[1].second == 2);
    auto sw = factor_squarefree(parse_zpoly("x^8 - 1"));
    CHECK(sw.size() == 4);
    CHECK(has_factor_of_degree(parse_zpoly("x^3 - 2") * parse_zpoly("x^2 - 3"), 3));
    CHECK(factor_squarefree(parse_zpoly("6x^2 + 5x + 1")).size() == 2);
}

TEST_CASE("LLL and Fincke-Pohst") {
    ZMatrix b = ZMatrix::from_rows({{1, 0, 0, 12345}, {0, 1, 0, 54321}, {0, 0, 1, 11111}});
    ZMatrix r = lll_basis(b);
    CHECK(abs(determinant(r * r.transpose())) == abs(determinant(b * b.transpose())));
    Integer n0 = 0;
    for (std::size_t j = 0; j < 4; ++j) n0 += r(0, j) * r(0, j);
    CHECK(n0 < 1000);

    DMatrix g{{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
    int count = 0;
    fincke_pohst(g, 8.0, [&](const std::vector<std::int64_t>&) {
        ++count;
        return true;
    });
    int brute = 0;
    for (int x = -5; x <= 5; ++x)
        for (int y = -5; y <= 5; ++y)
            for (int z = -5; z <= 5; ++z) {
                if (x == 0 && y == 0 && z == 0) continue;
                const int v = 2 * x * x + 3 * y * y + 4 * z * z + 2 * x * y + 2 * y * z;
                if (v <= 8) ++brute;
            }
    CHECK(2 * count == brute);
    int ccount = 0;
    fincke_pohst_centered(g, {0.5, 0.0, 0.25}, 3.0, [&](const std::vector<std::int64_t>&) {
        ++ccount;
        return true;
    });
    int cbrute = 0;
    for (int x = -5; x <= 5; ++x)
        for (int y = -5; y <= 5; ++y)
            for (int z = -5; z <= 5; ++z) {
                const double a = x - 0.5, c = z - 0.25, bb = y;
                const double v = 2 * a * a + 3 * bb * bb + 4 * c * c + 2 * a * bb + 2 * bb * c;
                if (v <= 3.0) ++cbrute;
            }
    CHECK(ccount == cbrute);
}

TEST_CASE("roots and multivariate polynomials") {
    auto z = complex_roots(parse_zpoly("x^3 - 3x - 1"));
    for (auto& r : z) CHECK(std::abs(r.imag()) < 1e-12);
    // Vandermonde product of the computed roots reproduces the exact discriminant.
    for (const char* text : {"x^3 - x - 1", "x^4 - x - 1", "x^5 - x - 1", "x^5 + 7x^3 - 3x + 11", "x^6 + x^5 - 4x + 2"}) {
        const auto f = MonicIntPoly::parse(text);
        const auto roots = complex_roots(parse_zpoly(text));
        std::complex<long double> vdm = 1;
        for (std::size_t i = 0; i < roots.size(); ++i)
            for (std::size_t j = i + 1; j < roots.size(); ++j) vdm *= (roots[i] - roots[j]) * (roots[i] - roots[j]);
        const long double exact = poly_discriminant(f).get_d();
        CHECK(std::abs(vdm - std::complex<long double>(exact)) < 1e-9L * std::abs(exact));
    }
    MPoly m = MPoly::parse("(a+b)^2 - 2*a*b");
    CHECK(m == MPoly::parse("a^2 + b^2"));
    CHECK(m.eval({Integer(3), Integer(4)}) == 25);
    CHECK(m.eval_mod({3, 4}, 7) == 4);
    CHECK(MPoly::parse("3x").total_degree() == 1);
    CHECK_THROWS_AS(MPoly::parse("a +* b"), DomainError);
}
