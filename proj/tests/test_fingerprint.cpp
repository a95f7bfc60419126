#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fieldcount/fingerprint/fingerprint.hpp"

using namespace fieldcount;
using namespace fieldcount::fingerprint;
using algebra::MonicIntPoly;

namespace {

ExponentVector ev(std::vector<unsigned> e) { return {std::move(e)}; }

QPoly qp(std::vector<long> c) {
    std::vector<Rational> v;
    for (long x : c) v.emplace_back(x);
    return QPoly(v);
}

// Newton's identities for the power sums of a monic f (independent of the library).
std::vector<Integer> newton(const std::vector<long>& lower, int count) {
    const int n = static_cast<int>(lower.size());
    std::vector<Integer> p(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        if (k == 0) {
            p[0] = n;
            continue;
        }
        Integer s = 0;
        // p_k + a_{n-1} p_{k-1} + ... + a_{n-min(k-1,n)} p_{k-min(k-1,n)} (+ k a_{n-k} if k <= n) = 0
        for (int i = 1; i <= std::min(k - 1, n); ++i) s += lower[static_cast<std::size_t>(n - i)] * p[static_cast<std::size_t>(k - i)];
        if (k <= n) s += Integer(k) * lower[static_cast<std::size_t>(n - k)];
        p[static_cast<std::size_t>(k)] = -s;
    }
    return p;
}

OrderTuple manual_tuple(const MonicIntPoly& f, std::vector<QPoly> elems) {
    OrderTuple t;
    t.field.min_poly = f;
    t.elements = std::move(elems);
    t.certificate.certified = true;
    return t;
}

FieldRecord record_of(const char* poly) { return fields::make_record(MonicIntPoly::parse(poly), 0, 50); }

}  // namespace

TEST_CASE("fingerprint: exponent vectors and sigma sets") {
    CHECK(ev({1, 0}) < ev({0, 1}));
    CHECK(ev({0, 1}) < ev({2, 0}));
    CHECK(exponents_up_to(2, 2).size() == 6);
    CHECK(exponents_up_to(3, 4).size() == 35);
    auto s3 = sigma_sets_paper(3);
    CHECK(s3.r == 1);
    CHECK(s3.c == 3);
    CHECK(s3.sigma0.size() == 4);
    CHECK(s3.sigma.size() == 13);
    auto s10 = sigma_sets_paper(10);
    CHECK(s10.r == 1);
    CHECK(s10.c == 10);
    CHECK(s10.sigma0.size() == 11);
    auto s100 = sigma_sets_paper(100);
    CHECK(s100.r == 2);
    CHECK(s100.c == 15);
    CHECK(s100.sigma0.size() == 136);
    CHECK(s100.inclusions_hold());
    CHECK(SigmaSet::make(3, 2).inclusions_hold());
    for (unsigned long n = 3; n <= 60; ++n) CHECK(2 * sigma_sets_paper(n).sigma0.size() > n);
    CHECK_THROWS_AS(sigma_sets_paper(2), DomainError);
}

TEST_CASE("fingerprint: chi and f_sigma") {
    const auto f = MonicIntPoly::parse("x^3 - x - 1");
    CHECK(chi(ev({0, 0}), {qp({0, 1}), qp({1, 1})}, f) == qp({1}));
    CHECK(chi(ev({2, 1}), {qp({0, 1}), qp({1, 1})}, f) == qp({1, 1, 1}));
    const auto gi = MonicIntPoly::parse("x^2 + 1");
    CHECK(chi(ev({1}), {qp({0, 1})}, gi) == qp({0, 1}));
    CHECK(f_sigma(ev({1}), {qp({0, 1})}, gi) == 0);
    CHECK(f_sigma(ev({2}), {qp({0, 1})}, gi) == -2);
    const auto g = MonicIntPoly::parse("x^3 - 3*x - 1");
    const auto p = newton({-1, -3, 0}, 12);
    for (unsigned k = 0; k < 12; ++k) CHECK(f_sigma(ev({k}), {qp({0, 1})}, g) == p[k]);
    CHECK(f_sigma(ev({3}), {qp({0, 1})}, g) == 3);
    CHECK_THROWS_AS(chi(ev({1, 1}), {qp({0, 1})}, g), DomainError);
    // theta/2 is not integral: trace 0 but theta^2/4 has trace 6/4.
    std::vector<Rational> half{Rational(0), Rational(1, 2)};
    CHECK_THROWS_AS(f_sigma(ev({2}), {QPoly(half)}, g), InternalConsistencyError);
}

TEST_CASE("fingerprint: multisymmetric forms are permutation invariant") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + trial % 5, r = 1 + trial % 3;
        std::vector<std::vector<Rational>> x(n, std::vector<Rational>(r));
        for (auto& row : x)
            for (auto& v : row) {
                v = Rational(num(rng), den(rng));
                v.canonicalize();
            }
        auto y = x;
        std::shuffle(y.begin(), y.end(), rng);
        for (const auto& s : exponents_up_to(r, 4)) CHECK(f_sigma_points(s, x) == f_sigma_points(s, y));
    }
}

TEST_CASE("fingerprint: independence test") {
    const auto gi = MonicIntPoly::parse("x^2 + 1");
    auto a = independence_test({qp({1})}, {ev({0}), ev({1})}, gi);
    CHECK(a.rank == 1);
    CHECK_FALSE(a.independent);
    auto b = independence_test({qp({0, 1})}, {ev({0}), ev({1})}, gi);
    CHECK(b.rank == 2);
    CHECK(b.independent);
    auto c = independence_test({qp({0, 1})}, {ev({0}), ev({1}), ev({2})}, MonicIntPoly::parse("x^3 - x - 1"));
    CHECK(c.rank == 3);
    CHECK(c.independent);
}

TEST_CASE("fingerprint: small nonvanishing point") {
    CHECK(small_nonvanishing_point(algebra::MPoly::parse("x1")) == std::vector<Integer>{1});
    CHECK(small_nonvanishing_point(algebra::MPoly::parse("x1*x2")) == std::vector<Integer>{1, 1});
    const auto q = algebra::MPoly::parse("(x1-1)*(x1-2)");
    CHECK(small_nonvanishing_point(q) == std::vector<Integer>{0});
    CHECK_THROWS_AS(small_nonvanishing_point(algebra::MPoly::parse("x1 - x1")), DomainError);
    // Random products of linear forms: box bound and nonvanishing.
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int trial = 0; trial < 40; ++trial) {
        const std::vector<std::string> vars{"a", "b", "c"};
        algebra::MPoly D = algebra::MPoly::constant(vars, 1);
        const int factors = 1 + trial % 4;
        for (int i = 0; i < factors; ++i) {
            algebra::MPoly lin = algebra::MPoly::constant(vars, coef(rng));
            for (std::size_t v = 0; v < 3; ++v) lin = lin + algebra::MPoly::constant(vars, coef(rng)) * algebra::MPoly::variable(vars, v);
            D = D * lin;
        }
        if (D.is_zero()) continue;
        const auto pt = small_nonvanishing_point(D);
        const long B = (D.total_degree() + 2) / 2;
        for (const auto& x : pt) CHECK(abs(x) <= B);
        CHECK(D.eval(pt) != 0);
    }
}

TEST_CASE("fingerprint: spec fingerprints and reconstruction") {
    const auto gi = MonicIntPoly::parse("x^2 + 1");
    SigmaSet s4;
    s4.r = 1;
    s4.c = 1;
    s4.sigma = exponents_up_to(1, 4);
    auto fp = fingerprint_field(manual_tuple(gi, {qp({0, 1})}), s4);
    CHECK(fp.values == std::vector<Integer>{2, 0, -2, 0, 2});
    const auto g = MonicIntPoly::parse("x^3 - 3*x - 1");
    auto fg = fingerprint_field(manual_tuple(g, {qp({0, 1})}), s4);
    CHECK(fg.values == std::vector<Integer>{3, 0, 6, 3, 18});

    Fingerprint toy;
    toy.r = 1;
    toy.sigma = exponents_up_to(1, 3);
    toy.values = {2, 3, 5, 9};
    auto rec = reconstruct(toy);
    CHECK(rec.charpolys[0] == qp({2, -3, 1}));
    CHECK(roundtrip(rec, toy));
    toy.values = {2, 0, -2, 0};
    CHECK(reconstruct(toy).charpolys[0] == qp({1, 0, 1}));
    toy.values = {2, 1, 1, 1};  // multiset {1, 0} collapses: Gram [[2,1],[1,1]] is fine
    CHECK(reconstruct(toy).charpolys[0] == qp({0, -1, 1}));
    toy.values = {2, 2, 2, 2};  // {1, 1}: rank 1
    CHECK_THROWS_AS(reconstruct(toy), DomainError);
    OrderTuple bare;
    bare.field.min_poly = gi;
    bare.elements = {qp({0, 1})};
    CHECK_THROWS_AS(fingerprint_field(bare, s4), DomainError);
}

TEST_CASE("fingerprint: tuple construction on cubics") {
    const auto S = sigma_sets_paper(3);
    for (const char* poly : {"x^3 - x - 1", "x^3 - 3*x - 1", "x^3 - 2", "x^3 - x^2 - 2*x + 1"}) {
        const auto L = record_of(poly);
        const auto t = construct_tuple(L, S);
        CHECK(t.certificate.certified);
        CHECK(t.certificate.rank_sigma1 == 3);
        CHECK(t.certificate.height <= 2);
        // Exact oracle: the powers of alpha up to degree 6 span the field.
        std::vector<QPoly> pw;
        for (unsigned k = 0; k <= 6; ++k) pw.push_back(chi(ev({k}), t.elements, L.min_poly));
        algebra::QMatrix m(pw.size(), 3);
        for (std::size_t i = 0; i < pw.size(); ++i)
            for (std::size_t j = 0; j < 3; ++j) m(i, j) = pw[i].coeff(j);
        CHECK(algebra::rank(m) == 3);
        const auto fp = fingerprint_field(t, S);
        CHECK(fp.values.front() == 3);
        const auto rec = reconstruct(fp);
        CHECK(roundtrip(rec, fp));
        CHECK(matrices_commute(rec));
        // charpoly(M) is the characteristic polynomial of alpha.
        CHECK(rec.charpolys[0] == fields::element_charpoly(t.elements[0], L.min_poly));
    }
}

TEST_CASE("fingerprint: exhaustive search oracle for a small tuple") {
    // For x^3-3x-1 some alpha = c1 g1 + c2 g2 with |c| <= 2 generates: brute force over the
    // 25 coefficient pairs using the order basis directly.
    const auto L = record_of("x^3 - 3*x - 1");
    const auto S = sigma_sets_paper(3);
    const auto t = construct_tuple(L, S);
    bool any = false;
    for (long c1 = -2; c1 <= 2; ++c1)
        for (long c2 = -2; c2 <= 2; ++c2) {
            std::vector<Rational> v(3, 0);
            for (std::size_t j = 0; j < 3; ++j)
                for (std::size_t l = 0; l < 3; ++l)
                    v[l] += (Rational(c1) * Rational(t.gamma[0][j]) + Rational(c2) * Rational(t.gamma[1][j])) * L.order_basis(j, l);
            const auto cp = fields::element_charpoly(QPoly(v), L.min_poly);
            // Generates iff its characteristic polynomial is squarefree.
            if (algebra::gcd(cp, cp.derivative()).degree() == 0) any = true;
        }
    CHECK(any);
    CHECK(t.certificate.height <= 2);
}

TEST_CASE("fingerprint: two-element tuples") {
    const auto L = record_of("x^3 - x^2 - 2*x + 1");
    const auto S = SigmaSet::make(2, 2);
    const auto t = construct_tuple(L, S);
    CHECK(t.elements.size() == 2);
    const auto fp = fingerprint_field(t, S);
    const auto rec = reconstruct(fp);
    CHECK(rec.mult.size() == 2);
    CHECK(matrices_commute(rec));
    CHECK(roundtrip(rec, fp));
}

TEST_CASE("fingerprint: injectivity, roundtrip and height constant on small pools") {
    for (int n : {3, 4, 5}) {
        const Integer X = n == 5 ? Integer(3000) : Integer(2000);
        const auto res = fields::enumerate_fields(n, X);
        const auto S = sigma_sets_paper(static_cast<unsigned long>(n));
        std::set<std::vector<Integer>> seen;
        double cmax = 0;
        for (const auto& L : res.records) {
            const auto t = construct_tuple(L, S);
            const auto fp = fingerprint_field(t, S);
            CHECK(fp.values.front() == n);
            const auto rec = reconstruct(fp);
            CHECK(roundtrip(rec, fp));
            CHECK(matrices_commute(rec));
            CHECK(seen.insert(fp.values).second);
            cmax = std::max(cmax, t.certificate.constant);
        }
        CHECK(cmax < 100.0);
        MESSAGE("degree " << n << ": " << res.records.size() << " fields, height constant " << cmax);
    }
}

TEST_CASE("fingerprint: invariance of the degree-3 PSL2(F5) invariant") {
    const auto P = f6();
    const auto g1 = parse_permutation("(1,6,2)(3,4,5)", 6);
    const auto g2 = parse_permutation("(5,6)(3,4)", 6);
    CHECK(g1 == std::vector<std::size_t>{5, 0, 3, 4, 2, 1});
    CHECK(check_invariance(P, {g1, g2}));
    CHECK_FALSE(check_invariance(P, {parse_permutation("(1,2)", 6)}));
    const auto sym = algebra::MPoly::parse("x1+x2+x3+x4+x5+x6", {"x1", "x2", "x3", "x4", "x5", "x6"});
    CHECK(check_invariance(sym, {parse_permutation("(1,2)", 6), parse_permutation("(1,2,3,4,5,6)", 6)}));
    CHECK(parse_permutation("", 3) == std::vector<std::size_t>{0, 1, 2});
    CHECK_THROWS_AS(parse_permutation("(1,1)", 3), DomainError);
    CHECK_THROWS_AS(parse_permutation("(1,4)", 3), DomainError);
}
