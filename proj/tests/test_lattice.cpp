#include <doctest.h>

#include <cmath>
#include <random>

#include "fieldcount/algebra/lattice.hpp"
#include "fieldcount/lattice/shape.hpp"

using namespace fieldcount;
using namespace fieldcount::lattice;
using algebra::MonicIntPoly;

namespace {

QMatrix qm(std::vector<std::vector<long>> rows) {
    QMatrix m(rows.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    return m;
}

FieldRecord rec(const char* poly) { return fields::make_record(MonicIntPoly::parse(poly), 0, 50); }

// Brute-force successive minima of the row lattice of an integer matrix B
// (Gram B B^T): every lattice vector v in Z^n with |v|^2 <= R has |v_i| <= sqrt(R).
std::vector<Rational> brute_minima(const algebra::ZMatrix& B) {
    const std::size_t n = B.rows();
    const QMatrix Binv = algebra::inverse(algebra::to_qmatrix(B));
    long R = 0;
    for (std::size_t i = 0; i < n; ++i) {
        long s = 0;
        for (std::size_t j = 0; j < n; ++j) s += B(i, j).get_si() * B(i, j).get_si();
        R = std::max(R, s);
    }
    const long k = static_cast<long>(std::sqrt(static_cast<double>(R))) + 1;
    std::vector<std::pair<long, std::vector<long>>> all;
    std::vector<long> v(n, -k);
    for (;;) {
        long norm = 0;
        for (auto c : v) norm += c * c;
        if (norm > 0 && norm <= R) {
            bool member = true;
            for (std::size_t j = 0; j < n && member; ++j) {
                Rational c = 0;
                for (std::size_t i = 0; i < n; ++i) c += Rational(v[i]) * Binv(i, j);
                member = c.get_den() == 1;
            }
            if (member) all.emplace_back(norm, v);
        }
        std::size_t i = 0;
        while (i < n && v[i] == k) v[i++] = -k;
        if (i == n) break;
        ++v[i];
    }
    std::sort(all.begin(), all.end());
    std::vector<Rational> mins;
    std::vector<std::vector<Rational>> rows;
    for (const auto& [norm, vec] : all) {
        rows.emplace_back(vec.begin(), vec.end());
        QMatrix m(rows.size(), n);
        for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
        if (algebra::rank(m) == rows.size())
            mins.emplace_back(norm);
        else
            rows.pop_back();
        if (mins.size() == n) break;
    }
    return mins;
}

}  // namespace

TEST_CASE("trace form Gram matrices") {
    const auto f = MonicIntPoly::parse("x^3 - 3*x - 1");
    QMatrix b(2, 3);
    b(0, 1) = 1;                // theta
    b(1, 0) = -2, b(1, 2) = 1;  // theta^2 - 2
    CHECK(trace_form_gram(f, b) == qm({{6, 3}, {3, 6}}));

    QMatrix s2(1, 2);
    s2(0, 1) = 1;
    CHECK(trace_form_gram(MonicIntPoly::parse("x^2 - 2"), s2) == qm({{4}}));

    const auto g = MonicIntPoly::parse("x^3 - x - 1");
    CHECK(algebra::determinant(trace_form_gram(g, QMatrix::identity(3))) == -23);

    CHECK_THROWS_AS(trace_gram(rec("x^3 - x - 1"), Sublattice::FullOrder), DomainError);
    for (const char* p : {"x^3 - 3*x - 1", "x^3 - x^2 - 2*x + 1", "x^4 - 4*x^2 + 2", "x^2 - 5", "x^3 - 12*x - 10"}) {
        const auto r = rec(p);
        const auto t = trace_gram(r, Sublattice::FullOrder);
        CHECK(abs(algebra::determinant(t.gram)) == abs(r.field_disc));
        const auto z = trace_gram(r, Sublattice::TraceZero);
        CHECK(z.gram.rows() == static_cast<std::size_t>(r.degree() - 1));
        CHECK(algebra::is_positive_definite(z.gram));
    }
}

TEST_CASE("successive minima") {
    auto mins = [](const QMatrix& g) { return successive_minima(g).minima; };
    CHECK(mins(qm({{1, 0}, {0, 1}})) == std::vector<Rational>{1, 1});
    CHECK(mins(qm({{2, 1}, {1, 2}})) == std::vector<Rational>{2, 2});
    CHECK(mins(qm({{6, 3}, {3, 6}})) == std::vector<Rational>{6, 6});
    CHECK_THROWS_AS(successive_minima(qm({{1, 2}, {2, 1}})), DomainError);

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + trial % 3;
        // G = B B^T with small random B (det != 0).
        algebra::ZMatrix B(n, n);
        do {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) B(i, j) = static_cast<long>(rng() % 7) - 3;
        } while (algebra::determinant(B) == 0);
        QMatrix G(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) G(i, j) += B(i, k) * B(j, k);
        const auto p = successive_minima(G);
        CHECK(p.minima == brute_minima(B));
        for (std::size_t i = 0; i < n; ++i) {
            Rational v = 0;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) v += G(a, b) * p.witnesses[i][a] * p.witnesses[i][b];
            CHECK(v == p.minima[i]);
        }
        CHECK(minkowski_product_bound(p, algebra::determinant(G)));
    }
}

TEST_CASE("shape points") {
    const auto hex = shape_point(qm({{6, 3}, {3, 6}}));
    CHECK(hex.x == doctest::Approx(0.5));
    CHECK(hex.y == doctest::Approx(std::sqrt(3.0) / 2));
    const auto sq = shape_point(qm({{1, 0}, {0, 2}}));
    CHECK(sq.x == doctest::Approx(0.0));
    CHECK(sq.y == doctest::Approx(std::sqrt(2.0)));
    // Equivalent forms give the same point.
    const auto a = shape_point(qm({{7, 2}, {2, 3}}));
    const auto b = shape_point(qm({{7 + 2 * 2 + 3, 2 + 3}, {2 + 3, 3}}));  // basis change (1,1),(0,1)
    CHECK(a.A == b.A);
    CHECK(a.B == b.B);
    CHECK(a.C == b.C);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        const long p = 1 + static_cast<long>(rng() % 50), q = static_cast<long>(rng() % 101) - 50;
        const long r = (q * q) / p + 1 + static_cast<long>(rng() % 30);
        CHECK(in_fundamental_domain(shape_point(qm({{p, q}, {q, r}}))));
    }
    CHECK(in_fundamental_domain(shape_point(rec("x^3 - 3*x - 1"))));
    CHECK_THROWS_AS(shape_point(rec("x^3 - 2")), DomainError);
}

TEST_CASE("smallest generator sup-norm") {
    const auto si = s_of_L(rec("x^2 + 1"));
    CHECK(si.s_squared == doctest::Approx(1.0));
    const auto s2 = s_of_L(rec("x^2 - 2"));
    CHECK(s2.s_squared == doctest::Approx(2.0));
    const auto s3 = s_of_L(rec("x^3 - 3*x - 1"));
    const double top = 2 * std::cos(M_PI / 9);  // largest root of x^3 - 3x - 1
    CHECK(std::sqrt(s3.s_squared) == doctest::Approx(top).epsilon(1e-12));
    CHECK(s3.error_bound < 1e-10);
    // Witness generates the field.
    const auto s5 = s_of_L(rec("x^5 - x - 1"));
    CHECK(s5.s_squared > 0);
    CHECK(s5.kappa1 > 0);
}

TEST_CASE("primitive constraints and the trace-zero lower bound") {
    const auto r = check_primitive_constraints(rec("x^3 - 3*x - 1"));
    CHECK(r.minima == std::vector<Rational>{6, 6});
    for (double x : r.ratios) CHECK(x > 0);
    CHECK_THROWS_AS(check_primitive_constraints(rec("x^4 - 10*x^2 + 1")), DomainError);

    const auto l = lemma31_check({rec("x^3 - x - 1"), rec("x^3 - 3*x - 1"), rec("x^2 - 2")});
    CHECK(l.min_ratio > 0);
    // Quadratic: a_1 / disc with O^0 = Z sqrt(2): Tr(2) = 4, disc 8.
    CHECK(l.ratios[2] == doctest::Approx(0.5));
    CHECK_THROWS_AS(lemma31_check({}), DomainError);
}

TEST_CASE("T2 minima of a mixed-signature field") {
    const auto m = t2_minima(rec("x^3 - 2"));
    REQUIRE(m.minima.size() == 3);
    CHECK(m.minima[0] == doctest::Approx(3.0));  // the unit 1
    for (std::size_t i = 1; i < 3; ++i) CHECK(m.minima[i] >= m.minima[i - 1]);
}
