#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

#include "fieldcount/algebra/factor.hpp"
#include "fieldcount/fields/enumerate.hpp"
#include "fieldcount/fields/isomorphism.hpp"

using namespace fieldcount;
using namespace fieldcount::fields;
using algebra::Integer;
using algebra::MonicIntPoly;

namespace {

// Fundamental discriminant of Q(sqrt m), m squarefree.
Integer fundamental_disc(long m) {
    const long r = ((m % 4) + 4) % 4;
    return r == 1 ? Integer(m) : Integer(4 * m);
}

bool squarefree(long m) {
    m = std::labs(m);
    for (long p = 2; p * p <= m; ++p)
        if (m % (p * p) == 0) return false;
    return true;
}

std::multiset<Integer> quadratic_oracle(long X) {
    std::multiset<Integer> out;
    for (long m = -X; m <= X; ++m) {
        if (m == 0 || m == 1 || !squarefree(m)) continue;
        const Integer d = fundamental_disc(m);
        if (abs(d) < X) out.insert(d);
    }
    return out;
}

std::multiset<Integer> discs(const std::vector<FieldRecord>& rs) {
    std::multiset<Integer> out;
    for (const auto& r : rs) out.insert(r.field_disc);
    return out;
}

// Brute force over x^3 + a x^2 + b x + c with a in {0,-1}, |b| <= B, |c| <= C:
// isomorphism classes with |disc| < X.
std::vector<MonicIntPoly> cubic_oracle(long X, long B, long C, bool trace_zero) {
    std::vector<MonicIntPoly> classes;
    std::vector<Integer> cdiscs;
    for (long a = 0; a >= (trace_zero ? 0 : -1); --a)
        for (long b = -B; b <= B; ++b)
            for (long c = -C; c <= C; ++c) {
                MonicIntPoly f({Integer(c), Integer(b), Integer(a)});
                if (c == 0 || !algebra::is_irreducible(f.to_zpoly())) continue;
                const Integer d = maximal_order(f).discriminant();
                if (abs(d) >= X) continue;
                bool seen = false;
                for (std::size_t i = 0; i < classes.size() && !seen; ++i)
                    seen = cdiscs[i] == d && is_isomorphic(classes[i], f);
                if (!seen) {
                    classes.push_back(f);
                    cdiscs.push_back(d);
                }
            }
    return classes;
}

}  // namespace

TEST_CASE("sup-norm box sizes") {
    auto count = [](int n, int y, bool tz) {
        long c = 0;
        enumerate_polys(EnumBox{n, y, tz}, [&](const MonicIntPoly&) { ++c; });
        return c;
    };
    CHECK(count(2, 2, true) == 9);
    CHECK(count(3, 1, true) == 21);
    // |a_0| <= binom(2,2) Y^2 = 1: x^2 - 1, x^2, x^2 + 1
    CHECK(count(2, 1, true) == 3);
    CHECK(count(2, 1, false) == 15);
    std::vector<MonicIntPoly> seen;
    enumerate_polys(EnumBox{3, 1, true}, [&](const MonicIntPoly& f) { seen.push_back(f); });
    CHECK(std::is_sorted(seen.begin(), seen.end()));
    CHECK_THROWS_AS(EnumBox({2, -1, true}).bounds(), DomainError);
}

TEST_CASE("stage schedule doubles and caps at the Hunter bound") {
    const auto s = stage_schedule(3, Integer(300000));
    const double cstar = hunter_bound(3, 300000.0);
    REQUIRE(s.size() >= 2);
    CHECK(s.back() == doctest::Approx(cstar));
    for (std::size_t i = 0; i + 1 < s.size(); ++i) CHECK(s[i] == std::ldexp(1.0, static_cast<int>(i)));
    CHECK(s[s.size() - 2] < cstar);
}

TEST_CASE("quadratic counts match the fundamental discriminant oracle") {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = enumerate_fields(2, Integer(21));
    CHECK(r.records.size() == 13);
    CHECK(discs(r.records) == quadratic_oracle(21));
    for (long X : {2L, 5L, 6L, 100L, 1000L}) {
        const auto rx = enumerate_fields(2, Integer(X));
        CHECK(discs(rx.records) == quadratic_oracle(X));
    }
    for (const auto& rec : r.records) {
        CHECK(rec.poly_disc == rec.index * rec.index * rec.field_disc);
        const long d4 = ((rec.field_disc.get_si() % 4) + 4) % 4;
        CHECK((d4 == 0 || d4 == 1));
    }
    CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 5.0);
}

TEST_CASE("smallest cubic field") {
    const auto r24 = enumerate_fields(3, Integer(24));
    REQUIRE(r24.records.size() == 1);
    CHECK(r24.records[0].field_disc == -23);
    CHECK(is_isomorphic(r24.records[0].min_poly, MonicIntPoly::parse("x^3 - x - 1")));
    CHECK(enumerate_fields(3, Integer(23)).records.empty());
    CHECK(cubic_oracle(24, 30, 30, true).size() == 1);
    CHECK(cubic_oracle(23, 30, 30, true).empty());
}

TEST_CASE("cubic enumeration agrees with a brute-force box oracle") {
    const long X = 400;
    const auto r = enumerate_fields(3, Integer(X));
    const auto oracle = cubic_oracle(X, 25, 60, false);
    CHECK(r.records.size() == oracle.size());
    std::multiset<Integer> od;
    for (const auto& f : oracle) od.insert(maximal_order(f).discriminant());
    CHECK(discs(r.records) == od);
}

TEST_CASE("totally real cubic discriminants below 1000") {
    const auto r = enumerate_fields(3, Integer(1000));
    std::vector<long> real;
    for (const auto& rec : r.records)
        if (rec.r1 == 3) real.push_back(rec.field_disc.get_si());
    std::sort(real.begin(), real.end());
    const std::vector<long> expected{49,  81,  148, 169, 229, 257, 316, 321, 361, 404, 469, 473, 564, 568,
                                     621, 697, 733, 756, 761, 785, 788, 837, 892, 940, 961, 985, 993};
    CHECK(real == expected);
}

TEST_CASE("record invariants and determinism") {
    const auto a = enumerate_fields(3, Integer(2000));
    EnumerationOptions serial;
    serial.parallel = false;
    const auto b = enumerate_fields(3, Integer(2000), serial);
    CHECK(a.records == b.records);
    CHECK(std::is_sorted(a.records.begin(), a.records.end(), record_less));
    for (const auto& rec : a.records) {
        CHECK(rec.poly_disc == rec.index * rec.index * rec.field_disc);
        CHECK(abs(rec.field_disc) < 2000);
        CHECK((rec.field_disc < 0) == (rec.r2 % 2 == 1));
        CHECK(rec.r1 + 2 * rec.r2 == 3);
        CHECK(algebra::determinant(rec.order_basis) * rec.index == 1);
    }
    // Monotonicity in X.
    const auto small = enumerate_fields(3, Integer(700));
    for (const auto& rec : small.records)
        CHECK(std::find(a.records.begin(), a.records.end(), rec) != a.records.end());
}

TEST_CASE("sweep kernels agree") {
    const Registry empty;
    for (int n : {3, 4, 5}) {
        SweepSpec spec{n, 3, 8.0, Integer(5000), false};
        CHECK(sweep_stage_serial(spec, empty).size() == sweep_stage_parallel(spec, empty).size());
        const auto a = sweep_stage_serial(spec, empty), b = sweep_stage_parallel(spec, empty);
        bool same = a.size() == b.size();
        for (std::size_t i = 0; same && i < a.size(); ++i) same = a[i].key == b[i].key && a[i].stage == b[i].stage;
        CHECK(same);
    }
}

TEST_CASE("registry generators contain the defining polynomial") {
    for (const char* s : {"x^3 - x - 1", "x^3 - 3*x - 1", "x^4 - x - 1", "x^5 - x - 1", "x^2 - 5"}) {
        const auto f = MonicIntPoly::parse(s);
        const auto o = maximal_order(f);
        const auto gens = field_generators(o, 6);
        PolyKey k{};
        for (int i = 0; i < f.degree(); ++i) k[static_cast<std::size_t>(i)] = f.lower()[static_cast<std::size_t>(i)].get_si();
        bool found = false;
        for (const auto& g : gens) found = found || g.first == k;
        CHECK_MESSAGE(found, s);
        for (const auto& g : gens) {
            const int n = f.degree();
            std::vector<Integer> lower;
            for (int i = 0; i < n; ++i) lower.emplace_back(static_cast<long>(g.first[static_cast<std::size_t>(i)]));
            CHECK(is_isomorphic(f, MonicIntPoly(lower)));
        }
    }
}

TEST_CASE("quartic and quintic smallest fields") {
    // S4 quartic fields with |disc| < 300: 229, 257 (totally complex) and -283.
    const auto r4 = enumerate_fields(4, Integer(300), EnumerationOptions{FieldFilter::SnOnly});
    std::multiset<Integer> s4;
    for (const auto& r : r4.records) s4.insert(r.field_disc);
    CHECK(s4 == std::multiset<Integer>{Integer(-283), Integer(229), Integer(257)});
    CHECK(r4.undetermined.empty());
    const auto r5 = enumerate_fields(5, Integer(1700));
    // The two smallest quintic discriminants.
    REQUIRE(r5.records.size() == 2);
    CHECK(r5.records[0].field_disc == 1609);
    CHECK(r5.records[1].field_disc == 1649);
    for (const auto& r : r5.records) CHECK(r.galois.kind == GaloisKind::SnCertified);
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(enumerate_fields(1, Integer(10)), DomainError);
    CHECK_THROWS_AS(enumerate_fields(3, Integer(0)), DomainError);
}
