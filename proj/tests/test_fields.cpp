#include "doctest.h"
#include "fieldcount/fields/order.hpp"

using namespace fieldcount::fields;
using fieldcount::algebra::Integer;
using fieldcount::algebra::MonicIntPoly;

namespace {

// Oracle: fundamental discriminant of Q(sqrt m) for squarefree m.
Integer fundamental_disc(long m) {
    long r = ((m % 4) + 4) % 4;
    return r == 1 ? Integer(m) : Integer(4 * m);
}

}  // namespace

TEST_CASE("maximal orders") {
    auto o = maximal_order(MonicIntPoly::parse("x^2 - 5"));
    CHECK(o.index() == 2);
    CHECK(o.discriminant() == 5);
    CHECK(o.basis()(0, 0) == 1);
    CHECK(o.basis()(1, 0) == Rational(1, 2));
    CHECK(o.basis()(1, 1) == Rational(1, 2));
    CHECK(maximal_order(MonicIntPoly::parse("x^2 + 1")).discriminant() == -4);
    CHECK(maximal_order(MonicIntPoly::parse("x^3 - x - 1")).discriminant() == -23);
    CHECK(maximal_order(MonicIntPoly::parse("x^3 - x^2 - 2*x - 8")).discriminant() == -503);
    CHECK(maximal_order(MonicIntPoly::parse("x^3 - 19")).discriminant() == -1083);
    CHECK(maximal_order(MonicIntPoly::parse("x^3 - 2")).discriminant() == -108);
    CHECK(maximal_order(MonicIntPoly::parse("x^4 + 1")).discriminant() == 256);
    CHECK(maximal_order(MonicIntPoly::parse("x^4 - 10*x^2 + 1")).discriminant() == 2304);  // Q(sqrt2, sqrt3)
    CHECK(maximal_order(MonicIntPoly::parse("x^5 - 2")).discriminant() == 50000);
    for (long m = -60; m <= 60; ++m) {
        if (m == 0 || m == 1) continue;
        bool sf = true;
        for (long p = 2; p * p <= std::labs(m); ++p)
            if (m % (p * p) == 0) sf = false;
        if (!sf) continue;
        for (long k : {1L, 2L, 3L, 6L}) {
            std::vector<Integer> lower{Integer(-m * k * k), Integer(0)};
            auto ord = maximal_order(MonicIntPoly(lower));
            CHECK(ord.discriminant() == fundamental_disc(m));
            CHECK(ord.poly_disc() == ord.index() * ord.index() * ord.discriminant());
            CHECK(fieldcount::algebra::determinant(ord.basis()) * Rational(ord.index()) == 1);
        }
    }
    CHECK_THROWS_AS(maximal_order(MonicIntPoly::parse("x^2 - 4")), fieldcount::DomainError);
}

#include "fieldcount/fields/galois.hpp"
#include "fieldcount/fields/isomorphism.hpp"

TEST_CASE("isomorphism") {
    auto P = [](const char* s) { return MonicIntPoly::parse(s); };
    CHECK(is_isomorphic(P("x^2 + 1"), P("x^2 + 4*x + 5")));
    CHECK_FALSE(is_isomorphic(P("x^3 - x - 1"), P("x^3 + x - 1")));
    CHECK(is_isomorphic(P("x^3 - 2"), P("x^3 - 16")));
    CHECK(is_isomorphic(P("x^3 - 2"), P("x^3 - 4")));
    CHECK_FALSE(is_isomorphic(P("x^3 - 2"), P("x^3 - 3")));
    // Same discriminant 3^4*7^2... the two cyclic cubics of conductor 63 (disc 3969) are distinct fields.
    CHECK_FALSE(is_isomorphic(P("x^3 - 21*x - 35"), P("x^3 - 21*x + 28")));
    CHECK(trager_has_root(P("x^4 - 10*x^2 + 1"), P("x^4 - 10*x^2 + 1")));
    CHECK(is_isomorphic(P("x^4 - 10*x^2 + 1"), P("x^4 - 4*x^3 - 4*x^2 + 16*x - 8")));  // sqrt2+sqrt3 vs sqrt2 + sqrt3 + 1
    CHECK_THROWS_AS(is_isomorphic(P("x^2 - 1"), P("x^2 + 1")), fieldcount::DomainError);
}

TEST_CASE("galois labels") {
    auto P = [](const char* s) { return MonicIntPoly::parse(s); };
    CHECK(galois_type(P("x^3 - x - 1"), 25).to_string() == "Sn");
    CHECK(galois_type(P("x^3 - 3*x - 1"), 50).to_string() == "other:consistent with A3");
    CHECK(galois_type(P("x^2 + 1"), 1).to_string() == "Sn");
    CHECK(galois_type(P("x^4 + 1"), 50).to_string() == "other:consistent with V4");
    CHECK(galois_type(P("x^4 - 2"), 50).to_string() == "other:D4");
    CHECK(galois_type(P("x^4 + x^3 + x^2 + x + 1"), 50).to_string() == "other:consistent with C4");
    CHECK(galois_type(P("x^4 + 8*x + 12"), 50).to_string() == "other:A4");
    CHECK(galois_type(P("x^4 - x - 1"), 50).to_string() == "Sn");
    CHECK(galois_type(P("x^5 - x - 1"), 50).to_string() == "Sn");
    CHECK(galois_type(P("x^5 + x^4 - 4*x^3 - 3*x^2 + 3*x + 1"), 50).to_string() ==
          "other:contained in A5; consistent with C5");
    CHECK(galois_type(P("x^5 - 2"), 200).to_string() == "undetermined");  // F20
    CHECK(galois_type(P("x^5 - 5*x + 12"), 50).to_string() == "other:contained in A5; consistent with D5");
    CHECK(GaloisLabel::parse("other:D4").description == "D4");
    // Soundness pool: n-cycle plus transposition in D4 must not certify S4.
    CHECK_FALSE(sn_certified_by_types(4, {{4}, {1, 1, 2}}));
    CHECK(sn_certified_by_types(4, {{1, 3}, {1, 1, 2}}));
    CHECK_THROWS_AS(galois_type(P("x^3 - 1"), 10), fieldcount::DomainError);
}
