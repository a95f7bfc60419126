#include "fieldcount/bounds/galois_chain.hpp"

#include "fieldcount/errors.hpp"

namespace fieldcount::bounds {

using algebra::Integer;

namespace {

unsigned long upow(unsigned long p, unsigned long r) {
    unsigned long out = 1;
    for (unsigned long i = 0; i < r; ++i) {
        if (out > (~0UL) / p) throw DomainError("group order overflow");
        out *= p;
    }
    return out;
}

Rational frac(const Integer& a, const Integer& b) {
    Rational q(a, b);
    q.canonicalize();
    return q;
}

// Malle's exponent l/((l-1)|G|) with l the least prime divisor of |G|.
Rational malle_exponent(unsigned long g) {
    unsigned long l = 2;
    while (g % l != 0) ++l;
    return frac(Integer(l), Integer(l - 1) * g);
}

GaloisBound exact(const Rational& e, std::string note) {
    GaloisBound b;
    b.lower = b.upper = e;
    b.exact = true;
    b.at_most_three_eighths = e <= Rational(3, 8);
    b.note = std::move(note);
    b.certified = b.at_most_three_eighths ? Rational(3, 8) : e;
    return b;
}

void check_order(const GaloisStep& s) {
    if (s.h == 0 || s.q == 0) throw DomainError("group orders must be positive");
    if (s.g != s.h * s.q) throw DomainError("|G| must equal |H||Q|");
}

}  // namespace

GaloisStep GaloisStep::abelian(unsigned long p, unsigned long r, unsigned long q) {
    GaloisStep s;
    s.kind = Kind::Abelian;
    s.p = p;
    s.r = r;
    s.h = (p >= 2 && r >= 1) ? upow(p, r) : 0;
    s.q = q;
    s.g = s.h * q;
    return s;
}

GaloisStep GaloisStep::non_abelian(unsigned long h, unsigned long h0, unsigned long q) {
    GaloisStep s;
    s.kind = Kind::NonAbelian;
    s.h = h;
    s.h0 = h0;
    s.q = q;
    s.g = h * q;
    return s;
}

GaloisStep GaloisStep::z2_refined(unsigned long q) {
    GaloisStep s;
    s.kind = Kind::Z2Refined;
    s.p = 2;
    s.r = 1;
    s.h = 2;
    s.q = q;
    s.g = 2 * q;
    return s;
}

GaloisStep GaloisStep::s3() {
    GaloisStep s;
    s.kind = Kind::S3;
    s.p = 3;
    s.r = 1;
    s.h = 3;
    s.q = 2;
    s.g = 6;
    return s;
}

GaloisStep GaloisStep::nilpotent_order8() {
    GaloisStep s;
    s.kind = Kind::Nilpotent;
    s.p = 2;
    s.r = 2;
    s.h = 4;
    s.q = 2;
    s.g = 8;
    return s;
}

Rational beta(unsigned long q) {
    if (q >= 5) return Rational(3, 8);
    if (q >= 3) return Rational(1, 2);
    if (q == 2) return Rational(1);
    throw DomainError("beta(Q) needs |Q| >= 2");
}

bool excluded_abelian_case(unsigned long h, unsigned long q) {
    return h == 2 || (q == 2 && (h == 3 || h == 4));
}

GaloisBound step_exponent(const GaloisStep& s) {
    check_order(s);
    switch (s.kind) {
        case GaloisStep::Kind::Abelian: {
            if (!algebra::is_prime_u64(s.p)) throw DomainError("abelian step needs prime p");
            if (s.r < 1 || s.h != upow(s.p, s.r)) throw DomainError("abelian step needs |H| = p^r");
            const Rational b = beta(s.q);
            const Integer h(s.h);
            Rational first = (Rational(Integer(s.r), Integer(2)) + b) / Rational(h);
            Rational second = (frac(Integer(s.p), Integer(s.p - 1) * s.q) + b) / Rational(h);
            first.canonicalize();
            second.canonicalize();
            return exact(first < second ? second : first,
                         excluded_abelian_case(s.h, s.q) ? "excluded small case" : "abelian");
        }
        case GaloisStep::Kind::NonAbelian: {
            if (s.h < 60) throw DomainError("non-abelian minimal normal subgroup has order >= 60");
            if (s.h0 == 0 || s.h0 > s.h || s.h % s.h0 != 0 || s.h0 * s.h0 < s.h)
                throw DomainError("non-abelian step needs |H0| | |H| and |H0| >= sqrt|H|");
            // 1/4 + 1/(2 sqrt h) + 1/h with sqrt h enclosed in [m/K, (m+1)/K].
            const Integer k("100000000");
            const Integer m = algebra::isqrt(Integer(s.h) * k * k);
            const Rational base = Rational(1, 4) + frac(Integer(1), Integer(s.h));
            GaloisBound b;
            b.exact = (m * m == Integer(s.h) * k * k);
            b.lower = base + frac(k, 2 * (m + 1));
            b.upper = base + frac(k, 2 * m);
            if (b.exact) b.lower = b.upper;
            b.at_most_three_eighths = b.upper <= Rational(3, 8);
            b.note = "non-abelian";
            b.certified = b.at_most_three_eighths ? Rational(3, 8) : b.upper;
            return b;
        }
        case GaloisStep::Kind::Z2Refined: {
            if (s.h != 2) throw DomainError("refinement needs H = Z/2");
            Rational e = beta(s.q) / Rational(2) + frac(Integer(2), Integer(s.g));
            e.canonicalize();
            return exact(e, "Z/2 refinement");
        }
        case GaloisStep::Kind::S3:
            if (s.g != 6 || s.h != 3) throw DomainError("S3 step needs |H| = 3, |Q| = 2");
            return exact(malle_exponent(6), "cited: cubic extensions");
        case GaloisStep::Kind::Nilpotent:
            if (s.g != 8 || s.h != 4) throw DomainError("nilpotent step needs |H| = 4, |Q| = 2");
            return exact(malle_exponent(8), "cited: nilpotent groups");
    }
    throw DomainError("unknown step kind");
}

GaloisBound galois_exponent(const GaloisChainSpec& spec) {
    if (spec.steps.empty()) throw DomainError("empty Galois chain");
    // Consecutive steps must nest: the quotient of one layer is the group of the next.
    for (std::size_t i = 0; i + 1 < spec.steps.size(); ++i)
        if (spec.steps[i].q != spec.steps[i + 1].g)
            throw DomainError("chain steps do not nest: |Q| of a step must be |G| of the next");
    GaloisBound worst;
    bool first = true;
    for (const auto& s : spec.steps) {
        const GaloisBound b = step_exponent(s);
        if (first || worst.upper < b.upper) {
            worst = b;
            first = false;
        }
    }
    bool ok = true;
    for (const auto& s : spec.steps) ok = ok && step_exponent(s).at_most_three_eighths;
    worst.at_most_three_eighths = ok;
    worst.certified = ok ? Rational(3, 8) : worst.upper;
    return worst;
}

}  // namespace fieldcount::bounds
