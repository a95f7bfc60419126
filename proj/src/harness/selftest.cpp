#include "fieldcount/harness/selftest.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "fieldcount/bounds/exponents.hpp"
#include "fieldcount/bounds/galois_chain.hpp"
#include "fieldcount/fingerprint/fingerprint.hpp"
#include "fieldcount/harness/count.hpp"

namespace fieldcount::harness {

std::uint64_t seed_from_env(std::uint64_t fallback) {
    const char* s = std::getenv("FIELDCOUNT_SEED");
    if (!s || !*s) return fallback;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (*end != '\0') throw DomainError("FIELDCOUNT_SEED must be a decimal integer");
    return v;
}

algebra::MPoly random_polynomial(std::mt19937_64& rng, int max_vars, int max_degree, int coeff_bound) {
    std::uniform_int_distribution<int> nv(1, max_vars), deg(0, max_degree), coef(-coeff_bound, coeff_bound),
        terms(1, 6);
    const int k = nv(rng);
    std::vector<std::string> vars;
    for (int i = 0; i < k; ++i) vars.push_back("x" + std::to_string(i + 1));
    while (true) {
        algebra::MPoly p(vars);
        const int t = terms(rng);
        for (int j = 0; j < t; ++j) {
            int budget = deg(rng);
            algebra::MPoly m = algebra::MPoly::constant(vars, coef(rng));
            for (int i = 0; i < k && budget > 0; ++i) {
                std::uniform_int_distribution<int> e(0, budget);
                const int ei = e(rng);
                budget -= ei;
                m = m * algebra::MPoly::variable(vars, static_cast<std::size_t>(i)).pow(static_cast<unsigned>(ei));
            }
            p = p + m;
        }
        if (!p.is_zero()) return p;
    }
}

namespace {

SuiteResult lemma24(std::mt19937_64& rng) {
    SuiteResult r{"small nonvanishing point", true, ""};
    for (int i = 0; i < 300; ++i) {
        const auto D = random_polynomial(rng, 4, 6, 9);
        const auto a = fingerprint::small_nonvanishing_point(D);
        const long B = static_cast<long>((D.total_degree() + 2) / 2);
        bool ok = D.eval(a) != 0;
        for (const auto& x : a) ok = ok && abs(x) <= B;
        if (!ok) {
            r.passed = false;
            r.detail = D.to_string();
            break;
        }
    }
    return r;
}

SuiteResult invariance() {
    SuiteResult r{"f6 invariance", true, ""};
    const auto P = fingerprint::f6();
    const auto g1 = fingerprint::parse_permutation("(1,6,2)(3,4,5)", 6);
    const auto g2 = fingerprint::parse_permutation("(5,6)(3,4)", 6);
    r.passed = fingerprint::check_invariance(P, {g1, g2}) &&
               !fingerprint::check_invariance(P, {fingerprint::parse_permutation("(1,2)", 6)});
    return r;
}

SuiteResult multisymmetric(std::mt19937_64& rng) {
    SuiteResult r{"multisymmetric f_sigma permutation invariance", true, ""};
    std::uniform_int_distribution<long> num(-9, 9), den(1, 6);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 5), k = 1 + static_cast<std::size_t>(t % 3);
        std::vector<std::vector<algebra::Rational>> x(n, std::vector<algebra::Rational>(k));
        for (auto& row : x)
            for (auto& v : row) {
                v = algebra::Rational(num(rng), den(rng));
                v.canonicalize();
            }
        auto y = x;
        std::shuffle(y.begin(), y.end(), rng);
        for (const auto& s : fingerprint::exponents_up_to(k, 4))
            if (fingerprint::f_sigma_points(s, x) != fingerprint::f_sigma_points(s, y)) r.passed = false;
    }
    return r;
}

SuiteResult exponent_chain() {
    SuiteResult r{"exponent chain n = 3..2000", true, ""};
    for (unsigned long n = 3; n <= 2000; ++n) {
        const auto p = bounds::paper_parameters(n);
        if (!bounds::check_chain(n, p).all()) {
            r.passed = false;
            r.detail = "n = " + std::to_string(n);
            break;
        }
        const auto S = fingerprint::SigmaSet::make(p.r, static_cast<unsigned>(p.c));
        if (n <= 60 && !S.inclusions_hold()) r.passed = false;
    }
    return r;
}

SuiteResult galois_chain() {
    SuiteResult r{"galois exponent case analysis", true, ""};
    using bounds::GaloisStep;
    for (unsigned long p : {2UL, 3UL, 5UL, 7UL})
        for (unsigned long e = 1; e <= 6; ++e)
            for (unsigned long q = 2; q <= 30; ++q) {
                const auto s = GaloisStep::abelian(p, e, q);
                if (bounds::step_exponent(s).at_most_three_eighths == bounds::excluded_abelian_case(s.h, q)) r.passed = false;
            }
    r.passed = r.passed && bounds::galois_exponent({{GaloisStep::z2_refined(6)}}).upper == algebra::Rational(17, 48);
    return r;
}

SuiteResult reconstruction() {
    SuiteResult r{"fingerprint roundtrip on cubics |d| < 500", true, ""};
    const auto res = fields::enumerate_fields(3, algebra::Integer(500));
    const auto S = fingerprint::sigma_sets_paper(3);
    for (const auto& L : res.records) {
        const auto t = fingerprint::construct_tuple(L, S);
        const auto fp = fingerprint::fingerprint_field(t, S);
        const auto rec = fingerprint::reconstruct(fp);
        if (!fingerprint::roundtrip(rec, fp) || !fingerprint::matrices_commute(rec)) {
            r.passed = false;
            r.detail = L.min_poly.to_string();
        }
    }
    r.detail = std::to_string(res.records.size()) + " fields" + (r.detail.empty() ? "" : "; failed at " + r.detail);
    return r;
}

SuiteResult small_counts() {
    SuiteResult r{"small exact counts", true, ""};
    r.passed = fields::enumerate_fields(2, algebra::Integer(21)).records.size() == 13 &&
               fields::enumerate_fields(3, algebra::Integer(24)).records.size() == 1 &&
               fields::enumerate_fields(3, algebra::Integer(23)).records.empty();
    return r;
}

}  // namespace

std::vector<SuiteResult> run_selftest(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<SuiteResult> out;
    out.push_back(small_counts());
    out.push_back(lemma24(rng));
    out.push_back(invariance());
    out.push_back(multisymmetric(rng));
    out.push_back(exponent_chain());
    out.push_back(galois_chain());
    out.push_back(reconstruction());
    return out;
}

}  // namespace fieldcount::harness
