#include "fieldcount/bounds/exponents.hpp"

#include <cmath>

#include "fieldcount/errors.hpp"

namespace fieldcount::bounds {

namespace {

Integer binom(unsigned long a, unsigned long b) { return algebra::binomial(a, b); }

Integer factorial(unsigned long r) {
    Integer f = 1;
    for (unsigned long i = 2; i <= r; ++i) f *= i;
    return f;
}

Integer ipow(const Integer& b, unsigned long e) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), e);
    return out;
}

}  // namespace

PaperParameters paper_parameters(unsigned long n) {
    if (n < 3) throw DomainError("(r, c) parameters need n >= 3");
    // r = max k with k^2 <= log n, i.e. e^{k^2} <= n (never an equality for k >= 1).
    const double ln = std::log(static_cast<double>(n));
    unsigned long r = static_cast<unsigned long>(std::floor(std::sqrt(ln)));
    while (static_cast<double>((r + 1) * (r + 1)) <= ln) ++r;
    while (r > 0 && static_cast<double>(r * r) > ln) --r;
    if (r == 0) r = 1;  // n >= 3 gives log n > 1
    // c = least integer with c^r >= n r!
    const Integer target = Integer(n) * factorial(r);
    unsigned long c = static_cast<unsigned long>(std::floor(std::pow(target.get_d(), 1.0 / static_cast<double>(r))));
    if (c == 0) c = 1;
    while (c > 1 && ipow(Integer(c - 1), r) >= target) --c;
    while (ipow(Integer(c), r) < target) ++c;
    return {r, c};
}

Rational schmidt_exponent(unsigned long n) {
    if (n < 2) throw DomainError("Schmidt exponent needs n >= 2");
    return algebra::make_rational(Integer(n + 2), Integer(4));
}

Rational lower_exponent(unsigned long n) {
    if (n < 3) throw DomainError("lower exponent needs n >= 3");
    Rational q(1, 2);
    q += Rational(Integer(1), Integer(n) * Integer(n));
    return q;
}

Rational rc_exponent(unsigned long n, unsigned long r, unsigned long c) {
    if (n < 3) throw DomainError("exponent needs n >= 3");
    if (r < 1 || c < 1) throw DomainError("r and c must be positive");
    Rational q(Integer(4 * c) * binom(r + 4 * c, r), Integer(n - 2));
    q.canonicalize();
    return q;
}

ChainCheck check_chain(unsigned long n, const PaperParameters& rc) {
    ChainCheck k;
    k.c_at_least_r = rc.c >= rc.r;
    k.span_exceeds_n = binom(rc.r + rc.c, rc.r) > n;
    k.sigma_size_bound = binom(rc.r + 4 * rc.c, rc.r) <= ipow(Integer(10), rc.r) * n;
    return k;
}

Optimum optimize_exponent(unsigned long n, unsigned long r_max, unsigned long c_max) {
    if (n < 3) throw DomainError("optimizer needs n >= 3");
    Optimum best;
    bool found = false;
    for (unsigned long r = 1; r <= r_max; ++r) {
        // Both binom(r+c, r) and the objective increase strictly with c, so for fixed r
        // the least feasible c is the minimizer; find it by bisection.
        if (c_max == 0 || 2 * binom(r + c_max, r) <= n) continue;
        unsigned long lo = 0, hi = c_max;  // lo infeasible (or 0), hi feasible
        while (hi - lo > 1) {
            const unsigned long mid = lo + (hi - lo) / 2;
            if (2 * binom(r + mid, r) > n) hi = mid;
            else lo = mid;
        }
        const Rational e = rc_exponent(n, r, hi);
        if (!found || e < best.exponent) {
            best = {r, hi, e};
            found = true;
        }
    }
    if (!found) throw DomainError("optimizer search region has no feasible (r, c)");
    return best;
}

Optimum optimize_exponent(unsigned long n) {
    const auto p = paper_parameters(n);
    return optimize_exponent(n, p.r + 3, p.c);
}

ExponentReport exponent_report(unsigned long n, bool optimize) {
    ExponentReport rep;
    rep.n = n;
    rep.schmidt = schmidt_exponent(n);
    rep.paper_rc = paper_parameters(n);
    rep.paper_exponent = rc_exponent(n, rep.paper_rc.r, rep.paper_rc.c);
    rep.lower = lower_exponent(n);
    rep.chain = check_chain(n, rep.paper_rc);
    rep.optimized = optimize;
    if (optimize) rep.optimum = optimize_exponent(n);
    rep.best_known = rep.paper_exponent < rep.schmidt ? rep.paper_exponent : rep.schmidt;
    return rep;
}

double exponent_shape(const Rational& exponent, unsigned long n) {
    // log of a big rational via mpz sizes to avoid overflow of get_d.
    long en = 0, ed = 0;
    const double mn = mpz_get_d_2exp(&en, exponent.get_num_mpz_t());
    const double md = mpz_get_d_2exp(&ed, exponent.get_den_mpz_t());
    const double lg = std::log(mn) - std::log(md) + static_cast<double>(en - ed) * std::log(2.0);
    return lg / std::sqrt(std::log(static_cast<double>(n)));
}

}  // namespace fieldcount::bounds
