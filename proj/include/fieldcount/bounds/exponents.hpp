#pragma once

#include <string>
#include <vector>

#include "fieldcount/algebra/integer.hpp"

namespace fieldcount::bounds {

using algebra::Integer;
using algebra::Rational;

struct PaperParameters {
    unsigned long r = 0;
    unsigned long c = 0;
};

// r = floor(sqrt(log n)), c = least integer >= (n r!)^{1/r}; n >= 3.
PaperParameters paper_parameters(unsigned long n);

Rational schmidt_exponent(unsigned long n);  // (n+2)/4, n >= 2
Rational lower_exponent(unsigned long n);    // 1/2 + 1/n^2, n >= 3
// (4c/(n-2)) binom(r+4c, r)
Rational rc_exponent(unsigned long n, unsigned long r, unsigned long c);

struct ChainCheck {
    bool c_at_least_r = false;
    bool span_exceeds_n = false;   // binom(r+c, r) > n
    bool sigma_size_bound = false; // binom(r+4c, r) <= 10^r n
    bool all() const { return c_at_least_r && span_exceeds_n && sigma_size_bound; }
};
ChainCheck check_chain(unsigned long n, const PaperParameters& rc);

struct Optimum {
    unsigned long r = 0, c = 0;
    Rational exponent;
};

// Exact minimizer of rc_exponent over 1 <= r <= r_max, 1 <= c <= c_max subject to
// binom(r+c, r) > n/2. Ties: smaller r, then smaller c.
Optimum optimize_exponent(unsigned long n, unsigned long r_max, unsigned long c_max);
// Default search region around the default (r, c).
Optimum optimize_exponent(unsigned long n);

struct ExponentReport {
    unsigned long n = 0;
    Rational schmidt;
    PaperParameters paper_rc;
    Rational paper_exponent;
    bool optimized = false;
    Optimum optimum;
    Rational lower;
    Rational best_known;  // min(schmidt, paper_exponent)
    ChainCheck chain;
};
ExponentReport exponent_report(unsigned long n, bool optimize);

// log(exponent) / sqrt(log n)
double exponent_shape(const Rational& exponent, unsigned long n);

}  // namespace fieldcount::bounds
