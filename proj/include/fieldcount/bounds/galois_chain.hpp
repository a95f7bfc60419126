#pragma once

#include <string>
#include <vector>

#include "fieldcount/algebra/integer.hpp"

namespace fieldcount::bounds {

using algebra::Rational;

// One layer 1 -> H -> G -> Q -> 1 of the recursion that bounds Galois G-extensions.
struct GaloisStep {
    enum class Kind {
        Abelian,     // H elementary abelian of order p^r
        NonAbelian,  // H a product of non-abelian simple groups, H0 a factor-stabiliser, |H0| >= sqrt|H|
        Z2Refined,   // H = Z/2 with the refined quadratic count
        S3,          // G = S3, taken from the count of cubic extensions
        Nilpotent,   // |Q| = 2, |H| = 4: G nilpotent, taken from the nilpotent case of Malle's conjecture
    };
    Kind kind = Kind::Abelian;
    unsigned long p = 0, r = 0;  // abelian data
    unsigned long h = 0, h0 = 0, q = 0, g = 0;

    static GaloisStep abelian(unsigned long p, unsigned long r, unsigned long q);
    static GaloisStep non_abelian(unsigned long h, unsigned long h0, unsigned long q);
    static GaloisStep z2_refined(unsigned long q);
    static GaloisStep s3();
    static GaloisStep nilpotent_order8();
};

struct GaloisChainSpec {
    std::vector<GaloisStep> steps;
};

// Exponent enclosure [lower, upper]; exact steps have lower == upper.
struct GaloisBound {
    Rational lower, upper;
    bool exact = true;
    bool at_most_three_eighths = false;  // decided on upper
    // Exponent the induction certifies for N(X, G): 3/8 when every layer stays
    // below it, otherwise the layer bound itself.
    Rational certified;
    std::string note;
};

Rational beta(unsigned long q);  // 3/8, 1/2 or 1 for |Q| >= 5, 3..4, 2

GaloisBound step_exponent(const GaloisStep& step);
// Largest step exponent: each layer must stay below the target for the induction.
GaloisBound galois_exponent(const GaloisChainSpec& spec);

// True for the proof's excluded small cases of the abelian estimate.
bool excluded_abelian_case(unsigned long h, unsigned long q);

}  // namespace fieldcount::bounds
