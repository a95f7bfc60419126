#pragma once

#include <string>
#include <vector>

#include "fieldcount/algebra/poly.hpp"

namespace fieldcount::fields {

enum class GaloisKind { SnCertified, Other, Undetermined };

struct GaloisLabel {
    GaloisKind kind = GaloisKind::Undetermined;
    std::string description;  // only for Other
    // Text form used in caches and reports: "Sn", "other:<description>", "undetermined".
    std::string to_string() const;
    static GaloisLabel parse(const std::string& text);
    // Regular (Galois) action per the allowlist of labels for n <= 5; labels
    // starting with "consistent with" are sampling-based and carry a heuristic flag.
    bool is_galois(int degree) const;
    bool heuristic() const;
    friend bool operator==(const GaloisLabel&, const GaloisLabel&) = default;
};

// Samples Frobenius cycle types at the first `sample_primes` primes not dividing
// disc(f) (stopping early once S_n is certified) and combines them with exact
// discriminant / resolvent information. Never certifies S_n falsely.
GaloisLabel galois_type(const algebra::MonicIntPoly& f, int sample_primes);

// The cycle-type rule alone: transposition plus primitivity (n prime, or a
// cycle of prime length p with n/2 < p < n).
bool sn_certified_by_types(int n, const std::vector<std::vector<int>>& types);

// Resolvent cubic of a monic quartic x^4 + b x^3 + c x^2 + d x + e.
algebra::ZPoly resolvent_cubic(const algebra::MonicIntPoly& f);

}  // namespace fieldcount::fields
