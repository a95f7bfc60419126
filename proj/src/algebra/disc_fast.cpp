#include "fieldcount/algebra/disc_fast.hpp"

#include <cmath>
#include <vector>

#include "fieldcount/algebra/poly.hpp"

namespace fieldcount::algebra {

namespace {
#include "disc_formulas.inc"
}  // namespace

bool disc_int128(const std::int64_t* a, int n, i128& out) {
    if (n < 2 || n > 6) return false;
    // Every monomial has weighted degree n(n-1) with weight(a_i) = n - i, so it
    // is bounded by M^(n(n-1)) with M = max |a_i|^(1/(n-i)); partial products too.
    double log2m = 0.0;
    for (int i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        const double l = std::log2(std::fabs(static_cast<double>(a[i]))) / (n - i);
        if (l > log2m) log2m = l;
    }
    const double bound = std::log2(kDiscCoeffAbsSum[n]) + n * (n - 1) * log2m;
    if (bound >= 124.0) return false;
    switch (n) {
        case 2: out = disc_degree2(a); break;
        case 3: out = disc_degree3(a); break;
        case 4: out = disc_degree4(a); break;
        case 5: out = disc_degree5(a); break;
        default: out = disc_degree6(a); break;
    }
    return true;
}

Integer disc_exact(const std::int64_t* a, int n) {
    i128 v;
    if (disc_int128(a, n, v)) {
        return from_i128(v);
    }
    std::vector<Integer> lower;
    for (int i = 0; i < n; ++i) lower.emplace_back(static_cast<long>(a[i]));
    return poly_discriminant(MonicIntPoly(std::move(lower)));
}

}  // namespace fieldcount::algebra
