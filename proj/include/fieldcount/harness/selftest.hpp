#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "fieldcount/algebra/mpoly.hpp"

namespace fieldcount::harness {

// FIELDCOUNT_SEED if set (decimal), else the given default.
std::uint64_t seed_from_env(std::uint64_t fallback = 20240601);

// Nonzero polynomial in 1..max_vars variables, total degree <= max_degree,
// coefficients in [-coeff_bound, coeff_bound].
algebra::MPoly random_polynomial(std::mt19937_64& rng, int max_vars, int max_degree, int coeff_bound);

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Lemma-level property suites (fast); deterministic for a given seed.
std::vector<SuiteResult> run_selftest(std::uint64_t seed);

}  // namespace fieldcount::harness
