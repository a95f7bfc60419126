#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fieldcount/algebra/integer.hpp"
#include "fieldcount/algebra/mpoly.hpp"

namespace fieldcount::bounds {

using algebra::Integer;
using algebra::MPoly;
using algebra::Rational;

struct Range {
    std::int64_t lo = 0, hi = 0;  // inclusive
};

struct LocalDensity {
    std::uint32_t p = 0;
    std::uint64_t rho = 0;  // #{x mod p^2 : f(x) = 0 mod p^2}
    Rational factor;        // 1 - rho / p^{2k}
};

struct DensityReport {
    std::string polynomial;
    std::vector<std::string> vars;
    std::vector<Range> box;
    std::uint32_t prime_cutoff = 0;
    std::uint64_t points = 0;
    std::uint64_t squarefree = 0;  // f(x) != 0 and squarefree
    std::uint64_t zeros = 0;
    Rational empirical_fraction;
    Rational truncated_product;
    std::vector<LocalDensity> local;
};

// One range per variable of f (in f.vars() order). Evaluates every box point.
DensityReport sqfree_density(const MPoly& f, const std::vector<Range>& box, std::uint32_t prime_cutoff);
DensityReport sqfree_density_serial(const MPoly& f, const std::vector<Range>& box, std::uint32_t prime_cutoff);

// Box counting only: (points, squarefree values, zero values).
struct BoxCount {
    std::uint64_t points = 0, squarefree = 0, zeros = 0;
};
BoxCount count_squarefree_values(const MPoly& f, const std::vector<Range>& box, bool parallel);

std::uint64_t rho_p2(const MPoly& f, std::uint32_t p);

bool is_squarefree(const Integer& v);  // v != 0

}  // namespace fieldcount::bounds
