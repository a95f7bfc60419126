#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "fieldcount/algebra/integer.hpp"

namespace fieldcount::fields {

inline constexpr int kMaxHunterDegree = 7;

// Coefficients a_0..a_{n-1} of a monic polynomial (unused slots zero).
using PolyKey = std::array<std::int64_t, kMaxHunterDegree>;

struct PolyKeyHash {
    std::size_t operator()(const PolyKey& k) const noexcept;
};

// Canonical order on same-degree keys: a_{n-1}, ..., a_0 lexicographically.
bool canonical_less(const PolyKey& x, const PolyKey& y, int n);

// Hermite constant gamma_k (k = 1..7).
double hermite_constant(int k);

// Hunter bound gamma_{n-1} (X/n)^{1/(n-1)} on T2(α) - Tr(α)^2/n.
double hunter_bound(int n, double X);

// Centred T2 of the roots: T2 - a_{n-1}^2/n, with T2 = s_2 + 2 sum Im(x_i)^2.
// Returns a negative value if the root iteration fails.
double centred_t2(const std::int64_t* lower, int n);

inline constexpr double kStageTolerance = 1e-6;

// Smallest s >= 0 with centred_t2 <= 2^s + tolerance (-1 on failure).
int poly_stage(const std::int64_t* lower, int n);

// Visits every monic integer polynomial of degree n with a_{n-1} = -t and
// a_0 != 0 in the necessary-condition box for T2 <= t^2/n + C: power-sum
// bounds |s_k| <= T^{k/2} and Maclaurin bounds |e_k| <= binom(n,k)(T/n)^{k/2}.
// If outer >= 0, only the slice with a_{n-2} = outer is visited.
void for_each_box_poly(int n, int t, double C, const std::function<void(const std::int64_t*)>& visit,
                       bool has_outer = false, std::int64_t outer = 0);

// Range of a_{n-2} in the box (inclusive).
std::pair<std::int64_t, std::int64_t> outer_range(int n, int t, double C);

// True when |disc| divided by its largest square divisor is < X (a necessary
// condition for the field discriminant to be < X).
bool squarefree_kernel_below(const algebra::Integer& disc, const algebra::Integer& X);
bool squarefree_kernel_below(unsigned __int128 absdisc, std::uint64_t X);

}  // namespace fieldcount::fields
