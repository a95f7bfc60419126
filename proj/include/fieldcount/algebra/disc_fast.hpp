#pragma once

#include <cstdint>

#include "fieldcount/algebra/integer.hpp"

namespace fieldcount::algebra {

// Discriminant of x^n + a_{n-1} x^{n-1} + ... + a_0 (lower = a_0..a_{n-1}).
// Expanded closed forms in 128-bit arithmetic for 2 <= n <= 6 when a magnitude
// guard proves there is no overflow; returns false otherwise.
bool disc_int128(const std::int64_t* lower, int n, i128& out);

// Exact discriminant: fast path when possible, GMP otherwise.
Integer disc_exact(const std::int64_t* lower, int n);

}  // namespace fieldcount::algebra
