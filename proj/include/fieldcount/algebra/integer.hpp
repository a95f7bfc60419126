#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace fieldcount::algebra {

using Integer = mpz_class;
using Rational = mpq_class;
using i128 = __int128;

std::string to_string(const Integer& x);
std::string to_string(const Rational& x);
std::string to_string(i128 x);
Integer from_i128(i128 x);
// Requires |x| < 2^127.
i128 to_i128(const Integer& x);
bool fits_i128(const Integer& x);

Integer binomial(unsigned long n, unsigned long k);
Integer isqrt(const Integer& x);
bool is_perfect_square(const Integer& x);
bool is_prime(const Integer& x);
bool is_prime_u64(std::uint64_t x);

inline constexpr std::uint32_t kPrimeTableLimit = 1u << 22;

// All primes <= bound (bound <= kPrimeTableLimit), from a process-wide sieve.
std::span<const std::uint32_t> primes_up_to(std::uint32_t bound);

// The i-th prime, 0-based (2, 3, 5, ...).
std::uint32_t nth_prime(std::size_t i);

// Complete factorization into (prime, exponent), ascending primes. |x| is
// factored; x = 0 is rejected. Trial division, then Pollard-Brent rho.
std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& x);

// Largest s with s^2 | x, from a full factorization.
Integer square_part_root(const Integer& x);

// Primes p with p^2 | x.
std::vector<Integer> primes_with_square_dividing(const Integer& x);

Integer floor_div(const Integer& a, const Integer& b);
Integer ceil_div(const Integer& a, const Integer& b);
Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);

inline Rational make_rational(const Integer& num, const Integer& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace fieldcount::algebra
