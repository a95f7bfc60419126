#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "fieldcount/algebra/poly.hpp"

namespace fieldcount::algebra {

// Polynomial over F_p (p < 2^32 prime), coefficients low to high, trimmed.
class FpPoly {
  public:
    FpPoly() = default;
    FpPoly(std::uint64_t p, std::vector<std::uint64_t> c);
    static FpPoly from_zpoly(const ZPoly& f, std::uint64_t p);
    static FpPoly x(std::uint64_t p) { return FpPoly(p, {0, 1}); }
    static FpPoly one(std::uint64_t p) { return FpPoly(p, {1}); }

    std::uint64_t prime() const { return p_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    const std::vector<std::uint64_t>& coeffs() const { return c_; }
    std::uint64_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    std::uint64_t lead() const { return c_.back(); }

    FpPoly monic() const;
    FpPoly derivative() const;
    ZPoly lift_symmetric() const;  // coefficients in (-p/2, p/2]

    friend FpPoly operator+(const FpPoly& a, const FpPoly& b);
    friend FpPoly operator-(const FpPoly& a, const FpPoly& b);
    friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
    friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }
    void divmod(const FpPoly& b, FpPoly& q, FpPoly& r) const;
    FpPoly operator%(const FpPoly& b) const;
    FpPoly operator/(const FpPoly& b) const;

  private:
    void trim();
    std::uint64_t p_ = 2;
    std::vector<std::uint64_t> c_;
};

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t invmod(std::uint64_t a, std::uint64_t p);

FpPoly gcd(const FpPoly& a, const FpPoly& b);
// Extended gcd: returns g = s a + t b (g monic).
FpPoly xgcd(const FpPoly& a, const FpPoly& b, FpPoly& s, FpPoly& t);
FpPoly powmod(const FpPoly& base, const Integer& e, const FpPoly& mod);

// Full factorization into monic irreducibles with multiplicities (Yun squarefree
// decomposition, distinct-degree, then Cantor-Zassenhaus equal-degree split).
std::vector<std::pair<FpPoly, unsigned>> factor_mod_p(const FpPoly& f, std::mt19937_64& rng);

// Degrees of the irreducible factors of a squarefree f (distinct-degree only), ascending.
std::vector<int> factor_degrees_squarefree(const FpPoly& f);

// Cycle type of Frobenius at p for a monic integer f, or empty when f mod p is
// not squarefree (p divides the discriminant).
std::vector<int> splitting_type(const ZPoly& f, std::uint64_t p);

}  // namespace fieldcount::algebra
