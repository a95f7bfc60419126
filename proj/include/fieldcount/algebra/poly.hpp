#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "fieldcount/algebra/integer.hpp"
#include "fieldcount/errors.hpp"

namespace fieldcount::algebra {

// Dense univariate polynomial, coefficients low to high, no trailing zeros.
template <class T>
class Poly {
  public:
    Poly() = default;
    Poly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }
    explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly constant(const T& v) { return Poly(std::vector<T>{v}); }
    static Poly monomial(const T& v, std::size_t k) {
        std::vector<T> c(k + 1, T(0));
        c[k] = v;
        return Poly(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<T>& coeffs() const { return c_; }
    T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
    const T& lead() const { return c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    T eval(const T& x) const {
        T r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<T> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
        return Poly(std::move(d));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a) {
        std::vector<T> r(a.c_);
        for (auto& v : r) v = -v;
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }
    friend Poly operator*(const T& s, const Poly& a) {
        std::vector<T> r(a.c_);
        for (auto& v : r) v *= s;
        return Poly(std::move(r));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    // Division with remainder. Requires an invertible leading coefficient of b
    // in T (always for Rational; for Integer only monic / unit divisors).
    void divmod(const Poly& b, Poly& q, Poly& r) const {
        if (b.is_zero()) throw DomainError("polynomial division by zero");
        std::vector<T> rem(c_);
        const int db = b.degree();
        if (degree() < db) {
            q = {};
            r = *this;
            return;
        }
        std::vector<T> quo(static_cast<std::size_t>(degree() - db + 1), T(0));
        const T& lb = b.lead();
        for (int k = degree(); k >= db; --k) {
            T coef = rem[static_cast<std::size_t>(k)];
            if (coef == 0) continue;
            if (lb != 1) {
                if constexpr (std::is_same_v<T, Integer>) {
                    if (coef % lb != 0) throw DomainError("inexact integer polynomial division");
                }
                coef /= lb;
            }
            quo[static_cast<std::size_t>(k - db)] = coef;
            for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= coef * b.c_[static_cast<std::size_t>(j)];
        }
        rem.resize(static_cast<std::size_t>(db));
        q = Poly(std::move(quo));
        r = Poly(std::move(rem));
    }
    Poly operator%(const Poly& b) const {
        Poly q, r;
        divmod(b, q, r);
        return r;
    }
    Poly operator/(const Poly& b) const {
        Poly q, r;
        divmod(b, q, r);
        return q;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<T> c_;
};

using ZPoly = Poly<Integer>;
using QPoly = Poly<Rational>;

QPoly to_qpoly(const ZPoly& p);
// Scales by the lcm of denominators and divides by the content; sign makes lead > 0.
ZPoly primitive_part(const QPoly& p);
Integer content(const ZPoly& p);
QPoly monic(const QPoly& p);
QPoly gcd(const QPoly& a, const QPoly& b);
// Sylvester-matrix resultant.
Integer resultant(const ZPoly& a, const ZPoly& b);
// Number of distinct real roots (Sturm sequence).
int count_real_roots(const ZPoly& f);

// Monic polynomial x^n + a_{n-1} x^{n-1} + ... + a_0 with integer coefficients.
class MonicIntPoly {
  public:
    MonicIntPoly() = default;
    // low-to-high non-leading coefficients a_0..a_{n-1}; degree = size.
    explicit MonicIntPoly(std::vector<Integer> lower);
    static MonicIntPoly from_zpoly(const ZPoly& p);
    static MonicIntPoly parse(std::string_view text);

    int degree() const { return static_cast<int>(a_.size()); }
    // Coefficient of x^i; i == degree gives 1.
    Integer coeff(int i) const { return i == degree() ? Integer(1) : a_.at(static_cast<std::size_t>(i)); }
    const std::vector<Integer>& lower() const { return a_; }
    ZPoly to_zpoly() const;
    std::string to_string() const;

    // Canonical order: degree, then a_{n-1}, ..., a_0 lexicographically.
    friend std::strong_ordering operator<=>(const MonicIntPoly& x, const MonicIntPoly& y);
    friend bool operator==(const MonicIntPoly& x, const MonicIntPoly& y) { return x.a_ == y.a_; }

  private:
    std::vector<Integer> a_;
};

Integer poly_discriminant(const MonicIntPoly& f);
Integer poly_discriminant(const ZPoly& f);

// Shared text format for univariate integer polynomials in x (any leading coefficient).
std::string format_poly(const ZPoly& p, char var = 'x');
ZPoly parse_zpoly(std::string_view text, char var = 'x');

}  // namespace fieldcount::algebra

template <>
struct std::hash<fieldcount::algebra::MonicIntPoly> {
    std::size_t operator()(const fieldcount::algebra::MonicIntPoly& f) const noexcept;
};
