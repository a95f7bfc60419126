#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fieldcount/algebra/integer.hpp"

namespace fieldcount::algebra {

// Sparse multivariate polynomial with integer coefficients over named variables.
class MPoly {
  public:
    using Monomial = std::vector<unsigned>;  // exponents, indexed like vars()

    MPoly() = default;
    explicit MPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}
    static MPoly constant(std::vector<std::string> vars, const Integer& c);
    static MPoly variable(std::vector<std::string> vars, std::size_t index);

    // Parses +, -, *, ^ (non-negative integer exponents), parentheses, integer
    // literals and identifiers. Variables are collected in order of first appearance
    // unless `vars` is given.
    static MPoly parse(std::string_view text, std::vector<std::string> vars = {});

    const std::vector<std::string>& vars() const { return vars_; }
    const std::map<Monomial, Integer>& terms() const { return t_; }
    unsigned total_degree() const;
    bool is_zero() const { return t_.empty(); }

    Integer eval(const std::vector<Integer>& x) const;
    std::int64_t eval_mod(const std::vector<std::int64_t>& x, std::int64_t m) const;

    friend MPoly operator+(const MPoly& a, const MPoly& b);
    friend MPoly operator-(const MPoly& a, const MPoly& b);
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    MPoly pow(unsigned e) const;
    // Fixes variable `index` to `value` (the variable stays in vars() with exponent 0).
    MPoly substitute(std::size_t index, const Integer& value) const;
    // x_i -> x_{perm[i]} (0-based images).
    MPoly permute(const std::vector<std::size_t>& perm) const;
    friend bool operator==(const MPoly& a, const MPoly& b) { return a.t_ == b.t_; }

    std::string to_string() const;

  private:
    void add_term(const Monomial& m, const Integer& c);
    std::vector<std::string> vars_;
    std::map<Monomial, Integer> t_;
};

}  // namespace fieldcount::algebra
