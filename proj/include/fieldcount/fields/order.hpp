#pragma once

#include <cstdint>
#include <vector>

#include "fieldcount/algebra/matrix.hpp"
#include "fieldcount/algebra/poly.hpp"

namespace fieldcount::fields {

using algebra::Integer;
using algebra::MonicIntPoly;
using algebra::QMatrix;
using algebra::QPoly;
using algebra::Rational;
using algebra::ZMatrix;
using algebra::ZPoly;

// Arithmetic in Q[x]/(f), elements in the power basis 1, θ, ..., θ^{n-1}.
QPoly mulmod(const QPoly& a, const QPoly& b, const ZPoly& f);
// Newton power sums s_0..s_{count-1} of the roots of f.
std::vector<Integer> power_sums(const MonicIntPoly& f, int count);
Rational trace(const QPoly& a, const std::vector<Integer>& sums);
// Matrix of y -> a*y on the power basis (row i = coordinates of a θ^i).
QMatrix multiplication_matrix(const QPoly& a, const ZPoly& f);
QPoly element_charpoly(const QPoly& a, const MonicIntPoly& f);

// A Z-order of Q[x]/(f) with an explicit basis and integral structure constants.
class Order {
  public:
    static Order equation_order(const MonicIntPoly& f);
    // basis rows: coordinates of ω_k in the power basis.
    static Order from_basis(const MonicIntPoly& f, const QMatrix& basis);

    const MonicIntPoly& poly() const { return f_; }
    int degree() const { return f_.degree(); }
    const QMatrix& basis() const { return basis_; }
    const QMatrix& basis_inverse() const { return basis_inv_; }
    // mult(i)(j, k): coefficient of ω_k in ω_i ω_j.
    const ZMatrix& mult(std::size_t i) const { return mult_[i]; }
    const Integer& index() const { return index_; }  // [O : Z[θ]]
    const Integer& poly_disc() const { return poly_disc_; }
    Integer discriminant() const;  // poly_disc / index^2

    std::vector<Integer> traces() const;  // Tr ω_k
    ZMatrix trace_form() const;           // Tr(ω_i ω_j)
    // Matrix of y -> x y in ω-coordinates (row j = coordinates of x ω_j).
    ZMatrix mult_matrix(const std::vector<Integer>& x) const;
    std::vector<Integer> multiply(const std::vector<Integer>& x, const std::vector<Integer>& y) const;
    QPoly to_power_basis(const std::vector<Integer>& x) const;
    QPoly to_power_basis(const std::vector<Rational>& x) const;
    std::vector<Rational> coordinates(const QPoly& a) const;
    ZPoly charpoly(const std::vector<Integer>& x) const;

  private:
    MonicIntPoly f_;
    QMatrix basis_, basis_inv_;
    std::vector<ZMatrix> mult_;
    Integer index_ = 1, poly_disc_ = 0;
};

// Dedekind's criterion: is Z[θ] maximal at p?
bool dedekind_p_maximal(const MonicIntPoly& f, std::uint64_t p);

// Maximal order via Dedekind's criterion and Round-2 p-radical enlargement at
// every prime p with p^2 | disc(f). Reducible f is a domain error.
Order maximal_order(const MonicIntPoly& f);

// Enlarges ord until it is p-maximal.
Order p_maximal_order(const Order& ord, std::uint64_t p);

}  // namespace fieldcount::fields
