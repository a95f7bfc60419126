#pragma once

#include <complex>
#include <vector>

#include "fieldcount/algebra/matrix.hpp"
#include "fieldcount/algebra/poly.hpp"

namespace fieldcount::fields {

// Numerical embeddings of a Z-basis of a number field.
struct Embeddings {
    int degree = 0;
    int r1 = 0;
    // All n complex roots of f: the r1 real ones first (imaginary part zeroed),
    // then one root of each conjugate pair (Im > 0), then their conjugates.
    std::vector<std::complex<long double>> roots;
    // values[k][i] = sigma_i(omega_k)
    std::vector<std::vector<std::complex<long double>>> values;
    // Real Minkowski coordinates: real embeddings, then (sqrt2 Re, sqrt2 Im) per pair,
    // so that |coords(x)|^2 = T2(x).
    std::vector<std::vector<long double>> coords;

    // Real coordinates / embeddings of the element with the given basis coordinates.
    std::vector<long double> real_vector(const std::vector<long long>& x) const;
    std::vector<std::complex<long double>> conjugates(const std::vector<long long>& x) const;
    // Gram matrix of T2 on the basis.
    std::vector<std::vector<long double>> t2_gram() const;
};

// basis rows: coordinates of omega_k in the power basis of f.
Embeddings embed_basis(const algebra::MonicIntPoly& f, const algebra::QMatrix& basis);

}  // namespace fieldcount::fields
