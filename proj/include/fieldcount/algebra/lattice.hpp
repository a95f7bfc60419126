#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fieldcount/algebra/matrix.hpp"

namespace fieldcount::algebra {

// LLL on a positive-definite Gram matrix. Returns the unimodular transform U
// (rows = new basis in old coordinates); gram is replaced by U G U^T.
ZMatrix lll_gram(QMatrix& gram, const Rational& delta = Rational(3, 4));

using DMatrix = std::vector<std::vector<double>>;
using LMatrix = std::vector<std::vector<std::int64_t>>;
LMatrix lll_gram(DMatrix& gram, double delta = 0.99);

// Reduced basis (rows) of the integer row lattice of b (full row rank).
ZMatrix lll_basis(const ZMatrix& b, const Rational& delta = Rational(3, 4));

// Calls visit(x) for every nonzero integer vector x with x^T G x <= bound,
// one of each +-pair (first nonzero coordinate from the top positive).
// Stops early when visit returns false.
void fincke_pohst(const DMatrix& gram, double bound, const std::function<bool(const std::vector<std::int64_t>&)>& visit);

// Same, with an affine centre: x ranges over integer vectors with
// (x - c)^T G (x - c) <= bound; no +- symmetry, zero included.
void fincke_pohst_centered(const DMatrix& gram, const std::vector<double>& centre, double bound,
                           const std::function<bool(const std::vector<std::int64_t>&)>& visit);

}  // namespace fieldcount::algebra

namespace fieldcount::algebra {

// Z-basis (rows) of {x in Z^n : v . x = 0}, v nonzero.
ZMatrix integer_kernel(const std::vector<Integer>& v);

// Exact positive-definiteness test (LDL^T pivots).
bool is_positive_definite(const QMatrix& gram);

}  // namespace fieldcount::algebra
