#pragma once

#include "fieldcount/algebra/poly.hpp"

namespace fieldcount::fields {

// Q[x]/(f) ≅ Q[x]/(g)? Quick rejects (degree, signature, field discriminant,
// splitting types at 20 primes), then Trager's decisive root test.
bool is_isomorphic(const algebra::MonicIntPoly& f, const algebra::MonicIntPoly& g);

// Decisive test only: does g have a root in Q[x]/(f)? Uses the norm of
// g(y - kθ) (charpoly of I⊗M_g + k·M_f⊗I), shifting k until squarefree.
bool trager_has_root(const algebra::MonicIntPoly& f, const algebra::MonicIntPoly& g);

// Frobenius cycle types at the first `count` primes not dividing disc(f).
std::vector<std::vector<int>> splitting_types(const algebra::MonicIntPoly& f, int count);

}  // namespace fieldcount::fields
