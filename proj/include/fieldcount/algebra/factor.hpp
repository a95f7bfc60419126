#pragma once

#include <utility>
#include <vector>

#include "fieldcount/algebra/poly.hpp"

namespace fieldcount::algebra {

// Factorization of a nonzero integer polynomial into primitive irreducible
// factors with multiplicities (content and sign dropped), via squarefree
// decomposition over Q and Zassenhaus (Hensel lifting + recombination).
std::vector<std::pair<ZPoly, unsigned>> factor_over_Z(const ZPoly& f);

// Irreducible factors of a primitive squarefree polynomial of degree >= 1.
std::vector<ZPoly> factor_squarefree(const ZPoly& f);

// Irreducibility over Q, trying modular degree patterns before full factorization.
bool is_irreducible(const ZPoly& f);

// True when f has an irreducible factor over Q of degree exactly d.
bool has_factor_of_degree(const ZPoly& f, int d);

bool is_squarefree(const ZPoly& f);

}  // namespace fieldcount::algebra
