#pragma once

#include <complex>
#include <vector>

#include "fieldcount/algebra/poly.hpp"

namespace fieldcount::algebra {

// All complex roots of a monic polynomial given by its non-leading
// coefficients a_0..a_{n-1} (Aberth-Ehrlich iteration). Returns false if the
// iteration did not converge.
template <class R>
bool aberth_roots(const R* lower, int n, std::complex<R>* roots, int max_iter = 200);

std::vector<std::complex<long double>> complex_roots(const ZPoly& monic_f);

}  // namespace fieldcount::algebra
