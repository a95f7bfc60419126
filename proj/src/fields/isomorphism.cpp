#include "fieldcount/fields/isomorphism.hpp"

#include "fieldcount/algebra/factor.hpp"
#include "fieldcount/algebra/fp_poly.hpp"
#include "fieldcount/algebra/matrix.hpp"
#include "fieldcount/fields/order.hpp"

namespace fieldcount::fields {

using algebra::Integer;
using algebra::MonicIntPoly;
using algebra::ZMatrix;

std::vector<std::vector<int>> splitting_types(const MonicIntPoly& f, int count) {
    std::vector<std::vector<int>> out;
    const algebra::ZPoly fz = f.to_zpoly();
    for (std::size_t i = 0; static_cast<int>(out.size()) < count; ++i) {
        auto t = algebra::splitting_type(fz, algebra::nth_prime(i));
        if (!t.empty()) out.push_back(std::move(t));
    }
    return out;
}

namespace {

ZMatrix companion(const MonicIntPoly& f) {
    const std::size_t n = static_cast<std::size_t>(f.degree());
    ZMatrix m(n, n);
    for (std::size_t i = 1; i < n; ++i) m(i, i - 1) = 1;
    for (std::size_t i = 0; i < n; ++i) m(i, n - 1) = -f.coeff(static_cast<int>(i));
    return m;
}

}  // namespace

bool trager_has_root(const MonicIntPoly& f, const MonicIntPoly& g) {
    const std::size_t n = static_cast<std::size_t>(f.degree()), m = static_cast<std::size_t>(g.degree());
    const ZMatrix cf = companion(f), cg = companion(g);
    for (long k = 0; k < 1000; ++k) {
        // I_n ⊗ M_g + k M_f ⊗ I_m
        ZMatrix big(n * m, n * m);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = 0; b < m; ++b) big(i * m + a, i * m + b) += cg(a, b);
        if (k != 0)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    if (cf(i, j) == 0) continue;
                    for (std::size_t a = 0; a < m; ++a) big(i * m + a, j * m + a) += k * cf(i, j);
                }
        const algebra::ZPoly N = algebra::charpoly_integral(big);
        if (!algebra::is_squarefree(N)) continue;
        for (const auto& h : algebra::factor_squarefree(N))
            if (h.degree() == static_cast<int>(n)) return true;
        return false;
    }
    throw InternalConsistencyError("no squarefree Trager shift found");
}

bool is_isomorphic(const MonicIntPoly& f, const MonicIntPoly& g) {
    if (!algebra::is_irreducible(f.to_zpoly()) || !algebra::is_irreducible(g.to_zpoly()))
        throw DomainError("is_isomorphic needs irreducible polynomials");
    if (f.degree() != g.degree()) return false;
    if (f == g) return true;
    if (algebra::count_real_roots(f.to_zpoly()) != algebra::count_real_roots(g.to_zpoly())) return false;
    const Integer df = algebra::poly_discriminant(f), dg = algebra::poly_discriminant(g);
    // Discriminants differ by a rational square for isomorphic fields.
    if (sgn(df) != sgn(dg) || !algebra::is_perfect_square(abs(df * dg))) return false;
    if (maximal_order(f).discriminant() != maximal_order(g).discriminant()) return false;
    const algebra::ZPoly fz = f.to_zpoly(), gz = g.to_zpoly();
    int compared = 0;
    for (std::size_t i = 0; compared < 20; ++i) {
        const std::uint32_t p = algebra::nth_prime(i);
        auto tf = algebra::splitting_type(fz, p), tg = algebra::splitting_type(gz, p);
        if (tf.empty() || tg.empty()) continue;
        if (tf != tg) return false;
        ++compared;
    }
    return trager_has_root(f, g);
}

}  // namespace fieldcount::fields
