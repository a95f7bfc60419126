#include "fieldcount/fields/embeddings.hpp"

#include <algorithm>
#include <cmath>

#include "fieldcount/algebra/roots.hpp"
#include "fieldcount/errors.hpp"

namespace fieldcount::fields {

using CL = std::complex<long double>;

Embeddings embed_basis(const algebra::MonicIntPoly& f, const algebra::QMatrix& basis) {
    Embeddings e;
    const int n = f.degree();
    const auto un = static_cast<std::size_t>(n);
    e.degree = n;
    auto roots = algebra::complex_roots(f.to_zpoly());
    e.r1 = algebra::count_real_roots(f.to_zpoly());
    std::sort(roots.begin(), roots.end(), [](const CL& a, const CL& b) {
        const long double ia = std::fabs(a.imag()), ib = std::fabs(b.imag());
        if (ia != ib) return ia < ib;
        return a.real() < b.real();
    });
    std::vector<CL> ordered;
    for (int i = 0; i < e.r1; ++i) ordered.emplace_back(roots[static_cast<std::size_t>(i)].real(), 0.0L);
    std::vector<CL> upper;
    for (std::size_t i = static_cast<std::size_t>(e.r1); i < un; ++i)
        if (roots[i].imag() > 0) upper.push_back(roots[i]);
    if (static_cast<int>(upper.size()) * 2 + e.r1 != n) throw InternalConsistencyError("root classification failed");
    std::sort(upper.begin(), upper.end(), [](const CL& a, const CL& b) { return a.real() < b.real(); });
    for (const auto& z : upper) ordered.push_back(z);
    for (const auto& z : upper) ordered.push_back(std::conj(z));
    e.roots = ordered;

    e.values.assign(un, std::vector<CL>(un));
    for (std::size_t k = 0; k < un; ++k)
        for (std::size_t i = 0; i < un; ++i) {
            CL acc = 0, p = 1;
            for (std::size_t j = 0; j < un; ++j) {
                const algebra::Rational& q = basis(k, j);
                if (q != 0) {
                    const long double v = static_cast<long double>(q.get_num().get_d()) /
                                          static_cast<long double>(q.get_den().get_d());
                    acc += v * p;
                }
                p *= e.roots[i];
            }
            e.values[k][i] = acc;
        }
    const long double sq2 = std::sqrt(2.0L);
    const std::size_t r2 = upper.size();
    e.coords.assign(un, std::vector<long double>(un));
    for (std::size_t k = 0; k < un; ++k) {
        std::size_t c = 0;
        for (int i = 0; i < e.r1; ++i) e.coords[k][c++] = e.values[k][static_cast<std::size_t>(i)].real();
        for (std::size_t j = 0; j < r2; ++j) {
            const CL v = e.values[k][static_cast<std::size_t>(e.r1) + j];
            e.coords[k][c++] = sq2 * v.real();
            e.coords[k][c++] = sq2 * v.imag();
        }
    }
    return e;
}

std::vector<long double> Embeddings::real_vector(const std::vector<long long>& x) const {
    const auto un = static_cast<std::size_t>(degree);
    std::vector<long double> v(un, 0);
    for (std::size_t k = 0; k < un; ++k)
        if (x[k] != 0)
            for (std::size_t c = 0; c < un; ++c) v[c] += static_cast<long double>(x[k]) * coords[k][c];
    return v;
}

std::vector<std::complex<long double>> Embeddings::conjugates(const std::vector<long long>& x) const {
    const auto un = static_cast<std::size_t>(degree);
    std::vector<CL> v(un, 0);
    for (std::size_t k = 0; k < un; ++k)
        if (x[k] != 0)
            for (std::size_t i = 0; i < un; ++i) v[i] += static_cast<long double>(x[k]) * values[k][i];
    return v;
}

std::vector<std::vector<long double>> Embeddings::t2_gram() const {
    const auto un = static_cast<std::size_t>(degree);
    std::vector<std::vector<long double>> g(un, std::vector<long double>(un, 0));
    for (std::size_t a = 0; a < un; ++a)
        for (std::size_t b = 0; b < un; ++b)
            for (std::size_t c = 0; c < un; ++c) g[a][b] += coords[a][c] * coords[b][c];
    return g;
}

}  // namespace fieldcount::fields
