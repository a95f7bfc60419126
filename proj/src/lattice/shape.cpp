#include "fieldcount/lattice/shape.hpp"

#include <algorithm>
#include <cmath>

#include "fieldcount/algebra/lattice.hpp"
#include "fieldcount/errors.hpp"
#include "fieldcount/fields/embeddings.hpp"
#include "fieldcount/fields/hunter.hpp"
#include "fieldcount/fields/order.hpp"

namespace fieldcount::lattice {

using algebra::DMatrix;
using algebra::QPoly;
using algebra::ZMatrix;

namespace {

QMatrix order_basis_of(const FieldRecord& field) {
    if (field.order_basis.rows() == static_cast<std::size_t>(field.degree())) return field.order_basis;
    return fields::maximal_order(field.min_poly).basis();
}

QMatrix times(const ZMatrix& a, const QMatrix& b) {
    QMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (a(i, k) != 0)
                for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    return out;
}

// Greedy selection of independent vectors in nondecreasing norm order.
template <class Norm>
void greedy_minima(std::vector<std::pair<Norm, std::vector<Integer>>>& cands, std::size_t dim,
                   std::vector<Norm>& minima, std::vector<std::vector<Integer>>& witnesses) {
    std::stable_sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    QMatrix echelon(0, dim);
    std::vector<std::vector<Rational>> rows;
    for (const auto& [norm, v] : cands) {
        if (witnesses.size() == dim) break;
        std::vector<Rational> r(v.begin(), v.end());
        rows.push_back(r);
        QMatrix m(rows.size(), dim);
        for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
        if (algebra::rank(m) == rows.size()) {
            minima.push_back(norm);
            witnesses.push_back(v);
        } else {
            rows.pop_back();
        }
    }
    if (witnesses.size() != dim) throw InternalConsistencyError("successive minima search found too few vectors");
}

}  // namespace

QMatrix trace_form_gram(const algebra::MonicIntPoly& f, const QMatrix& basis) {
    const auto sums = fields::power_sums(f, 2 * f.degree() + 1);
    const auto fz = f.to_zpoly();
    const std::size_t k = basis.rows();
    std::vector<QPoly> b;
    for (std::size_t i = 0; i < k; ++i) b.emplace_back(basis.row(i));
    QMatrix g(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) {
            g(i, j) = fields::trace(fields::mulmod(b[i], b[j], fz), sums);
            g(j, i) = g(i, j);
        }
    return g;
}

TraceLattice trace_gram(const FieldRecord& field, Sublattice kind) {
    if (field.r2 != 0)
        throw DomainError("exact trace-form lattices need a totally real field; use the T2 (floating) routines");
    const QMatrix W = order_basis_of(field);
    TraceLattice t;
    t.kind = kind;
    if (kind == Sublattice::FullOrder) {
        t.basis = W;
        t.gram = trace_form_gram(field.min_poly, W);
        return t;
    }
    const auto& f = field.min_poly;
    const auto sums = fields::power_sums(f, f.degree() + 1);
    std::vector<Integer> tau;
    for (std::size_t k = 0; k < W.rows(); ++k) {
        const Rational tr = fields::trace(QPoly(W.row(k)), sums);
        if (tr.get_den() != 1) throw InternalConsistencyError("non-integral trace of an order element");
        tau.push_back(tr.get_num());
    }
    const ZMatrix K = algebra::integer_kernel(tau);
    QMatrix B = times(K, W);
    QMatrix g = trace_form_gram(f, B);
    const ZMatrix U = algebra::lll_gram(g);
    t.basis = times(U, B);
    t.gram = g;
    return t;
}

MinimaProfile successive_minima(const QMatrix& gram) {
    const std::size_t n = gram.rows();
    if (n == 0 || gram.cols() != n) throw DomainError("successive_minima needs a square Gram matrix");
    if (!algebra::is_positive_definite(gram)) throw DomainError("Gram matrix is not positive definite");
    QMatrix g = gram;
    const ZMatrix U = algebra::lll_gram(g);
    Rational R = g(0, 0);
    for (std::size_t i = 1; i < n; ++i) R = std::max(R, g(i, i));
    DMatrix gd(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) gd[i][j] = g(i, j).get_d();
    std::vector<std::pair<Rational, std::vector<Integer>>> cands;
    algebra::fincke_pohst(gd, R.get_d() * (1 + 1e-9) + 1e-9, [&](const std::vector<std::int64_t>& y) {
        Rational norm = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (y[i] != 0 && y[j] != 0) norm += g(i, j) * static_cast<long>(y[i]) * static_cast<long>(y[j]);
        if (norm > R) return true;
        std::vector<Integer> x(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            if (y[i] != 0)
                for (std::size_t j = 0; j < n; ++j) x[j] += static_cast<long>(y[i]) * U(i, j);
        // Sign normalization: first nonzero coordinate positive.
        for (const auto& c : x)
            if (c != 0) {
                if (c < 0)
                    for (auto& e : x) e = -e;
                break;
            }
        cands.emplace_back(norm, std::move(x));
        return true;
    });
    MinimaProfile p;
    greedy_minima(cands, n, p.minima, p.witnesses);
    return p;
}

Rational hermite_power(int k) {
    static const Rational table[] = {Rational(1),     Rational(1),  Rational(4, 3), Rational(2),  Rational(4),
                                     Rational(8),     Rational(64, 3), Rational(64), Rational(256)};
    if (k < 1 || k > 8) throw DomainError("Hermite constant known only for dimension <= 8");
    return table[k];
}

bool minkowski_product_bound(const MinimaProfile& profile, const Rational& det_gram) {
    Rational prod = 1;
    for (const auto& a : profile.minima) prod *= a;
    return prod <= hermite_power(static_cast<int>(profile.minima.size())) * abs(det_gram);
}

T2Minima t2_minima(const FieldRecord& field) {
    T2Minima out;
    if (field.r2 == 0) {
        const auto t = trace_gram(field, Sublattice::FullOrder);
        const auto p = successive_minima(t.gram);
        for (const auto& a : p.minima) out.minima.push_back(a.get_d());
        out.witnesses = p.witnesses;
        return out;
    }
    const QMatrix W = order_basis_of(field);
    const auto emb = fields::embed_basis(field.min_poly, W);
    const auto n = static_cast<std::size_t>(field.degree());
    const auto gl = emb.t2_gram();
    DMatrix g(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g[i][j] = static_cast<double>(gl[i][j]);
    const auto U = algebra::lll_gram(g);
    double R = 0;
    for (std::size_t i = 0; i < n; ++i) R = std::max(R, g[i][i]);
    std::vector<std::pair<double, std::vector<Integer>>> cands;
    std::vector<long long> xl(n);
    algebra::fincke_pohst(g, R * (1 + 1e-9) + 1e-9, [&](const std::vector<std::int64_t>& y) {
        std::fill(xl.begin(), xl.end(), 0);
        for (std::size_t i = 0; i < n; ++i)
            if (y[i] != 0)
                for (std::size_t j = 0; j < n; ++j) xl[j] += y[i] * U[i][j];
        for (const auto c : xl)
            if (c != 0) {
                if (c < 0)
                    for (auto& e : xl) e = -e;
                break;
            }
        const auto v = emb.real_vector(xl);
        long double norm = 0;
        for (const auto c : v) norm += c * c;
        std::vector<Integer> x;
        for (const auto c : xl) x.emplace_back(static_cast<long>(c));
        // Round to 1e-9 relative so that ties from symmetric conjugates sort deterministically.
        const double nd = static_cast<double>(norm);
        const double q = std::ldexp(std::nearbyint(std::ldexp(nd, 30 - std::ilogb(nd + 1))), std::ilogb(nd + 1) - 30);
        cands.emplace_back(q, std::move(x));
        return true;
    });
    greedy_minima(cands, n, out.minima, out.witnesses);
    return out;
}

bool certified_primitive(const FieldRecord& field) {
    const int n = field.degree();
    if (n <= 3 || n == 5 || n == 7) return true;
    if (field.galois.kind == fields::GaloisKind::SnCertified) return true;
    return field.galois.kind == fields::GaloisKind::Other &&
           (field.galois.description == "A4" || field.galois.description == "A5");
}

PrimitiveReport check_primitive_constraints(const FieldRecord& field) {
    if (!certified_primitive(field)) throw DomainError("field is not certified primitive (may have a proper subfield)");
    const auto t = trace_gram(field, Sublattice::TraceZero);
    const auto p = successive_minima(t.gram);
    PrimitiveReport r;
    r.minima = p.minima;
    const std::size_t k = p.minima.size();
    for (std::size_t j = 0; j + 1 < k; ++j) r.ratios.push_back(Rational(p.minima[0] * p.minima[j] / p.minima[j + 1]).get_d());
    const double disc = std::fabs(field.field_disc.get_d());
    double prod = 1;
    for (const auto& a : p.minima) prod *= a.get_d();
    r.product_over_sqrt_disc = prod / std::sqrt(disc);
    const int n = field.degree();
    const int fl = static_cast<int>(std::floor(std::sqrt(2.0 * n) + 1e-12));
    r.exponent = fl > 1 ? 1.0 / (fl - 1) : 0.0;
    r.kappa = p.minima.back().get_d() / std::pow(disc, r.exponent);
    return r;
}

ShapePoint shape_point(const QMatrix& gram2) {
    if (gram2.rows() != 2 || gram2.cols() != 2) throw DomainError("shape_point needs a 2x2 Gram matrix");
    if (!algebra::is_positive_definite(gram2)) throw DomainError("Gram matrix is not positive definite");
    Rational A = gram2(0, 0), B = 2 * gram2(0, 1), C = gram2(1, 1);
    for (int guard = 0; guard < 10000; ++guard) {
        if (C < A) {
            std::swap(A, C);
            B = -B;
        }
        // Bring B into (-A, A].
        Integer k = algebra::floor_of((B + A) / (2 * A));
        if (B - 2 * k * A <= -A) k -= 1;
        if (k != 0) {
            C = C - k * B + k * k * A;
            B = B - 2 * k * A;
            continue;
        }
        if (C < A) continue;
        break;
    }
    if (A == C && B < 0) B = -B;
    ShapePoint s;
    s.A = A;
    s.B = B;
    s.C = C;
    s.x = Rational(B / (2 * A)).get_d();
    s.y = std::sqrt(Rational(A * C - B * B / 4).get_d()) / A.get_d();
    return s;
}

ShapePoint shape_point(const FieldRecord& field) {
    if (field.degree() != 3 || field.r2 != 0) throw DomainError("shape_point needs a totally real cubic field");
    return shape_point(trace_gram(field, Sublattice::TraceZero).gram);
}

bool in_fundamental_domain(const ShapePoint& p, double tol) {
    return std::fabs(p.x) <= 0.5 + tol && p.x * p.x + p.y * p.y >= 1 - tol && p.y > 0;
}

SofL s_of_L(const FieldRecord& field) {
    const QMatrix W = order_basis_of(field);
    const auto ord = fields::Order::from_basis(field.min_poly, W);
    const auto emb = fields::embed_basis(field.min_poly, W);
    const auto n = static_cast<std::size_t>(field.degree());
    const auto gl = emb.t2_gram();
    DMatrix g(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g[i][j] = static_cast<double>(gl[i][j]);
    const auto U = algebra::lll_gram(g);

    struct Hit {
        double sup2, t2;
        std::vector<long long> x;
    };
    auto generates = [&](const std::vector<long long>& x) {
        std::vector<Integer> xi;
        for (auto c : x) xi.emplace_back(static_cast<long>(c));
        const auto cp = ord.charpoly(xi);
        return algebra::poly_discriminant(cp) != 0;
    };
    auto scan = [&](double bound, std::vector<Hit>& hits) {
        std::vector<long long> x(n);
        algebra::fincke_pohst(g, bound, [&](const std::vector<std::int64_t>& y) {
            std::fill(x.begin(), x.end(), 0);
            for (std::size_t i = 0; i < n; ++i)
                if (y[i] != 0)
                    for (std::size_t j = 0; j < n; ++j) x[j] += y[i] * U[i][j];
            const auto conj = emb.conjugates(x);
            long double sup2 = 0, t2 = 0;
            for (const auto& z : conj) {
                sup2 = std::max(sup2, std::norm(z));
                t2 += std::norm(z);
            }
            if (n > 1 && !generates(x)) return true;
            // Deterministic sign: first nonzero coordinate positive.
            auto xs = x;
            for (const auto c : xs)
                if (c != 0) {
                    if (c < 0)
                        for (auto& e : xs) e = -e;
                    break;
                }
            hits.push_back({static_cast<double>(sup2), static_cast<double>(t2), xs});
            return true;
        });
    };
    // Find some generator, then every generator with T2 <= n * sup^2 of it.
    std::vector<Hit> hits;
    double bound = 0;
    for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, g[i][i]);
    while (hits.empty()) {
        scan(bound * (1 + 1e-9), hits);
        bound *= 2;
    }
    double best = hits[0].sup2;
    for (const auto& h : hits) best = std::min(best, h.sup2);
    hits.clear();
    scan(static_cast<double>(n) * best * (1 + 1e-9) + 1e-9, hits);
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
        if (a.sup2 != b.sup2) return a.sup2 < b.sup2;
        if (a.t2 != b.t2) return a.t2 < b.t2;
        return a.x < b.x;
    });
    const Hit& h = hits.front();
    SofL s;
    s.s_squared = h.sup2;
    s.t2 = h.t2;
    for (auto c : h.x) s.witness.emplace_back(static_cast<long>(c));
    s.witness_poly = ord.to_power_basis(s.witness);
    // Root error: a disc of radius n |f(z)/f'(z)| around each computed root contains a root.
    long double root_err = 0;
    const auto fz = field.min_poly.to_zpoly();
    for (const auto& z : emb.roots) {
        std::complex<long double> p = 0, dp = 0;
        for (std::size_t k = n + 1; k-- > 0;) {
            dp = dp * z + p;
            p = p * z + static_cast<long double>(fz.coeff(k).get_d());
        }
        root_err = std::max(root_err, static_cast<long double>(n) * std::abs(p) / std::abs(dp));
    }
    // |d sigma(x)| <= sum_j |w_j| |x . W(:,j)| j |z|^{j-1} err; bound crudely.
    long double maxz = 0;
    for (const auto& z : emb.roots) maxz = std::max(maxz, std::abs(z));
    long double deriv = 0;
    const auto wx = s.witness_poly;
    for (int j = 1; j <= wx.degree(); ++j)
        deriv += std::fabs(static_cast<long double>(wx.coeff(static_cast<std::size_t>(j)).get_d())) * j *
                 std::pow(maxz + 1, j - 1);
    const long double sup = std::sqrt(static_cast<long double>(s.s_squared));
    const long double eps = std::numeric_limits<double>::epsilon() * (1 + s.s_squared);
    s.error_bound = static_cast<double>(2 * sup * deriv * root_err + eps * 4);
    const double disc = std::fabs(field.field_disc.get_d());
    const double nd = static_cast<double>(n);
    s.kappa1 = std::pow(disc, 2.0 / (nd * (nd - 1))) / s.s_squared;
    const int half = (field.degree() - 1) / 2;
    s.kappa2 = half > 0 ? s.s_squared / std::pow(disc, 1.0 / half) : 0.0;
    return s;
}

Lemma31Report lemma31_check(const std::vector<FieldRecord>& pool) {
    if (pool.empty()) throw DomainError("lemma31_check needs a nonempty pool");
    Lemma31Report r;
    for (const auto& f : pool) {
        if (!certified_primitive(f)) throw DomainError("lemma31_check needs fields without proper subfields");
        double a1;
        const int n = f.degree();
        if (f.r2 == 0) {
            a1 = successive_minima(trace_gram(f, Sublattice::TraceZero).gram).minima.front().get_d();
        } else {
            // T2 minimum over the trace-zero part, from the floating embedding Gram.
            const QMatrix W = order_basis_of(f);
            const auto emb = fields::embed_basis(f.min_poly, W);
            const auto sums = fields::power_sums(f.min_poly, n + 1);
            std::vector<Integer> tau;
            for (std::size_t k = 0; k < W.rows(); ++k) tau.push_back(fields::trace(QPoly(W.row(k)), sums).get_num());
            const ZMatrix K = algebra::integer_kernel(tau);
            const std::size_t m = K.rows();
            std::vector<std::vector<long double>> kv;
            for (std::size_t a = 0; a < m; ++a) {
                std::vector<long long> x;
                for (std::size_t j = 0; j < K.cols(); ++j) x.push_back(K(a, j).get_si());
                kv.push_back(emb.real_vector(x));
            }
            DMatrix g(m, std::vector<double>(m));
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = 0; b < m; ++b) {
                    long double s = 0;
                    for (std::size_t c = 0; c < kv[a].size(); ++c) s += kv[a][c] * kv[b][c];
                    g[a][b] = static_cast<double>(s);
                }
            algebra::lll_gram(g);
            double R = g[0][0];
            for (std::size_t i = 1; i < m; ++i) R = std::min(R, g[i][i]);
            a1 = R;
            algebra::fincke_pohst(g, R * (1 + 1e-9), [&](const std::vector<std::int64_t>& y) {
                double s = 0;
                for (std::size_t i = 0; i < m; ++i)
                    for (std::size_t j = 0; j < m; ++j) s += g[i][j] * static_cast<double>(y[i] * y[j]);
                a1 = std::min(a1, s);
                return true;
            });
        }
        const double disc = std::fabs(f.field_disc.get_d());
        r.ratios.push_back(a1 / std::pow(disc, 2.0 / (n * (n - 1))));
    }
    r.min_ratio = *std::min_element(r.ratios.begin(), r.ratios.end());
    return r;
}

}  // namespace fieldcount::lattice
