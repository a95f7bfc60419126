#include "fieldcount/fields/order.hpp"

#include <random>

#include "fieldcount/algebra/factor.hpp"
#include "fieldcount/algebra/fp_poly.hpp"

namespace fieldcount::fields {

using algebra::FpMatrix;
using algebra::FpPoly;

QPoly mulmod(const QPoly& a, const QPoly& b, const ZPoly& f) { return (a * b) % algebra::to_qpoly(f); }

std::vector<Integer> power_sums(const MonicIntPoly& f, int count) {
    const int n = f.degree();
    std::vector<Integer> s(static_cast<std::size_t>(std::max(count, 1)));
    s[0] = n;
    for (int k = 1; k < count; ++k) {
        Integer v = 0;
        // s_k + a_{n-1} s_{k-1} + ... + a_{n-k+1} s_1 + k a_{n-k} = 0 (k <= n)
        // s_k + a_{n-1} s_{k-1} + ... + a_0 s_{k-n} = 0 (k > n)
        for (int i = 1; i <= std::min(k - 1, n); ++i) v -= f.coeff(n - i) * s[static_cast<std::size_t>(k - i)];
        if (k <= n)
            v -= k * f.coeff(n - k);
        s[static_cast<std::size_t>(k)] = v;
    }
    s.resize(static_cast<std::size_t>(count));
    return s;
}

Rational trace(const QPoly& a, const std::vector<Integer>& sums) {
    Rational t = 0;
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) t += a.coeffs()[i] * Rational(sums.at(i));
    return t;
}

QMatrix multiplication_matrix(const QPoly& a, const ZPoly& f) {
    const std::size_t n = static_cast<std::size_t>(f.degree());
    const QPoly fq = algebra::to_qpoly(f);
    QMatrix m(n, n);
    QPoly cur = a % fq;
    const QPoly x = QPoly::monomial(1, 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = cur.coeff(j);
        cur = (cur * x) % fq;
    }
    return m;
}

QPoly element_charpoly(const QPoly& a, const MonicIntPoly& f) { return algebra::charpoly(multiplication_matrix(a, f.to_zpoly())); }

Order Order::equation_order(const MonicIntPoly& f) { return from_basis(f, QMatrix::identity(static_cast<std::size_t>(f.degree()))); }

Order Order::from_basis(const MonicIntPoly& f, const QMatrix& basis) {
    Order o;
    o.f_ = f;
    o.basis_ = basis;
    o.basis_inv_ = algebra::inverse(basis);
    o.poly_disc_ = algebra::poly_discriminant(f);
    const Rational det = algebra::determinant(basis);
    const Rational idx = 1 / abs(det);
    if (idx.get_den() != 1) throw InternalConsistencyError("order basis determinant is not 1/index");
    o.index_ = idx.get_num();
    const std::size_t n = static_cast<std::size_t>(f.degree());
    const ZPoly fz = f.to_zpoly();
    std::vector<QPoly> elems;
    for (std::size_t i = 0; i < n; ++i) o.mult_.emplace_back(n, n), elems.push_back(QPoly(basis.row(i)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const QPoly prod = mulmod(elems[i], elems[j], fz);
            std::vector<Rational> pc(n);
            for (std::size_t k = 0; k < n; ++k) pc[k] = prod.coeff(k);
            const auto c = algebra::row_times(pc, o.basis_inv_);
            for (std::size_t k = 0; k < n; ++k) {
                if (c[k].get_den() != 1) throw InternalConsistencyError("basis does not span an order");
                o.mult_[i](j, k) = c[k].get_num();
                o.mult_[j](i, k) = c[k].get_num();
            }
        }
    return o;
}

Integer Order::discriminant() const { return poly_disc_ / (index_ * index_); }

std::vector<Integer> Order::traces() const {
    const std::size_t n = static_cast<std::size_t>(degree());
    std::vector<Integer> t(n, Integer(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t[i] += mult_[i](j, j);
    return t;
}

ZMatrix Order::trace_form() const {
    const std::size_t n = static_cast<std::size_t>(degree());
    const auto t = traces();
    ZMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Integer s = 0;
            for (std::size_t k = 0; k < n; ++k) s += mult_[i](j, k) * t[k];
            g(i, j) = s;
        }
    return g;
}

ZMatrix Order::mult_matrix(const std::vector<Integer>& x) const {
    const std::size_t n = static_cast<std::size_t>(degree());
    ZMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) m(j, k) += x[i] * mult_[i](j, k);
    }
    return m;
}

std::vector<Integer> Order::multiply(const std::vector<Integer>& x, const std::vector<Integer>& y) const {
    const std::size_t n = static_cast<std::size_t>(degree());
    std::vector<Integer> r(n, Integer(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (y[j] == 0) continue;
            const Integer xy = x[i] * y[j];
            for (std::size_t k = 0; k < n; ++k) r[k] += xy * mult_[i](j, k);
        }
    }
    return r;
}

QPoly Order::to_power_basis(const std::vector<Integer>& x) const {
    std::vector<Rational> q(x.begin(), x.end());
    return to_power_basis(q);
}

QPoly Order::to_power_basis(const std::vector<Rational>& x) const {
    return QPoly(algebra::row_times(x, basis_));
}

std::vector<Rational> Order::coordinates(const QPoly& a) const {
    const std::size_t n = static_cast<std::size_t>(degree());
    std::vector<Rational> pc(n);
    for (std::size_t k = 0; k < n; ++k) pc[k] = a.coeff(k);
    return algebra::row_times(pc, basis_inv_);
}

ZPoly Order::charpoly(const std::vector<Integer>& x) const { return algebra::charpoly_integral(mult_matrix(x)); }

bool dedekind_p_maximal(const MonicIntPoly& f, std::uint64_t p) {
    const ZPoly fz = f.to_zpoly();
    const FpPoly fb = FpPoly::from_zpoly(fz, p);
    std::mt19937_64 rng(p);
    FpPoly g = FpPoly::one(p);
    for (const auto& [q, e] : algebra::factor_mod_p(fb, rng)) g = g * q;
    const FpPoly h = fb / g;
    const ZPoly gl = g.lift_symmetric(), hl = h.lift_symmetric();
    const ZPoly diff = fz - gl * hl;
    std::vector<Integer> fc;
    const Integer P(static_cast<unsigned long>(p));
    for (const auto& c : diff.coeffs()) {
        if (c % P != 0) throw InternalConsistencyError("Dedekind lift not divisible by p");
        fc.push_back(c / P);
    }
    const FpPoly F = FpPoly::from_zpoly(ZPoly(fc), p);
    return algebra::gcd(algebra::gcd(F, g), h).degree() == 0;
}

namespace {

using Vec = std::vector<std::uint64_t>;

Vec mul_mod_p(const Order& o, const Vec& x, const Vec& y, std::uint64_t p) {
    const std::size_t n = static_cast<std::size_t>(o.degree());
    Vec r(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (y[j] == 0) continue;
            const std::uint64_t xy = algebra::mulmod(x[i], y[j], p);
            for (std::size_t k = 0; k < n; ++k) {
                Integer c = o.mult(i)(j, k) % static_cast<unsigned long>(p);
                if (c < 0) c += static_cast<unsigned long>(p);
                r[k] = (r[k] + algebra::mulmod(xy, c.get_ui(), p)) % p;
            }
        }
    }
    return r;
}

ZMatrix lattice_with_pO(const FpMatrix& vecs, std::size_t n, std::uint64_t p) {
    ZMatrix m(vecs.size() + n, n);
    for (std::size_t i = 0; i < vecs.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<unsigned long>(vecs[i][j]);
    for (std::size_t i = 0; i < n; ++i) m(vecs.size() + i, i) = static_cast<unsigned long>(p);
    return algebra::hermite_normal_form(m);
}

}  // namespace

Order p_maximal_order(const Order& start, std::uint64_t p) {
    Order ord = start;
    const std::size_t n = static_cast<std::size_t>(ord.degree());
    for (int round = 0; round < 64; ++round) {
        // p-radical: kernel of x -> x^q on O/pO with q = p^j >= n.
        std::uint64_t q = p;
        while (q < n) q *= p;
        FpMatrix frob(n, Vec(n, 0));
        for (std::size_t i = 0; i < n; ++i) {
            Vec base(n, 0), acc(n, 0);
            base[i] = 1;
            // acc = ω_i^q by repeated squaring.
            Vec one(n, 0);
            {
                // coordinates of 1 in the ω-basis
                std::vector<Rational> c = ord.coordinates(QPoly::constant(1));
                for (std::size_t k = 0; k < n; ++k) {
                    Integer v = c[k].get_num() % static_cast<unsigned long>(p);
                    if (v < 0) v += static_cast<unsigned long>(p);
                    one[k] = v.get_ui();
                }
            }
            acc = one;
            std::uint64_t e = q;
            Vec b = base;
            while (e) {
                if (e & 1) acc = mul_mod_p(ord, acc, b, p);
                e >>= 1;
                if (e) b = mul_mod_p(ord, b, b, p);
            }
            frob[i] = acc;
        }
        const FpMatrix ker = algebra::left_kernel_mod_p(frob, p, n, n);
        const ZMatrix Ip = lattice_with_pO(ker, n, p);  // rows in ω-coordinates
        const QMatrix Ip_inv = algebra::inverse(algebra::to_qmatrix(Ip));
        // U/pO = kernel of x -> (x β_j in β-coordinates mod p)_j.
        FpMatrix big(n, Vec(n * n, 0));
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Integer> ei(n, Integer(0));
            ei[i] = 1;
            for (std::size_t j = 0; j < n; ++j) {
                const auto prod = ord.multiply(ei, Ip.row(j));
                std::vector<Rational> pq(prod.begin(), prod.end());
                const auto c = algebra::row_times(pq, Ip_inv);
                for (std::size_t k = 0; k < n; ++k) {
                    if (c[k].get_den() != 1) throw InternalConsistencyError("p-radical is not an ideal");
                    Integer v = c[k].get_num() % static_cast<unsigned long>(p);
                    if (v < 0) v += static_cast<unsigned long>(p);
                    big[i][j * n + k] = v.get_ui();
                }
            }
        }
        const FpMatrix uker = algebra::left_kernel_mod_p(big, p, n, n * n);
        if (uker.empty()) return ord;
        const ZMatrix U = lattice_with_pO(uker, n, p);
        // New basis (1/p) U W.
        QMatrix nb = algebra::to_qmatrix(U) * ord.basis();
        const Rational inv_p(1, static_cast<unsigned long>(p));
        nb = inv_p * nb;
        Order next = Order::from_basis(ord.poly(), nb);
        if (next.index() == ord.index()) return ord;
        ord = std::move(next);
    }
    throw InternalConsistencyError("Round 2 did not stabilize");
}

namespace {

// Canonical lower-triangular basis: HNF with the highest power of θ as pivot
// column, so that ω_0 = 1.
QMatrix normalized_basis(const QMatrix& w) {
    const std::size_t n = w.rows();
    Integer den = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), w(i, j).get_den_mpz_t());
    ZMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Rational v = w(i, j) * Rational(den);
            m(i, n - 1 - j) = v.get_num();
        }
    const ZMatrix h = algebra::hermite_normal_form(m);
    QMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(n - 1 - i, n - 1 - j) = algebra::make_rational(h(i, j), den);
    return out;
}

}  // namespace

Order maximal_order(const MonicIntPoly& f) {
    if (!algebra::is_irreducible(f.to_zpoly())) throw DomainError("maximal_order needs an irreducible polynomial: " + f.to_string());
    Order ord = Order::equation_order(f);
    const Integer d = ord.poly_disc();
    for (const auto& p : algebra::primes_with_square_dividing(d)) {
        if (!mpz_fits_ulong_p(p.get_mpz_t()) || p > Integer("4611686018427387903"))
            throw DomainError("prime too large for Round 2: " + p.get_str());
        const std::uint64_t pu = p.get_ui();
        if (dedekind_p_maximal(f, pu)) continue;
        ord = p_maximal_order(ord, pu);
    }
    if (ord.index() == 1) return ord;
    return Order::from_basis(f, normalized_basis(ord.basis()));
}

}  // namespace fieldcount::fields
