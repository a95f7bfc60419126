#include "fieldcount/algebra/fp_poly.hpp"

#include <algorithm>

namespace fieldcount::algebra {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
    if (a % p == 0) throw DomainError("inverse of zero mod p");
    return powmod(a, p - 2, p);
}

FpPoly::FpPoly(std::uint64_t p, std::vector<std::uint64_t> c) : p_(p), c_(std::move(c)) {
    for (auto& v : c_) v %= p_;
    trim();
}

void FpPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly FpPoly::from_zpoly(const ZPoly& f, std::uint64_t p) {
    std::vector<std::uint64_t> c;
    c.reserve(f.coeffs().size());
    for (const auto& v : f.coeffs()) {
        Integer r = v % static_cast<unsigned long>(p);
        if (r < 0) r += static_cast<unsigned long>(p);
        c.push_back(r.get_ui());
    }
    return FpPoly(p, std::move(c));
}

FpPoly FpPoly::monic() const {
    if (is_zero()) return *this;
    const std::uint64_t inv = invmod(lead(), p_);
    std::vector<std::uint64_t> c(c_);
    for (auto& v : c) v = mulmod(v, inv, p_);
    return FpPoly(p_, std::move(c));
}

FpPoly FpPoly::derivative() const {
    if (c_.size() <= 1) return FpPoly(p_, {});
    std::vector<std::uint64_t> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = mulmod(c_[i], i % p_, p_);
    return FpPoly(p_, std::move(d));
}

ZPoly FpPoly::lift_symmetric() const {
    std::vector<Integer> c;
    for (auto v : c_) {
        if (v > p_ / 2)
            c.emplace_back(-static_cast<long>(p_ - v));
        else
            c.emplace_back(static_cast<unsigned long>(v));
    }
    return ZPoly(std::move(c));
}

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
    const std::uint64_t p = a.p_;
    std::vector<std::uint64_t> r(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = (a.coeff(i) + b.coeff(i)) % p;
    return FpPoly(p, std::move(r));
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) {
    const std::uint64_t p = a.p_;
    std::vector<std::uint64_t> r(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = (a.coeff(i) + p - b.coeff(i)) % p;
    return FpPoly(p, std::move(r));
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
    const std::uint64_t p = a.p_;
    if (a.is_zero() || b.is_zero()) return FpPoly(p, {});
    std::vector<std::uint64_t> r(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = (r[i + j] + mulmod(a.c_[i], b.c_[j], p)) % p;
    }
    return FpPoly(p, std::move(r));
}

void FpPoly::divmod(const FpPoly& b, FpPoly& q, FpPoly& r) const {
    if (b.is_zero()) throw DomainError("polynomial division by zero mod p");
    std::vector<std::uint64_t> rem(c_);
    const int db = b.degree();
    if (degree() < db) {
        q = FpPoly(p_, {});
        r = *this;
        return;
    }
    std::vector<std::uint64_t> quo(static_cast<std::size_t>(degree() - db + 1), 0);
    const std::uint64_t inv = invmod(b.lead(), p_);
    for (int k = degree(); k >= db; --k) {
        const std::uint64_t coef = mulmod(rem[static_cast<std::size_t>(k)], inv, p_);
        if (coef == 0) continue;
        quo[static_cast<std::size_t>(k - db)] = coef;
        for (int j = 0; j <= db; ++j) {
            auto& slot = rem[static_cast<std::size_t>(k - db + j)];
            slot = (slot + p_ - mulmod(coef, b.c_[static_cast<std::size_t>(j)], p_)) % p_;
        }
    }
    rem.resize(static_cast<std::size_t>(db));
    q = FpPoly(p_, std::move(quo));
    r = FpPoly(p_, std::move(rem));
}

FpPoly FpPoly::operator%(const FpPoly& b) const {
    FpPoly q, r;
    divmod(b, q, r);
    return r;
}

FpPoly FpPoly::operator/(const FpPoly& b) const {
    FpPoly q, r;
    divmod(b, q, r);
    return q;
}

FpPoly gcd(const FpPoly& a, const FpPoly& b) {
    FpPoly x = a, y = b;
    while (!y.is_zero()) {
        FpPoly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

FpPoly xgcd(const FpPoly& a, const FpPoly& b, FpPoly& s, FpPoly& t) {
    const std::uint64_t p = a.prime();
    FpPoly r0 = a, r1 = b, s0 = FpPoly::one(p), s1(p, {}), t0(p, {}), t1 = FpPoly::one(p);
    while (!r1.is_zero()) {
        FpPoly q, r;
        r0.divmod(r1, q, r);
        FpPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    const std::uint64_t inv = invmod(r0.lead(), p);
    const FpPoly c(p, {inv});
    s = c * s0;
    t = c * t0;
    return c * r0;
}

FpPoly powmod(const FpPoly& base, const Integer& e, const FpPoly& mod) {
    FpPoly r = FpPoly::one(base.prime()) % mod;
    FpPoly b = base % mod;
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = (r * r) % mod;
        if (mpz_tstbit(e.get_mpz_t(), i)) r = (r * b) % mod;
    }
    return r;
}

namespace {

// p-th root of a polynomial whose derivative vanishes (all exponents divisible by p).
FpPoly pth_root(const FpPoly& f) {
    const std::uint64_t p = f.prime();
    std::vector<std::uint64_t> c;
    for (std::size_t i = 0; i < f.coeffs().size(); i += p) c.push_back(f.coeffs()[i]);  // a^p = a in F_p
    return FpPoly(p, std::move(c));
}

// Yun/Musser squarefree decomposition over F_p.
std::vector<std::pair<FpPoly, unsigned>> squarefree_decomposition(const FpPoly& f0) {
    std::vector<std::pair<FpPoly, unsigned>> out;
    const FpPoly f = f0.monic();
    if (f.degree() <= 0) return out;
    const std::uint64_t p = f.prime();
    FpPoly d = f.derivative();
    if (d.is_zero()) {
        for (auto& [g, e] : squarefree_decomposition(pth_root(f))) out.emplace_back(g, e * static_cast<unsigned>(p));
        return out;
    }
    FpPoly c = gcd(f, d);
    FpPoly w = f / c;
    unsigned i = 1;
    while (!w.is_one()) {
        FpPoly y = gcd(w, c);
        FpPoly z = w / y;
        if (z.degree() > 0) out.emplace_back(z.monic(), i);
        ++i;
        w = y;
        c = c / y;
    }
    if (c.degree() > 0) {
        for (auto& [g, e] : squarefree_decomposition(pth_root(c))) out.emplace_back(g, e * static_cast<unsigned>(p));
    }
    return out;
}

// Distinct-degree factorization of a monic squarefree f: pairs (product of all
// degree-d irreducible factors, d).
std::vector<std::pair<FpPoly, int>> distinct_degree(const FpPoly& f0) {
    std::vector<std::pair<FpPoly, int>> out;
    FpPoly f = f0.monic();
    const std::uint64_t p = f.prime();
    const FpPoly x = FpPoly::x(p);
    FpPoly h = x % f;
    const Integer P(static_cast<unsigned long>(p));
    int d = 0;
    while (f.degree() >= 2 * (d + 1)) {
        ++d;
        h = powmod(h, P, f);
        FpPoly g = gcd(f, h - x);
        if (g.degree() > 0) {
            out.emplace_back(g, d);
            f = f / g;
            h = h % f;
        }
    }
    if (f.degree() > 0) out.emplace_back(f, f.degree());
    return out;
}

void equal_degree(const FpPoly& f, int d, std::mt19937_64& rng, std::vector<FpPoly>& out) {
    if (f.degree() == d) {
        out.push_back(f.monic());
        return;
    }
    const std::uint64_t p = f.prime();
    const int n = f.degree();
    std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
    while (true) {
        std::vector<std::uint64_t> c(static_cast<std::size_t>(n));
        for (auto& v : c) v = dist(rng);
        FpPoly a(p, std::move(c));
        if (a.degree() <= 0) continue;
        FpPoly b;
        if (p == 2) {
            // Trace map a + a^2 + ... + a^(2^(d-1)).
            FpPoly t = a % f, acc = t;
            for (int i = 1; i < d; ++i) {
                t = (t * t) % f;
                acc = acc + t;
            }
            b = acc;
        } else {
            Integer e;
            mpz_ui_pow_ui(e.get_mpz_t(), p, static_cast<unsigned long>(d));
            e = (e - 1) / 2;
            b = powmod(a, e, f) - FpPoly::one(p);
        }
        FpPoly g = gcd(f, b);
        if (g.degree() > 0 && g.degree() < n) {
            equal_degree(g, d, rng, out);
            equal_degree(f / g, d, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<std::pair<FpPoly, unsigned>> factor_mod_p(const FpPoly& f, std::mt19937_64& rng) {
    if (f.is_zero()) throw DomainError("factorization of zero polynomial");
    std::vector<std::pair<FpPoly, unsigned>> out;
    for (const auto& [g, e] : squarefree_decomposition(f)) {
        for (const auto& [h, d] : distinct_degree(g)) {
            std::vector<FpPoly> parts;
            equal_degree(h, d, rng, parts);
            for (auto& q : parts) out.emplace_back(std::move(q), e);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return a.first.coeffs() < b.first.coeffs();
    });
    return out;
}

std::vector<int> factor_degrees_squarefree(const FpPoly& f) {
    std::vector<int> out;
    for (const auto& [g, d] : distinct_degree(f))
        for (int i = 0; i < g.degree() / d; ++i) out.push_back(d);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> splitting_type(const ZPoly& f, std::uint64_t p) {
    FpPoly g = FpPoly::from_zpoly(f, p);
    if (g.degree() != f.degree()) return {};
    if (gcd(g, g.derivative()).degree() > 0) return {};
    return factor_degrees_squarefree(g);
}

}  // namespace fieldcount::algebra
