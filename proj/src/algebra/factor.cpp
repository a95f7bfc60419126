#include "fieldcount/algebra/factor.hpp"

#include <algorithm>
#include <random>

#include "fieldcount/algebra/fp_poly.hpp"

namespace fieldcount::algebra {

namespace {

Integer mod_sym(const Integer& v, const Integer& m) {
    Integer r = v % m;
    if (r < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

ZPoly reduce(const ZPoly& f, const Integer& m) {
    std::vector<Integer> c;
    for (const auto& v : f.coeffs()) c.push_back(mod_sym(v, m));
    return ZPoly(std::move(c));
}

// Division by a monic divisor modulo m.
void divmod_monic(const ZPoly& a, const ZPoly& b, const Integer& m, ZPoly& q, ZPoly& r) {
    a.divmod(b, q, r);
    q = reduce(q, m);
    r = reduce(r, m);
}

ZPoly from_fp(const FpPoly& f) { return f.lift_symmetric(); }

// Multifactor Hensel lifting along a balanced factor tree.
void hensel_tree(const ZPoly& f, const std::vector<FpPoly>& factors, std::uint64_t p, const Integer& target,
                 std::vector<ZPoly>& out) {
    if (factors.size() == 1) {
        out.push_back(reduce(f, target));
        return;
    }
    const std::size_t half = factors.size() / 2;
    std::vector<FpPoly> left(factors.begin(), factors.begin() + static_cast<std::ptrdiff_t>(half));
    std::vector<FpPoly> right(factors.begin() + static_cast<std::ptrdiff_t>(half), factors.end());
    FpPoly gl = FpPoly::one(p), hr = FpPoly::one(p);
    for (const auto& x : left) gl = gl * x;
    for (const auto& x : right) hr = hr * x;
    FpPoly sp, tp;
    xgcd(gl, hr, sp, tp);
    ZPoly g = from_fp(gl), h = from_fp(hr), s = from_fp(sp), t = from_fp(tp);
    Integer m(static_cast<unsigned long>(p));
    while (m < target) {
        const Integer m2 = m * m;
        ZPoly e = reduce(f - g * h, m2);
        ZPoly q, r;
        divmod_monic(reduce(s * e, m2), h, m2, q, r);
        ZPoly g2 = reduce(g + t * e + q * g, m2);
        ZPoly h2 = reduce(h + r, m2);
        ZPoly b = reduce(s * g2 + t * h2 - ZPoly::constant(1), m2);
        ZPoly c, d;
        divmod_monic(reduce(s * b, m2), h2, m2, c, d);
        s = reduce(s - d, m2);
        t = reduce(t - t * b - c * g2, m2);
        g = std::move(g2);
        h = std::move(h2);
        m = m2;
    }
    hensel_tree(g, left, p, target, out);
    hensel_tree(h, right, p, target, out);
}

bool divides_exactly(const ZPoly& f, const ZPoly& g, ZPoly& q) {
    if (g.degree() > f.degree()) return false;
    // g monic here.
    ZPoly r;
    f.divmod(g, q, r);
    return r.is_zero();
}

std::uint64_t choose_prime(const ZPoly& f, std::vector<FpPoly>& best_factors) {
    std::mt19937_64 rng(0x5eed);
    std::uint64_t best_p = 0;
    int tried = 0;
    for (std::uint32_t p : primes_up_to(100000)) {
        FpPoly fp = FpPoly::from_zpoly(f, p);
        if (fp.degree() != f.degree()) continue;
        if (gcd(fp, fp.derivative()).degree() > 0) continue;
        auto fac = factor_mod_p(fp, rng);
        if (best_p == 0 || fac.size() < best_factors.size()) {
            best_p = p;
            best_factors.clear();
            for (auto& [g, e] : fac) best_factors.push_back(g);
        }
        if (best_factors.size() == 1 || ++tried >= 6) break;
    }
    if (best_p == 0) throw InternalConsistencyError("no good prime for factorization");
    return best_p;
}

// Irreducible factors of a monic squarefree polynomial.
std::vector<ZPoly> zassenhaus_monic(const ZPoly& f) {
    if (f.degree() <= 1) return {f};
    std::vector<FpPoly> modular;
    const std::uint64_t p = choose_prime(f, modular);
    if (modular.size() == 1) return {f};
    // Mignotte-type bound on factor coefficients: 2^n * ||f||_2.
    Integer norm2 = 0;
    for (const auto& v : f.coeffs()) norm2 += v * v;
    Integer bound = (isqrt(norm2) + 1) << static_cast<unsigned>(f.degree());
    const Integer target = 2 * bound + 1;
    std::vector<ZPoly> lifted;
    {
        Integer pk(static_cast<unsigned long>(p));
        while (pk < target) pk *= pk;
        hensel_tree(f, modular, p, pk, lifted);
        std::vector<ZPoly> fixed;
        for (auto& g : lifted) fixed.push_back(reduce(g, pk));
        lifted = std::move(fixed);
        // Recombination modulo pk.
        std::vector<ZPoly> result;
        ZPoly rest = f;
        std::size_t k = 1;
        while (2 * k <= lifted.size()) {
            bool found = false;
            std::vector<std::size_t> idx(k);
            for (std::size_t i = 0; i < k; ++i) idx[i] = i;
            while (true) {
                ZPoly cand = ZPoly::constant(1);
                for (auto i : idx) cand = reduce(cand * lifted[i], pk);
                ZPoly q;
                if (divides_exactly(rest, cand, q)) {
                    result.push_back(cand);
                    rest = q;
                    std::vector<ZPoly> remaining;
                    for (std::size_t i = 0; i < lifted.size(); ++i)
                        if (std::find(idx.begin(), idx.end(), i) == idx.end()) remaining.push_back(lifted[i]);
                    lifted = std::move(remaining);
                    found = true;
                    break;
                }
                // next combination
                std::size_t pos = k;
                while (pos > 0 && idx[pos - 1] == lifted.size() - k + pos - 1) --pos;
                if (pos == 0) break;
                ++idx[pos - 1];
                for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
            }
            if (!found) ++k;
        }
        if (rest.degree() > 0) result.push_back(rest);
        return result;
    }
}

}  // namespace

bool is_squarefree(const ZPoly& f) {
    if (f.degree() <= 0) return true;
    QPoly q = to_qpoly(f);
    return gcd(q, q.derivative()).degree() == 0;
}

std::vector<ZPoly> factor_squarefree(const ZPoly& f0) {
    if (f0.degree() < 1) throw DomainError("factorization needs degree >= 1");
    ZPoly f = primitive_part(to_qpoly(f0));
    if (f.lead() == 1) return zassenhaus_monic(f);
    // Make monic: F(y) = lc^(n-1) f(y / lc).
    const int n = f.degree();
    const Integer lc = f.lead();
    std::vector<Integer> c(static_cast<std::size_t>(n + 1));
    // c_i = a_i * lc^(n-1-i) for i < n, c_n = 1.
    for (int i = 0; i < n; ++i) {
        Integer e;
        mpz_pow_ui(e.get_mpz_t(), lc.get_mpz_t(), static_cast<unsigned long>(n - 1 - i));
        c[static_cast<std::size_t>(i)] = f.coeff(static_cast<std::size_t>(i)) * e;
    }
    c[static_cast<std::size_t>(n)] = 1;
    std::vector<ZPoly> out;
    for (const auto& g : zassenhaus_monic(ZPoly(c))) {
        // g(lc x) then primitive part.
        std::vector<Rational> back;
        Integer pw2 = 1;
        for (std::size_t i = 0; i < g.coeffs().size(); ++i) {
            back.emplace_back(g.coeffs()[i] * pw2);
            pw2 *= lc;
        }
        out.push_back(primitive_part(QPoly(back)));
    }
    return out;
}

std::vector<std::pair<ZPoly, unsigned>> factor_over_Z(const ZPoly& f) {
    if (f.is_zero()) throw DomainError("factorization of zero polynomial");
    std::vector<std::pair<ZPoly, unsigned>> out;
    if (f.degree() == 0) return out;
    // Yun over Q.
    QPoly a = to_qpoly(f);
    QPoly d = a.derivative();
    QPoly c = gcd(a, d);
    QPoly w = a / c;
    unsigned i = 1;
    while (w.degree() > 0) {
        QPoly y = gcd(w, c);
        QPoly z = w / y;
        if (z.degree() > 0)
            for (auto& g : factor_squarefree(primitive_part(z))) out.emplace_back(g, i);
        ++i;
        w = y;
        c = c / y;
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.first.degree() != y.first.degree()) return x.first.degree() < y.first.degree();
        for (int k = x.first.degree(); k >= 0; --k) {
            const int s = cmp(x.first.coeff(static_cast<std::size_t>(k)), y.first.coeff(static_cast<std::size_t>(k)));
            if (s != 0) return s < 0;
        }
        return x.second < y.second;
    });
    return out;
}

bool is_irreducible(const ZPoly& f) {
    const int n = f.degree();
    if (n < 1) return false;
    if (n == 1) return true;
    if (!is_squarefree(f)) return false;
    // Possible factor degrees: intersection of subset-sum sets of modular patterns.
    std::vector<bool> possible(static_cast<std::size_t>(n + 1), true);
    int good = 0;
    for (std::uint32_t p : primes_up_to(2000)) {
        auto pat = splitting_type(f, p);
        if (pat.empty()) continue;
        if (pat.size() == 1) return true;
        std::vector<bool> sums(static_cast<std::size_t>(n + 1), false);
        sums[0] = true;
        for (int d : pat)
            for (int s = n; s >= d; --s)
                if (sums[static_cast<std::size_t>(s - d)]) sums[static_cast<std::size_t>(s)] = true;
        bool any = false;
        for (int s = 1; s < n; ++s) {
            possible[static_cast<std::size_t>(s)] = possible[static_cast<std::size_t>(s)] && sums[static_cast<std::size_t>(s)];
            any = any || possible[static_cast<std::size_t>(s)];
        }
        if (!any) return true;
        if (++good >= 8) break;
    }
    return factor_squarefree(f).size() == 1;
}

bool has_factor_of_degree(const ZPoly& f, int d) {
    for (const auto& [g, e] : factor_over_Z(f))
        if (g.degree() == d) return true;
    return false;
}

}  // namespace fieldcount::algebra
