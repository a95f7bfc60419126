#include "fieldcount/bounds/sqfree.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <memory>

#include "fieldcount/errors.hpp"

namespace fieldcount::bounds {

namespace {

// Flat term list for fast evaluation.
struct Compiled {
    std::size_t k = 0;
    std::vector<std::vector<unsigned>> exps;
    std::vector<Integer> coeffs;
    std::vector<std::int64_t> small;  // coefficients when the int64 path is usable
};

Compiled compile(const MPoly& f) {
    Compiled c;
    c.k = f.vars().size();
    for (const auto& [m, a] : f.terms()) {
        c.exps.push_back(m);
        c.coeffs.push_back(a);
    }
    return c;
}

std::uint64_t box_points(const std::vector<Range>& box) {
    std::uint64_t n = 1;
    for (const auto& r : box) {
        if (r.hi < r.lo) throw DomainError("empty range in box");
        const auto w = static_cast<std::uint64_t>(r.hi - r.lo) + 1;
        if (n > std::numeric_limits<std::uint64_t>::max() / w) throw DomainError("box too large");
        n *= w;
    }
    return n;
}

// Bound on |f| over the box; decides between int64 and GMP evaluation.
Integer value_bound(const Compiled& c, const std::vector<Range>& box) {
    Integer total = 0;
    for (std::size_t t = 0; t < c.exps.size(); ++t) {
        Integer term = abs(c.coeffs[t]);
        for (std::size_t i = 0; i < c.k; ++i) {
            const Integer m(static_cast<long>(std::max(std::abs(box[i].lo), std::abs(box[i].hi))));
            Integer pw;
            mpz_pow_ui(pw.get_mpz_t(), m.get_mpz_t(), c.exps[t][i]);
            term *= pw;
        }
        total += term;
    }
    return total;
}

void point_at(std::uint64_t idx, const std::vector<Range>& box, std::vector<std::int64_t>& x) {
    for (std::size_t i = box.size(); i-- > 0;) {
        const auto w = static_cast<std::uint64_t>(box[i].hi - box[i].lo) + 1;
        x[i] = box[i].lo + static_cast<std::int64_t>(idx % w);
        idx /= w;
    }
}

std::int64_t eval_small(const Compiled& c, const std::vector<std::int64_t>& x) {
    std::int64_t s = 0;
    for (std::size_t t = 0; t < c.exps.size(); ++t) {
        std::int64_t v = c.small[t];
        for (std::size_t i = 0; i < c.k; ++i)
            for (unsigned e = 0; e < c.exps[t][i]; ++e) v *= x[i];
        s += v;
    }
    return s;
}

Integer eval_big(const Compiled& c, const std::vector<std::int64_t>& x) {
    Integer s = 0;
    for (std::size_t t = 0; t < c.exps.size(); ++t) {
        Integer v = c.coeffs[t];
        for (std::size_t i = 0; i < c.k; ++i)
            for (unsigned e = 0; e < c.exps[t][i]; ++e) v *= static_cast<long>(x[i]);
        s += v;
    }
    return s;
}

// Bit table of non-squarefree integers in [0, limit]: marks multiples of p^2.
class SquarefulSieve {
  public:
    explicit SquarefulSieve(std::uint64_t limit) : bad_(limit + 1, false) {
        const auto root = static_cast<std::uint32_t>(std::sqrt(static_cast<double>(limit))) + 1;
        for (std::uint32_t p : algebra::primes_up_to(root)) {
            const std::uint64_t q = std::uint64_t(p) * p;
            for (std::uint64_t m = q; m <= limit; m += q) bad_[m] = true;
        }
    }
    bool squarefree(std::uint64_t v) const { return v != 0 && !bad_[v]; }

  private:
    std::vector<bool> bad_;
};

constexpr std::uint64_t kSieveLimit = std::uint64_t(1) << 28;

bool squarefree_u64(std::uint64_t v) {
    if (v == 0) return false;
    // Remove primes up to v^{1/3}; the cofactor has at most two prime factors, so it
    // is squarefree unless it is a perfect square > 1.
    const auto cube = static_cast<std::uint32_t>(std::cbrt(static_cast<double>(v))) + 2;
    for (std::uint32_t p : algebra::primes_up_to(cube)) {
        if (static_cast<unsigned __int128>(p) * p * p > v) break;
        if (v % p == 0) {
            v /= p;
            if (v % p == 0) return false;
        }
    }
    if (v == 1) return true;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r * r != v;
}

}  // namespace

bool is_squarefree(const Integer& v) {
    if (v == 0) return false;
    const Integer a = abs(v);
    if (a.fits_ulong_p()) return squarefree_u64(a.get_ui());
    return algebra::square_part_root(a) == 1;
}

BoxCount count_squarefree_values(const MPoly& f, const std::vector<Range>& box, bool parallel) {
    if (f.is_zero()) throw DomainError("polynomial is identically zero");
    if (box.size() != f.vars().size()) throw DomainError("box needs one range per variable");
    Compiled c = compile(f);
    const std::uint64_t n = box_points(box);
    const Integer bound = value_bound(c, box);
    const bool small = bound < Integer("4611686018427387904");  // 2^62
    std::unique_ptr<SquarefulSieve> sieve;
    if (small) {
        for (const auto& a : c.coeffs) c.small.push_back(a.get_si());
        if (bound <= Integer(static_cast<unsigned long>(kSieveLimit)))
            sieve = std::make_unique<SquarefulSieve>(bound.get_ui());
    }
    const std::size_t k = box.size();
    auto classify = [&](std::uint64_t idx, std::vector<std::int64_t>& x, std::uint64_t& sf, std::uint64_t& zeros) {
        point_at(idx, box, x);
        if (small) {
            const std::int64_t v = eval_small(c, x);
            const std::uint64_t a = v < 0 ? std::uint64_t(-(v + 1)) + 1 : std::uint64_t(v);
            if (a == 0) ++zeros;
            else if (sieve ? sieve->squarefree(a) : squarefree_u64(a)) ++sf;
        } else {
            const Integer v = eval_big(c, x);
            if (v == 0) ++zeros;
            else if (is_squarefree(v)) ++sf;
        }
    };
    BoxCount out;
    out.points = n;
    std::uint64_t sf = 0, zeros = 0;
    if (!parallel) {
        std::vector<std::int64_t> x(k);
        for (std::uint64_t i = 0; i < n; ++i) classify(i, x, sf, zeros);
    } else {
        std::exception_ptr err;
#pragma omp parallel reduction(+ : sf, zeros)
        {
            std::vector<std::int64_t> x(k);
#pragma omp for schedule(static)
            for (std::uint64_t i = 0; i < n; ++i) {
                try {
                    classify(i, x, sf, zeros);
                } catch (...) {
#pragma omp critical
                    err = std::current_exception();
                }
            }
        }
        if (err) std::rethrow_exception(err);
    }
    out.squarefree = sf;
    out.zeros = zeros;
    return out;
}

std::uint64_t rho_p2(const MPoly& f, std::uint32_t p) {
    const std::size_t k = f.vars().size();
    const std::int64_t m = std::int64_t(p) * p;
    if (k == 0) return f.eval_mod({}, m) == 0 ? 1 : 0;
    double cost = 1;
    for (std::size_t i = 0; i < k; ++i) cost *= static_cast<double>(m);
    if (cost > 4e10) throw DomainError("residue enumeration mod p^2 too large");
    std::uint64_t total = static_cast<std::uint64_t>(cost);
    std::uint64_t count = 0;
    // Parallel over the first coordinate; each thread walks the remaining ones.
    const std::uint64_t inner = total / static_cast<std::uint64_t>(m);
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : count)
    for (std::int64_t x0 = 0; x0 < m; ++x0) {
        std::vector<std::int64_t> x(k, 0);
        x[0] = x0;
        for (std::uint64_t j = 0; j < inner; ++j) {
            std::uint64_t r = j;
            for (std::size_t i = k; i-- > 1;) {
                x[i] = static_cast<std::int64_t>(r % static_cast<std::uint64_t>(m));
                r /= static_cast<std::uint64_t>(m);
            }
            if (f.eval_mod(x, m) == 0) ++count;
        }
    }
    return count;
}

namespace {

DensityReport density(const MPoly& f, const std::vector<Range>& box, std::uint32_t cutoff, bool parallel) {
    DensityReport rep;
    rep.polynomial = f.to_string();
    rep.vars = f.vars();
    rep.box = box;
    rep.prime_cutoff = cutoff;
    const BoxCount bc = count_squarefree_values(f, box, parallel);
    rep.points = bc.points;
    rep.squarefree = bc.squarefree;
    rep.zeros = bc.zeros;
    rep.empirical_fraction = algebra::make_rational(Integer(static_cast<unsigned long>(bc.squarefree)),
                                                    Integer(static_cast<unsigned long>(bc.points)));
    rep.truncated_product = 1;
    const std::size_t k = f.vars().size();
    for (std::uint32_t p : algebra::primes_up_to(cutoff)) {
        LocalDensity ld;
        ld.p = p;
        ld.rho = rho_p2(f, p);
        Integer denom = 1;
        for (std::size_t i = 0; i < k; ++i) denom *= Integer(p) * p;
        ld.factor = Rational(1) - algebra::make_rational(Integer(static_cast<unsigned long>(ld.rho)), denom);
        rep.truncated_product *= ld.factor;
        rep.local.push_back(std::move(ld));
    }
    rep.truncated_product.canonicalize();
    return rep;
}

}  // namespace

DensityReport sqfree_density(const MPoly& f, const std::vector<Range>& box, std::uint32_t cutoff) {
    return density(f, box, cutoff, true);
}

DensityReport sqfree_density_serial(const MPoly& f, const std::vector<Range>& box, std::uint32_t cutoff) {
    return density(f, box, cutoff, false);
}

}  // namespace fieldcount::bounds
