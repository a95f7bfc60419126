#include "fieldcount/fields/hunter.hpp"

#include <cmath>
#include <complex>

#include "fieldcount/algebra/roots.hpp"
#include "fieldcount/errors.hpp"

namespace fieldcount::fields {

std::size_t PolyKeyHash::operator()(const PolyKey& k) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto v : k) {
        h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
}

bool canonical_less(const PolyKey& x, const PolyKey& y, int n) {
    for (int i = n - 1; i >= 0; --i)
        if (x[static_cast<std::size_t>(i)] != y[static_cast<std::size_t>(i)])
            return x[static_cast<std::size_t>(i)] < y[static_cast<std::size_t>(i)];
    return false;
}

double hermite_constant(int k) {
    // gamma_k^k = 1, 4/3, 2, 4, 8, 64/3, 64, 256
    static const double pow_table[] = {0, 1.0, 4.0 / 3.0, 2.0, 4.0, 8.0, 64.0 / 3.0, 64.0, 256.0};
    if (k < 1 || k > 8) throw DomainError("Hermite constant known only for k <= 8");
    return std::pow(pow_table[k], 1.0 / k);
}

double hunter_bound(int n, double X) {
    if (n < 2) throw DomainError("degree must be >= 2");
    return hermite_constant(n - 1) * std::pow(X / n, 1.0 / (n - 1));
}

double centred_t2(const std::int64_t* a, int n) {
    double s1 = -static_cast<double>(a[n - 1]);
    // s_2 = a_{n-1}^2 - 2 a_{n-2} (exact in integers)
    const std::int64_t an1 = a[n - 1], an2 = n >= 2 ? a[n - 2] : 0;
    const double s2 = static_cast<double>(an1 * an1 - 2 * an2);
    double d[kMaxHunterDegree];
    std::complex<double> z[kMaxHunterDegree];
    for (int i = 0; i < n; ++i) d[i] = static_cast<double>(a[i]);
    double im2 = 0.0;
    if (n >= 3) {
        if (algebra::aberth_roots<double>(d, n, z, 400)) {
            for (int i = 0; i < n; ++i) im2 += z[i].imag() * z[i].imag();
        } else {
            long double dl[kMaxHunterDegree];
            std::complex<long double> zl[kMaxHunterDegree];
            for (int i = 0; i < n; ++i) dl[i] = static_cast<long double>(a[i]);
            if (!algebra::aberth_roots<long double>(dl, n, zl, 2000)) return -1.0;
            for (int i = 0; i < n; ++i) im2 += static_cast<double>(zl[i].imag() * zl[i].imag());
        }
    } else if (n == 2) {
        const double disc = d[1] * d[1] - 4 * d[0];
        if (disc < 0) im2 = -disc / 2.0;  // two roots with imaginary parts ±sqrt(-disc)/2
    }
    return s2 + 2.0 * im2 - s1 * s1 / n;
}

int poly_stage(const std::int64_t* a, int n) {
    const double c = centred_t2(a, n);
    if (c < 0) return -1;
    int s = 0;
    while (c > std::ldexp(1.0, s) + kStageTolerance) ++s;
    return s;
}

namespace {

struct BoxState {
    int n;
    double T;
    std::int64_t a[kMaxHunterDegree + 1];
    std::int64_t s[kMaxHunterDegree + 1];  // power sums s_0..s_n
    double pow_bound[kMaxHunterDegree + 1];
    double mac_bound[kMaxHunterDegree + 1];
    const std::function<void(const std::int64_t*)>* visit;
};

constexpr double kBoxSlack = 1e-9;

// Range for a_{n-k} given a_{n-1}..a_{n-k+1}.
bool coeff_range(const BoxState& st, int k, std::int64_t& lo, std::int64_t& hi) {
    const int n = st.n;
    // R = -sum_{i=1}^{k-1} a_{n-i} s_{k-i}; s_k = R - k a_{n-k}
    std::int64_t R = 0;
    for (int i = 1; i < k; ++i) R -= st.a[n - i] * st.s[k - i];
    const double B = st.pow_bound[k];
    const double plo = std::ceil((static_cast<double>(R) - B) / k - kBoxSlack);
    const double phi = std::floor((static_cast<double>(R) + B) / k + kBoxSlack);
    const double M = st.mac_bound[k];
    const double mlo = std::ceil(-M - kBoxSlack), mhi = std::floor(M + kBoxSlack);
    const double l = std::max(plo, mlo), h = std::min(phi, mhi);
    if (l > h) return false;
    lo = static_cast<std::int64_t>(l);
    hi = static_cast<std::int64_t>(h);
    return true;
}

void recurse(BoxState& st, int k) {
    const int n = st.n;
    if (k > n || n > kMaxHunterDegree || n < 2) return;
    std::int64_t lo, hi;
    if (!coeff_range(st, k, lo, hi)) return;
    std::int64_t R = 0;
    for (int i = 1; i < k; ++i) R -= st.a[n - i] * st.s[k - i];
    for (std::int64_t v = lo; v <= hi; ++v) {
        st.a[n - k] = v;
        st.s[k] = R - k * v;
        if (k == n) {
            if (v == 0) continue;
            (*st.visit)(st.a);
        } else {
            recurse(st, k + 1);
        }
    }
}

void init_state(BoxState& st, int n, int t, double C) {
    if (n < 2 || n > kMaxHunterDegree) throw DomainError("Hunter enumeration supports degrees 2..7");
    st.n = n;
    st.T = static_cast<double>(t) * t / n + C;
    const double sT = st.T * (1 + kBoxSlack) + kBoxSlack;
    for (int k = 0; k <= n; ++k) {
        st.pow_bound[k] = std::pow(sT, k / 2.0) * (1 + 1e-12);
        double binom = 1;
        for (int i = 0; i < k; ++i) binom = binom * (n - i) / (i + 1);
        st.mac_bound[k] = binom * std::pow(sT / n, k / 2.0) * (1 + 1e-12);
    }
    st.a[n] = 1;
    st.a[n - 1] = -t;
    st.s[0] = n;
    st.s[1] = t;
    for (int i = n + 1; i <= kMaxHunterDegree; ++i) st.a[i] = 0;
    for (int i = 0; i < n - 1; ++i) st.a[i] = 0;
}

}  // namespace

std::pair<std::int64_t, std::int64_t> outer_range(int n, int t, double C) {
    BoxState st;
    init_state(st, n, t, C);
    std::int64_t lo, hi;
    if (!coeff_range(st, 2, lo, hi)) return {1, 0};
    return {lo, hi};
}

void for_each_box_poly(int n, int t, double C, const std::function<void(const std::int64_t*)>& visit, bool has_outer,
                       std::int64_t outer) {
    BoxState st;
    init_state(st, n, t, C);
    st.visit = &visit;
    if (!has_outer) {
        recurse(st, 2);
        return;
    }
    std::int64_t lo, hi;
    if (!coeff_range(st, 2, lo, hi) || outer < lo || outer > hi) return;
    st.a[n - 2] = outer;
    st.s[2] = st.a[n - 1] * st.a[n - 1] - 2 * outer;  // R_2 = -a_{n-1} s_1 = t^2
    if (n == 2) {
        if (outer != 0) visit(st.a);
        return;
    }
    recurse(st, 3);
}

bool squarefree_kernel_below(unsigned __int128 m, std::uint64_t X) {
    if (m < X) return true;
    // Remove small primes; track the square part sq^2.
    unsigned __int128 rem = m, sq2 = 1;
    for (std::uint32_t p : algebra::primes_up_to(1u << 20)) {
        const unsigned __int128 pp = static_cast<unsigned __int128>(p) * p;
        if (pp * p > rem) break;
        if (rem % p != 0) continue;
        int e = 0;
        while (rem % p == 0) {
            rem /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) sq2 *= pp;
        if (m / sq2 < X) return true;
    }
    // rem is now 1, a prime, a product of two primes, or a prime square (if the
    // loop ran to rem^{1/3}); otherwise fall back to full factorization.
    const unsigned __int128 lim = static_cast<unsigned __int128>(1u << 20);
    if (lim * lim * lim <= rem) {
        algebra::Integer r = algebra::from_i128(static_cast<algebra::i128>(rem));
        const algebra::Integer s = algebra::square_part_root(r);
        return algebra::from_i128(static_cast<algebra::i128>(m / sq2)) / (s * s) < X;
    }
    algebra::Integer r = algebra::from_i128(static_cast<algebra::i128>(rem));
    if (algebra::is_perfect_square(r)) sq2 *= rem;
    return m / sq2 < X;
}

bool squarefree_kernel_below(const algebra::Integer& disc, const algebra::Integer& X) {
    const algebra::Integer m = abs(disc);
    if (m < X) return true;
    if (algebra::fits_i128(m) && mpz_fits_ulong_p(X.get_mpz_t()))
        return squarefree_kernel_below(static_cast<unsigned __int128>(algebra::to_i128(m)), X.get_ui());
    const algebra::Integer s = algebra::square_part_root(m);
    return m / (s * s) < X;
}

}  // namespace fieldcount::fields
