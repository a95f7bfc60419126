#include "fieldcount/algebra/roots.hpp"

#include <cmath>
#include <limits>

namespace fieldcount::algebra {

template <class R>
bool aberth_roots(const R* a, int n, std::complex<R>* z, int max_iter) {
    using C = std::complex<R>;
    if (n <= 0) return true;
    if (n == 1) {
        z[0] = C(-a[0], 0);
        return true;
    }
    // Cauchy bound for the initial circle.
    R rad = 0;
    for (int i = 0; i < n; ++i) rad = std::max(rad, std::abs(a[i]));
    rad = std::min<R>(1 + rad, R(2) * std::pow(rad + R(1e-30), R(1) / R(n)) + 1);
    const R centre = -a[n - 1] / R(n);
    for (int i = 0; i < n; ++i) {
        const R ang = R(2) * R(3.14159265358979323846L) * (R(i) + R(0.25)) / R(n) + R(0.4);
        z[i] = C(centre + rad * std::cos(ang), rad * std::sin(ang));
    }
    const R tol = std::numeric_limits<R>::epsilon() * 8;
    bool done[16] = {};
    std::vector<bool> done_v;
    bool* dn = done;
    if (n > 16) {
        done_v.assign(static_cast<std::size_t>(n), false);
        dn = nullptr;
    }
    auto is_done = [&](int i) { return dn ? dn[i] : static_cast<bool>(done_v[static_cast<std::size_t>(i)]); };
    auto set_done = [&](int i) {
        if (dn)
            dn[i] = true;
        else
            done_v[static_cast<std::size_t>(i)] = true;
    };
    int remaining = n;
    for (int it = 0; it < max_iter && remaining > 0; ++it) {
        for (int i = 0; i < n; ++i) {
            if (is_done(i)) continue;
            C p(1, 0), dp(0, 0);
            const R az = std::abs(z[i]);
            R err = 1;  // running bound sum |a_k| |z|^k for the rounding error of p
            for (int k = n - 1; k >= 0; --k) {
                dp = dp * z[i] + p;
                p = p * z[i] + a[k];
                err = err * az + std::abs(a[k]);
            }
            // Stop once |p| is at the level of its own evaluation error.
            const bool noise = std::abs(p) <= err * std::numeric_limits<R>::epsilon() * R(4 * n);
            if (p == C(0, 0)) {
                set_done(i);
                --remaining;
                continue;
            }
            const C ratio = p / dp;
            C s(0, 0);
            for (int j = 0; j < n; ++j)
                if (j != i) s += R(1) / (z[i] - z[j]);
            const C w = ratio / (R(1) - ratio * s);
            z[i] -= w;
            if (noise || std::abs(w) <= tol * (R(1) + std::abs(z[i]))) {
                set_done(i);
                --remaining;
            }
        }
    }
    if (remaining != 0) return false;
    // Guard against two approximations settling on one root: check s_1 and s_2.
    C s1(0, 0), s2(0, 0);
    R mag = 0;
    for (int i = 0; i < n; ++i) {
        s1 += z[i];
        s2 += z[i] * z[i];
        mag += std::norm(z[i]);
    }
    const R an1 = a[n - 1], an2 = a[n - 2];
    const R tol2 = R(1e-7) * (R(1) + mag);
    return std::abs(s1 + an1) <= tol2 && std::abs(s2 - (an1 * an1 - R(2) * an2)) <= tol2;
}

template bool aberth_roots<double>(const double*, int, std::complex<double>*, int);
template bool aberth_roots<long double>(const long double*, int, std::complex<long double>*, int);

std::vector<std::complex<long double>> complex_roots(const ZPoly& f) {
    if (!f.is_monic()) throw DomainError("complex_roots expects a monic polynomial");
    const int n = f.degree();
    std::vector<long double> a(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i)] = static_cast<long double>(f.coeff(static_cast<std::size_t>(i)).get_d());
    std::vector<std::complex<long double>> z(static_cast<std::size_t>(n));
    if (!aberth_roots<long double>(a.data(), n, z.data(), 500)) {
        // Retry with more iterations; clustered roots converge slowly.
        if (!aberth_roots<long double>(a.data(), n, z.data(), 5000))
            throw InternalConsistencyError("root finding did not converge for " + format_poly(f));
    }
    return z;
}

}  // namespace fieldcount::algebra
