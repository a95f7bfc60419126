#include "fieldcount/algebra/lattice.hpp"

#include <cmath>

namespace fieldcount::algebra {

namespace {

Rational round_q(const Rational& q) { return Rational(floor_of(q + Rational(1, 2))); }
double round_q(double q) { return std::nearbyint(q); }

template <class T, class Mat, class UMat, class I>
void lll_core(Mat& G, UMat& U, const T& delta, std::size_t n) {
    std::vector<std::vector<T>> mu(n, std::vector<T>(n, T(0)));
    std::vector<T> B(n, T(0));
    auto gso_row = [&](std::size_t i) {
        for (std::size_t j = 0; j < i; ++j) {
            T s = G[i][j];
            for (std::size_t k = 0; k < j; ++k) s -= mu[j][k] * mu[i][k] * B[k];
            mu[i][j] = s / B[j];
        }
        T s = G[i][i];
        for (std::size_t k = 0; k < i; ++k) s -= mu[i][k] * mu[i][k] * B[k];
        B[i] = s;
    };
    auto sub_row = [&](std::size_t k, std::size_t j, const T& q) {
        for (std::size_t i = 0; i < n; ++i) G[k][i] -= q * G[j][i];
        for (std::size_t i = 0; i < n; ++i) G[i][k] -= q * G[i][j];
        I qi;
        if constexpr (std::is_same_v<T, Rational>)
            qi = q.get_num();
        else
            qi = static_cast<I>(q);
        for (std::size_t i = 0; i < n; ++i) U[k][i] -= qi * U[j][i];
    };
    gso_row(0);
    std::size_t k = 1;
    std::size_t guard = 0;
    while (k < n) {
        if (++guard > 1000000) throw InternalConsistencyError("LLL failed to terminate");
        for (std::size_t i = 0; i <= k; ++i) gso_row(i);
        for (std::size_t j = k; j-- > 0;) {
            T q = round_q(mu[k][j]);
            if (q == 0) continue;
            sub_row(k, j, q);
            for (std::size_t i = 0; i < j; ++i) mu[k][i] -= q * mu[j][i];
            mu[k][j] -= q;
        }
        if (B[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
            ++k;
        } else {
            std::swap(G[k], G[k - 1]);
            for (std::size_t i = 0; i < n; ++i) std::swap(G[i][k], G[i][k - 1]);
            std::swap(U[k], U[k - 1]);
            k = k > 1 ? k - 1 : 1;
        }
    }
}

}  // namespace

ZMatrix lll_gram(QMatrix& gram, const Rational& delta) {
    const std::size_t n = gram.rows();
    std::vector<std::vector<Rational>> G(n, std::vector<Rational>(n));
    std::vector<std::vector<Integer>> U(n, std::vector<Integer>(n, Integer(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) G[i][j] = gram(i, j);
        U[i][i] = 1;
    }
    if (n > 0) lll_core<Rational, decltype(G), decltype(U), Integer>(G, U, delta, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) gram(i, j) = G[i][j];
    return ZMatrix::from_rows(U);
}

LMatrix lll_gram(DMatrix& gram, double delta) {
    const std::size_t n = gram.size();
    LMatrix U(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) U[i][i] = 1;
    if (n > 0) lll_core<double, DMatrix, LMatrix, std::int64_t>(gram, U, delta, n);
    return U;
}

ZMatrix lll_basis(const ZMatrix& b, const Rational& delta) {
    QMatrix g = to_qmatrix(b * b.transpose());
    ZMatrix U = lll_gram(g, delta);
    return U * b;
}

namespace {

bool cholesky_q(const DMatrix& G, DMatrix& q) {
    const std::size_t n = G.size();
    q.assign(n, std::vector<double>(n, 0.0));
    // q[i][i] = diagonal, q[i][j] (j > i) = mu-like coefficients: Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2
    DMatrix a = G;
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i][i] <= 0) return false;
        q[i][i] = a[i][i];
        for (std::size_t j = i + 1; j < n; ++j) q[i][j] = a[i][j] / a[i][i];
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t l = k; l < n; ++l) {
                a[k][l] -= q[i][k] * q[i][l] * q[i][i];
                a[l][k] = a[k][l];
            }
    }
    return true;
}

void fp_core(const DMatrix& gram, const std::vector<double>& centre, double bound, bool symmetric,
             const std::function<bool(const std::vector<std::int64_t>&)>& visit) {
    const std::size_t n = gram.size();
    DMatrix q;
    if (!cholesky_q(gram, q)) throw DomainError("Gram matrix is not positive definite");
    std::vector<std::int64_t> x(n, 0), ub(n, 0);
    std::vector<double> T(n, 0.0), U(n, 0.0);
    const double eps = 1e-9 * (1.0 + std::abs(bound));
    // Iterative enumeration from the last coordinate down (Cohen Alg. 2.7.5).
    std::size_t i = n - 1;
    T[i] = bound;
    U[i] = 0.0;
    auto init = [&](std::size_t idx) {
        const double c = -(U[idx]) + centre[idx];
        const double z = std::sqrt(std::max(0.0, T[idx] / q[idx][idx] + eps));
        ub[idx] = static_cast<std::int64_t>(std::floor(z + c));
        x[idx] = static_cast<std::int64_t>(std::ceil(c - z)) - 1;
    };
    init(i);
    if (symmetric) x[i] = -1;  // top coordinate >= 0
    while (true) {
        ++x[i];
        if (x[i] > ub[i]) {
            if (i == n - 1) return;
            ++i;
            continue;
        }
        if (i > 0) {
            const double d = static_cast<double>(x[i]) - centre[i] + U[i];
            T[i - 1] = T[i] - q[i][i] * d * d;
            --i;
            double u = 0.0;
            for (std::size_t j = i + 1; j < n; ++j) u += q[i][j] * (static_cast<double>(x[j]) - centre[j]);
            U[i] = u;
            init(i);
            continue;
        }
        if (symmetric) {
            bool zero = true;
            std::size_t top = n;
            for (std::size_t j = n; j-- > 0;)
                if (x[j] != 0) {
                    zero = false;
                    top = j;
                    break;
                }
            if (zero || x[top] < 0) continue;
        }
        if (!visit(x)) return;
    }
}

}  // namespace

void fincke_pohst(const DMatrix& gram, double bound, const std::function<bool(const std::vector<std::int64_t>&)>& visit) {
    std::vector<double> c(gram.size(), 0.0);
    fp_core(gram, c, bound, true, visit);
}

void fincke_pohst_centered(const DMatrix& gram, const std::vector<double>& centre, double bound,
                           const std::function<bool(const std::vector<std::int64_t>&)>& visit) {
    fp_core(gram, centre, bound, false, visit);
}

}  // namespace fieldcount::algebra

namespace fieldcount::algebra {

ZMatrix integer_kernel(const std::vector<Integer>& v) {
    const std::size_t n = v.size();
    std::vector<Integer> w = v;
    ZMatrix V = ZMatrix::identity(n);
    for (;;) {
        std::size_t piv = n;
        for (std::size_t k = 0; k < n; ++k)
            if (w[k] != 0 && (piv == n || abs(w[k]) < abs(w[piv]))) piv = k;
        if (piv == n) throw DomainError("integer_kernel of the zero vector");
        bool done = true;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == piv || w[k] == 0) continue;
            const Integer q = floor_div(w[k], w[piv]);
            w[k] -= q * w[piv];
            for (std::size_t j = 0; j < n; ++j) V(k, j) -= q * V(piv, j);
            if (w[k] != 0) done = false;
        }
        if (done) {
            ZMatrix K(n - 1, n);
            std::size_t r = 0;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == piv) continue;
                for (std::size_t j = 0; j < n; ++j) K(r, j) = V(k, j);
                ++r;
            }
            return K;
        }
    }
}

bool is_positive_definite(const QMatrix& gram) {
    const std::size_t n = gram.rows();
    QMatrix a = gram;
    for (std::size_t k = 0; k < n; ++k) {
        if (a(k, k) <= 0) return false;
        for (std::size_t i = k + 1; i < n; ++i) {
            const Rational f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return true;
}

}  // namespace fieldcount::algebra
