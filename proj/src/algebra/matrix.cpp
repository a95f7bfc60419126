#include "fieldcount/algebra/matrix.hpp"

#include <utility>

namespace fieldcount::algebra {

QMatrix to_qmatrix(const ZMatrix& m) {
    QMatrix q(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = m(i, j);
    return q;
}

std::vector<Rational> row_times(const std::vector<Rational>& v, const QMatrix& m) {
    std::vector<Rational> r(m.cols(), Rational(0));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (v[i] == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) r[j] += v[i] * m(i, j);
    }
    return r;
}

Integer determinant(const ZMatrix& m0) {
    if (m0.rows() != m0.cols()) throw DomainError("determinant of non-square matrix");
    const std::size_t n = m0.rows();
    if (n == 0) return 1;
    ZMatrix m = m0;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

std::vector<std::size_t> rref(QMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && m(piv, c) == 0) ++piv;
        if (piv == m.rows()) continue;
        if (piv != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(piv, j));
        Rational inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

Rational determinant(const QMatrix& m0) {
    if (m0.rows() != m0.cols()) throw DomainError("determinant of non-square matrix");
    QMatrix m = m0;
    const std::size_t n = m.rows();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m(piv, c) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(c, j), m(piv, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c) == 0) continue;
            Rational f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

std::size_t rank(const QMatrix& m) {
    QMatrix t = m;
    return rref(t).size();
}

QMatrix right_kernel(const QMatrix& m) {
    QMatrix t = m;
    auto piv = rref(t);
    std::vector<bool> is_piv(m.cols(), false);
    for (auto c : piv) is_piv[c] = true;
    QMatrix k(m.cols() - piv.size(), m.cols());
    std::size_t row = 0;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_piv[f]) continue;
        k(row, f) = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) k(row, piv[i]) = -t(i, f);
        ++row;
    }
    return k;
}

QMatrix inverse(const QMatrix& m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw DomainError("inverse of non-square matrix");
    QMatrix a(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
        a(i, n + i) = 1;
    }
    auto piv = rref(a);
    if (piv.size() < n || piv[n - 1] != n - 1) throw DomainError("singular matrix");
    QMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = a(i, n + j);
    return inv;
}

QPoly charpoly(const QMatrix& m0) {
    const std::size_t n = m0.rows();
    if (n != m0.cols()) throw DomainError("charpoly of non-square matrix");
    QMatrix h = m0;
    // Reduce to upper Hessenberg form by similarity transforms.
    for (std::size_t k = 0; k + 2 <= n; ++k) {
        std::size_t piv = k + 1;
        while (piv < n && h(piv, k) == 0) ++piv;
        if (piv == n) continue;
        if (piv != k + 1) {
            for (std::size_t j = 0; j < n; ++j) std::swap(h(piv, j), h(k + 1, j));
            for (std::size_t i = 0; i < n; ++i) std::swap(h(i, piv), h(i, k + 1));
        }
        for (std::size_t i = k + 2; i < n; ++i) {
            if (h(i, k) == 0) continue;
            Rational f = h(i, k) / h(k + 1, k);
            for (std::size_t j = 0; j < n; ++j) h(i, j) -= f * h(k + 1, j);
            for (std::size_t r = 0; r < n; ++r) h(r, k + 1) += f * h(r, i);
        }
    }
    // p_0 = 1, p_{k+1}(x) = (x - h_kk) p_k - sum_{i<k} h_ik (prod_{j=i+1..k} h_{j,j-1}) p_i
    std::vector<QPoly> p(n + 1);
    p[0] = QPoly::constant(1);
    const QPoly x = QPoly::monomial(1, 1);
    for (std::size_t k = 0; k < n; ++k) {
        QPoly next = (x - QPoly::constant(h(k, k))) * p[k];
        Rational prod = 1;
        for (std::size_t ii = k; ii-- > 0;) {
            prod *= h(ii + 1, ii);
            if (prod == 0) break;
            next = next - QPoly::constant(prod * h(ii, k)) * p[ii];
        }
        p[k + 1] = std::move(next);
    }
    return p[n];
}

ZPoly charpoly_integral(const ZMatrix& m) {
    QPoly q = charpoly(to_qmatrix(m));
    std::vector<Integer> c;
    for (const auto& v : q.coeffs()) {
        if (v.get_den() != 1) throw InternalConsistencyError("non-integral charpoly of integer matrix");
        c.push_back(v.get_num());
    }
    return ZPoly(std::move(c));
}

ZMatrix hermite_normal_form(const ZMatrix& m0) {
    ZMatrix m = m0;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols; ++c) {
        // Euclid on column c among rows r..end.
        while (true) {
            std::size_t best = rows;
            for (std::size_t i = r; i < rows; ++i)
                if (m(i, c) != 0 && (best == rows || abs(m(i, c)) < abs(m(best, c)))) best = i;
            if (best == rows) break;
            if (best != r)
                for (std::size_t j = 0; j < cols; ++j) std::swap(m(r, j), m(best, j));
            bool done = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (m(i, c) == 0) continue;
                Integer q = floor_div(m(i, c), m(r, c));
                for (std::size_t j = c; j < cols; ++j) m(i, j) -= q * m(r, j);
                if (m(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (r >= rows || m(r, c) == 0) throw DomainError("HNF requires full column rank");
        if (m(r, c) < 0)
            for (std::size_t j = c; j < cols; ++j) m(r, j) = -m(r, j);
        for (std::size_t i = 0; i < r; ++i) {
            Integer q = floor_div(m(i, c), m(r, c));
            if (q != 0)
                for (std::size_t j = c; j < cols; ++j) m(i, j) -= q * m(r, j);
        }
        ++r;
    }
    ZMatrix h(cols, cols);
    for (std::size_t i = 0; i < cols; ++i)
        for (std::size_t j = 0; j < cols; ++j) h(i, j) = m(i, j);
    return h;
}

FpMatrix left_kernel_mod_p(const FpMatrix& m, std::uint64_t p, std::size_t rows, std::size_t cols) {
    // Solve v * m = 0  <=>  m^T v^T = 0.
    FpMatrix t(cols, std::vector<std::uint64_t>(rows));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j] % p;
    auto inv = [p](std::uint64_t a) {
        std::uint64_t r = 1, e = p - 2;
        while (e) {
            if (e & 1) r = static_cast<std::uint64_t>((static_cast<unsigned __int128>(r) * a) % p);
            a = static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * a) % p);
            e >>= 1;
        }
        return r;
    };
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < rows && r < cols; ++c) {
        std::size_t k = r;
        while (k < cols && t[k][c] == 0) ++k;
        if (k == cols) continue;
        std::swap(t[k], t[r]);
        const std::uint64_t iv = inv(t[r][c]);
        for (auto& v : t[r]) v = static_cast<std::uint64_t>((static_cast<unsigned __int128>(v) * iv) % p);
        for (std::size_t i = 0; i < cols; ++i) {
            if (i == r || t[i][c] == 0) continue;
            const std::uint64_t f = t[i][c];
            for (std::size_t j = 0; j < rows; ++j)
                t[i][j] = (t[i][j] + p - static_cast<std::uint64_t>((static_cast<unsigned __int128>(f) * t[r][j]) % p)) % p;
        }
        piv.push_back(c);
        ++r;
    }
    std::vector<bool> is_piv(rows, false);
    for (auto c : piv) is_piv[c] = true;
    FpMatrix ker;
    for (std::size_t f = 0; f < rows; ++f) {
        if (is_piv[f]) continue;
        std::vector<std::uint64_t> v(rows, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = (p - t[i][f]) % p;
        ker.push_back(std::move(v));
    }
    return ker;
}

}  // namespace fieldcount::algebra
