#pragma once

#include <cstddef>
#include <vector>

#include "fieldcount/algebra/integer.hpp"
#include "fieldcount/algebra/poly.hpp"

namespace fieldcount::algebra {

template <class T>
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), d_(rows * cols, T(0)) {}
    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
        Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw DomainError("ragged matrix rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return d_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(d_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                              d_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }
    void set_row(std::size_t i, const std::vector<T>& v) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
    }
    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw DomainError("matrix product dimension mismatch");
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
            }
        return r;
    }
    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        Matrix r(a);
        for (std::size_t i = 0; i < r.d_.size(); ++i) r.d_[i] += b.d_[i];
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        Matrix r(a);
        for (std::size_t i = 0; i < r.d_.size(); ++i) r.d_[i] -= b.d_[i];
        return r;
    }
    friend Matrix operator*(const T& s, const Matrix& a) {
        Matrix r(a);
        for (auto& v : r.d_) v *= s;
        return r;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.d_ == b.d_;
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> d_;
};

using ZMatrix = Matrix<Integer>;
using QMatrix = Matrix<Rational>;

QMatrix to_qmatrix(const ZMatrix& m);
std::vector<Rational> row_times(const std::vector<Rational>& v, const QMatrix& m);

Integer determinant(const ZMatrix& m);  // fraction-free Bareiss
Rational determinant(const QMatrix& m);
std::size_t rank(const QMatrix& m);
// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& m);
// Basis of {x : m x = 0} as rows.
QMatrix right_kernel(const QMatrix& m);
QMatrix inverse(const QMatrix& m);
// Characteristic polynomial det(x I - m), monic, via Hessenberg reduction.
QPoly charpoly(const QMatrix& m);
ZPoly charpoly_integral(const ZMatrix& m);

// Row Hermite normal form of an integer matrix of full column rank: returns the
// square upper-triangular basis (positive diagonal) of the row lattice.
ZMatrix hermite_normal_form(const ZMatrix& m);

// Linear algebra over F_p for small primes.
using FpMatrix = std::vector<std::vector<std::uint64_t>>;
// Rows spanning {v : v * m = 0} (left kernel), m is rows x cols over F_p.
FpMatrix left_kernel_mod_p(const FpMatrix& m, std::uint64_t p, std::size_t rows, std::size_t cols);

}  // namespace fieldcount::algebra
