#ifndef SEMIBJ_MATRIX_HPP
#define SEMIBJ_MATRIX_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "semibj/errors.hpp"

namespace semibj {

using cplx = std::complex<double>;
using Vec = std::vector<cplx>;

/// Dense complex matrix, row-major storage.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}

  /// Row-by-row brace construction, e.g. Matrix{{1, 2}, {3, 4}}.
  Matrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionMismatch("ragged initializer");
      a_.insert(a_.end(), r.begin(), r.end());
    }
  }

  static Matrix zero(std::size_t rows, std::size_t cols) {
    return Matrix(rows, cols);
  }
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  cplx* data() { return a_.data(); }
  const cplx* data() const { return a_.data(); }

  bool all_finite() const {
    for (const auto& z : a_)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }

  Matrix adjoint() const {
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  Vec col(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  void set_col(std::size_t j, const Vec& v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  /// Columns [0, k) as a new matrix.
  Matrix left_cols(std::size_t k) const {
    Matrix m(rows_, k);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < k; ++j) m(i, j) = (*this)(i, j);
    return m;
  }
  /// Columns [k, cols) as a new matrix.
  Matrix right_cols_from(std::size_t k) const {
    Matrix m(rows_, cols_ - k);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = k; j < cols_; ++j) m(i, j - k) = (*this)(i, j);
    return m;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  Matrix& operator*=(cplx s) {
    for (auto& z : a_) z *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, cplx s) { return a *= s; }
  friend Matrix operator*(cplx s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matmul shape");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Vec operator*(const Matrix& a, const Vec& x) {
    if (a.cols_ != x.size()) throw DimensionMismatch("matvec shape");
    Vec y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      cplx s = 0;
      for (std::size_t j = 0; j < a.cols_; ++j) s += a(i, j) * x[j];
      y[i] = s;
    }
    return y;
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionMismatch("matrix shape mismatch");
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cplx> a_;
};

inline double frob_norm(const Matrix& m) {
  double s = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

/// ⟨x, y⟩ = Σ xᵢ·conj(yᵢ), linear in the first argument.
inline cplx inner(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw DimensionMismatch("inner product length");
  cplx s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
  return s;
}

inline double norm2(const Vec& x) {
  double s = 0;
  for (const auto& z : x) s += std::norm(z);
  return std::sqrt(s);
}

inline Vec& scale(Vec& x, cplx s) {
  for (auto& z : x) z *= s;
  return x;
}

inline Vec operator-(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw DimensionMismatch("vector length");
  Vec z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] - y[i];
  return z;
}

inline Vec operator+(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw DimensionMismatch("vector length");
  Vec z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
  return z;
}

inline Vec operator*(cplx s, Vec x) { return scale(x, s); }

inline Vec normalized(Vec x) {
  const double n = norm2(x);
  if (n == 0.0) throw NotNormalizable("cannot normalize zero vector");
  return scale(x, 1.0 / n);
}

inline double hermitian_defect(const Matrix& m) {
  double s = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      s += std::norm(m(i, j) - std::conj(m(j, i)));
  return std::sqrt(s);
}

}  // namespace semibj

#endif
