#ifndef SEMIBJ_EIG_HPP
#define SEMIBJ_EIG_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "semibj/errors.hpp"
#include "semibj/matrix.hpp"

namespace semibj {

namespace detail {

inline double offdiag_norm(const cplx* a, std::size_t n) {
  double s = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s += std::norm(a[i * n + j]);
  return std::sqrt(s);
}

inline double frob(const cplx* a, std::size_t n) {
  double s = 0;
  for (std::size_t k = 0; k < n * n; ++k) s += std::norm(a[k]);
  return std::sqrt(s);
}

/// One two-sided rotation zeroing a[p*n+q].  `v` (optional) accumulates the
/// product of rotations column-wise.
inline void jacobi_rotate(cplx* a, cplx* v, std::size_t n, std::size_t p,
                          std::size_t q) {
  const cplx apq = a[p * n + q];
  const double b = std::abs(apq);
  if (b == 0.0) return;
  const cplx phase = apq / b;  // e^{i alpha}
  const double app = a[p * n + p].real();
  const double aqq = a[q * n + q].real();
  const double tau = (aqq - app) / (2.0 * b);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const cplx sp = s * phase;             // s * e^{i alpha}
  const cplx spc = s * std::conj(phase); // s * e^{-i alpha}
  const cplx cpc = c * std::conj(phase); // c * e^{-i alpha}
  const cplx cp = c * phase;             // c * e^{i alpha}

  // Columns p and q of A and of the accumulated basis.
  for (std::size_t i = 0; i < n; ++i) {
    const cplx aip = a[i * n + p];
    const cplx aiq = a[i * n + q];
    a[i * n + p] = c * aip - spc * aiq;
    a[i * n + q] = s * aip + cpc * aiq;
  }
  if (v) {
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vip = v[i * n + p];
      const cplx viq = v[i * n + q];
      v[i * n + p] = c * vip - spc * viq;
      v[i * n + q] = s * vip + cpc * viq;
    }
  }
  // Rows p and q of A.
  for (std::size_t j = 0; j < n; ++j) {
    const cplx apj = a[p * n + j];
    const cplx aqj = a[q * n + j];
    a[p * n + j] = c * apj - sp * aqj;
    a[q * n + j] = s * apj + cp * aqj;
  }
  // Exact values where rounding matters most.
  a[p * n + p] = app - t * b;
  a[q * n + q] = aqq + t * b;
  a[p * n + q] = 0.0;
  a[q * n + p] = 0.0;
}

/// Cyclic Jacobi diagonalization of a Hermitian matrix held row-major in `a`.
/// On return the diagonal of `a` carries the eigenvalues; if `v` is non-null
/// it must start as the identity and ends with eigenvectors in its columns.
inline void jacobi_run(cplx* a, cplx* v, std::size_t n, double tol) {
  if (n < 2) return;
  const double scale = frob(a, n);
  if (scale == 0.0) return;
  const double stop = tol * scale;
  const double skip = stop / (16.0 * static_cast<double>(n * n));
  constexpr int kMaxSweeps = 64;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (offdiag_norm(a, n) <= stop) return;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        if (std::abs(a[p * n + q]) > skip) jacobi_rotate(a, v, n, p, q);
  }
  if (offdiag_norm(a, n) > stop)
    throw NoConvergence("eigensolver failed to converge");
}

}  // namespace detail

struct EigResult {
  std::vector<double> values;  // descending
  Matrix vectors;              // column i pairs with values[i]
};

inline void check_hermitian(const Matrix& h, double tol, const char* what) {
  if (!h.square()) throw DimensionMismatch("eigensolver needs a square matrix");
  if (!h.all_finite()) throw ValidationError("matrix has non-finite entries");
  if (hermitian_defect(h) > tol * (1.0 + frob_norm(h)))
    throw NotHermitian(what);
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
inline EigResult hermitian_eig(const Matrix& h, double tol = 1e-12) {
  check_hermitian(h, 1e-8, "eigensolver input is not Hermitian");
  const std::size_t n = h.rows();
  // Work on the Hermitian part so rounding in the input cannot skew rotations.
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
  Matrix v = Matrix::identity(n);
  detail::jacobi_run(a.data(), v.data(), n, tol);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() > a(j, j).real();
  });
  EigResult res;
  res.values.resize(n);
  res.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    res.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i)
      res.vectors(i, k) = v(i, order[k]);
  }
  return res;
}

/// Eigenvalues only, descending.
inline std::vector<double> hermitian_eigvals(const Matrix& h,
                                             double tol = 1e-12) {
  check_hermitian(h, 1e-8, "eigensolver input is not Hermitian");
  const std::size_t n = h.rows();
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
  detail::jacobi_run(a.data(), nullptr, n, tol);
  std::vector<double> vals(n);
  for (std::size_t i = 0; i < n; ++i) vals[i] = a(i, i).real();
  std::sort(vals.begin(), vals.end(), std::greater<double>());
  return vals;
}

}  // namespace semibj

#endif
