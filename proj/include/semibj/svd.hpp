#ifndef SEMIBJ_SVD_HPP
#define SEMIBJ_SVD_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "semibj/eig.hpp"
#include "semibj/errors.hpp"
#include "semibj/matrix.hpp"

namespace semibj {

struct SvdResult {
  std::vector<double> sigma;  // descending, length min(rows, cols)
  Matrix u;                   // rows x rows unitary
  Matrix v;                   // cols x cols unitary
};

namespace detail {

/// Two rounds of Gram-Schmidt against the first `k` columns of `basis`,
/// writing the result into column `k` if it survives.  Returns false when the
/// candidate was (numerically) inside the span.
inline bool mgs_append(Matrix& basis, std::size_t k, Vec w) {
  const std::size_t m = basis.rows();
  for (int round = 0; round < 2; ++round) {
    for (std::size_t j = 0; j < k; ++j) {
      cplx proj = 0;
      for (std::size_t i = 0; i < m; ++i)
        proj += w[i] * std::conj(basis(i, j));
      for (std::size_t i = 0; i < m; ++i) w[i] -= proj * basis(i, j);
    }
  }
  const double nrm = norm2(w);
  if (nrm < 0.1) return false;
  for (std::size_t i = 0; i < m; ++i) basis(i, k) = w[i] / nrm;
  return true;
}

/// Fill columns [k, m) of `basis` with an orthonormal completion, choosing
/// standard basis vectors greedily by residual norm.
inline void complete_basis(Matrix& basis, std::size_t k) {
  const std::size_t m = basis.rows();
  std::vector<bool> used(m, false);
  while (k < m) {
    double best = -1.0;
    std::size_t best_j = 0;
    Vec best_res;
    for (std::size_t j = 0; j < m; ++j) {
      if (used[j]) continue;
      Vec w(m, cplx{});
      w[j] = 1.0;
      for (int round = 0; round < 2; ++round)
        for (std::size_t c = 0; c < k; ++c) {
          cplx proj = 0;
          for (std::size_t i = 0; i < m; ++i)
            proj += w[i] * std::conj(basis(i, c));
          for (std::size_t i = 0; i < m; ++i) w[i] -= proj * basis(i, c);
        }
      const double nrm = norm2(w);
      if (nrm > best) {
        best = nrm;
        best_j = j;
        best_res = std::move(w);
      }
    }
    if (best <= 0.0) throw NumericalError("basis completion failed");
    used[best_j] = true;
    basis.set_col(k, scale(best_res, 1.0 / best));
    ++k;
  }
}

}  // namespace detail

/// Singular value decomposition via the Gram matrix: eigenvectors of M*M give
/// the right factor, left vectors are recovered as Mv/|Mv| and re-orthonormalized.
inline SvdResult svd(const Matrix& m, double tol = 1e-12) {
  const std::size_t rows = m.rows(), cols = m.cols();
  SvdResult res;
  res.u = Matrix::identity(rows);
  res.v = Matrix::identity(cols);
  res.sigma.assign(std::min(rows, cols), 0.0);
  if (rows == 0 || cols == 0) return res;

  const Matrix gram = m.adjoint() * m;
  EigResult eig = hermitian_eig(gram, tol);

  // Recompute each singular value as |Mv|; more faithful than sqrt of an
  // eigenvalue that rounding may have pushed slightly negative.
  std::vector<Vec> mv(cols);
  std::vector<double> s(cols);
  for (std::size_t i = 0; i < cols; ++i) {
    mv[i] = m * eig.vectors.col(i);
    s[i] = norm2(mv[i]);
  }
  std::vector<std::size_t> order(cols);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return s[a] > s[b]; });

  for (std::size_t k = 0; k < cols; ++k)
    res.v.set_col(k, eig.vectors.col(order[k]));

  std::size_t filled = 0;
  for (std::size_t k = 0; k < std::min(rows, cols); ++k) {
    const std::size_t i = order[k];
    res.sigma[k] = s[i];
    if (filled == k && s[i] > 0.0 &&
        detail::mgs_append(res.u, filled, scale(mv[i], 1.0 / s[i])))
      ++filled;
  }
  detail::complete_basis(res.u, filled);
  return res;
}

inline double sigma_max(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  const Matrix gram = m.cols() <= m.rows() ? m.adjoint() * m : m * m.adjoint();
  const std::vector<double> vals = hermitian_eigvals(gram);
  return std::sqrt(std::max(vals.front(), 0.0));
}

inline double sigma_min(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  const Matrix gram = m.cols() <= m.rows() ? m.adjoint() * m : m * m.adjoint();
  const std::vector<double> vals = hermitian_eigvals(gram);
  return std::sqrt(std::max(vals.back(), 0.0));
}

/// Moore-Penrose pseudoinverse.  Singular values at or below
/// max(rows, cols) * rel_tol * sigma_1 are treated as zero.
inline Matrix pinv(const Matrix& m, double rel_tol = 1e-12) {
  const SvdResult d = svd(m);
  Matrix p(m.cols(), m.rows());
  if (d.sigma.empty()) return p;
  const double cutoff =
      static_cast<double>(std::max(m.rows(), m.cols())) * rel_tol * d.sigma[0];
  for (std::size_t k = 0; k < d.sigma.size(); ++k) {
    if (d.sigma[k] <= cutoff) break;
    const double inv = 1.0 / d.sigma[k];
    for (std::size_t i = 0; i < m.cols(); ++i)
      for (std::size_t j = 0; j < m.rows(); ++j)
        p(i, j) += inv * d.v(i, k) * std::conj(d.u(j, k));
  }
  return p;
}

inline std::size_t numeric_rank(const std::vector<double>& sigma,
                                std::size_t dim, double rel_tol = 1e-12) {
  if (sigma.empty()) return 0;
  const double cutoff = static_cast<double>(dim) * rel_tol * sigma[0];
  std::size_t r = 0;
  for (double s : sigma)
    if (s > cutoff) ++r;
  return r;
}

/// Reusable evaluator for sigma_max(T + gamma*S) over many gamma.  Buffers are
/// allocated once; each call costs one Gram product and a values-only Jacobi.
class PencilNorm {
 public:
  PencilNorm(const Matrix& t, const Matrix& s) : r_(t.rows()) {
    if (!t.square() || !s.square() || s.rows() != r_)
      throw DimensionMismatch("pencil terms must be square and equally sized");
    t_.assign(t.data(), t.data() + r_ * r_);
    s_.assign(s.data(), s.data() + r_ * r_);
    m_.resize(r_ * r_);
    g_.resize(r_ * r_);
  }

  std::size_t dim() const { return r_; }

  double operator()(cplx gamma) {
    const std::size_t r = r_;
    if (r == 0) return 0.0;
    for (std::size_t k = 0; k < r * r; ++k) m_[k] = t_[k] + gamma * s_[k];
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i; j < r; ++j) {
        cplx acc = 0;
        for (std::size_t k = 0; k < r; ++k)
          acc += std::conj(m_[k * r + i]) * m_[k * r + j];
        g_[i * r + j] = acc;
        g_[j * r + i] = std::conj(acc);
      }
    detail::jacobi_run(g_.data(), nullptr, r, 1e-13);
    double top = 0.0;
    for (std::size_t i = 0; i < r; ++i)
      top = std::max(top, g_[i * r + i].real());
    return std::sqrt(top);
  }

 private:
  std::size_t r_;
  std::vector<cplx> t_, s_, m_, g_;
};

}  // namespace semibj

#endif
