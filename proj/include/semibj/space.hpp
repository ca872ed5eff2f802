#ifndef SEMIBJ_SPACE_HPP
#define SEMIBJ_SPACE_HPP

#include <cmath>
#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

#include "semibj/eig.hpp"
#include "semibj/errors.hpp"
#include "semibj/matrix.hpp"

namespace semibj {

struct Tolerances {
  double rank = 1e-12;     // rank cutoff factor, scaled by dim * lambda_1
  double zero = 1e-10;     // zero decisions on seminorms and inner products
  double member = 1e-9;    // membership margin factor for the range set
  double mult = 1e-8;      // clustering width for repeated extreme values
  double witness = 1e-7;   // acceptance margin for certificate vectors
  double bound = 1e-8;     // null-space leakage allowed before rejection
};

/// C^n with the semi-inner product <x,y> = y* W x for a fixed positive
/// semidefinite weight W.  Holds the spectral split of W: an orthonormal
/// basis of its range, one of its null space, the square root and its
/// pseudoinverse.  Vectors compress to range coordinates in which the
/// seminorm becomes the plain Euclidean norm.
class SemiHilbertSpace {
 public:
  std::size_t dim() const { return n_; }
  std::size_t rank() const { return r_; }
  const Matrix& weight() const { return a_; }
  const Matrix& range_basis() const { return q_; }       // n x r
  const Matrix& null_basis() const { return nullb_; }    // n x (n-r)
  const Matrix& root() const { return b_; }              // W^{1/2}
  const Matrix& root_pinv() const { return bplus_; }
  const std::vector<double>& weight_eigs() const { return eigs_; }
  const std::vector<double>& positive_eigs() const { return d_; }
  const Tolerances& tol() const { return tol_; }

  cplx sip(const Vec& x, const Vec& y) const {
    check_vec(x);
    check_vec(y);
    return inner(a_ * x, y);
  }

  double seminorm(const Vec& x) const {
    check_vec(x);
    return norm2(b_ * x);
  }

  bool is_null_vec(const Vec& x) const {
    return seminorm(x) <= tol_.zero * (1.0 + norm2(x));
  }

  bool sip_orthogonal(const Vec& x, const Vec& y) const {
    return std::abs(sip(x, y)) <=
           tol_.zero * (1.0 + seminorm(x) * seminorm(y));
  }

  /// Range coordinates D^{1/2} Q* x; the seminorm of x equals |compress(x)|.
  Vec compress(const Vec& x) const {
    check_vec(x);
    Vec c(r_);
    for (std::size_t k = 0; k < r_; ++k) {
      cplx s = 0;
      for (std::size_t i = 0; i < n_; ++i) s += std::conj(q_(i, k)) * x[i];
      c[k] = sqrt_d_[k] * s;
    }
    return c;
  }

  /// Right inverse of compress: Q D^{-1/2} c.
  Vec lift(const Vec& c) const {
    if (c.size() != r_) throw DimensionMismatch("lift expects range coordinates");
    Vec x(n_, cplx{});
    for (std::size_t k = 0; k < r_; ++k) {
      const cplx ck = c[k] / sqrt_d_[k];
      for (std::size_t i = 0; i < n_; ++i) x[i] += q_(i, k) * ck;
    }
    return x;
  }

  Vec seminormalized(const Vec& x) const {
    const double s = seminorm(x);
    if (s <= tol_.zero * (1.0 + norm2(x)))
      throw NotNormalizable("vector has zero seminorm");
    Vec y = x;
    return scale(y, 1.0 / s);
  }

  friend std::shared_ptr<const SemiHilbertSpace> make_space(Matrix w,
                                                            Tolerances tol);

 private:
  SemiHilbertSpace() = default;

  void check_vec(const Vec& x) const {
    if (x.size() != n_) throw DimensionMismatch("vector length != space dim");
  }

  std::size_t n_ = 0, r_ = 0;
  Matrix a_, q_, nullb_, b_, bplus_;
  std::vector<double> eigs_, d_, sqrt_d_;
  Tolerances tol_;
};

using SpacePtr = std::shared_ptr<const SemiHilbertSpace>;

/// Validates the weight (square, finite, Hermitian, positive semidefinite)
/// and builds the spectral machinery.  Rank-zero weights are legal: every
/// seminorm is then zero and compressed objects are empty.
inline SpacePtr make_space(Matrix w, Tolerances tol = {}) {
  auto sp = std::shared_ptr<SemiHilbertSpace>(new SemiHilbertSpace());
  if (!w.square()) throw DimensionMismatch("weight matrix must be square");
  if (!w.all_finite()) throw ValidationError("weight matrix has non-finite entries");
  if (hermitian_defect(w) > 1e-10 * (1.0 + frob_norm(w)))
    throw NotHermitian("weight matrix is not Hermitian");

  const std::size_t n = w.rows();
  EigResult eig = hermitian_eig(w);
  const double top = n == 0 ? 0.0 : std::max(eig.values.front(), 0.0);
  for (double lam : eig.values)
    if (lam < -1e-10 * (1.0 + top))
      throw NotPositive("weight matrix has a negative eigenvalue");

  const double cutoff = static_cast<double>(n) * tol.rank * top;
  std::size_t r = 0;
  while (r < n && eig.values[r] > cutoff) ++r;

  sp->n_ = n;
  sp->r_ = r;
  sp->a_ = std::move(w);
  sp->eigs_ = eig.values;
  sp->tol_ = tol;
  sp->q_ = eig.vectors.left_cols(r);
  sp->nullb_ = eig.vectors.right_cols_from(r);
  sp->d_.assign(eig.values.begin(), eig.values.begin() + r);
  sp->sqrt_d_.resize(r);
  for (std::size_t k = 0; k < r; ++k) sp->sqrt_d_[k] = std::sqrt(sp->d_[k]);

  sp->b_ = Matrix(n, n);
  sp->bplus_ = Matrix(n, n);
  for (std::size_t k = 0; k < r; ++k) {
    const double sq = sp->sqrt_d_[k];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const cplx outer = eig.vectors(i, k) * std::conj(eig.vectors(j, k));
        sp->b_(i, j) += sq * outer;
        sp->bplus_(i, j) += outer / sq;
      }
  }
  return sp;
}

}  // namespace semibj

#endif
