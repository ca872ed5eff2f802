#ifndef SEMIBJ_A_OPERATOR_HPP
#define SEMIBJ_A_OPERATOR_HPP

#include <algorithm>
#include <cmath>
#include <utility>

#include "semibj/errors.hpp"
#include "semibj/matrix.hpp"
#include "semibj/space.hpp"
#include "semibj/svd.hpp"

namespace semibj {

/// Verdict on whether an operator respects the weight's null space, i.e.
/// T(null W) stays inside null W.  Only such operators have a finite
/// seminorm; everything downstream requires this.
struct BoundednessCheck {
  bool ok = false;
  double residual = 0.0;  // |W^{1/2} T N|_F over the null basis N
  double scale = 1.0;
};

inline BoundednessCheck check_a_bounded(const SpacePtr& sp, const Matrix& t) {
  if (!t.square() || t.rows() != sp->dim())
    throw DimensionMismatch("operator shape does not match the space");
  if (!t.all_finite())
    throw ValidationError("operator has non-finite entries");
  BoundednessCheck c;
  c.residual = frob_norm(sp->root() * (t * sp->null_basis()));
  const double b2 = sp->rank() == 0 ? 0.0 : std::sqrt(sp->positive_eigs()[0]);
  c.scale = std::max(1.0, b2 * frob_norm(t));
  c.ok = c.residual <= sp->tol().bound * c.scale;
  return c;
}

/// An operator together with its compression to range coordinates.  The
/// compression D^{1/2} Q* T Q D^{-1/2} carries all seminorm information:
/// compress(Tx) = hat * compress(x) whenever T is admissible, so operator
/// seminorms and minimum moduli are ordinary singular values of `hat`.
class AOperator {
 public:
  AOperator(SpacePtr space, Matrix t) : space_(std::move(space)) {
    const BoundednessCheck c = check_a_bounded(space_, t);
    if (!c.ok)
      throw NotABounded(c.residual,
                        "operator does not preserve the weight's null space");
    residual_ = c.residual;
    mat_ = std::move(t);
    const std::size_t n = space_->dim(), r = space_->rank();
    const Matrix& q = space_->range_basis();
    const auto& sd = space_->positive_eigs();
    hat_ = Matrix(r, r);
    const Matrix tq = mat_ * q;
    for (std::size_t i = 0; i < r; ++i) {
      const double si = std::sqrt(sd[i]);
      for (std::size_t j = 0; j < r; ++j) {
        cplx s = 0;
        for (std::size_t k = 0; k < n; ++k) s += std::conj(q(k, i)) * tq(k, j);
        hat_(i, j) = s * (si / std::sqrt(sd[j]));
      }
    }
    norm_ = sigma_max(hat_);
    minmod_ = sigma_min(hat_);
  }

  const SpacePtr& space() const { return space_; }
  const Matrix& mat() const { return mat_; }
  const Matrix& hat() const { return hat_; }
  double bound_residual() const { return residual_; }

  /// sup |Tx|_W over |x|_W = 1; zero when the weight has rank zero.
  double opnorm() const { return norm_; }
  /// inf |Tx|_W over |x|_W = 1.
  double minmod() const { return minmod_; }

  bool is_zero() const {
    return norm_ <= space_->tol().zero * (1.0 + frob_norm(mat_));
  }

  friend AOperator operator+(const AOperator& a, const AOperator& b) {
    require_same_space(a, b);
    return AOperator(a.space_, a.mat_ + b.mat_);
  }
  friend AOperator operator*(cplx s, const AOperator& a) {
    return AOperator(a.space_, s * a.mat_);
  }

  static void require_same_space(const AOperator& a, const AOperator& b) {
    if (a.space_.get() != b.space_.get())
      throw SpaceMismatch("operators live in different spaces");
  }

 private:
  SpacePtr space_;
  Matrix mat_, hat_;
  double residual_ = 0.0, norm_ = 0.0, minmod_ = 0.0;
};

/// Reusable evaluator gamma -> |T + gamma S|_W.
inline PencilNorm pencil(const AOperator& t, const AOperator& s) {
  AOperator::require_same_space(t, s);
  return PencilNorm(t.hat(), s.hat());
}

}  // namespace semibj

#endif
