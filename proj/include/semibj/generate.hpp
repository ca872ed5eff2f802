#ifndef SEMIBJ_GENERATE_HPP
#define SEMIBJ_GENERATE_HPP

#include <cmath>
#include <cstdint>
#include <utility>

#include "semibj/a_operator.hpp"
#include "semibj/matrix.hpp"
#include "semibj/rng.hpp"
#include "semibj/space.hpp"
#include "semibj/svd.hpp"

namespace semibj {

/// Random positive semidefinite weight of exact rank r (Gram matrix of an
/// n x r Gaussian factor).
inline Matrix gen_psd(std::size_t n, std::size_t r, Rng& rng) {
  if (r > n) throw BadRank("requested rank exceeds dimension");
  const Matrix g = rng.gaussian_matrix(n, r);
  return g * g.adjoint();
}

/// Builds an operator from blocks in the range/null split of the weight:
/// T = Q X Q* + N Y Q* + N Z N*.  Such a T maps null W into null W exactly,
/// and its compression is D^{1/2} X D^{-1/2}.
inline Matrix assemble_abounded(const SpacePtr& sp, const Matrix& x,
                                const Matrix& y, const Matrix& z) {
  const std::size_t r = sp->rank(), n = sp->dim();
  if (x.rows() != r || x.cols() != r || y.rows() != n - r || y.cols() != r ||
      z.rows() != n - r || z.cols() != n - r)
    throw DimensionMismatch("block shapes do not match the range/null split");
  const Matrix& q = sp->range_basis();
  const Matrix& nb = sp->null_basis();
  return q * x * q.adjoint() + nb * y * q.adjoint() + nb * z * nb.adjoint();
}

/// Random admissible operator.  Variants skew the draw to exercise edge
/// cases: 1 stretches the range block across several orders of magnitude,
/// 2 makes the range block a rank-one outer product.
inline Matrix gen_abounded(const SpacePtr& sp, Rng& rng, int variant = 0) {
  const std::size_t r = sp->rank(), n = sp->dim();
  Matrix x = rng.gaussian_matrix(r, r);
  if (variant == 1) {
    for (std::size_t i = 0; i < r; ++i) {
      const double s = std::pow(2.0, static_cast<double>(i) - r / 2.0);
      for (std::size_t j = 0; j < r; ++j) x(i, j) *= s;
    }
  } else if (variant == 2 && r > 0) {
    const Vec u = rng.gaussian_vec(r), v = rng.gaussian_vec(r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) x(i, j) = u[i] * std::conj(v[j]);
  }
  return assemble_abounded(sp, x, rng.gaussian_matrix(n - r, r),
                           rng.gaussian_matrix(n - r, n - r));
}

struct OrthoPair {
  Matrix t, s;
  Vec witness_coords;  // unit vector u with <compress(T)u, compress(S)u> = 0
};

/// Draws two admissible operators and then corrects S by a rank-one range
/// update so that T is seminorm-orthogonal to S by construction: for a top
/// right singular vector u of the compression of T, the correction zeroes
/// <hat(T)u, hat(S)u>, which places 0 in the joint range set.
inline OrthoPair gen_orthogonal_pair(const SpacePtr& sp, Rng& rng,
                                     int variant = 0) {
  OrthoPair out;
  out.t = gen_abounded(sp, rng, variant);
  out.s = gen_abounded(sp, rng, variant);
  const std::size_t r = sp->rank();
  if (r == 0) return out;

  const AOperator t_op(sp, out.t);
  const SvdResult d = svd(t_op.hat());
  if (d.sigma[0] <= 1e-13 * (1.0 + frob_norm(out.t))) return out;
  const Vec u = d.v.col(0);
  const Vec tau = t_op.hat() * u;

  const AOperator s_op(sp, out.s);
  const cplx xi = inner(tau, s_op.hat() * u);
  const cplx alpha = std::conj(xi) / (norm2(tau) * norm2(tau));

  // Correction in range coordinates: hat(S) -= alpha * tau u*; realized on
  // the full operator through the compression inverse D^{-1/2} . D^{1/2}.
  const auto& dd = sp->positive_eigs();
  Matrix dx(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      dx(i, j) = -alpha * (tau[i] / std::sqrt(dd[i])) * std::conj(u[j]) *
                 std::sqrt(dd[j]);
  const Matrix& q = sp->range_basis();
  out.s += q * dx * q.adjoint();
  out.witness_coords = u;
  return out;
}

/// Seeded convenience forms used by the CLI.
inline Matrix gen_psd(std::size_t n, std::size_t r, std::uint64_t seed) {
  Rng rng(seed);
  return gen_psd(n, r, rng);
}

inline Matrix gen_abounded(const SpacePtr& sp, std::uint64_t seed,
                           int variant = 0) {
  Rng rng(seed);
  return gen_abounded(sp, rng, variant);
}

struct ProblemInstance {
  Matrix a, t, s;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t intended_rank = 0;
  int variant = 0;
  bool orthogonal = false;  // pair was corrected to plant orthogonality
};

/// Deterministic random instance: weight of rank r on dimension n plus two
/// admissible operators; when `orthogonal` is set the pair is corrected to
/// be seminorm-orthogonal.
inline ProblemInstance gen_problem(std::size_t n, std::size_t r,
                                   std::uint64_t seed, bool orthogonal = false,
                                   int variant = 0) {
  Rng rng(seed);
  ProblemInstance p;
  p.seed = seed;
  p.n = n;
  p.intended_rank = r;
  p.variant = variant;
  p.orthogonal = orthogonal;
  p.a = gen_psd(n, r, rng);
  const SpacePtr sp = make_space(p.a);
  if (orthogonal) {
    OrthoPair pair = gen_orthogonal_pair(sp, rng, variant);
    p.t = std::move(pair.t);
    p.s = std::move(pair.s);
  } else {
    p.t = gen_abounded(sp, rng, variant);
    p.s = gen_abounded(sp, rng, variant);
  }
  return p;
}

}  // namespace semibj

#endif
