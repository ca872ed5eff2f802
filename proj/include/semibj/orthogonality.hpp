#ifndef SEMIBJ_ORTHOGONALITY_HPP
#define SEMIBJ_ORTHOGONALITY_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "semibj/a_operator.hpp"
#include "semibj/eig.hpp"
#include "semibj/errors.hpp"
#include "semibj/matrix.hpp"
#include "semibj/rng.hpp"
#include "semibj/space.hpp"
#include "semibj/svd.hpp"

namespace semibj {

/// Right singular vectors of the compression at the top singular value
/// (within a relative multiplicity window).  Lifted back to the space these
/// span the directions along which T attains its seminorm.
struct MaximalSubspace {
  double sigma1 = 0.0;
  Matrix v;  // r x k, orthonormal columns
  std::size_t k = 0;
};

inline MaximalSubspace maximal_subspace(const AOperator& t) {
  if (t.space()->rank() == 0)
    throw EmptyRange("weight has rank zero, no seminorm-attaining directions");
  if (t.is_zero())
    throw ZeroOperator("operator has zero seminorm");
  const SvdResult d = svd(t.hat());
  MaximalSubspace ms;
  ms.sigma1 = d.sigma[0];
  const double floor = ms.sigma1 * (1.0 - t.space()->tol().mult);
  std::size_t k = 1;
  while (k < d.sigma.size() && d.sigma[k] >= floor) ++k;
  ms.k = k;
  ms.v = d.v.left_cols(k);
  return ms;
}

/// One support-function probe of the numerical range of C in direction
/// theta: h = lambda_max of the rotated Hermitian part, w the top
/// eigenvector, so w*Cw is a boundary point with outward normal e^{i theta}.
inline std::pair<double, Vec> wset_support(const Matrix& c, double theta) {
  const std::size_t k = c.rows();
  const cplx rot = std::polar(1.0, -theta);
  Matrix h(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      h(i, j) = 0.5 * (rot * c(i, j) + std::conj(rot * c(j, i)));
  const EigResult e = hermitian_eig(h);
  return {e.values.empty() ? 0.0 : e.values[0], e.vectors.col(0)};
}

struct SupportSample {
  double theta = 0.0;
  double h = 0.0;
  cplx boundary;  // w*Cw for the recorded support direction
  Vec w;
};

/// The joint range set of a pair (T, S): all limits of <Tx, Sx> over unit
/// seminorm x along which T attains its seminorm.  Equals the numerical
/// range of C = V* hat(S)* hat(T) V and is convex and compact; membership of
/// zero decides seminorm orthogonality.
struct OrthogonalitySet {
  Matrix c;  // k x k
  std::vector<SupportSample> samples;
  double margin = 0.0;        // refined min over theta of h(theta)
  double argmin_theta = 0.0;
  bool contains_zero = false;
  double tol_abs = 0.0;       // absolute membership tolerance applied
  double norm_product = 0.0;  // |T|_W * |S|_W
};

namespace detail {

/// Minimum of f over [lo, hi] by golden-section; f must be unimodal there.
template <typename F>
inline std::pair<double, double> golden_min(F&& f, double lo, double hi,
                                            double tol_x) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol_x) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

}  // namespace detail

inline OrthogonalitySet wset_build(const AOperator& t, const AOperator& s,
                                   std::size_t grid = 256) {
  AOperator::require_same_space(t, s);
  const MaximalSubspace ms = maximal_subspace(t);
  OrthogonalitySet w;
  w.norm_product = t.opnorm() * s.opnorm();
  w.tol_abs = t.space()->tol().member * w.norm_product;
  const Matrix m = s.hat().adjoint() * t.hat();
  w.c = ms.v.adjoint() * (m * ms.v);

  w.samples.reserve(grid);
  for (std::size_t j = 0; j < grid; ++j) {
    SupportSample sm;
    sm.theta = 2.0 * std::numbers::pi * static_cast<double>(j) / grid;
    auto [h, vec] = wset_support(w.c, sm.theta);
    sm.h = h;
    sm.w = std::move(vec);
    sm.boundary = inner(w.c * sm.w, sm.w);
    w.samples.push_back(std::move(sm));
  }

  // Refine the three lowest local minima of the support function; the grid
  // localizes every minimum at this scale, golden-section sharpens them.
  std::vector<std::size_t> mins;
  for (std::size_t j = 0; j < grid; ++j) {
    const double prev = w.samples[(j + grid - 1) % grid].h;
    const double next = w.samples[(j + 1) % grid].h;
    if (w.samples[j].h <= prev && w.samples[j].h <= next) mins.push_back(j);
  }
  std::sort(mins.begin(), mins.end(), [&](std::size_t a, std::size_t b) {
    return w.samples[a].h < w.samples[b].h;
  });
  if (mins.size() > 3) mins.resize(3);

  double best = std::numeric_limits<double>::infinity();
  double best_theta = 0.0;
  for (std::size_t j = 0; j < grid; ++j)
    if (w.samples[j].h < best) {
      best = w.samples[j].h;
      best_theta = w.samples[j].theta;
    }
  const double step = 2.0 * std::numbers::pi / grid;
  for (std::size_t j : mins) {
    const double center = w.samples[j].theta;
    auto [th, val] = detail::golden_min(
        [&](double theta) { return wset_support(w.c, theta).first; },
        center - step, center + step, 1e-11);
    if (val < best) {
      best = val;
      best_theta = th;
    }
  }
  w.margin = best;
  w.argmin_theta = best_theta;
  w.contains_zero = best >= -w.tol_abs;
  return w;
}

/// Seminorm Birkhoff-James orthogonality verdict: T is orthogonal to S when
/// no scalar multiple of S brought closer can shrink the seminorm, which in
/// turn happens exactly when 0 lies in the joint range set.
struct BjResult {
  bool orthogonal = false;
  double margin = 0.0;
  double tol_abs = 0.0;
  bool degenerate = false;  // one of the operators has zero seminorm
  std::optional<OrthogonalitySet> wset;
};

inline BjResult bj_check(const AOperator& t, const AOperator& s,
                         std::size_t grid = 256) {
  AOperator::require_same_space(t, s);
  BjResult r;
  if (t.space()->rank() == 0 || t.is_zero()) {
    r.orthogonal = true;
    r.degenerate = true;
    return r;
  }
  if (s.is_zero()) {
    r.orthogonal = true;
    r.degenerate = true;
    r.wset = wset_build(t, s, grid);
    r.margin = r.wset->margin;
    return r;
  }
  r.wset = wset_build(t, s, grid);
  r.margin = r.wset->margin;
  r.tol_abs = r.wset->tol_abs;
  r.orthogonal = r.wset->contains_zero;
  return r;
}

/// A unit-seminorm vector certifying orthogonality: it attains the seminorm
/// of T and the images Tx, Sx are orthogonal in the weighted product.
struct Witness {
  Vec x;             // length n, unit seminorm
  Vec coords;        // the unit z with z*Cz ~ 0, in subspace coordinates
  double seminorm_gap = 0.0;
  double sip_residual = 0.0;
};

namespace detail {

inline cplx quad_form(const Matrix& c, const Vec& z) { return inner(c * z, z); }

/// Candidate from a straddling eigenpair of the rotated Hermitian part:
/// mixing angle chosen to cancel the real part exactly, relative phase to
/// cancel the imaginary part when feasible.
inline bool straddle_candidate(const Matrix& c, double theta, Vec& out) {
  const std::size_t k = c.rows();
  const cplx rot = std::polar(1.0, -theta);
  Matrix h(k, k), kk(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const cplx m = rot * c(i, j);
      const cplx ma = std::conj(rot * c(j, i));
      h(i, j) = 0.5 * (m + ma);
      kk(i, j) = cplx{0, -0.5} * (m - ma);
    }
  const EigResult e = hermitian_eig(h);
  const double l1 = e.values.front(), lk = e.values.back();
  if (l1 < 0.0 || lk > 0.0) return false;
  const Vec p = e.vectors.col(0), q = e.vectors.col(k - 1);
  if (l1 <= -lk * 1e-14) {  // top eigenvalue vanishes: p alone kills Re
    out = p;
    return true;
  }
  if (lk >= -l1 * 1e-14) {
    out = q;
    return true;
  }
  const double t0 = std::atan(std::sqrt(l1 / -lk));
  const double cs = std::cos(t0), sn = std::sin(t0);
  const double kp = inner(kk * p, p).real();
  const double kq = inner(kk * q, q).real();
  const cplx mu = inner(kk * q, p);  // p* K q
  const double c0 = cs * cs * kp + sn * sn * kq;
  const double denom = 2.0 * cs * sn * std::abs(mu);
  if (std::abs(c0) > denom) return false;
  cplx ph{1.0, 0.0};  // denom == 0 forces c0 == 0: any relative phase works
  if (denom > 0.0) {
    const double phi =
        -std::arg(mu) + std::acos(std::clamp(-c0 / denom, -1.0, 1.0));
    ph = std::polar(1.0, phi);
  }
  out.assign(k, cplx{});
  for (std::size_t i = 0; i < k; ++i) out[i] = cs * p[i] + sn * ph * q[i];
  return true;
}

}  // namespace detail

inline Witness find_witness(const AOperator& t, const AOperator& s,
                            int restarts = 8, std::uint64_t seed = 0x5eedULL) {
  AOperator::require_same_space(t, s);
  const SpacePtr& sp = t.space();
  if (sp->rank() == 0)
    throw EmptyRange("weight has rank zero, no unit-seminorm vectors exist");

  const double nprod = t.opnorm() * s.opnorm();
  const double accept = sp->tol().witness * std::min(1.0, nprod);

  // A zero operator attains its (zero) seminorm everywhere and its images
  // are null vectors, so any unit-seminorm direction certifies.
  if (t.is_zero()) {
    Witness w;
    w.coords = Vec(1, cplx{1.0});
    w.x = sp->lift([&] {
      Vec e(sp->rank(), cplx{});
      e[0] = 1.0;
      return e;
    }());
    w.seminorm_gap = std::abs(sp->seminorm(t.mat() * w.x) - t.opnorm());
    w.sip_residual = std::abs(sp->sip(t.mat() * w.x, s.mat() * w.x));
    return w;
  }

  // S with vanishing seminorm has null-vector images, so any direction
  // attaining the seminorm of T certifies; mirrors the bj_check convention.
  if (s.is_zero()) {
    const MaximalSubspace ms0 = maximal_subspace(t);
    Witness w;
    w.coords = Vec(ms0.k, cplx{});
    w.coords[0] = 1.0;
    w.x = sp->lift(ms0.v.col(0));
    const double sn = sp->seminorm(w.x);
    if (sn > 0) scale(w.x, 1.0 / sn);
    w.seminorm_gap = std::abs(sp->seminorm(t.mat() * w.x) - t.opnorm());
    w.sip_residual = std::abs(sp->sip(t.mat() * w.x, s.mat() * w.x));
    return w;
  }

  const MaximalSubspace ms = maximal_subspace(t);
  const Matrix c = ms.v.adjoint() * (s.hat().adjoint() * t.hat()) * ms.v;
  const std::size_t k = ms.k;

  Vec best;
  double best_val = std::numeric_limits<double>::infinity();
  const auto consider = [&](const Vec& z) {
    const double nz = norm2(z);
    if (nz < 1e-12) return;
    Vec zn = z;
    scale(zn, 1.0 / nz);
    const double val = std::abs(detail::quad_form(c, zn));
    if (val < best_val) {
      best_val = val;
      best = std::move(zn);
    }
  };

  // Stage 1: exact cancellation from straddling eigenpairs over a scan of
  // rotations.
  for (int j = 0; j < 64 && best_val > accept; ++j) {
    const double theta = std::numbers::pi * j / 64.0;
    Vec cand;
    if (detail::straddle_candidate(c, theta, cand)) consider(cand);
  }

  // Stage 2: two-parameter family (mixing angle x relative phase) between
  // extreme eigenvectors of the two Cartesian parts, on a coarse grid with
  // local shrinking refinement.
  if (best_val > accept) {
    const auto h0 = wset_support(c, 0.0);
    const auto h0n = wset_support(c, std::numbers::pi);
    const auto h1 = wset_support(c, 0.5 * std::numbers::pi);
    const auto h1n = wset_support(c, 1.5 * std::numbers::pi);
    const std::array<std::pair<const Vec*, const Vec*>, 6> pairs = {{
        {&h0.second, &h0n.second},
        {&h1.second, &h1n.second},
        {&h0.second, &h1.second},
        {&h0.second, &h1n.second},
        {&h0n.second, &h1.second},
        {&h0n.second, &h1n.second},
    }};
    for (const auto& [a, b] : pairs) {
      double t_lo = 0.0, t_hi = 0.5 * std::numbers::pi;
      double p_lo = 0.0, p_hi = 2.0 * std::numbers::pi;
      for (int round = 0; round < 5 && best_val > accept; ++round) {
        const int g = round == 0 ? 64 : 16;
        double bt = t_lo, bp = p_lo;
        double local = std::numeric_limits<double>::infinity();
        for (int it = 0; it < g; ++it)
          for (int ip = 0; ip < g; ++ip) {
            const double tt = t_lo + (t_hi - t_lo) * it / (g - 1.0);
            const double pp = p_lo + (p_hi - p_lo) * ip / (g - 1.0);
            Vec z(k);
            const cplx ph = std::polar(1.0, pp);
            for (std::size_t i = 0; i < k; ++i)
              z[i] = std::cos(tt) * (*a)[i] + std::sin(tt) * ph * (*b)[i];
            const double nz = norm2(z);
            if (nz < 1e-9) continue;
            scale(z, 1.0 / nz);
            const double val = std::abs(detail::quad_form(c, z));
            if (val < local) {
              local = val;
              bt = tt;
              bp = pp;
              consider(z);
            }
          }
        const double dt = (t_hi - t_lo) / (g - 1.0);
        const double dp = (p_hi - p_lo) / (g - 1.0);
        t_lo = std::max(0.0, bt - dt);
        t_hi = std::min(0.5 * std::numbers::pi, bt + dt);
        p_lo = bp - dp;
        p_hi = bp + dp;
      }
    }
  }

  // Stage 3: randomized projected gradient descent on |z*Cz|^2.
  if (best_val > accept) {
    Rng rng(seed);
    const Matrix ch = c.adjoint();
    for (int run = 0; run < 8 * std::max(1, restarts) && best_val > accept;
         ++run) {
      Vec z = rng.unit_vec(k);
      double fz = std::norm(detail::quad_form(c, z));
      for (int it = 0; it < 300; ++it) {
        const cplx g = detail::quad_form(c, z);
        Vec grad = std::conj(g) * (c * z) + g * (ch * z);
        const cplx overlap = inner(grad, z);
        for (std::size_t i = 0; i < k; ++i) grad[i] -= overlap * z[i];
        const double gn = norm2(grad);
        if (gn * gn < 1e-30) break;
        double step = 1.0 / (1.0 + norm2(c * z));
        bool moved = false;
        for (int ls = 0; ls < 30; ++ls) {
          Vec zn(k);
          for (std::size_t i = 0; i < k; ++i) zn[i] = z[i] - step * grad[i];
          scale(zn, 1.0 / norm2(zn));
          const double fn = std::norm(detail::quad_form(c, zn));
          if (fn < fz - 1e-4 * step * gn * gn) {
            z = std::move(zn);
            fz = fn;
            moved = true;
            break;
          }
          step *= 0.5;
        }
        if (!moved) break;
      }
      consider(z);
    }
  }

  if (best_val > accept)
    throw WitnessNotFound(
        best_val, "no unit vector cancels the cross form within tolerance");

  Witness w;
  w.coords = best;
  Vec u(sp->rank(), cplx{});
  for (std::size_t i = 0; i < sp->rank(); ++i)
    for (std::size_t j = 0; j < k; ++j) u[i] += ms.v(i, j) * best[j];
  w.x = sp->lift(u);
  const double sn = sp->seminorm(w.x);
  if (sn > 0) scale(w.x, 1.0 / sn);
  w.seminorm_gap = std::abs(sp->seminorm(t.mat() * w.x) - t.opnorm());
  w.sip_residual = std::abs(sp->sip(t.mat() * w.x, s.mat() * w.x));
  return w;
}

/// Largest deviation from the exact-square expansion over the trial scalars:
/// |Tx + g Sx|^2 should equal |Tx|^2 + |g|^2 |Sx|^2 whenever Tx and Sx are
/// orthogonal in the weighted product.
inline double pythagorean_check(const Witness& w, const AOperator& t,
                                const AOperator& s,
                                const std::vector<cplx>& gammas) {
  AOperator::require_same_space(t, s);
  const SpacePtr& sp = t.space();
  const Vec tx = t.mat() * w.x;
  const Vec sx = s.mat() * w.x;
  const double tx2 = std::pow(sp->seminorm(tx), 2);
  const double sx2 = std::pow(sp->seminorm(sx), 2);
  double worst = 0.0;
  for (const cplx g : gammas) {
    Vec mix = tx;
    for (std::size_t i = 0; i < mix.size(); ++i) mix[i] += g * sx[i];
    const double lhs = std::pow(sp->seminorm(mix), 2);
    worst = std::max(worst, std::abs(lhs - tx2 - std::norm(g) * sx2));
  }
  return worst;
}

}  // namespace semibj

#endif
