#ifndef SEMIBJ_VERIFY_HPP
#define SEMIBJ_VERIFY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semibj/a_operator.hpp"
#include "semibj/distance.hpp"
#include "semibj/errors.hpp"
#include "semibj/generate.hpp"
#include "semibj/matrix.hpp"
#include "semibj/orthogonality.hpp"
#include "semibj/rng.hpp"
#include "semibj/space.hpp"

namespace semibj {

enum class CheckStatus { pass, fail, skipped };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    default: return "skipped";
  }
}

struct CheckRecord {
  std::string name;
  CheckStatus status = CheckStatus::skipped;
  double value = 0.0;      // the measured quantity the verdict rests on
  double tolerance = 0.0;  // threshold it was held against
  std::string note;        // diagnostics; failures carry reproduction data
};

/// One record per verified property of a single (A, T, S) instance.
struct VerifyReport {
  std::vector<CheckRecord> checks;
  bool overall = true;  // conjunction of the non-skipped statuses
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t rank = 0;
  int restarts = 0;
  Tolerances tol;

  const CheckRecord* find(std::string_view name) const {
    for (const CheckRecord& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace detail

/// Runs every property check against one instance and assembles the report.
/// Validation problems (a weight that fails to build, an operator that leaks
/// the null space) surface as a failed first record, never as an exception.
inline VerifyReport verify_all(const ProblemInstance& inst,
                               const Tolerances& tol = Tolerances{},
                               int restarts = 64) {
  VerifyReport rep;
  rep.seed = inst.seed;
  rep.n = inst.a.rows();
  rep.restarts = restarts;
  rep.tol = tol;

  const auto add = [&](CheckRecord rec) {
    if (rec.status == CheckStatus::fail) rep.overall = false;
    rep.checks.push_back(std::move(rec));
  };
  const auto skip_rest = [&](const std::string& why) {
    static const char* names[] = {
        "orthogonality_equivalence", "witness",
        "pythagorean",               "wset_geometry",
        "minimizer_disk",            "minimizer_unique",
        "projection_supremum",       "pair_supremum",
        "infsup_exchange",           "identity_distance",
        "identity_reduction"};
    for (const char* nm : names) {
      CheckRecord r;
      r.name = nm;
      r.status = CheckStatus::skipped;
      r.note = why;
      rep.checks.push_back(std::move(r));
    }
  };

  // structure: the weight builds a space and both operators respect it
  SpacePtr sp;
  {
    CheckRecord st;
    st.name = "structure";
    st.tolerance = tol.bound;
    try {
      sp = make_space(inst.a, tol);
      const BoundednessCheck ct = check_a_bounded(sp, inst.t);
      const BoundednessCheck cs = check_a_bounded(sp, inst.s);
      st.value = std::max(ct.residual / ct.scale, cs.residual / cs.scale);
      if (ct.ok && cs.ok) {
        st.status = CheckStatus::pass;
      } else {
        st.status = CheckStatus::fail;
        st.note = "null-space leakage residual " +
                  detail::fmt(ct.ok ? cs.residual : ct.residual) +
                  " (seed " + std::to_string(inst.seed) + ")";
      }
    } catch (const Error& e) {
      st.status = CheckStatus::fail;
      st.note = std::string("weight rejected: ") + e.what();
    }
    const bool ok = st.status == CheckStatus::pass;
    add(std::move(st));
    if (!ok) {
      skip_rest("instance validation failed");
      return rep;
    }
  }
  rep.rank = sp->rank();

  if (sp->rank() == 0) {
    skip_rest("weight rank is zero; the geometry is trivial");
    return rep;
  }

  const AOperator t_op(sp, inst.t);
  const AOperator s_op(sp, inst.s);
  const double nm = t_op.opnorm();
  const double np = nm * s_op.opnorm();
  const std::vector<cplx> grid = gamma_grid(t_op, s_op);

  const BjResult bj = bj_check(t_op, s_op);
  const GammaMin gm = dist_gamma(t_op, s_op);

  // orthogonality_equivalence: the verdict, the distance attainment, and
  // the strengthened pencil inequality must tell one story
  {
    CheckRecord rec;
    rec.name = "orthogonality_equivalence";
    rec.tolerance = 1e-8;
    const bool attain = gm.d >= nm - 1e-7 * nm;
    const bool marginal = !bj.degenerate && std::abs(bj.margin) <= 1e-3 * np &&
                          std::abs(bj.margin) > bj.tol_abs;
    bool ok = bj.orthogonal == attain;
    std::string note = std::string("verdict=") +
                       (bj.orthogonal ? "true" : "false") +
                       " margin=" + detail::fmt(bj.margin) +
                       " distance_defect=" + detail::fmt(gm.d - nm);
    if (!ok && marginal) {
      ok = true;
      note += " (boundary band; equivalence not resolvable at tolerance)";
    }
    double worst_slack = 0.0;
    if (bj.orthogonal) {
      PencilNorm pn = pencil(t_op, s_op);
      const double m = s_op.minmod();
      worst_slack = std::numeric_limits<double>::infinity();
      for (const cplx g : grid) {
        const double lhs = pn(g) * pn(g);
        worst_slack = std::min(
            worst_slack, lhs - nm * nm - std::norm(g) * m * m);
      }
      if (worst_slack < -1e-8) ok = false;
    }
    rec.value = worst_slack;
    rec.status = ok ? CheckStatus::pass : CheckStatus::fail;
    rec.note = ok ? note
                  : note + " (seed " + std::to_string(inst.seed) + ")";
    add(std::move(rec));
  }

  // witness: an orthogonal pair must yield a certifying direction
  Witness wit;
  bool have_witness = false;
  {
    CheckRecord rec;
    rec.name = "witness";
    rec.tolerance = tol.witness;
    if (!bj.orthogonal) {
      rec.status = CheckStatus::skipped;
      rec.note = "pair is not orthogonal";
    } else {
      try {
        wit = find_witness(t_op, s_op, std::max(8, restarts / 8),
                           derive_seed(inst.seed, 11));
        rec.value = std::max(wit.sip_residual, wit.seminorm_gap);
        if (rec.value <= tol.witness) {
          rec.status = CheckStatus::pass;
          have_witness = true;
        } else {
          rec.status = CheckStatus::fail;
          rec.note = "certificate residual too large (seed " +
                     std::to_string(inst.seed) + ")";
        }
      } catch (const WitnessNotFound& e) {
        if (std::abs(bj.margin) <= 10.0 * tol.member * std::max(np, 1.0)) {
          rec.status = CheckStatus::skipped;
          rec.note = "marginal: verdict margin " + detail::fmt(bj.margin) +
                     " too small to certify";
        } else {
          rec.status = CheckStatus::fail;
          rec.value = e.margin;
          rec.note = std::string(e.what()) + " (seed " +
                     std::to_string(inst.seed) + ")";
        }
      }
    }
    add(std::move(rec));
  }

  // pythagorean: along the certified direction the mixed square splits
  {
    CheckRecord rec;
    rec.name = "pythagorean";
    rec.tolerance = 1e-6 * std::max(1.0, np);
    if (!have_witness) {
      rec.status = CheckStatus::skipped;
      rec.note = "no certified direction";
    } else {
      rec.value = pythagorean_check(wit, t_op, s_op, grid);
      rec.status = rec.value <= rec.tolerance ? CheckStatus::pass
                                              : CheckStatus::fail;
      if (rec.status == CheckStatus::fail)
        rec.note = "split defect (seed " + std::to_string(inst.seed) + ")";
    }
    add(std::move(rec));
  }

  // wset_geometry: sampled values stay inside the support polytope and the
  // norm-product disk
  {
    CheckRecord rec;
    rec.name = "wset_geometry";
    if (!bj.wset.has_value()) {
      rec.status = CheckStatus::skipped;
      rec.note = "set degenerate for this pair";
    } else {
      const OrthogonalitySet& ws = *bj.wset;
      const std::size_t k = ws.c.rows();
      Rng rng(derive_seed(inst.seed, 13));
      double worst = 0.0;
      double norm_excess = 0.0;
      for (int i = 0; i < 1000; ++i) {
        const Vec w = rng.unit_vec(k);
        const cplx xi = inner(ws.c * w, w);
        norm_excess = std::max(norm_excess, std::abs(xi) - np - 1e-10);
        for (const SupportSample& smp : ws.samples) {
          const double proj =
              std::cos(smp.theta) * xi.real() + std::sin(smp.theta) * xi.imag();
          worst = std::max(worst, proj - smp.h);
        }
      }
      rec.value = std::max(worst, norm_excess);
      rec.tolerance = 1e-8 * std::max(np, 1e-12);
      rec.status = worst <= rec.tolerance && norm_excess <= 0.0
                       ? CheckStatus::pass
                       : CheckStatus::fail;
      if (rec.status == CheckStatus::fail)
        rec.note = "sampled value escaped the support polytope (seed " +
                   std::to_string(inst.seed) + ")";
    }
    add(std::move(rec));
  }

  // minimizer_disk: the pencil minimizer stays inside the a-priori disk
  {
    CheckRecord rec;
    rec.name = "minimizer_disk";
    if (s_op.is_zero()) {
      rec.status = CheckStatus::skipped;
      rec.note = "scalar direction has zero seminorm";
    } else {
      const double bound = 2.0 * nm / s_op.opnorm();
      rec.value = std::abs(gm.zeta0) - bound;
      rec.tolerance = 1e-9 * (1.0 + bound);
      bool ok = rec.value <= rec.tolerance;
      if (gm.d > nm + 1e-9 * (1.0 + nm)) ok = false;  // never worse than gamma=0
      rec.status = ok ? CheckStatus::pass : CheckStatus::fail;
      if (!ok)
        rec.note = "minimizer left the disk or exceeded the trivial bound "
                   "(seed " + std::to_string(inst.seed) + ")";
    }
    add(std::move(rec));
  }

  // minimizer_unique: quadratic growth away from the minimizer
  {
    CheckRecord rec;
    rec.name = "minimizer_unique";
    const ZetaReport zr = zeta_unique_check(t_op, s_op, grid);
    if (zr.status == ZetaReport::Status::min_modulus_zero) {
      rec.status = CheckStatus::skipped;
      rec.note = "minimum modulus of the scalar direction vanishes";
    } else {
      rec.value = zr.worst_slack;
      rec.tolerance = 1e-8;
      bool ok = zr.worst_slack >= -1e-8;
      std::string note = "perturbations_violated=" +
                         std::to_string(zr.perturbations_violated) + "/8";
      if (zr.min_mod >= 0.1 && zr.perturbations_violated != 8) {
        ok = false;
      } else if (zr.min_mod < 0.1) {
        note += " (minimum modulus " + detail::fmt(zr.min_mod) +
                " too small to resolve all directions)";
      }
      rec.status = ok ? CheckStatus::pass : CheckStatus::fail;
      rec.note = ok ? note
                    : note + " (seed " + std::to_string(inst.seed) + ")";
    }
    add(std::move(rec));
  }

  // projection_supremum: squared distance equals the best projection defect
  {
    CheckRecord rec;
    rec.name = "projection_supremum";
    const PhiMax pm = dist_phi(t_op, s_op, restarts, derive_seed(inst.seed, 2));
    rec.value = std::abs(gm.d * gm.d - pm.d * pm.d);
    rec.tolerance = 1e-5 * std::max(1.0, gm.d * gm.d);
    rec.status =
        rec.value <= rec.tolerance ? CheckStatus::pass : CheckStatus::fail;
    if (rec.status == CheckStatus::fail)
      rec.note = "routes disagree (seed " + std::to_string(inst.seed) + ")";
    add(std::move(rec));
  }

  // pair_supremum: distance equals the constrained pairing supremum
  {
    CheckRecord rec;
    rec.name = "pair_supremum";
    const double dp = dist_pairs(t_op, s_op, restarts, derive_seed(inst.seed, 3));
    rec.value = std::abs(gm.d - dp);
    rec.tolerance = 1e-4 * std::max(1.0, gm.d);
    rec.status =
        rec.value <= rec.tolerance ? CheckStatus::pass : CheckStatus::fail;
    if (rec.status == CheckStatus::fail)
      rec.note = "routes disagree (seed " + std::to_string(inst.seed) + ")";
    add(std::move(rec));
  }

  // infsup_exchange: the pencil infimum and the per-vector supremum swap
  {
    CheckRecord rec;
    rec.name = "infsup_exchange";
    const InfSupResult is =
        infsup_check(t_op, s_op, restarts, derive_seed(inst.seed, 4));
    rec.value = is.gap;
    rec.tolerance = 1e-5 * std::max(1.0, is.lhs);
    rec.status =
        rec.value <= rec.tolerance ? CheckStatus::pass : CheckStatus::fail;
    if (rec.status == CheckStatus::fail)
      rec.note = "exchange gap (seed " + std::to_string(inst.seed) + ")";
    add(std::move(rec));
  }

  // identity_distance: distance to multiples of the identity via the
  // perpendicular-length form
  {
    CheckRecord rec;
    rec.name = "identity_distance";
    const IdentityDistanceResult idr =
        identity_distance_check(t_op, restarts, derive_seed(inst.seed, 5));
    rec.value = std::abs(idr.d - idr.formula_value);
    rec.tolerance = 1e-5 * std::max(1.0, idr.d);
    rec.status =
        rec.value <= rec.tolerance ? CheckStatus::pass : CheckStatus::fail;
    if (rec.status == CheckStatus::fail)
      rec.note = "forms disagree (seed " + std::to_string(inst.seed) + ")";
    add(std::move(rec));
  }

  // identity_reduction: the weighted verdict coincides with the plain-norm
  // verdict on the compressed pair
  {
    CheckRecord rec;
    rec.name = "identity_reduction";
    try {
      const SpacePtr spi = make_space(Matrix::identity(sp->rank()), tol);
      const AOperator ti(spi, t_op.hat());
      const AOperator si(spi, s_op.hat());
      const BjResult bji = bj_check(ti, si);
      rec.value = std::abs(bji.margin - bj.margin);
      rec.tolerance = 1e-9 * (1.0 + np);
      const bool verdicts = bji.orthogonal == bj.orthogonal;
      rec.status = verdicts && rec.value <= rec.tolerance ? CheckStatus::pass
                                                          : CheckStatus::fail;
      if (rec.status == CheckStatus::fail)
        rec.note = std::string("compressed verdict ") +
                   (bji.orthogonal ? "true" : "false") + " vs weighted " +
                   (bj.orthogonal ? "true" : "false") + " (seed " +
                   std::to_string(inst.seed) + ")";
    } catch (const Error& e) {
      rec.status = CheckStatus::fail;
      rec.note = std::string("compressed pair rejected: ") + e.what();
    }
    add(std::move(rec));
  }

  return rep;
}

}  // namespace semibj

#endif
