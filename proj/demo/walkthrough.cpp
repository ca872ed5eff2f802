// End-to-end tour of the library on a small degenerate-weight example:
// build the space, check admissibility, test orthogonality, extract a
// witness, then compute the distance to the scalar multiples three ways.

#include <cstdio>

#include "semibj/semibj.hpp"

using namespace semibj;

int main() {
  // weight of rank 2 on dimension 3; the third axis carries no length
  const Matrix a{{2, 0, 0}, {0, 1, 0}, {0, 0, 0}};
  const SpacePtr sp = make_space(a);
  std::printf("weight: n=%zu rank=%zu\n", sp->dim(), sp->rank());

  // operators must map the null space into itself to act on the geometry
  const Matrix tm{{1, 0, 0}, {0, -1, 0}, {2, 0, 1}};
  const Matrix sm{{1, 0, 0}, {0, 1, 0}, {0, 5, 3}};
  const BoundednessCheck bc = check_a_bounded(sp, tm);
  std::printf("T admissible: %s (residual %.3e)\n", bc.ok ? "yes" : "no",
              bc.residual);

  const AOperator t(sp, tm), s(sp, sm);
  std::printf("|T| = %.6f  |S| = %.6f  min-mod(S) = %.6f\n", t.opnorm(),
              s.opnorm(), s.minmod());

  const BjResult bj = bj_check(t, s);
  std::printf("T orthogonal to S: %s (margin %.3e)\n",
              bj.orthogonal ? "yes" : "no", bj.margin);

  if (bj.orthogonal) {
    const Witness w = find_witness(t, s);
    std::printf("witness x = (");
    for (std::size_t i = 0; i < w.x.size(); ++i)
      std::printf("%s%.6f%+.6fi", i ? ", " : "", w.x[i].real(), w.x[i].imag());
    std::printf(")\n  seminorm gap %.3e, pairing residual %.3e\n",
                w.seminorm_gap, w.sip_residual);
    const double defect = pythagorean_check(w, t, s, gamma_grid(t, s));
    std::printf("  length split defect over the trial grid: %.3e\n", defect);
  }

  // three independent routes to the same distance
  const DistanceResult d = distance_all(t, s);
  std::printf("d(T, CS):  pencil %.9f  projection %.9f  pairs %.9f\n",
              d.d_gamma, d.d_phi, d.d_pairs);
  std::printf("minimizer zeta0 = %.6f%+.6fi (agreement %.3e)\n",
              d.zeta0.real(), d.zeta0.imag(), d.agreement);

  // boundary of the value set, a convex region in the complex plane
  const OrthogonalitySet ws = wset_build(t, s, 16);
  std::printf("value-set boundary (16 support directions):\n");
  for (const SupportSample& smp : ws.samples)
    std::printf("  theta=%6.3f  h=%9.5f  point=%9.5f%+9.5fi\n", smp.theta,
                smp.h, smp.boundary.real(), smp.boundary.imag());
  std::printf("contains zero: %s\n", ws.contains_zero ? "yes" : "no");
  return 0;
}
