#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "semibj/generate.hpp"
#include "semibj/orthogonality.hpp"
#include "support/oracles.hpp"

using namespace semibj;

namespace {

const cplx I{0.0, 1.0};

SpacePtr euclid(std::size_t n) { return make_space(Matrix::identity(n)); }

// Brute-force support value: max over sampled unit z of Re(e^{-i theta} z*Cz).
double sampled_support(const Matrix& c, double theta, Rng& rng, int samples) {
  double best = -std::numeric_limits<double>::infinity();
  for (const cplx xi : oracle::sample_numrange(c, rng, samples))
    best = std::max(best, (std::polar(1.0, -theta) * xi).real());
  return best;
}

}  // namespace

TEST_CASE("maximal subspace finds the seminorm-attaining directions") {
  const SpacePtr sp = euclid(2);

  const MaximalSubspace one = maximal_subspace(AOperator(sp, Matrix{{3, 0}, {0, 1}}));
  CHECK(one.sigma1 == Catch::Approx(3.0).margin(1e-12));
  CHECK(one.k == 1);
  CHECK(std::abs(one.v(0, 0)) == Catch::Approx(1.0).margin(1e-12));
  CHECK(std::abs(one.v(1, 0)) < 1e-12);

  const MaximalSubspace full = maximal_subspace(AOperator(sp, Matrix::identity(2)));
  CHECK(full.k == 2);
  CHECK(full.sigma1 == Catch::Approx(1.0).margin(1e-12));

  CHECK_THROWS_AS(maximal_subspace(AOperator(sp, Matrix::zero(2, 2))),
                  ZeroOperator);
  const SpacePtr degenerate = make_space(Matrix::zero(2, 2));
  CHECK_THROWS_AS(maximal_subspace(AOperator(degenerate, Matrix::identity(2))),
                  EmptyRange);
}

TEST_CASE("support probe matches closed forms and sampling") {
  CHECK(wset_support(Matrix{{1}}, 0.0).first == Catch::Approx(1.0).margin(1e-13));

  const Matrix c2{{1, 0}, {0, -1}};
  auto [h2, w2] = wset_support(c2, 0.0);
  CHECK(h2 == Catch::Approx(1.0).margin(1e-12));
  CHECK(std::abs(w2[0]) == Catch::Approx(1.0).margin(1e-12));
  CHECK(std::abs(w2[1]) < 1e-12);

  const Matrix ci{{1, 0}, {0, I}};
  CHECK(wset_support(ci, 0.0).first == Catch::Approx(1.0).margin(1e-12));
  CHECK(wset_support(ci, 0.5 * std::numbers::pi).first ==
        Catch::Approx(1.0).margin(1e-12));
  CHECK(wset_support(ci, std::numbers::pi).first ==
        Catch::Approx(0.0).margin(1e-12));

  // Dense sampling saturates the support value on the small fixture.
  Rng orng(9999);
  for (const double theta :
       {0.0, 0.5 * std::numbers::pi, std::numbers::pi}) {
    const double h = wset_support(ci, theta).first;
    const double lo = sampled_support(ci, theta, orng, 100000);
    CHECK(std::abs(h - lo) < 1e-3);
  }

  Rng rng(404);
  for (int rep = 0; rep < 6; ++rep) {
    const std::size_t k = 1 + rng.index(4);
    const Matrix c = rng.gaussian_matrix(k, k);
    for (int j = 0; j < 8; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / 8.0;
      const double h = wset_support(c, theta).first;
      const double lo = sampled_support(c, theta, rng, 4000);
      // Sampled values never exceed the eigenvalue bound, and the sparse
      // sample still lands in its general vicinity.
      CHECK(h >= lo - 1e-9 * (1.0 + frob_norm(c)));
      CHECK(h - lo < 0.5 * (1.0 + frob_norm(c)));
    }
  }
}

TEST_CASE("verdict agrees with direct pencil minimization") {
  const SpacePtr sp = make_space(Matrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 0}});
  Rng rng(909);
  for (int rep = 0; rep < 12; ++rep) {
    Matrix tm, sm;
    if (rep % 2 == 0) {
      const OrthoPair pair = gen_orthogonal_pair(sp, rng);
      tm = pair.t;
      sm = pair.s;
    } else {
      tm = gen_abounded(sp, rng);
      sm = gen_abounded(sp, rng);
    }
    const AOperator t(sp, tm), s(sp, sm);
    if (t.is_zero() || s.is_zero()) continue;
    PencilNorm pn = pencil(t, s);
    const double minval = oracle::min_over_gamma(
        [&pn](cplx g) { return pn(g); }, 2.0 * t.opnorm() / s.opnorm(), 24, 16,
        1e-7);
    const bool shrinks = minval < t.opnorm() - 1e-7;
    CHECK(bj_check(t, s).orthogonal == !shrinks);
  }
}

TEST_CASE("joint range set on fixed pairs") {
  const SpacePtr sp = euclid(2);

  // Compression pair with joint range the segment from 1 to i.
  const AOperator t(sp, Matrix::identity(2));
  const AOperator s(sp, Matrix{{1, 0}, {0, -I}});
  const OrthogonalitySet w = wset_build(t, s);
  CHECK(w.c.rows() == 2);
  CHECK_FALSE(w.contains_zero);
  CHECK(w.margin == Catch::Approx(-std::sqrt(0.5)).margin(1e-9));
  CHECK(std::abs(w.argmin_theta - 1.25 * std::numbers::pi) < 1e-4);

  // Segment [-1, 1]: zero is an interior point of the set.
  const OrthogonalitySet w2 =
      wset_build(AOperator(sp, Matrix{{1, 0}, {0, -1}}), t);
  CHECK(w2.contains_zero);
  CHECK(w2.margin == Catch::Approx(0.0).margin(1e-9));

  // Singleton {1}: margin is minus the distance from zero to the set.
  const OrthogonalitySet w3 = wset_build(t, t);
  CHECK_FALSE(w3.contains_zero);
  CHECK(w3.margin == Catch::Approx(-1.0).margin(1e-9));
}

TEST_CASE("joint range set boundary data is consistent") {
  Rng rng(505);
  for (int rep = 0; rep < 8; ++rep) {
    const std::size_t n = 2 + rng.index(5);
    const std::size_t r = 1 + rng.index(n);
    const SpacePtr sp = make_space(gen_psd(n, r, rng));
    const AOperator t(sp, gen_abounded(sp, rng));
    const AOperator s(sp, gen_abounded(sp, rng));
    if (t.is_zero()) continue;
    const OrthogonalitySet w = wset_build(t, s, 64);
    const double scale = 1.0 + w.norm_product;

    for (const SupportSample& sm : w.samples) {
      // The boundary point realizes its own support value.
      CHECK(std::abs((std::polar(1.0, -sm.theta) * sm.boundary).real() - sm.h) <
            1e-9 * scale);
      // Catalogued points never exceed the set's size.
      CHECK(std::abs(sm.boundary) <= w.norm_product + 1e-9 * scale);
      // Every boundary point stays inside every supporting half plane, and
      // midpoints of boundary pairs do too (convexity).
      for (std::size_t step = 7; step < w.samples.size(); step += 13) {
        const SupportSample& other = w.samples[step];
        const cplx mid = 0.5 * (sm.boundary + other.boundary);
        CHECK((std::polar(1.0, -other.theta) * sm.boundary).real() <=
              other.h + 1e-9 * scale);
        CHECK((std::polar(1.0, -other.theta) * mid).real() <=
              other.h + 1e-9 * scale);
      }
    }

    // Sampled interior points respect every support sample.
    for (const cplx xi : oracle::sample_numrange(w.c, rng, 200))
      for (std::size_t j = 0; j < w.samples.size(); j += 5)
        CHECK((std::polar(1.0, -w.samples[j].theta) * xi).real() <=
              w.samples[j].h + 1e-9 * scale);
  }
}

TEST_CASE("orthogonality verdicts on fixed pairs") {
  const SpacePtr sp = euclid(2);
  const AOperator id(sp, Matrix::identity(2));
  const AOperator sign(sp, Matrix{{1, 0}, {0, -1}});

  CHECK(bj_check(sign, id).orthogonal);
  const BjResult self = bj_check(id, id);
  CHECK_FALSE(self.orthogonal);
  CHECK(self.margin == Catch::Approx(-1.0).margin(1e-9));
  CHECK_FALSE(self.degenerate);

  // Weighted projection example: S acts as zero on the range of the weight.
  const SpacePtr proj = make_space(Matrix{{1, 0}, {0, 0}});
  const AOperator t(proj, Matrix{{2, 0}, {0, 3}});
  const AOperator s(proj, Matrix{{0, 0}, {0, 1}});
  const BjResult degen = bj_check(t, s);
  CHECK(degen.orthogonal);
  CHECK(degen.degenerate);

  const BjResult zt = bj_check(AOperator(sp, Matrix::zero(2, 2)), id);
  CHECK(zt.orthogonal);
  CHECK(zt.degenerate);
}

TEST_CASE("verdict is invariant under nonzero scaling of either side") {
  Rng rng(606);
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t n = 2 + rng.index(5);
    const std::size_t r = 1 + rng.index(n);
    const bool plant = rep % 2 == 0;
    const ProblemInstance p = gen_problem(n, r, 7000 + rep, plant);
    const SpacePtr sp = make_space(p.a);
    const AOperator t(sp, p.t), s(sp, p.s);
    if (t.is_zero() || s.is_zero()) continue;
    const BjResult base = bj_check(t, s);

    const cplx alpha = std::polar(0.35, 1.1), beta = std::polar(2.6, -2.4);
    const BjResult scaled = bj_check(alpha * t, beta * s);
    CHECK(scaled.orthogonal == base.orthogonal);
    const double factor = std::abs(alpha) * std::abs(beta);
    CHECK(scaled.margin == Catch::Approx(base.margin * factor)
                               .margin(1e-8 * (1.0 + factor * t.opnorm() *
                                                         s.opnorm())));
  }
}

TEST_CASE("constructed orthogonal pairs pass and carry witnesses") {
  Rng rng(707);
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t n = 2 + rng.index(5);
    const std::size_t r = 1 + rng.index(n);
    const ProblemInstance p = gen_problem(n, r, 9100 + rep, true, rep % 3);
    const SpacePtr sp = make_space(p.a);
    const AOperator t(sp, p.t), s(sp, p.s);
    if (t.is_zero()) continue;
    const double scale = 1.0 + t.opnorm() * s.opnorm();

    CHECK(bj_check(t, s).orthogonal);

    const Witness w = find_witness(t, s);
    CHECK(sp->seminorm(w.x) == Catch::Approx(1.0).margin(1e-9));
    CHECK(w.seminorm_gap < 1e-8 * (1.0 + t.opnorm()));
    CHECK(w.sip_residual < 1e-7 * scale);

    // The certificate makes the squared seminorm exactly additive.
    const double defect =
        pythagorean_check(w, t, s, {cplx{1, 0}, I, cplx{-2, 3}});
    CHECK(defect < 8.0 * w.sip_residual + 1e-10 * scale);

    // The strengthened triangle bound along scalar shifts of S.
    PencilNorm pn = pencil(t, s);
    const double m2 = s.minmod() * s.minmod();
    for (const cplx g : {cplx{0.4, 0}, cplx{0, -1.3}, cplx{2, 2}}) {
      const double lhs = std::pow(pn(g), 2);
      const double rhs = std::pow(t.opnorm(), 2) + std::norm(g) * m2;
      CHECK(lhs >= rhs - 1e-8 * (1.0 + lhs + rhs));
    }
  }
}

TEST_CASE("witnesses on fixed pairs") {
  const SpacePtr sp = euclid(2);
  const AOperator sign(sp, Matrix{{1, 0}, {0, -1}});
  const AOperator id(sp, Matrix::identity(2));

  const Witness w = find_witness(sign, id);
  // Any certifying vector here has components of equal modulus.
  CHECK(std::abs(w.x[0]) == Catch::Approx(std::sqrt(0.5)).margin(1e-7));
  CHECK(std::abs(w.x[1]) == Catch::Approx(std::sqrt(0.5)).margin(1e-7));
  CHECK(w.sip_residual < 1e-10);
  CHECK(pythagorean_check(w, sign, id, {cplx{1, 0}, I, cplx{-2, 3}}) < 1e-10);

  // Degenerate S: the top direction of T alone certifies.
  const SpacePtr proj = make_space(Matrix{{1, 0}, {0, 0}});
  const Witness wd = find_witness(AOperator(proj, Matrix{{2, 0}, {0, 3}}),
                                  AOperator(proj, Matrix{{0, 0}, {0, 1}}));
  CHECK(std::abs(wd.x[0]) == Catch::Approx(1.0).margin(1e-9));
  CHECK(wd.seminorm_gap < 1e-9);
  CHECK(wd.sip_residual < 1e-12);

  // Zero T: every direction works, the reported one is unit seminorm.
  const Witness wz = find_witness(AOperator(sp, Matrix::zero(2, 2)), id);
  CHECK(norm2(wz.x) == Catch::Approx(1.0).margin(1e-12));
  CHECK(wz.sip_residual < 1e-12);

  // A pair that is not orthogonal has no certificate.
  CHECK_THROWS_AS(find_witness(id, id), WitnessNotFound);
}

TEST_CASE("witness search succeeds across planted geometries") {
  Rng rng(808);
  for (int rep = 0; rep < 12; ++rep) {
    const std::size_t n = 2 + rng.index(7);
    const std::size_t r = 1 + rng.index(n);
    const ProblemInstance p = gen_problem(n, r, 22000 + rep, true, rep % 3);
    const SpacePtr sp = make_space(p.a);
    const AOperator t(sp, p.t), s(sp, p.s);
    if (t.is_zero()) continue;
    const Witness w = find_witness(t, s, 8, 300 + rep);
    const double scale = std::max(1.0, t.opnorm() * s.opnorm());
    CHECK(w.sip_residual <= 1e-7 * scale);
    CHECK(w.seminorm_gap <= 1e-7 * (1.0 + t.opnorm()));
  }
}
