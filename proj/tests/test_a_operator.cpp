#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "semibj/a_operator.hpp"
#include "semibj/generate.hpp"
#include "support/oracles.hpp"

using namespace semibj;

namespace {

const SpacePtr& proj_space() {
  static const SpacePtr sp = make_space(Matrix{{1, 0}, {0, 0}});
  return sp;
}

}  // namespace

TEST_CASE("null-space respect decides admissibility") {
  const SpacePtr sp = proj_space();

  CHECK(check_a_bounded(sp, Matrix{{2, 0}, {0, 5}}).ok);
  // Sends the null direction into the range: rejected.
  const BoundednessCheck bad = check_a_bounded(sp, Matrix{{0, 1}, {0, 0}});
  CHECK_FALSE(bad.ok);
  CHECK(bad.residual == Catch::Approx(1.0).margin(1e-14));
  CHECK_THROWS_AS(AOperator(sp, Matrix{{0, 1}, {0, 0}}), NotABounded);
  // Sends the range into the null space: admissible, with zero seminorm.
  const AOperator leak(sp, Matrix{{0, 0}, {1, 0}});
  CHECK(leak.opnorm() == Catch::Approx(0.0).margin(1e-14));
  CHECK(leak.is_zero());

  const AOperator diag_op(sp, Matrix{{2, 0}, {0, 5}});
  CHECK(diag_op.hat().rows() == 1);
  CHECK(diag_op.opnorm() == Catch::Approx(2.0).margin(1e-12));
  CHECK(diag_op.minmod() == Catch::Approx(2.0).margin(1e-12));
}

TEST_CASE("compression intertwines operator application") {
  Rng rng(8080);
  for (int rep = 0; rep < 25; ++rep) {
    const std::size_t n = 1 + rng.index(8);
    const std::size_t r = rng.index(n + 1);
    const SpacePtr sp = make_space(gen_psd(n, r, rng));
    const Matrix t = gen_abounded(sp, rng, rep % 3);
    const AOperator op(sp, t);
    const Vec x = rng.gaussian_vec(n);
    const double scale = 1.0 + frob_norm(t) * norm2(x) * (1.0 + frob_norm(sp->weight()));
    CHECK(norm2(sp->compress(t * x) - op.hat() * sp->compress(x)) <
          1e-9 * scale);
  }
}

TEST_CASE("operator seminorm and minimum modulus bound every quotient") {
  Rng rng(9090);
  for (int rep = 0; rep < 12; ++rep) {
    const std::size_t n = 2 + rng.index(7);
    const std::size_t r = 1 + rng.index(n);
    const SpacePtr sp = make_space(gen_psd(n, r, rng));
    const AOperator op(sp, gen_abounded(sp, rng));
    const double hi = op.opnorm(), lo = op.minmod();
    CHECK(lo <= hi + 1e-12);

    for (int k = 0; k < 200; ++k) {
      Vec x = rng.gaussian_vec(n);
      const double nx = sp->seminorm(x);
      if (nx < 1e-8) continue;
      const double ratio = sp->seminorm(op.mat() * x) / nx;
      CHECK(ratio <= hi + 1e-8 * (1.0 + hi));
      CHECK(ratio >= lo - 1e-8 * (1.0 + hi));
    }

    // Both extremes are attained at lifted singular vectors.
    const SvdResult d = svd(op.hat());
    const Vec xtop = sp->lift(d.v.col(0));
    const Vec xbot = sp->lift(d.v.col(r - 1));
    CHECK(sp->seminorm(xtop) == Catch::Approx(1.0).margin(1e-9));
    CHECK(sp->seminorm(op.mat() * xtop) ==
          Catch::Approx(hi).margin(1e-8 * (1.0 + hi)));
    CHECK(sp->seminorm(op.mat() * xbot) ==
          Catch::Approx(lo).margin(1e-8 * (1.0 + hi)));
  }
}

TEST_CASE("dense sampling saturates both extremes on a rank-2 weight") {
  Rng rng(121);
  const SpacePtr sp = make_space(gen_psd(4, 2, rng));
  const AOperator op(sp, gen_abounded(sp, rng));
  double hi = 0.0, lo = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 100000; ++k) {
    const Vec u = rng.unit_vec(2);
    const double v = norm2(op.hat() * u);
    hi = std::max(hi, v);
    lo = std::min(lo, v);
  }
  const double scale = 1.0 + op.opnorm();
  CHECK(op.opnorm() - hi <= 1e-3 * scale);
  CHECK(hi <= op.opnorm() + 1e-9 * scale);
  CHECK(lo - op.minmod() <= 1e-3 * scale);
  CHECK(lo >= op.minmod() - 1e-9 * scale);
}

TEST_CASE("seminorm scaling and triangle inequality") {
  Rng rng(404);
  const SpacePtr sp = make_space(gen_psd(6, 4, rng));
  const AOperator t(sp, gen_abounded(sp, rng));
  const AOperator s(sp, gen_abounded(sp, rng));
  const cplx c = rng.cgaussian();
  CHECK((c * t).opnorm() ==
        Catch::Approx(std::abs(c) * t.opnorm()).margin(1e-10));
  CHECK((t + s).opnorm() <= t.opnorm() + s.opnorm() + 1e-10);
}

TEST_CASE("rank-zero weight admits everything and flattens norms") {
  const SpacePtr sp = make_space(Matrix::zero(3, 3));
  Rng rng(2);
  const AOperator op(sp, rng.gaussian_matrix(3, 3));
  CHECK(op.hat().rows() == 0);
  CHECK(op.opnorm() == 0.0);
  CHECK(op.minmod() == 0.0);
  CHECK(op.bound_residual() == 0.0);
}

TEST_CASE("operators from different spaces refuse to combine") {
  Rng rng(3);
  const SpacePtr sp1 = make_space(Matrix::identity(3));
  const SpacePtr sp2 = make_space(gen_psd(3, 3, rng));
  const AOperator a(sp1, rng.gaussian_matrix(3, 3));
  const AOperator b(sp2, gen_abounded(sp2, rng));
  CHECK_THROWS_AS(a + b, SpaceMismatch);
  CHECK_THROWS_AS(pencil(a, b), SpaceMismatch);
}

TEST_CASE("generated orthogonal pairs carry an exact interior witness") {
  Rng rng(55);
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t n = 2 + rng.index(7);
    const std::size_t r = 1 + rng.index(n);
    const SpacePtr sp = make_space(gen_psd(n, r, rng));
    const OrthoPair pair = gen_orthogonal_pair(sp, rng);
    REQUIRE(!pair.witness_coords.empty());
    const AOperator t(sp, pair.t), s(sp, pair.s);
    const Vec& u = pair.witness_coords;
    const double scale = 1.0 + t.opnorm() * s.opnorm();
    // u attains the seminorm of T and decouples the images of T and S.
    CHECK(norm2(t.hat() * u) ==
          Catch::Approx(t.opnorm()).margin(1e-9 * (1.0 + t.opnorm())));
    CHECK(std::abs(inner(t.hat() * u, s.hat() * u)) < 1e-10 * scale);
  }
}
