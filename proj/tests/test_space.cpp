#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "semibj/generate.hpp"
#include "semibj/space.hpp"
#include "support/oracles.hpp"

using namespace semibj;

TEST_CASE("identity weight reduces to the standard inner product") {
  const SpacePtr sp = make_space(Matrix::identity(3));
  CHECK(sp->rank() == 3);
  Rng rng(5);
  const Vec x = rng.gaussian_vec(3), y = rng.gaussian_vec(3);
  CHECK(std::abs(sp->sip(x, y) - inner(x, y)) < 1e-12);
  CHECK(sp->seminorm(x) == Catch::Approx(norm2(x)).margin(1e-12));
  CHECK(norm2(sp->compress(x) - x) < 1e-12);
}

TEST_CASE("rank-deficient diagonal weight") {
  const SpacePtr sp = make_space(Matrix{{4, 0, 0}, {0, 1, 0}, {0, 0, 0}});
  CHECK(sp->dim() == 3);
  CHECK(sp->rank() == 2);
  CHECK(sp->weight_eigs() == std::vector<double>{4, 1, 0});

  const Vec ones{1, 1, 1};
  CHECK(sp->seminorm(ones) == Catch::Approx(std::sqrt(5.0)).margin(1e-12));

  const Vec e3{0, 0, 1};
  CHECK(sp->is_null_vec(e3));
  CHECK(sp->sip_orthogonal(e3, ones));
  CHECK(std::abs(sp->sip(e3, ones)) < 1e-14);
  CHECK_THROWS_AS(sp->seminormalized(e3), NotNormalizable);

  // Lifting compressed coordinates inverts compression on the range side.
  const Vec c{0.3, cplx{-1, 2}};
  CHECK(norm2(sp->compress(sp->lift(c)) - c) < 1e-12);
  CHECK(norm2(sp->lift(sp->compress(ones)) - Vec{1, 1, 0}) < 1e-12);
}

TEST_CASE("spectral split of random weights") {
  Rng rng(314);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 1 + rng.index(8);
    const std::size_t r = rng.index(n + 1);
    const Matrix a = gen_psd(n, r, rng);
    const SpacePtr sp = make_space(a);
    CHECK(sp->rank() == r);
    const double scale = 1.0 + frob_norm(a);

    CHECK(frob_norm(sp->root() * sp->root() - a) < 1e-10 * scale);
    CHECK(frob_norm(sp->root() * sp->root_pinv() * sp->root() - sp->root()) <
          1e-9 * scale);
    CHECK(frob_norm(a * sp->null_basis()) < 1e-9 * scale);
    CHECK(frob_norm(sp->range_basis().adjoint() * sp->range_basis() -
                    Matrix::identity(r)) < 1e-11);

    const Vec x = rng.gaussian_vec(n), y = rng.gaussian_vec(n);
    CHECK(std::abs(sp->sip(x, y) - inner(sp->compress(x), sp->compress(y))) <
          1e-9 * scale);
    CHECK(std::abs(sp->sip(x, x).real() -
                   sp->seminorm(x) * sp->seminorm(x)) < 1e-9 * scale);
    CHECK(std::abs(sp->sip(x, y)) <=
          sp->seminorm(x) * sp->seminorm(y) + 1e-9 * scale);

    if (r > 0) {
      Vec c(r);
      for (auto& z : c) z = rng.cgaussian();
      CHECK(norm2(sp->compress(sp->lift(c)) - c) < 1e-9 * (1.0 + norm2(c)));
      const Vec u = sp->seminormalized(rng.gaussian_vec(n));
      CHECK(sp->seminorm(u) == Catch::Approx(1.0).margin(1e-10));
    }
  }
}

TEST_CASE("zero weight is legal and collapses everything") {
  const SpacePtr sp = make_space(Matrix::zero(4, 4));
  CHECK(sp->rank() == 0);
  const Vec x{1, 2, 3, 4};
  CHECK(sp->seminorm(x) == 0.0);
  CHECK(sp->is_null_vec(x));
  CHECK(sp->compress(x).empty());
  CHECK_THROWS_AS(sp->seminormalized(x), NotNormalizable);
}

TEST_CASE("weight validation") {
  CHECK_THROWS_AS(make_space(Matrix(2, 3)), DimensionMismatch);
  CHECK_THROWS_AS(make_space(Matrix{{0, 1}, {0, 0}}), NotHermitian);
  CHECK_THROWS_AS(make_space(Matrix{{-1}}), NotPositive);
  CHECK_THROWS_AS(make_space(Matrix{{1, 0}, {0, -2}}), NotPositive);
  const SpacePtr sp = make_space(Matrix::identity(2));
  CHECK_THROWS_AS(sp->sip(Vec{1, 2, 3}, Vec{1, 2}), DimensionMismatch);
}
