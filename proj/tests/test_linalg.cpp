#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "semibj/eig.hpp"
#include "semibj/matrix.hpp"
#include "semibj/rng.hpp"
#include "semibj/svd.hpp"
#include "support/oracles.hpp"

using namespace semibj;

namespace {

Matrix diag(std::initializer_list<double> d) {
  Matrix m(d.size(), d.size());
  std::size_t i = 0;
  for (double v : d) m(i, i) = v, ++i;
  return m;
}

double unitary_defect(const Matrix& q) {
  return frob_norm(q.adjoint() * q - Matrix::identity(q.cols()));
}

}  // namespace

TEST_CASE("matrix arithmetic basics") {
  Rng rng(11);
  const Matrix a = rng.gaussian_matrix(4, 3);
  const Matrix b = rng.gaussian_matrix(3, 5);
  CHECK(frob_norm((a * b).adjoint() - b.adjoint() * a.adjoint()) < 1e-13);
  CHECK(frob_norm(Matrix::identity(4) * a - a) == 0.0);

  const Vec x = rng.gaussian_vec(3);
  Vec ax_cols(4, cplx{});
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 4; ++i) ax_cols[i] += a(i, j) * x[j];
  CHECK(norm2(a * x - ax_cols) < 1e-13);

  const Vec y = rng.gaussian_vec(3);
  CHECK(std::abs(inner(x, y) - std::conj(inner(y, x))) < 1e-13);
  CHECK(std::abs(inner(x, x).real() - norm2(x) * norm2(x)) < 1e-12);
}

TEST_CASE("rng is reproducible and seed derivation separates streams") {
  Rng a(42), b(42), c(43);
  bool same = true, differ = false;
  for (int i = 0; i < 64; ++i) {
    const double va = a.uniform(), vb = b.uniform(), vc = c.uniform();
    same = same && (va == vb);
    differ = differ || (va != vc);
  }
  CHECK(same);
  CHECK(differ);
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));

  Rng g(7);
  double mean = 0;
  for (int i = 0; i < 20000; ++i) mean += g.gaussian();
  mean /= 20000;
  CHECK(std::abs(mean) < 0.05);
}

TEST_CASE("eigensolver on fixed matrices") {
  {
    const EigResult e = hermitian_eig(diag({3, 1}));
    REQUIRE(e.values.size() == 2);
    CHECK(e.values[0] == Catch::Approx(3.0).margin(1e-10));
    CHECK(e.values[1] == Catch::Approx(1.0).margin(1e-10));
    CHECK(std::abs(e.vectors(0, 0)) == Catch::Approx(1.0).margin(1e-10));
    CHECK(std::abs(e.vectors(1, 1)) == Catch::Approx(1.0).margin(1e-10));
  }
  {
    const Matrix h{{0, 1}, {1, 0}};
    const EigResult e = hermitian_eig(h);
    CHECK(e.values[0] == Catch::Approx(1.0).margin(1e-10));
    CHECK(e.values[1] == Catch::Approx(-1.0).margin(1e-10));
    // Eigenvectors are (1,1)/sqrt2 and (1,-1)/sqrt2 up to phase.
    CHECK(std::abs(e.vectors(0, 0) - e.vectors(1, 0)) < 1e-10);
    CHECK(std::abs(e.vectors(0, 1) + e.vectors(1, 1)) < 1e-10);
  }
  {
    const cplx i{0, 1};
    const Matrix h{{2, i}, {-i, 2}};
    const auto vals = hermitian_eigvals(h);
    CHECK(vals[0] == Catch::Approx(3.0).margin(1e-10));
    CHECK(vals[1] == Catch::Approx(1.0).margin(1e-10));
  }
  {
    const auto e = hermitian_eig(Matrix::zero(3, 3));
    CHECK(e.values == std::vector<double>{0, 0, 0});
    CHECK(unitary_defect(e.vectors) < 1e-12);
  }
  CHECK(hermitian_eig(Matrix(0, 0)).values.empty());
  CHECK_THROWS_AS(hermitian_eig(Matrix{{0, 1}, {0, 0}}), NotHermitian);
  CHECK_THROWS_AS(hermitian_eig(Matrix(2, 3)), DimensionMismatch);
}

TEST_CASE("eigensolver recovers a planted spectrum") {
  Rng rng(2024);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t n = 1 + rng.index(8);
    const Matrix w = oracle::random_unitary(rng, n);
    std::vector<double> lam(n);
    for (auto& l : lam) l = rng.uniform(-5.0, 5.0);
    std::sort(lam.begin(), lam.end(), std::greater<double>());
    Matrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        cplx s = 0;
        for (std::size_t k = 0; k < n; ++k)
          s += w(i, k) * lam[k] * std::conj(w(j, k));
        h(i, j) = s;
      }
    const EigResult e = hermitian_eig(h);
    const double scale = 1.0 + frob_norm(h);
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(std::abs(e.values[k] - lam[k]) < 1e-10 * scale);
      const Vec v = e.vectors.col(k);
      Vec hv = h * v;
      for (std::size_t i = 0; i < n; ++i) hv[i] -= e.values[k] * v[i];
      CHECK(norm2(hv) < 1e-9 * scale);
    }
    CHECK(unitary_defect(e.vectors) < 1e-11);
  }
}

TEST_CASE("eigensolver extremes agree with power iteration") {
  Rng rng(501);
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t n = 2 + rng.index(7);
    Matrix g = rng.gaussian_matrix(n, n);
    const Matrix h = oracle::herm_part(g);
    const double scale = 1.0 + frob_norm(h);
    const double top = hermitian_eigvals(h)[0];
    CHECK(std::abs(top - oracle::power_lambda_max(h, rng)) < 1e-4 * scale);
  }
}

TEST_CASE("svd on fixed matrices") {
  {
    const SvdResult d = svd(diag({2, -3}));
    CHECK(d.sigma[0] == Catch::Approx(3.0).margin(1e-12));
    CHECK(d.sigma[1] == Catch::Approx(2.0).margin(1e-12));
  }
  {
    const Matrix m{{0, 0}, {4, 0}};
    const SvdResult d = svd(m);
    CHECK(d.sigma[0] == Catch::Approx(4.0).margin(1e-12));
    CHECK(d.sigma[1] == Catch::Approx(0.0).margin(1e-12));
    Matrix rec(2, 2);
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
          rec(i, j) += d.sigma[k] * d.u(i, k) * std::conj(d.v(j, k));
    CHECK(frob_norm(rec - m) < 1e-12);
  }
  CHECK(sigma_max(Matrix::zero(3, 2)) == 0.0);
  CHECK(svd(Matrix(0, 0)).sigma.empty());
}

TEST_CASE("svd reconstruction and unitarity on random matrices") {
  Rng rng(77);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t rows = 1 + rng.index(8);
    const std::size_t cols = 1 + rng.index(8);
    Matrix m = rng.gaussian_matrix(rows, cols);
    if (rep % 4 == 0) {
      // Plant rank deficiency: overwrite with an outer product.
      const Vec x = rng.gaussian_vec(rows), y = rng.gaussian_vec(cols);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = x[i] * std::conj(y[j]);
    }
    const SvdResult d = svd(m);
    const double scale = 1.0 + frob_norm(m);
    Matrix rec(rows, cols);
    for (std::size_t k = 0; k < d.sigma.size(); ++k)
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
          rec(i, j) += d.sigma[k] * d.u(i, k) * std::conj(d.v(j, k));
    CHECK(frob_norm(rec - m) < 1e-10 * scale);
    CHECK(unitary_defect(d.u) < 1e-10);
    CHECK(unitary_defect(d.v) < 1e-10);
    for (std::size_t k = 0; k + 1 < d.sigma.size(); ++k)
      CHECK(d.sigma[k] >= d.sigma[k + 1]);
    CHECK(d.sigma.back() >= 0.0);
    if (rep % 4 == 0)
      for (std::size_t k = 1; k < d.sigma.size(); ++k)
        CHECK(d.sigma[k] < 1e-11 * scale);
  }
}

TEST_CASE("extreme singular values match sampling and power iteration") {
  Rng rng(3001);
  for (int rep = 0; rep < 8; ++rep) {
    const std::size_t n = 2 + rng.index(6);
    const Matrix m = rng.gaussian_matrix(n, n);
    const double s1 = sigma_max(m);
    const double sn = sigma_min(m);
    const double scale = 1.0 + frob_norm(m);
    CHECK(std::abs(s1 - oracle::power_sigma_max(m, rng)) < 1e-4 * scale);
    // Sampled image norms must stay inside [sigma_min, sigma_max].
    CHECK(oracle::sampled_max_image(m, rng, 400) <= s1 + 1e-9 * scale);
    CHECK(oracle::sampled_min_image(m, rng, 400) >= sn - 1e-9 * scale);
    // Both extremes are attained by the corresponding right singular vectors.
    const SvdResult d = svd(m);
    CHECK(norm2(m * d.v.col(0)) == Catch::Approx(s1).margin(1e-10 * scale));
    CHECK(norm2(m * d.v.col(n - 1)) == Catch::Approx(sn).margin(1e-10 * scale));
  }
}

TEST_CASE("pseudoinverse satisfies the Penrose identities") {
  {
    const Matrix p = pinv(diag({2, 0}));
    CHECK(std::abs(p(0, 0) - 0.5) < 1e-14);
    CHECK(std::abs(p(1, 1)) < 1e-14);
  }
  Rng rng(909);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t rows = 1 + rng.index(6);
    const std::size_t cols = 1 + rng.index(6);
    Matrix m = rng.gaussian_matrix(rows, cols);
    if (rep % 3 == 0 && rows > 1) {
      // Duplicate a row to force rank deficiency.
      for (std::size_t j = 0; j < cols; ++j) m(rows - 1, j) = m(0, j);
    }
    const Matrix x = pinv(m);
    const double scale = 1.0 + frob_norm(m);
    CHECK(frob_norm(m * x * m - m) < 1e-9 * scale);
    CHECK(frob_norm(x * m * x - x) < 1e-9 * scale);
    CHECK(hermitian_defect(m * x) < 1e-9 * scale);
    CHECK(hermitian_defect(x * m) < 1e-9 * scale);
  }
}

TEST_CASE("pencil norm evaluator matches direct computation") {
  Rng rng(606);
  for (int rep = 0; rep < 6; ++rep) {
    const std::size_t r = 1 + rng.index(8);
    const Matrix t = rng.gaussian_matrix(r, r);
    const Matrix s = rng.gaussian_matrix(r, r);
    PencilNorm pn(t, s);
    for (int k = 0; k < 12; ++k) {
      const cplx g = 3.0 * rng.cgaussian();
      const double direct = sigma_max(t + g * s);
      CHECK(std::abs(pn(g) - direct) < 1e-11 * (1.0 + direct));
    }
  }
}
