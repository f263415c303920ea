#include <cmath>

#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "redraw/errors.hpp"
#include "redraw/pca.hpp"

using namespace redraw;
using doctest::Approx;

TEST_CASE("Jacobi on a 2x2 matrix") {
  const std::vector<double> m{2, 1, 1, 2};
  const auto eig = symmetric_eigen(m, 2);
  CHECK(eig.values[0] == Approx(3.0));
  CHECK(eig.values[1] == Approx(1.0));
  CHECK(eig.vectors[0][0] == Approx(std::sqrt(0.5)));
  CHECK(eig.vectors[0][1] == Approx(std::sqrt(0.5)));
  // Largest-magnitude component is made positive.
  const double big = std::abs(eig.vectors[1][0]) >= std::abs(eig.vectors[1][1]) ? eig.vectors[1][0] : eig.vectors[1][1];
  CHECK(big > 0.0);
}

TEST_CASE("eigenpairs satisfy A v = lambda v on random symmetric matrices") {
  Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.below(6);
    std::vector<double> m(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) m[i * n + j] = m[j * n + i] = rng.uniform(-3, 3);
    const auto eig = symmetric_eigen(m, n);
    for (std::size_t k = 0; k < n; ++k) {
      if (k > 0) CHECK(eig.values[k - 1] >= eig.values[k]);
      for (std::size_t i = 0; i < n; ++i) {
        double av = 0.0;
        for (std::size_t j = 0; j < n; ++j) av += m[i * n + j] * eig.vectors[k][j];
        CHECK(av == Approx(eig.values[k] * eig.vectors[k][i]).epsilon(1e-9).scale(1.0));
      }
      for (std::size_t l = 0; l < n; ++l) {
        CHECK(oracle::dot(eig.vectors[k], eig.vectors[l]) == Approx(k == l ? 1.0 : 0.0).scale(1.0).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("centering gives zero means") {
  Rng rng(1);
  const auto d = center(testsupport::random_drawing(9, 4, rng));
  for (std::size_t k = 0; k < 4; ++k) {
    double s = 0.0;
    for (std::size_t a = 0; a < 9; ++a) s += d.point(a)[k];
    CHECK(std::abs(s) < 1e-12);
  }
}

TEST_CASE("collinear horizontal data keeps its pairwise distances") {
  Drawing d(4, 3);
  const double t[] = {-1.0, 0.25, 2.0, 3.5};
  for (std::size_t a = 0; a < 4; ++a) {
    d.point(a)[0] = 2.0 * t[a];
    d.point(a)[1] = -1.0 * t[a];
    d.y(a) = static_cast<double>(a);
  }
  const auto r = dimension_reduction(d);
  REQUIRE(r.dim() == 2);
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      const double before = horizontal_distance(d.point(a), d.point(b));
      CHECK(std::abs(r.point(a)[0] - r.point(b)[0]) == Approx(before).epsilon(1e-12));
    }
    CHECK(r.y(a) == Approx(static_cast<double>(a) - 1.5));
  }
}

TEST_CASE("rank-deficient data pads with zero coordinates") {
  Drawing d(3, 5);
  for (std::size_t a = 0; a < 3; ++a) {
    d.point(a)[0] = static_cast<double>(a);
    d.y(a) = static_cast<double>(a);
  }
  const auto r = reduce_dimension(d);
  CHECK(r.drawing.dim() == 4);
  for (std::size_t a = 0; a < 3; ++a) {
    CHECK(std::abs(r.drawing.point(a)[1]) < 1e-12);
    CHECK(std::abs(r.drawing.point(a)[2]) < 1e-12);
  }
  CHECK(r.variances[1] == Approx(0.0).scale(1.0));
}

TEST_CASE("projection matches the power-iteration oracle") {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t hdim = 2 + rng.below(3);
    const std::size_t n = 3 + rng.below(30);
    auto d = testsupport::random_drawing(n, hdim + 1, rng);
    // Stretch the axes so eigenvalues are well separated.
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t k = 0; k < hdim; ++k) d.point(a)[k] *= static_cast<double>(k + 1) * 1.7;
    const auto r = reduce_dimension(d);
    const auto want = oracle::eigen_power(oracle::horizontal_covariance(d), hdim - 1);
    for (std::size_t k = 0; k + 1 < hdim; ++k) {
      CHECK(r.variances[k] == Approx(want[k].first).epsilon(1e-9));
      const double sign = oracle::dot(r.basis[k], want[k].second) < 0 ? -1.0 : 1.0;
      for (std::size_t i = 0; i < hdim; ++i) CHECK(std::abs(r.basis[k][i] - sign * want[k].second[i]) < 1e-8);
    }
  }
}

TEST_CASE("reduction requires three dimensions") {
  CHECK_THROWS_AS(dimension_reduction(Drawing(3, 2)), Error);
}
