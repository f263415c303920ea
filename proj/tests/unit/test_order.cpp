#include <algorithm>

#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "redraw/errors.hpp"
#include "redraw/order.hpp"

using namespace redraw;

namespace {

std::vector<Pair> sorted(std::vector<Pair> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("validate_order accepts a 2-chain") {
  const std::vector<Pair> leq{{0, 0}, {1, 1}, {0, 1}};
  const auto order = validate_order({"a", "b"}, leq);
  CHECK(order.less(0, 1));
  CHECK_FALSE(order.less(1, 0));
  CHECK(order.covers().pairs == std::vector<Pair>{{0, 1}});
}

TEST_CASE("validate_order reports the first violated axiom") {
  SUBCASE("reflexivity") {
    const std::vector<Pair> leq{{0, 0}};
    try {
      validate_order({"a", "b"}, leq);
      FAIL("expected AxiomViolation");
    } catch (const AxiomViolation& e) {
      CHECK(e.axiom() == Axiom::kReflexivity);
      CHECK(e.witness() == std::vector<std::size_t>{1});
    }
  }
  SUBCASE("antisymmetry") {
    const std::vector<Pair> leq{{0, 0}, {1, 1}, {0, 1}, {1, 0}};
    CHECK_THROWS_AS(validate_order({"a", "b"}, leq), AxiomViolation);
    try {
      validate_order({"a", "b"}, leq);
    } catch (const AxiomViolation& e) {
      CHECK(e.axiom() == Axiom::kAntisymmetry);
    }
  }
  SUBCASE("transitivity") {
    const std::vector<Pair> leq{{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}};
    try {
      validate_order({"a", "b", "c"}, leq);
      FAIL("expected AxiomViolation");
    } catch (const AxiomViolation& e) {
      CHECK(e.axiom() == Axiom::kTransitivity);
      CHECK(e.witness() == std::vector<std::size_t>{0, 1, 2});
    }
  }
}

TEST_CASE("transitive closure of a path and cycle detection") {
  const std::vector<Pair> path{{0, 1}, {1, 2}};
  const auto closed = transitive_closure(3, path);
  CHECK(closed.test(0, 2));
  CHECK(closed.test(1, 1));
  CHECK_FALSE(closed.test(2, 0));

  const std::vector<Pair> cycle{{0, 1}, {1, 0}};
  try {
    transitive_closure(2, cycle);
    FAIL("expected CycleDetected");
  } catch (const CycleDetected& e) {
    CHECK(e.cycle() == std::vector<std::size_t>{0, 1});
  }
}

TEST_CASE("closure and covers agree with brute force on random orders") {
  Rng rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng.below(70);
    std::vector<Pair> pairs;
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (rng.uniform01() < 0.08) pairs.emplace_back(perm[i], perm[j]);
    const auto want = oracle::closure(n, pairs);
    const auto got = transitive_closure(n, pairs);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) REQUIRE(got.test(i, j) == want[i][j]);
    const auto order = order_from_pairs(testsupport::numbered_ids(n), pairs);
    CHECK(sorted(order.covers().pairs) == oracle::covers(want));
    for (std::size_t a = 0; a < n; ++a) {
      for (const std::size_t b : order.covers().upper[a]) CHECK(order.less(a, b));
      for (const std::size_t b : order.covers().lower[a]) CHECK(order.less(b, a));
    }
  }
}

TEST_CASE("linear extensions are valid and seed dependent") {
  Rng gen(11);
  const auto order = testsupport::random_order(30, 0.1, gen);
  Rng r1(1), r2(1), r3(2);
  const auto e1 = random_linear_extension(order, r1);
  const auto e2 = random_linear_extension(order, r2);
  const auto e3 = random_linear_extension(order, r3);
  CHECK(is_linear_extension(order, e1));
  CHECK(is_linear_extension(order, e3));
  CHECK(e1 == e2);
  CHECK(e1 != e3);
  std::vector<std::size_t> reversed(e1.rbegin(), e1.rend());
  if (!order.covers().pairs.empty()) CHECK_FALSE(is_linear_extension(order, reversed));
}

TEST_CASE("M3 meets and joins") {
  const auto m3 = testsupport::m_lattice(3);
  CHECK(meet(m3, 1, 2) == 0u);
  CHECK(join(m3, 1, 2) == 4u);
  CHECK(meet(m3, 1, 4) == 1u);
  CHECK(is_lattice(m3));
  const LatticeTables tables(m3);
  CHECK(tables.bottom() == 0u);
  CHECK(tables.top() == 4u);
  CHECK(tables.join(2, 3) == 4u);
}

TEST_CASE("meets and joins agree with brute force") {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto order = testsupport::random_order(1 + rng.below(12), 0.4, rng);
    const auto leq = oracle::relation(order);
    CHECK(is_lattice(order) == oracle::is_lattice(leq));
    for (std::size_t a = 0; a < order.size(); ++a) {
      for (std::size_t b = 0; b < order.size(); ++b) {
        CHECK(meet(order, a, b) == oracle::infimum(leq, a, b));
        CHECK(join(order, a, b) == oracle::supremum(leq, a, b));
      }
    }
  }
}

TEST_CASE("non-lattices are rejected") {
  CHECK_FALSE(is_lattice(testsupport::antichain(2)));
  CHECK_FALSE(is_lattice(OrderedSet{}));
  CHECK_THROWS_AS(LatticeTables(testsupport::antichain(2)), NotALattice);
}

TEST_CASE("duplicate ids are rejected") {
  CHECK_THROWS_AS(order_from_pairs({"a", "a"}, {}), Error);
}
