#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "redraw/errors.hpp"
#include "redraw/layout.hpp"
#include "redraw/metrics.hpp"

using namespace redraw;
using doctest::Approx;

namespace {

double horizontal_spread(const Drawing& d) {
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t a = 0; a < d.size(); ++a) {
    for (std::size_t k = 0; k + 1 < d.dim(); ++k) {
      lo = std::min(lo, d.point(a)[k]);
      hi = std::max(hi, d.point(a)[k]);
    }
  }
  return hi - lo;
}

Drawing drawing_2d(std::initializer_list<std::pair<double, double>> points) {
  Drawing d(points.size(), 2);
  std::size_t a = 0;
  for (const auto& [x, y] : points) {
    d.point(a)[0] = x;
    d.point(a)[1] = y;
    ++a;
  }
  return d;
}

}  // namespace

TEST_CASE("parameter validation") {
  LayoutParams p;
  CHECK_NOTHROW(p.validate());
  p.damping = 0.0;
  CHECK_THROWS_AS(p.validate(), Error);
  p = {};
  p.cache_interval = 0;
  CHECK_THROWS_AS(p.validate(), Error);
  p = {};
  p.initial_dim = 1;
  CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("initial drawing uses extension positions and the unit box") {
  Rng gen(4);
  const auto order = testsupport::random_order(25, 0.15, gen);
  Rng rng(99);
  const auto d = initial_drawing(order, 5, rng);
  CHECK(d.dim() == 5);
  CHECK(satisfies_vertical_constraint(order, d));
  std::vector<double> ys;
  for (std::size_t a = 0; a < d.size(); ++a) {
    ys.push_back(d.y(a));
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(d.point(a)[k]) <= 1.0);
  }
  std::sort(ys.begin(), ys.end());
  for (std::size_t i = 0; i < ys.size(); ++i) CHECK(ys[i] == static_cast<double>(i));
}

TEST_CASE("overshooting protection") {
  const auto chain = testsupport::chain(3);
  auto d = drawing_2d({{0, 0}, {0, 0.5}, {0, 1}});
  SUBCASE("upper cover at 1 clamps 1.5 to 0.9") {
    const Vec out = overshooting_protection(chain, d, 1, Vec{0.3, 1.5}, 1.0);
    CHECK(out[0] == 0.3);
    CHECK(out[1] == Approx(0.9));
  }
  SUBCASE("inside the interval is unchanged") {
    CHECK(clamp_vertical(chain, d, 1, 0.5, 1.0) == 0.5);
  }
  SUBCASE("lower bound") {
    CHECK(clamp_vertical(chain, d, 1, -4.0, 1.0) == Approx(0.1));
  }
  SUBCASE("no covers, no constraint") {
    const auto single = testsupport::antichain(1);
    Drawing one(1, 2);
    CHECK(clamp_vertical(single, one, 0, 123.0, 1.0) == 123.0);
  }
  SUBCASE("narrow gap falls back to its midpoint") {
    auto tight = drawing_2d({{0, 0}, {0, 0.05}, {0, 0.1}});
    CHECK(clamp_vertical(chain, tight, 1, 5.0, 1.0) == Approx(0.05));
  }
  SUBCASE("corrupted covers") {
    auto broken = drawing_2d({{0, 1}, {0, 0.5}, {0, 0}});
    CHECK_THROWS_AS(clamp_vertical(chain, broken, 1, 0.5, 1.0), InfeasibleClamp);
  }
}

TEST_CASE("node step pulls a 3-chain toward a vertical line") {
  const auto chain = testsupport::chain(3);
  LayoutParams params;
  for (std::uint64_t seed : std::initializer_list<std::uint64_t>{1, 2, kDefaultSeed}) {
    Rng rng(seed);
    const auto start = initial_drawing(chain, 2, rng);
    StepStats stats;
    const auto d = node_step(chain, start, params, {{}, 0, &stats});
    CHECK(stats.iterations <= params.max_iterations);
    CHECK(horizontal_spread(d) < horizontal_spread(start));
    CHECK(satisfies_vertical_constraint(chain, d));
  }
}

TEST_CASE("3-chain node step run to the stress threshold") {
  // Attraction is cubic in d_x, so the run stops once the outermost element
  // feels at most epsilon, i.e. spread^3 <= epsilon.
  const auto chain = testsupport::chain(3);
  LayoutParams params;
  params.max_iterations = 100000;
  for (std::uint64_t seed : std::initializer_list<std::uint64_t>{1, 2, kDefaultSeed}) {
    Rng rng(seed);
    StepStats stats;
    const auto d = node_step(chain, initial_drawing(chain, 2, rng), params, {{}, 0, &stats});
    CHECK(stats.converged);
    CHECK(stats.max_force <= params.epsilon);
    CHECK(horizontal_spread(d) <= std::cbrt(params.epsilon));
    CHECK(satisfies_vertical_constraint(chain, d));
  }
}

TEST_CASE("node step separates an antichain and keeps y order") {
  const auto anti = testsupport::antichain(2);
  Rng rng(5);
  const auto start = initial_drawing(anti, 2, rng);
  LayoutParams params;
  params.max_iterations = 200;
  double previous = std::abs(start.point(0)[0] - start.point(1)[0]);
  StepOptions options;
  options.on_iteration = [&](const ProgressEvent& e) {
    const double gap = std::abs(e.drawing->point(0)[0] - e.drawing->point(1)[0]);
    CHECK(gap > previous);
    previous = gap;
  };
  const auto d = node_step(anti, start, params, options);
  CHECK((d.y(0) < d.y(1)) == (start.y(0) < start.y(1)));
}

TEST_CASE("node step handles coincident incomparable elements") {
  const auto anti = testsupport::antichain(2);
  Drawing d(2, 3);
  d.y(1) = 1.0;
  LayoutParams params;
  params.max_iterations = 5;
  const auto out = node_step(anti, d, params);
  CHECK(horizontal_distance(out.point(0), out.point(1)) > 0.0);
  CHECK(std::isfinite(out.point(0)[0]));
}

TEST_CASE("node step forces are momentum free horizontally") {
  Rng gen(12);
  const auto order = testsupport::random_order(15, 0.2, gen);
  Rng rng(3);
  const auto start = initial_drawing(order, 4, rng);
  LayoutParams params;
  params.max_iterations = 1;
  const auto after = node_step(order, start, params);
  // With a single update every horizontal move is delta times the force.
  for (std::size_t k = 0; k < 3; ++k) {
    double sum = 0.0;
    for (std::size_t a = 0; a < order.size(); ++a) sum += after.point(a)[k] - start.point(a)[k];
    CHECK(std::abs(sum) < 1e-9);
  }
}

TEST_CASE("candidate set examples") {
  LayoutParams params;
  SUBCASE("vertical parallel lines are in A") {
    // Two disjoint 2-chains.
    const auto order = order_from_pairs({"a", "b", "c", "d"}, std::vector<Pair>{{0, 1}, {2, 3}});
    const auto d = drawing_2d({{0, 0}, {0, 1}, {3, 0}, {3, 1}});
    const auto sets = candidate_sets(order, d, params);
    CHECK(sets.parallel.size() == 1);
    CHECK(sets.near.empty());
  }
  SUBCASE("a right angle is not in B") {
    const auto order = order_from_pairs({"b", "x", "y"}, std::vector<Pair>{{0, 1}, {0, 2}});
    const auto d = drawing_2d({{0, 0}, {-1, 1}, {1, 1}});
    CHECK(candidate_sets(order, d, params).angles.empty());
    const auto narrow = drawing_2d({{0, 0}, {-0.01, 1}, {0.01, 1}});
    const auto sets = candidate_sets(order, narrow, params);
    REQUIRE(sets.angles.size() == 1);
    CHECK(sets.angles[0].shared == 0u);
  }
  SUBCASE("node to segment distance must be strictly below c_dist") {
    const auto order = order_from_pairs({"n", "lo", "hi"}, std::vector<Pair>{{1, 2}});
    CHECK(candidate_sets(order, drawing_2d({{0, 0}, {1, -1}, {1, 1}}), params).near.empty());
    const auto sets = candidate_sets(order, drawing_2d({{0.5, 0}, {1, -1}, {1, 1}}), params);
    REQUIRE(sets.near.size() == 1);
    CHECK(sets.near[0].node == 0u);
  }
}

TEST_CASE("candidate sets match a brute-force scan") {
  Rng rng(17);
  LayoutParams params;
  params.c_par = 0.2;
  params.c_ang = 0.3;
  for (int trial = 0; trial < 20; ++trial) {
    const auto order = testsupport::random_order(4 + rng.below(14), 0.3, rng);
    Rng init(static_cast<std::uint64_t>(trial));
    const auto d = initial_drawing(order, 2 + rng.below(3), init);
    const auto sets = candidate_sets(order, d, params);
    const auto& edges = order.covers().pairs;
    std::size_t parallel = 0, near = 0, angles = 0;
    auto pt = [&](std::size_t a) { return Vec(d.point(a).begin(), d.point(a).end()); };
    for (std::size_t e = 0; e < edges.size(); ++e) {
      for (std::size_t f = e + 1; f < edges.size(); ++f) {
        const auto [a, b] = edges[e];
        const auto [c, g] = edges[f];
        const bool disjoint = a != c && a != g && b != c && b != g;
        if (disjoint && oracle::cos_dist(pt(a), pt(b), pt(c), pt(g)) < params.c_par) ++parallel;
        // Shared lower or upper endpoint, directions into the shared element.
        if (a == c && oracle::cos_dist(pt(b), pt(a), pt(g), pt(a)) < params.c_ang) ++angles;
        if (b == g && oracle::cos_dist(pt(a), pt(b), pt(c), pt(b)) < params.c_ang) ++angles;
      }
      for (std::size_t x = 0; x < order.size(); ++x) {
        if (x == edges[e].first || x == edges[e].second) continue;
        if (oracle::segment_distance(pt(x), pt(edges[e].first), pt(edges[e].second)) < params.c_dist) ++near;
      }
    }
    CHECK(sets.parallel.size() == parallel);
    CHECK(sets.angles.size() == angles);
    CHECK(sets.near.size() == near);
  }
}

TEST_CASE("line step without candidates leaves the drawing unchanged") {
  const auto order = order_from_pairs({"a", "b"}, std::vector<Pair>{{0, 1}});
  const auto d = drawing_2d({{0, 0}, {0, 1}});
  StepStats stats;
  const auto out = line_step(order, d, LayoutParams{}, {{}, 0, &stats});
  CHECK(out == d);
  CHECK(stats.iterations == 0);
  CHECK(stats.converged);
}

TEST_CASE("line step pushes a node away from a nearby edge") {
  const auto order = order_from_pairs({"n", "lo", "hi"}, std::vector<Pair>{{1, 2}});
  const auto d = drawing_2d({{0.1, 0}, {0, -5}, {0, 5}});
  LayoutParams params;
  params.max_iterations = 1;
  const auto out = line_step(order, d, params);
  const double before = point_segment_distance(d.point(0), d.point(1), d.point(2));
  const double after = point_segment_distance(out.point(0), out.point(1), out.point(2));
  CHECK(after > before);
}

TEST_CASE("redraw pipeline examples") {
  LayoutParams params;
  SUBCASE("single element") {
    const auto result = redraw_layout(testsupport::chain(1), params);
    CHECK(result.drawing.size() == 1);
    CHECK(result.drawing.dim() == 2);
    CHECK(result.cycles == params.initial_dim - 1);
  }
  SUBCASE("3-chain is drawn nearly vertical with increasing y") {
    const auto chain = testsupport::chain(3);
    const auto d = redraw::redraw(chain, params);
    CHECK(horizontal_spread(d) < 0.25);
    CHECK(d.y(0) < d.y(1));
    CHECK(d.y(1) < d.y(2));
  }
  SUBCASE("B3 with two seeds is valid") {
    const auto b3 = testsupport::boolean_lattice(3);
    for (std::uint64_t seed : {1ULL, 2ULL}) {
      params.seed = seed;
      const auto d = redraw::redraw(b3, params);
      for (const auto& v : validate_drawing(b3, d)) {
        CHECK(v.kind != ViolationKind::kVertical);
        CHECK(v.kind != ViolationKind::kCoincidentNodes);
      }
    }
  }
}

TEST_CASE("redraw is deterministic and seed dependent") {
  const auto order = testsupport::boolean_lattice(3);
  LayoutParams params;
  params.max_iterations = 200;
  const auto a = redraw::redraw(order, params);
  const auto b = redraw::redraw(order, params);
  CHECK(a == b);
  params.seed = 77;
  CHECK_FALSE(redraw::redraw(order, params) == a);
}

TEST_CASE("every snapshot of the pipeline satisfies the vertical constraint") {
  Rng gen(2);
  LayoutParams params;
  params.max_iterations = 150;
  for (int trial = 0; trial < 10; ++trial) {
    const auto order = testsupport::random_order(3 + gen.below(20), 0.2, gen);
    params.seed = static_cast<std::uint64_t>(trial);
    std::size_t events = 0, reductions = 0;
    std::size_t last_cycle = 0;
    RunOptions options;
    options.on_progress = [&](const ProgressEvent& e) {
      ++events;
      if (e.step == Step::kReduction) ++reductions;
      CHECK(e.cycle >= last_cycle);
      last_cycle = e.cycle;
      REQUIRE(satisfies_vertical_constraint(order, *e.drawing));
    };
    const auto result = redraw_layout(order, params, options);
    CHECK(reductions == params.initial_dim - 2);
    CHECK(result.cycles == params.initial_dim - 1);
    CHECK(result.iterations <= 2 * params.max_iterations * result.cycles);
    CHECK(satisfies_vertical_constraint(order, result.drawing));
  }
}

TEST_CASE("horizontal scaling is applied at the end") {
  const auto order = testsupport::m_lattice(3);
  LayoutParams params;
  params.max_iterations = 100;
  const auto half = redraw::redraw(order, params);
  params.horizontal_scale = 1.0;
  const auto full = redraw::redraw(order, params);
  for (std::size_t a = 0; a < order.size(); ++a) {
    CHECK(half.point(a)[0] == Approx(0.5 * full.point(a)[0]));
    CHECK(half.y(a) == full.y(a));
  }
}

TEST_CASE("cache interval 1 recomputes every iteration") {
  Rng gen(31);
  const auto order = testsupport::random_order(14, 0.3, gen);
  LayoutParams params;
  params.max_iterations = 40;
  params.c_par = 0.3;
  params.c_ang = 0.3;
  Rng rng(1);
  const auto start = node_step(order, initial_drawing(order, 3, rng), params);
  params.cache_interval = 1;
  const auto a = line_step(order, start, params);
  params.cache_interval = 1000;
  const auto b = line_step(order, start, params);
  CHECK(satisfies_vertical_constraint(order, a));
  CHECK(satisfies_vertical_constraint(order, b));
}
