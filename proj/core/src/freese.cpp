#include "redraw/freese.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kernels.hpp"
#include "redraw/errors.hpp"
#include "redraw/pca.hpp"

namespace redraw {

namespace {

// Cover lists in a topological order (ascending by number of elements below).
std::vector<std::size_t> topological_order(const OrderedSet& order) {
  const auto& lower = order.covers().lower;
  const auto& upper = order.covers().upper;
  std::vector<std::size_t> pending(order.size());
  std::vector<std::size_t> topo;
  topo.reserve(order.size());
  for (std::size_t a = 0; a < order.size(); ++a) {
    pending[a] = lower[a].size();
    if (pending[a] == 0) topo.push_back(a);
  }
  for (std::size_t i = 0; i < topo.size(); ++i) {
    for (const std::size_t b : upper[topo[i]]) {
      if (--pending[b] == 0) topo.push_back(b);
    }
  }
  return topo;
}

}  // namespace

void FreeseParams::validate() const {
  if (!(c_attr > 0.0) || !(c_rep > 0.0) || !(epsilon > 0.0) || !(damping > 0.0) || max_iterations < 1) {
    throw Error("invalid Freese layout parameters: constants must be positive");
  }
}

std::vector<int> heights(const OrderedSet& order) {
  std::vector<int> h(order.size(), 0);
  for (const std::size_t a : topological_order(order)) {
    for (const std::size_t b : order.covers().lower[a]) h[a] = std::max(h[a], h[b] + 1);
  }
  return h;
}

std::vector<int> depths(const OrderedSet& order) {
  std::vector<int> d(order.size(), 0);
  const auto topo = topological_order(order);
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    for (const std::size_t b : order.covers().upper[*it]) d[*it] = std::max(d[*it], d[b] + 1);
  }
  return d;
}

std::vector<int> rank_assignment(const OrderedSet& order) {
  const auto h = heights(order);
  const auto d = depths(order);
  std::vector<int> rank(order.size());
  for (std::size_t a = 0; a < order.size(); ++a) rank[a] = h[a] - d[a];
  return rank;
}

Drawing freese_layout(const OrderedSet& order, const FreeseParams& params, Rng& rng, const StepOptions& options) {
  params.validate();
  constexpr std::size_t kDim = 3;
  constexpr std::size_t kHorizontal = 2;
  const std::size_t n = order.size();
  const auto rank = rank_assignment(order);

  Drawing drawing(n, kDim);
  for (std::size_t a = 0; a < n; ++a) {
    auto p = drawing.point(a);
    p[0] = rng.uniform(-1.0, 1.0);
    p[1] = rng.uniform(-1.0, 1.0);
    p[2] = static_cast<double>(rank[a]);
  }

  std::vector<double> forces(n * kDim);
  double diff[kHorizontal];
  StepStats stats;
  for (std::size_t t = 0; t < params.max_iterations; ++t) {
    std::fill(forces.begin(), forces.end(), 0.0);
    for (std::size_t a = 0; a < n; ++a) {
      const auto pa = drawing.point(a);
      double* fa = forces.data() + a * kDim;
      for (std::size_t b = a + 1; b < n; ++b) {
        const auto pb = drawing.point(b);
        double* fb = forces.data() + b * kDim;
        diff[0] = pa[0] - pb[0];
        diff[1] = pa[1] - pb[1];
        if (order.comparable(a, b)) {
          detail::attr_freese_from_offset(diff, kHorizontal, params.c_attr, fa, 1.0);
          detail::attr_freese_from_offset(diff, kHorizontal, params.c_attr, fb, -1.0);
          continue;
        }
        const double dy = pa[2] - pb[2];
        if (detail::freese_denominator(diff, kHorizontal, dy) == 0.0) {
          Rng jitter(mix64(params.seed ^ mix64((static_cast<std::uint64_t>(a) << 32) ^ b) ^ mix64(t)));
          double norm = 0.0;
          while (norm == 0.0) {
            diff[0] = jitter.uniform(-1.0, 1.0);
            diff[1] = jitter.uniform(-1.0, 1.0);
            norm = std::hypot(diff[0], diff[1]);
          }
          diff[0] *= 1e-6 / norm;
          diff[1] *= 1e-6 / norm;
        }
        detail::rep_freese_from_offset(diff, kHorizontal, dy, params.c_rep, fa, 1.0);
        detail::rep_freese_from_offset(diff, kHorizontal, dy, params.c_rep, fb, -1.0);
      }
    }
    double max_sq = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      const double fx = forces[a * kDim];
      const double fy = forces[a * kDim + 1];
      max_sq = std::max(max_sq, fx * fx + fy * fy);
    }
    stats.max_force = std::sqrt(max_sq);
    if (stats.max_force <= params.epsilon) {
      stats.converged = true;
      break;
    }
    for (std::size_t a = 0; a < n; ++a) {
      auto p = drawing.point(a);
      p[0] += params.damping * forces[a * kDim];
      p[1] += params.damping * forces[a * kDim + 1];
    }
    ++stats.iterations;
    if (options.on_iteration) {
      options.on_iteration(ProgressEvent{options.cycle, kDim, Step::kNode, t, stats.max_force, &drawing});
    }
  }
  if (options.stats) *options.stats = stats;

  Drawing projected = dimension_reduction(drawing);
  // Undo the vertical centering so the heights are the ranks themselves.
  for (std::size_t a = 0; a < n; ++a) projected.y(a) = static_cast<double>(rank[a]);
  return projected;
}

}  // namespace redraw
