#include "redraw/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kernels.hpp"
#include "redraw/errors.hpp"
#include "redraw/pca.hpp"

namespace redraw {

namespace {

constexpr double kJitter = 1e-6;

void require(bool ok, const char* what) {
  if (!ok) throw Error(std::string("invalid layout parameter: ") + what);
}

// Deterministic pseudo-random unit vector of length `len` times kJitter,
// keyed by (seed, salt, i, j); independent of evaluation order.
void jitter_vector(std::uint64_t seed, std::uint64_t salt, std::size_t i, std::size_t j, double* out,
                   std::size_t len) {
  Rng rng(mix64(seed ^ mix64(salt ^ mix64((static_cast<std::uint64_t>(i) << 32) ^ j))));
  double norm = 0.0;
  do {
    norm = 0.0;
    for (std::size_t k = 0; k < len; ++k) {
      out[k] = rng.uniform(-1.0, 1.0);
      norm += out[k] * out[k];
    }
  } while (norm == 0.0);
  norm = std::sqrt(norm);
  for (std::size_t k = 0; k < len; ++k) out[k] *= kJitter / norm;
}

std::uint64_t jitter_salt(std::size_t cycle, std::size_t iteration, Step step) {
  return (static_cast<std::uint64_t>(cycle) << 48) ^ (static_cast<std::uint64_t>(step) << 40) ^ iteration;
}

double max_norm(const std::vector<double>& forces, std::size_t n, std::size_t dim) {
  double max_sq = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    double sq = 0.0;
    for (std::size_t k = 0; k < dim; ++k) sq += forces[a * dim + k] * forces[a * dim + k];
    max_sq = std::max(max_sq, sq);
  }
  return std::sqrt(max_sq);
}

// p_a <- overshooting_protection(p_a + delta F_a), element by element.
void apply_moves(const OrderedSet& order, Drawing& drawing, const std::vector<double>& forces, double damping,
                 double c_vert) {
  const std::size_t dim = drawing.dim();
  for (std::size_t a = 0; a < drawing.size(); ++a) {
    auto p = drawing.point(a);
    const double* f = forces.data() + a * dim;
    for (std::size_t k = 0; k + 1 < dim; ++k) p[k] += damping * f[k];
    const double proposed_y = p[dim - 1] + damping * f[dim - 1];
    p[dim - 1] = clamp_vertical(order, drawing, a, proposed_y, c_vert);
  }
}

// Shared iteration driver for node and line steps.
template <typename ComputeForces>
Drawing iterate(const OrderedSet& order, Drawing drawing, const LayoutParams& params, const StepOptions& options,
                Step step, ComputeForces&& compute) {
  const std::size_t n = drawing.size();
  const std::size_t dim = drawing.dim();
  std::vector<double> forces(n * dim);
  StepStats stats;
  for (std::size_t t = 0; t < params.max_iterations; ++t) {
    std::fill(forces.begin(), forces.end(), 0.0);
    compute(drawing, t, forces);
    stats.max_force = max_norm(forces, n, dim);
    if (stats.max_force <= params.epsilon) {
      stats.converged = true;
      break;
    }
    apply_moves(order, drawing, forces, params.damping, params.c_vert);
    ++stats.iterations;
    if (options.on_iteration) {
      options.on_iteration(ProgressEvent{options.cycle, dim, step, t, stats.max_force, &drawing});
    }
  }
  if (options.stats) *options.stats = stats;
  return drawing;
}

}  // namespace

void LayoutParams::validate() const {
  require(max_iterations >= 1, "K must be at least 1");
  require(epsilon > 0.0, "epsilon must be positive");
  require(damping > 0.0, "damping must be positive");
  require(c_vert > 0.0, "c_vert must be positive");
  require(c_hor > 0.0, "c_hor must be positive");
  require(c_par > 0.0, "c_par must be positive");
  require(c_ang > 0.0, "c_ang must be positive");
  require(c_dist > 0.0, "c_dist must be positive");
  require(initial_dim >= 2, "initial dimension must be at least 2");
  require(horizontal_scale > 0.0, "horizontal scale must be positive");
  require(cache_interval >= 1, "cache interval must be at least 1");
  for (const double v : {epsilon, damping, c_vert, c_hor, c_par, c_ang, c_dist, horizontal_scale}) {
    require(std::isfinite(v), "constants must be finite");
  }
}

const char* to_string(Step step) {
  switch (step) {
    case Step::kNode: return "node";
    case Step::kLine: return "line";
    case Step::kReduction: return "reduction";
  }
  return "unknown";
}

Drawing initial_drawing(const OrderedSet& order, std::size_t dim, Rng& rng) {
  if (dim < 2) throw Error("initial drawing needs at least two dimensions");
  const auto extension = random_linear_extension(order, rng);
  Drawing drawing(order.size(), dim);
  for (std::size_t pos = 0; pos < extension.size(); ++pos) {
    drawing.y(extension[pos]) = static_cast<double>(pos);
  }
  for (std::size_t a = 0; a < order.size(); ++a) {
    auto p = drawing.point(a);
    for (std::size_t k = 0; k + 1 < dim; ++k) p[k] = rng.uniform(-1.0, 1.0);
  }
  return drawing;
}

double clamp_vertical(const OrderedSet& order, const Drawing& current, std::size_t a, double proposed_y,
                      double c_vert) {
  const auto& covers = order.covers();
  double below = -std::numeric_limits<double>::infinity();
  double above = std::numeric_limits<double>::infinity();
  for (const std::size_t b : covers.lower[a]) below = std::max(below, current.y(b));
  for (const std::size_t b : covers.upper[a]) above = std::min(above, current.y(b));
  if (!(below < above)) {
    throw InfeasibleClamp("element '" + order.id(a) + "' is not strictly between its covers");
  }
  const double gap = c_vert / 10.0;
  const double lo = below + gap;
  const double hi = above - gap;
  if (lo <= hi) return std::clamp(proposed_y, lo, hi);
  const double mid = below + (above - below) / 2.0;
  if (!(below < mid && mid < above)) {
    throw InfeasibleClamp("no representable position between the covers of '" + order.id(a) + "'");
  }
  return mid;
}

Vec overshooting_protection(const OrderedSet& order, const Drawing& current, std::size_t a, Point proposed,
                            double c_vert) {
  Vec out(proposed.begin(), proposed.end());
  out.back() = clamp_vertical(order, current, a, proposed.back(), c_vert);
  return out;
}

Drawing node_step(const OrderedSet& order, Drawing drawing, const LayoutParams& params,
                  const StepOptions& options) {
  const std::size_t n = drawing.size();
  const std::size_t dim = drawing.dim();
  const std::size_t hdim = dim - 1;
  const auto& cover_pairs = order.covers().pairs;
  std::vector<double> diff(hdim);

  auto compute = [&](const Drawing& d, std::size_t t, std::vector<double>& forces) {
    for (const auto& [lo, hi] : cover_pairs) {
      const double v = detail::vert_component(d.point(lo).data(), d.point(hi).data(), dim, params.c_vert);
      forces[lo * dim + hdim] += v;
      forces[hi * dim + hdim] -= v;
    }
    for (std::size_t a = 0; a < n; ++a) {
      const double* pa = d.point(a).data();
      double* fa = forces.data() + a * dim;
      for (std::size_t b = a + 1; b < n; ++b) {
        const double* pb = d.point(b).data();
        double* fb = forces.data() + b * dim;
        bool coincident = true;
        for (std::size_t k = 0; k < hdim; ++k) {
          diff[k] = pa[k] - pb[k];
          coincident = coincident && diff[k] == 0.0;
        }
        if (order.comparable(a, b)) {
          detail::attr_node_from_offset(diff.data(), hdim, params.c_hor, fa, 1.0);
          detail::attr_node_from_offset(diff.data(), hdim, params.c_hor, fb, -1.0);
        } else {
          if (coincident) jitter_vector(params.seed, jitter_salt(options.cycle, t, Step::kNode), a, b, diff.data(), hdim);
          detail::rep_node_from_offset(diff.data(), hdim, params.c_hor, fa, 1.0);
          detail::rep_node_from_offset(diff.data(), hdim, params.c_hor, fb, -1.0);
        }
      }
    }
  };
  return iterate(order, std::move(drawing), params, options, Step::kNode, compute);
}

CandidateSets candidate_sets(const OrderedSet& order, const Drawing& drawing, const LayoutParams& params) {
  const std::size_t dim = drawing.dim();
  const auto& covers = order.covers();
  const auto& edges = covers.pairs;
  const std::size_t m = edges.size();
  CandidateSets sets;

  // Directions and lengths of all cover lines, oriented lower -> upper.
  std::vector<double> dir(m * dim);
  std::vector<double> len(m);
  for (std::size_t e = 0; e < m; ++e) {
    const auto pa = drawing.point(edges[e].first);
    const auto pb = drawing.point(edges[e].second);
    double sq = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      dir[e * dim + k] = pb[k] - pa[k];
      sq += dir[e * dim + k] * dir[e * dim + k];
    }
    len[e] = std::sqrt(sq);
  }
  for (std::size_t e = 0; e < m; ++e) {
    const auto [a, b] = edges[e];
    for (std::size_t f = e + 1; f < m; ++f) {
      const auto [c, d] = edges[f];
      if (a == c || a == d || b == c || b == d) continue;
      double dot = 0.0;
      for (std::size_t k = 0; k < dim; ++k) dot += dir[e * dim + k] * dir[f * dim + k];
      const double d_cos = 1.0 - dot / (len[e] * len[f]);
      if (d_cos < params.c_par) sets.parallel.push_back({e, f});
    }
  }

  auto collect_angles = [&](std::size_t shared, const std::vector<std::size_t>& partners) {
    const double* pc = drawing.point(shared).data();
    for (std::size_t i = 0; i < partners.size(); ++i) {
      for (std::size_t j = i + 1; j < partners.size(); ++j) {
        const double* pa = drawing.point(partners[i]).data();
        const double* pb = drawing.point(partners[j]).data();
        if (detail::cos_distance(pa, pc, pb, pc, dim) < params.c_ang) {
          sets.angles.push_back({partners[i], partners[j], shared});
        }
      }
    }
  };
  for (std::size_t c = 0; c < order.size(); ++c) {
    collect_angles(c, covers.lower[c]);
    collect_angles(c, covers.upper[c]);
  }

  for (std::size_t e = 0; e < m; ++e) {
    const auto [b, c] = edges[e];
    const double* pb = drawing.point(b).data();
    const double* pc = drawing.point(c).data();
    for (std::size_t a = 0; a < order.size(); ++a) {
      if (a == b || a == c) continue;
      if (detail::segment_distance(drawing.point(a).data(), pb, pc, dim) < params.c_dist) {
        sets.near.push_back({a, e});
      }
    }
  }
  return sets;
}

Drawing line_step(const OrderedSet& order, Drawing drawing, const LayoutParams& params,
                  const StepOptions& options) {
  const std::size_t dim = drawing.dim();
  const auto& edges = order.covers().pairs;
  CandidateSets sets;
  std::vector<double> jittered(dim);

  auto compute = [&](const Drawing& d, std::size_t t, std::vector<double>& forces) {
    if (t % params.cache_interval == 0) sets = candidate_sets(order, d, params);
    auto p = [&](std::size_t a) { return d.point(a).data(); };
    auto f = [&](std::size_t a) { return forces.data() + a * dim; };

    for (const auto& [e1, e2] : sets.parallel) {
      const auto [a, b] = edges[e1];
      const auto [c, dd] = edges[e2];
      detail::par(p(a), p(b), p(c), p(dd), dim, params.c_par, f(a), 1.0);
      detail::par(p(a), p(b), p(c), p(dd), dim, params.c_par, f(b), -1.0);
      detail::par(p(c), p(dd), p(a), p(b), dim, params.c_par, f(c), 1.0);
      detail::par(p(c), p(dd), p(a), p(b), dim, params.c_par, f(dd), -1.0);
    }
    for (const auto& [a, b, c] : sets.angles) {
      detail::ang(p(a), p(b), p(c), dim, params.c_ang, f(a), 1.0);
      detail::ang(p(b), p(a), p(c), dim, params.c_ang, f(b), 1.0);
    }
    for (const auto& [a, e] : sets.near) {
      const auto [b, c] = edges[e];
      const double* pa = p(a);
      double seg = detail::segment_distance(pa, p(b), p(c), dim);
      if (seg == 0.0) {
        jitter_vector(params.seed, jitter_salt(options.cycle, t, Step::kLine), a, e, jittered.data(), dim);
        for (std::size_t k = 0; k < dim; ++k) jittered[k] += pa[k];
        pa = jittered.data();
        seg = detail::segment_distance(pa, p(b), p(c), dim);
        if (seg == 0.0) continue;
      }
      detail::dist_with(pa, p(b), p(c), dim, seg, f(a), 1.0);
      detail::dist_with(pa, p(b), p(c), dim, seg, f(b), -0.5);
      detail::dist_with(pa, p(b), p(c), dim, seg, f(c), -0.5);
    }
  };
  return iterate(order, std::move(drawing), params, options, Step::kLine, compute);
}

LayoutResult redraw_layout(const OrderedSet& order, const LayoutParams& params, const RunOptions& options) {
  params.validate();
  Rng rng(params.seed);
  LayoutResult result;
  std::size_t dim = params.initial_dim;
  Drawing drawing = initial_drawing(order, dim, rng);

  for (std::size_t cycle = 0;; ++cycle) {
    StepStats stats;
    StepOptions step_options{options.on_progress, cycle, &stats};
    drawing = node_step(order, std::move(drawing), params, step_options);
    result.iterations += stats.iterations;
    drawing = line_step(order, std::move(drawing), params, step_options);
    result.iterations += stats.iterations;
    result.cycles = cycle + 1;
    if (dim <= 2) break;
    drawing = dimension_reduction(drawing);
    --dim;
    if (options.on_progress) options.on_progress(ProgressEvent{cycle, dim, Step::kReduction, 0, 0.0, &drawing});
  }

  for (std::size_t a = 0; a < drawing.size(); ++a) {
    auto p = drawing.point(a);
    for (std::size_t k = 0; k + 1 < p.size(); ++k) p[k] *= params.horizontal_scale;
  }
  result.drawing = std::move(drawing);
  return result;
}

bool satisfies_vertical_constraint(const OrderedSet& order, const Drawing& drawing) {
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = 0; b < order.size(); ++b) {
      if (order.less(a, b) && !(drawing.y(a) < drawing.y(b))) return false;
    }
  }
  return true;
}

}  // namespace redraw
