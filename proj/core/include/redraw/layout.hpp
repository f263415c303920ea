#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "redraw/geometry.hpp"
#include "redraw/order.hpp"
#include "redraw/random.hpp"

namespace redraw {

inline constexpr std::uint64_t kDefaultSeed = 20230401;

/// Tunable constants of the layout. Defaults are the recommended values.
struct LayoutParams {
  std::size_t max_iterations = 1000;  ///< K, per node or line step
  double epsilon = 0.0025;            ///< stop once max_a |F_a| <= epsilon
  double damping = 0.001;             ///< delta, step length per unit force
  double c_vert = 1.0;
  double c_hor = 5.0;
  double c_par = 0.005;
  double c_ang = 0.05;
  double c_dist = 1.0;
  std::size_t initial_dim = 5;
  double horizontal_scale = 0.5;  ///< applied to the final 2D drawing
  std::uint64_t seed = kDefaultSeed;
  std::size_t cache_interval = 1;  ///< line step recomputes its candidate sets every k-th iteration

  /// Throws redraw::Error if a constant is out of range.
  void validate() const;
};

enum class Step { kNode, kLine, kReduction };

const char* to_string(Step step);

struct ProgressEvent {
  std::size_t cycle = 0;      ///< 0-based cycle index
  std::size_t dim = 0;        ///< dimension of `drawing`
  Step step = Step::kNode;
  std::size_t iteration = 0;  ///< 0-based iteration within the step
  double max_force = 0.0;     ///< max_a |F_a| that produced this update
  const Drawing* drawing = nullptr;  ///< state after the update
};

using ProgressHook = std::function<void(const ProgressEvent&)>;

struct StepStats {
  std::size_t iterations = 0;  ///< number of position updates performed
  double max_force = 0.0;      ///< max force at the last evaluation
  bool converged = false;      ///< stopped because max force <= epsilon
};

struct StepOptions {
  ProgressHook on_iteration;  ///< called after every position update
  std::size_t cycle = 0;
  StepStats* stats = nullptr;
};

/// Vertical coordinate from a random linear extension (0-based position),
/// every horizontal coordinate uniform in [-1, 1].
Drawing initial_drawing(const OrderedSet& order, std::size_t dim, Rng& rng);

/// Clamps `proposed_y` for element a into
/// [max lower-cover y + c_vert/10, min upper-cover y - c_vert/10] measured on
/// `current`. When that interval is empty but the covers still leave room,
/// the midpoint of the open gap is used. Throws InfeasibleClamp when the
/// covers of a are already out of order.
double clamp_vertical(const OrderedSet& order, const Drawing& current, std::size_t a, double proposed_y,
                      double c_vert);

/// Returns `proposed` with its vertical coordinate clamped by clamp_vertical.
Vec overshooting_protection(const OrderedSet& order, const Drawing& current, std::size_t a, Point proposed,
                            double c_vert);

/// Node step: vertical cover springs, attraction of comparable and
/// repulsion of incomparable pairs. All forces of an iteration are computed
/// from the same snapshot; moves are then applied element by element through
/// overshooting protection against the already-updated positions.
Drawing node_step(const OrderedSet& order, Drawing drawing, const LayoutParams& params,
                  const StepOptions& options = {});

/// Cover line given as an index into order.covers().pairs.
struct EdgePair {
  std::size_t first = 0;
  std::size_t second = 0;
  bool operator==(const EdgePair&) const = default;
};

/// Lines (a, shared) and (b, shared) meeting at a common endpoint.
struct SharedEndpoint {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t shared = 0;
  bool operator==(const SharedEndpoint&) const = default;
};

struct NodeEdge {
  std::size_t node = 0;
  std::size_t edge = 0;
  bool operator==(const NodeEdge&) const = default;
};

struct CandidateSets {
  std::vector<EdgePair> parallel;       ///< A: disjoint cover lines with d_cos < c_par
  std::vector<SharedEndpoint> angles;   ///< B: lines sharing an endpoint with d_cos < c_ang
  std::vector<NodeEdge> near;           ///< C: element closer than c_dist to a non-incident line

  bool empty() const noexcept { return parallel.empty() && angles.empty() && near.empty(); }
  bool operator==(const CandidateSets&) const = default;
};

CandidateSets candidate_sets(const OrderedSet& order, const Drawing& drawing, const LayoutParams& params);

/// Line step: parallelising, angle and node-line distance forces over the
/// candidate sets, recomputed every params.cache_interval iterations.
Drawing line_step(const OrderedSet& order, Drawing drawing, const LayoutParams& params,
                  const StepOptions& options = {});

/// Result of a full layout run.
struct LayoutResult {
  Drawing drawing;  ///< final 2D drawing
  std::size_t cycles = 0;
  std::size_t iterations = 0;  ///< total position updates over all steps
};

struct RunOptions {
  ProgressHook on_progress;  ///< per iteration of every step, plus once per reduction
};

/// Full pipeline: random drawing in initial_dim dimensions, then cycles of
/// node step, line step and (above two dimensions) PCA reduction, ending
/// with the horizontal scaling of the 2D result.
LayoutResult redraw_layout(const OrderedSet& order, const LayoutParams& params, const RunOptions& options = {});

inline Drawing redraw(const OrderedSet& order, const LayoutParams& params) {
  return redraw_layout(order, params).drawing;
}

/// True iff y_a < y_b for every a < b.
bool satisfies_vertical_constraint(const OrderedSet& order, const Drawing& drawing);

}  // namespace redraw
