#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "redraw/geometry.hpp"
#include "redraw/layout.hpp"
#include "redraw/order.hpp"
#include "redraw/random.hpp"

namespace redraw {

/// Constants of Freese's lattice layout. K, epsilon and damping have the same
/// meaning as in LayoutParams.
struct FreeseParams {
  double c_attr = 1.0;
  double c_rep = 1.0;
  std::size_t max_iterations = 1000;
  double epsilon = 0.0025;
  double damping = 0.001;
  std::uint64_t seed = kDefaultSeed;

  void validate() const;
};

/// Length of the longest chain from a minimal element up to each element.
std::vector<int> heights(const OrderedSet& order);
/// Length of the longest chain from each element up to a maximal element.
std::vector<int> depths(const OrderedSet& order);
/// rank(a) = height(a) - depth(a); strictly monotone along <.
std::vector<int> rank_assignment(const OrderedSet& order);

/// Three-dimensional force layout with vertical coordinates fixed to rank,
/// followed by a PCA projection of the two horizontal axes onto one. The
/// output's y-coordinates are exactly the ranks.
Drawing freese_layout(const OrderedSet& order, const FreeseParams& params, Rng& rng,
                      const StepOptions& options = {});

inline Drawing freese_layout(const OrderedSet& order, const FreeseParams& params) {
  Rng rng(params.seed);
  return freese_layout(order, params, rng);
}

}  // namespace redraw
