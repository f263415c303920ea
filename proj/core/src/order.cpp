#include "redraw/order.hpp"

#include <algorithm>
#include <bit>

#include "redraw/errors.hpp"

namespace redraw {

const char* to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::kReflexivity: return "reflexivity";
    case Axiom::kAntisymmetry: return "antisymmetry";
    case Axiom::kTransitivity: return "transitivity";
  }
  return "unknown";
}

namespace {

std::unordered_map<std::string, std::size_t> build_index(const std::vector<std::string>& ids) {
  std::unordered_map<std::string, std::size_t> index;
  index.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!index.emplace(ids[i], i).second) throw Error("duplicate element id '" + ids[i] + "'");
  }
  return index;
}

void check_pairs(std::size_t n, std::span<const Pair> pairs) {
  for (const auto& [a, b] : pairs) {
    if (a >= n || b >= n) throw Error("relation pair refers to an element index out of range");
  }
}

// Calls fn(i) for every set bit of a packed row, in ascending order.
template <typename Fn>
void for_each_bit(std::span<const std::uint64_t> row, Fn&& fn) {
  for (std::size_t w = 0; w < row.size(); ++w) {
    std::uint64_t word = row[w];
    while (word != 0) {
      const int bit = std::countr_zero(word);
      fn(w * 64 + static_cast<std::size_t>(bit));
      word &= word - 1;
    }
  }
}

BitMatrix transpose(const BitMatrix& m) {
  BitMatrix t(m.size());
  for (std::size_t r = 0; r < m.size(); ++r) {
    for_each_bit(m.row(r), [&](std::size_t c) { t.set(c, r); });
  }
  return t;
}

// Returns the unique element e of `bounds` whose `cone` row contains all of
// `bounds` (the least upper bound when cone = up-sets, greatest lower bound
// when cone = down-sets).
std::optional<std::size_t> extremal_bound(const BitMatrix& cone, std::span<const std::uint64_t> bounds) {
  std::optional<std::size_t> found;
  for_each_bit(bounds, [&](std::size_t candidate) {
    if (found) return;
    const auto row = cone.row(candidate);
    for (std::size_t w = 0; w < bounds.size(); ++w) {
      if ((bounds[w] & ~row[w]) != 0) return;
    }
    found = candidate;
  });
  return found;
}

std::vector<std::uint64_t> intersect_rows(const BitMatrix& m, std::size_t a, std::size_t b) {
  const auto ra = m.row(a);
  const auto rb = m.row(b);
  std::vector<std::uint64_t> out(ra.size());
  for (std::size_t w = 0; w < out.size(); ++w) out[w] = ra[w] & rb[w];
  return out;
}

}  // namespace

OrderedSet::OrderedSet(std::vector<std::string> ids, BitMatrix leq)
    : ids_(std::move(ids)), index_(build_index(ids_)), leq_(std::move(leq)) {
  if (leq_.size() != ids_.size()) throw Error("relation size does not match element count");
  covers_ = cover_relation(leq_);
}

std::optional<std::size_t> OrderedSet::index_of(const std::string& id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

OrderedSet validate_order(std::vector<std::string> ids, std::span<const Pair> leq) {
  const std::size_t n = ids.size();
  check_pairs(n, leq);
  BitMatrix m(n);
  for (const auto& [a, b] : leq) m.set(a, b);

  for (std::size_t a = 0; a < n; ++a) {
    if (!m.test(a, a)) {
      throw AxiomViolation(Axiom::kReflexivity, {a}, "reflexivity violated: (" + ids[a] + "," + ids[a] + ") missing");
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (m.test(a, b) && m.test(b, a)) {
        throw AxiomViolation(Axiom::kAntisymmetry, {a, b},
                             "antisymmetry violated: " + ids[a] + " <= " + ids[b] + " <= " + ids[a]);
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    const auto row_a = m.row(a);
    for (std::size_t b = 0; b < n; ++b) {
      if (b == a || !m.test(a, b)) continue;
      const auto row_b = m.row(b);
      for (std::size_t w = 0; w < row_b.size(); ++w) {
        const std::uint64_t missing = row_b[w] & ~row_a[w];
        if (missing != 0) {
          const std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(missing));
          throw AxiomViolation(Axiom::kTransitivity, {a, b, c},
                               "transitivity violated: " + ids[a] + " <= " + ids[b] + " <= " + ids[c] +
                                   " but not " + ids[a] + " <= " + ids[c]);
        }
      }
    }
  }
  return OrderedSet(std::move(ids), std::move(m));
}

BitMatrix transitive_closure(std::size_t n, std::span<const Pair> pairs) {
  check_pairs(n, pairs);
  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& [a, b] : pairs) {
    if (a == b) continue;
    succ[a].push_back(b);
    ++indegree[b];
  }

  // Kahn's algorithm; leftovers lie on or downstream of a cycle.
  std::vector<std::size_t> topo;
  topo.reserve(n);
  for (std::size_t a = 0; a < n; ++a) {
    if (indegree[a] == 0) topo.push_back(a);
  }
  for (std::size_t i = 0; i < topo.size(); ++i) {
    for (const std::size_t b : succ[topo[i]]) {
      if (--indegree[b] == 0) topo.push_back(b);
    }
  }

  if (topo.size() != n) {
    // Every leftover node has a leftover predecessor, so walking backwards
    // from any of them must revisit a node.
    std::vector<std::vector<std::size_t>> pred(n);
    for (std::size_t a = 0; a < n; ++a) {
      if (indegree[a] == 0) continue;
      for (const std::size_t b : succ[a]) {
        if (indegree[b] != 0) pred[b].push_back(a);
      }
    }
    std::size_t start = 0;
    while (indegree[start] == 0) ++start;
    std::vector<std::size_t> position(n, n);
    std::vector<std::size_t> walk;
    std::size_t v = start;
    while (position[v] == n) {
      position[v] = walk.size();
      walk.push_back(v);
      v = *std::min_element(pred[v].begin(), pred[v].end());
    }
    std::vector<std::size_t> cycle(walk.begin() + static_cast<std::ptrdiff_t>(position[v]), walk.end());
    std::reverse(cycle.begin(), cycle.end());
    // Rotate so the cycle starts at its smallest index.
    std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
    throw CycleDetected(std::move(cycle), "relation contains a directed cycle");
  }

  BitMatrix closure(n);
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const std::size_t a = *it;
    closure.set(a, a);
    auto row_a = closure.row(a);
    for (const std::size_t b : succ[a]) {
      const auto row_b = closure.row(b);
      for (std::size_t w = 0; w < row_a.size(); ++w) row_a[w] |= row_b[w];
    }
  }
  return closure;
}

OrderedSet order_from_pairs(std::vector<std::string> ids, std::span<const Pair> pairs) {
  BitMatrix closure = transitive_closure(ids.size(), pairs);
  return OrderedSet(std::move(ids), std::move(closure));
}

CoverRelation cover_relation(const BitMatrix& leq) {
  const std::size_t n = leq.size();
  CoverRelation result;
  result.upper.resize(n);
  result.lower.resize(n);
  std::vector<std::uint64_t> above(leq.words_per_row());
  for (std::size_t a = 0; a < n; ++a) {
    // above = union of the strict up-sets of all strict successors of a.
    std::fill(above.begin(), above.end(), 0);
    const auto row_a = leq.row(a);
    for_each_bit(row_a, [&](std::size_t b) {
      if (b == a) return;
      const auto row_b = leq.row(b);
      for (std::size_t w = 0; w < above.size(); ++w) {
        std::uint64_t word = row_b[w];
        if (w == b / 64) word &= ~(std::uint64_t{1} << (b % 64));
        above[w] |= word;
      }
    });
    for_each_bit(row_a, [&](std::size_t c) {
      if (c == a || ((above[c / 64] >> (c % 64)) & 1U)) return;
      result.pairs.emplace_back(a, c);
      result.upper[a].push_back(c);
      result.lower[c].push_back(a);
    });
  }
  return result;
}

std::vector<std::size_t> random_linear_extension(const OrderedSet& order, Rng& rng) {
  const std::size_t n = order.size();
  const auto& covers = order.covers();
  std::vector<std::size_t> remaining_lower(n);
  std::vector<std::size_t> available;
  for (std::size_t a = 0; a < n; ++a) {
    remaining_lower[a] = covers.lower[a].size();
    if (remaining_lower[a] == 0) available.push_back(a);
  }
  std::vector<std::size_t> sequence;
  sequence.reserve(n);
  while (!available.empty()) {
    const auto pick = static_cast<std::ptrdiff_t>(rng.below(available.size()));
    const std::size_t a = available[static_cast<std::size_t>(pick)];
    available.erase(available.begin() + pick);
    sequence.push_back(a);
    for (const std::size_t b : covers.upper[a]) {
      if (--remaining_lower[b] == 0) available.push_back(b);
    }
  }
  return sequence;
}

bool is_linear_extension(const OrderedSet& order, std::span<const std::size_t> sequence) {
  const std::size_t n = order.size();
  if (sequence.size() != n) return false;
  std::vector<std::size_t> position(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (sequence[i] >= n || position[sequence[i]] != n) return false;
    position[sequence[i]] = i;
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (order.less(a, b) && position[a] >= position[b]) return false;
    }
  }
  return true;
}

std::optional<std::size_t> meet(const OrderedSet& order, std::size_t a, std::size_t b) {
  const BitMatrix down = transpose(order.relation());
  const auto lower_bounds = intersect_rows(down, a, b);
  return extremal_bound(down, lower_bounds);
}

std::optional<std::size_t> join(const OrderedSet& order, std::size_t a, std::size_t b) {
  const auto upper_bounds = intersect_rows(order.relation(), a, b);
  return extremal_bound(order.relation(), upper_bounds);
}

namespace {

struct Tables {
  std::vector<std::size_t> meet;
  std::vector<std::size_t> join;
};

std::optional<Tables> compute_tables(const OrderedSet& order) {
  const std::size_t n = order.size();
  if (n == 0) return std::nullopt;
  const BitMatrix& up = order.relation();
  const BitMatrix down = transpose(up);
  Tables t;
  t.meet.assign(n * n, 0);
  t.join.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      const auto m = extremal_bound(down, intersect_rows(down, a, b));
      const auto j = extremal_bound(up, intersect_rows(up, a, b));
      if (!m || !j) return std::nullopt;
      t.meet[a * n + b] = t.meet[b * n + a] = *m;
      t.join[a * n + b] = t.join[b * n + a] = *j;
    }
  }
  return t;
}

}  // namespace

bool is_lattice(const OrderedSet& order) { return compute_tables(order).has_value(); }

LatticeTables::LatticeTables(const OrderedSet& order) : n_(order.size()) {
  auto tables = compute_tables(order);
  if (!tables) throw NotALattice("ordered set is not a lattice");
  meet_ = std::move(tables->meet);
  join_ = std::move(tables->join);
  bottom_ = 0;
  top_ = 0;
  for (std::size_t a = 1; a < n_; ++a) {
    bottom_ = meet_[bottom_ * n_ + a];
    top_ = join_[top_ * n_ + a];
  }
}

}  // namespace redraw
