#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "redraw/random.hpp"

namespace redraw {

using Pair = std::pair<std::size_t, std::size_t>;

/// Square boolean matrix stored as packed 64-bit rows.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  std::size_t size() const noexcept { return n_; }
  std::size_t words_per_row() const noexcept { return words_; }

  bool test(std::size_t row, std::size_t col) const noexcept {
    return (bits_[row * words_ + col / 64] >> (col % 64)) & 1U;
  }
  void set(std::size_t row, std::size_t col) noexcept {
    bits_[row * words_ + col / 64] |= std::uint64_t{1} << (col % 64);
  }
  void reset(std::size_t row, std::size_t col) noexcept {
    bits_[row * words_ + col / 64] &= ~(std::uint64_t{1} << (col % 64));
  }

  std::span<const std::uint64_t> row(std::size_t r) const noexcept {
    return {bits_.data() + r * words_, words_};
  }
  std::span<std::uint64_t> row(std::size_t r) noexcept { return {bits_.data() + r * words_, words_}; }

  bool operator==(const BitMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Cover pairs (lower, upper) plus per-element adjacency.
struct CoverRelation {
  std::vector<Pair> pairs;
  std::vector<std::vector<std::size_t>> upper;  ///< upper[a]: all b with a covered by b
  std::vector<std::vector<std::size_t>> lower;  ///< lower[a]: all b covered by a
};

/// A finite partial order over opaque string ids. Elements are addressed by
/// position; ids only matter at the I/O boundary. Immutable once built.
class OrderedSet {
 public:
  OrderedSet() = default;

  /// Wraps a relation that is already known to be a partial order. Use
  /// validate_order() or transitive_closure() for untrusted input.
  OrderedSet(std::vector<std::string> ids, BitMatrix leq);

  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }

  const std::vector<std::string>& ids() const noexcept { return ids_; }
  const std::string& id(std::size_t a) const { return ids_.at(a); }
  std::optional<std::size_t> index_of(const std::string& id) const;

  bool leq(std::size_t a, std::size_t b) const noexcept { return leq_.test(a, b); }
  bool less(std::size_t a, std::size_t b) const noexcept { return a != b && leq_.test(a, b); }
  bool comparable(std::size_t a, std::size_t b) const noexcept {
    return leq_.test(a, b) || leq_.test(b, a);
  }

  const BitMatrix& relation() const noexcept { return leq_; }
  const CoverRelation& covers() const noexcept { return covers_; }

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> index_;
  BitMatrix leq_;
  CoverRelation covers_;
};

/// Checks reflexivity, antisymmetry and transitivity (in that order) and
/// throws AxiomViolation for the first failure found.
OrderedSet validate_order(std::vector<std::string> ids, std::span<const Pair> leq);

/// Smallest reflexive, transitive relation containing `pairs`.
/// Throws CycleDetected if the pairs contain a directed cycle.
BitMatrix transitive_closure(std::size_t n, std::span<const Pair> pairs);

/// Builds an order from a generating set of strict pairs (typically covers).
OrderedSet order_from_pairs(std::vector<std::string> ids, std::span<const Pair> pairs);

CoverRelation cover_relation(const BitMatrix& leq);
inline CoverRelation cover_relation(const OrderedSet& order) { return cover_relation(order.relation()); }

/// Repeatedly picks a uniformly random minimal element of the remainder.
/// Every linear extension has nonzero probability; the distribution is not
/// uniform over extensions.
std::vector<std::size_t> random_linear_extension(const OrderedSet& order, Rng& rng);

bool is_linear_extension(const OrderedSet& order, std::span<const std::size_t> sequence);

std::optional<std::size_t> meet(const OrderedSet& order, std::size_t a, std::size_t b);
std::optional<std::size_t> join(const OrderedSet& order, std::size_t a, std::size_t b);

bool is_lattice(const OrderedSet& order);

/// Precomputed meet/join tables. Construction throws NotALattice.
class LatticeTables {
 public:
  explicit LatticeTables(const OrderedSet& order);

  std::size_t meet(std::size_t a, std::size_t b) const noexcept { return meet_[a * n_ + b]; }
  std::size_t join(std::size_t a, std::size_t b) const noexcept { return join_[a * n_ + b]; }
  std::size_t bottom() const noexcept { return bottom_; }
  std::size_t top() const noexcept { return top_; }

 private:
  std::size_t n_;
  std::vector<std::size_t> meet_;
  std::vector<std::size_t> join_;
  std::size_t bottom_ = 0;
  std::size_t top_ = 0;
};

}  // namespace redraw
