#pragma once

// Random inputs and corpus access shared by the unit and acceptance tests.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "redraw/context.hpp"
#include "redraw/geometry.hpp"
#include "redraw/io.hpp"
#include "redraw/order.hpp"
#include "redraw/random.hpp"

namespace testsupport {

inline std::vector<std::string> numbered_ids(std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("e" + std::to_string(i));
  return ids;
}

/// Random order on n elements: a hidden random permutation fixes a linear
/// order and every compatible pair becomes a generator with probability p.
inline redraw::OrderedSet random_order(std::size_t n, double p, redraw::Rng& rng) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  std::vector<redraw::Pair> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.uniform01() < p) pairs.emplace_back(perm[i], perm[j]);
    }
  }
  return redraw::order_from_pairs(numbered_ids(n), pairs);
}

inline redraw::Drawing random_drawing(std::size_t n, std::size_t dim, redraw::Rng& rng, double extent = 1.0) {
  redraw::Drawing d(n, dim);
  for (double& v : d.coords()) v = rng.uniform(-extent, extent);
  return d;
}

inline redraw::Vec random_point(std::size_t dim, redraw::Rng& rng, double extent = 1.0) {
  redraw::Vec p(dim);
  for (double& v : p) v = rng.uniform(-extent, extent);
  return p;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct CorpusEntry {
  std::string name;
  redraw::OrderedSet order;
};

inline std::filesystem::path corpus_dir() { return REDRAW_CORPUS_DIR; }

/// Every order shipped in the corpus directory, sorted by file name.
inline std::vector<CorpusEntry> load_corpus() {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(corpus_dir())) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<CorpusEntry> out;
  for (const auto& f : files) {
    const auto ext = f.extension();
    if (ext == ".edges") {
      out.push_back({f.filename().string(), redraw::parse_cover_edges(slurp(f))});
    } else if (ext == ".cxt") {
      out.push_back({f.filename().string(), redraw::concept_lattice(redraw::parse_cxt(slurp(f)))});
    }
  }
  return out;
}

inline redraw::OrderedSet load_corpus_order(const std::string& file) {
  const auto path = corpus_dir() / file;
  if (path.extension() == ".cxt") return redraw::concept_lattice(redraw::parse_cxt(slurp(path)));
  return redraw::parse_cover_edges(slurp(path));
}

inline redraw::OrderedSet chain(std::size_t n) {
  std::vector<redraw::Pair> pairs;
  for (std::size_t i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
  return redraw::order_from_pairs(numbered_ids(n), pairs);
}

inline redraw::OrderedSet antichain(std::size_t n) { return redraw::order_from_pairs(numbered_ids(n), {}); }

/// Bottom 0, atoms 1..k, top k+1.
inline redraw::OrderedSet m_lattice(std::size_t k) {
  std::vector<redraw::Pair> pairs;
  for (std::size_t i = 1; i <= k; ++i) {
    pairs.emplace_back(0, i);
    pairs.emplace_back(i, k + 1);
  }
  return redraw::order_from_pairs(numbered_ids(k + 2), pairs);
}

/// Subsets of {0..k-1} as bitmasks ordered by inclusion.
inline redraw::OrderedSet boolean_lattice(std::size_t k) {
  const std::size_t n = std::size_t{1} << k;
  std::vector<redraw::Pair> pairs;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t i = 0; i < k; ++i) {
      if (!(s & (std::size_t{1} << i))) pairs.emplace_back(s, s | (std::size_t{1} << i));
    }
  }
  return redraw::order_from_pairs(numbered_ids(n), pairs);
}

}  // namespace testsupport
