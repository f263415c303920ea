#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "redraw/order.hpp"

namespace redraw {

/// Objects x attributes incidence table.
class FormalContext {
 public:
  FormalContext() = default;
  FormalContext(std::vector<std::string> objects, std::vector<std::string> attributes);

  std::size_t object_count() const noexcept { return objects_.size(); }
  std::size_t attribute_count() const noexcept { return attributes_.size(); }
  const std::vector<std::string>& objects() const noexcept { return objects_; }
  const std::vector<std::string>& attributes() const noexcept { return attributes_; }

  bool incident(std::size_t object, std::size_t attribute) const {
    return incidence_[object * attributes_.size() + attribute] != 0;
  }
  void set(std::size_t object, std::size_t attribute, bool value = true) {
    incidence_[object * attributes_.size() + attribute] = value ? 1 : 0;
  }

  bool operator==(const FormalContext&) const = default;

 private:
  std::vector<std::string> objects_;
  std::vector<std::string> attributes_;
  std::vector<unsigned char> incidence_;
};

/// Parses the Burmeister format:
///
///     B
///     <optional context name>
///     <object count>
///     <attribute count>
///     <blank line>
///     <object names, one per line>
///     <attribute names, one per line>
///     <one row of X / . per object>
FormalContext parse_cxt(std::string_view text);
std::string write_cxt(const FormalContext& context);

struct Concept {
  std::vector<std::size_t> extent;  ///< object indices, ascending
  std::vector<std::size_t> intent;  ///< attribute indices, ascending
};

struct ConceptLattice {
  std::vector<Concept> concepts;  ///< in lectic order of intents
  OrderedSet order;               ///< concepts ordered by extent inclusion
};

inline constexpr std::size_t kDefaultConceptCap = 10000;

/// Enumerates all formal concepts with NextClosure. Element ids use the
/// reduced labeling "attributes|objects" (comma separated); concepts that
/// introduce nothing are named c<index>. Throws SizeLimitExceeded when more
/// than `cap` concepts exist.
ConceptLattice build_concept_lattice(const FormalContext& context, std::size_t cap = kDefaultConceptCap);

inline OrderedSet concept_lattice(const FormalContext& context, std::size_t cap = kDefaultConceptCap) {
  return build_concept_lattice(context, cap).order;
}

}  // namespace redraw
