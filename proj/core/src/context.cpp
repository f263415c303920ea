#include "redraw/context.hpp"

#include <charconv>
#include <unordered_set>

#include "redraw/errors.hpp"

namespace redraw {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool parse_count(std::string_view s, std::size_t& out) {
  s = trim(s);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

using Bits = std::vector<std::uint64_t>;

bool bit(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1U; }
void set_bit(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }

class ClosureOperator {
 public:
  explicit ClosureOperator(const FormalContext& ctx)
      : ctx_(ctx), obj_words_((ctx.object_count() + 63) / 64), attr_words_((ctx.attribute_count() + 63) / 64) {
    object_rows_.assign(ctx.object_count(), Bits(attr_words_, 0));
    attribute_cols_.assign(ctx.attribute_count(), Bits(obj_words_, 0));
    for (std::size_t g = 0; g < ctx.object_count(); ++g) {
      for (std::size_t m = 0; m < ctx.attribute_count(); ++m) {
        if (ctx.incident(g, m)) {
          set_bit(object_rows_[g], m);
          set_bit(attribute_cols_[m], g);
        }
      }
    }
  }

  Bits extent(const Bits& intent) const {
    Bits ext(obj_words_, 0);
    for (std::size_t g = 0; g < ctx_.object_count(); ++g) set_bit(ext, g);
    for (std::size_t m = 0; m < ctx_.attribute_count(); ++m) {
      if (!bit(intent, m)) continue;
      for (std::size_t w = 0; w < obj_words_; ++w) ext[w] &= attribute_cols_[m][w];
    }
    return ext;
  }

  Bits intent(const Bits& extent) const {
    Bits in(attr_words_, 0);
    for (std::size_t m = 0; m < ctx_.attribute_count(); ++m) set_bit(in, m);
    for (std::size_t g = 0; g < ctx_.object_count(); ++g) {
      if (!bit(extent, g)) continue;
      for (std::size_t w = 0; w < attr_words_; ++w) in[w] &= object_rows_[g][w];
    }
    return in;
  }

  Bits close(const Bits& attributes) const { return intent(extent(attributes)); }

  std::size_t attr_words() const noexcept { return attr_words_; }

 private:
  const FormalContext& ctx_;
  std::size_t obj_words_;
  std::size_t attr_words_;
  std::vector<Bits> object_rows_;
  std::vector<Bits> attribute_cols_;
};

std::vector<std::size_t> members(const Bits& b, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (bit(b, i)) out.push_back(i);
  }
  return out;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += ',';
    out += parts[i];
  }
  return out;
}

}  // namespace

FormalContext::FormalContext(std::vector<std::string> objects, std::vector<std::string> attributes)
    : objects_(std::move(objects)),
      attributes_(std::move(attributes)),
      incidence_(objects_.size() * attributes_.size(), 0) {}

FormalContext parse_cxt(std::string_view text) {
  const auto lines = split_lines(text);
  std::size_t i = 0;
  if (lines.empty() || trim(lines[0]) != "B") throw ParseError(1, "expected header 'B'");
  ++i;

  std::size_t counts[2];
  std::size_t found = 0;
  bool named = false;
  while (found < 2) {
    if (i >= lines.size()) throw ParseError(i + 1, "missing object/attribute counts");
    const auto line = trim(lines[i]);
    if (parse_count(line, counts[found])) {
      ++found;
    } else if (found == 0 && (line.empty() || !named)) {
      named = named || !line.empty();
    } else {
      throw ParseError(i + 1, "expected a count");
    }
    ++i;
  }
  const std::size_t n_objects = counts[0];
  const std::size_t n_attributes = counts[1];
  while (i < lines.size() && trim(lines[i]).empty()) ++i;

  std::vector<std::string> names;
  names.reserve(n_objects + n_attributes);
  for (std::size_t k = 0; k < n_objects + n_attributes; ++k, ++i) {
    if (i >= lines.size()) throw ParseError(i + 1, "unexpected end of input while reading names");
    names.emplace_back(trim(lines[i]));
  }
  FormalContext ctx(std::vector<std::string>(names.begin(), names.begin() + static_cast<std::ptrdiff_t>(n_objects)),
                    std::vector<std::string>(names.begin() + static_cast<std::ptrdiff_t>(n_objects), names.end()));
  for (std::size_t g = 0; g < n_objects; ++g, ++i) {
    if (i >= lines.size()) throw ParseError(i + 1, "unexpected end of input: expected " + std::to_string(n_objects) +
                                                       " incidence rows, found " + std::to_string(g));
    const auto row = trim(lines[i]);
    if (row.size() != n_attributes) {
      throw ParseError(i + 1, "incidence row has " + std::to_string(row.size()) + " entries, expected " +
                                  std::to_string(n_attributes));
    }
    for (std::size_t m = 0; m < n_attributes; ++m) {
      const char c = row[m];
      if (c == 'X' || c == 'x') {
        ctx.set(g, m);
      } else if (c != '.') {
        throw ParseError(i + 1, std::string("invalid incidence character '") + c + "'");
      }
    }
  }
  for (; i < lines.size(); ++i) {
    if (!trim(lines[i]).empty()) throw ParseError(i + 1, "unexpected content after the incidence rows");
  }
  return ctx;
}

std::string write_cxt(const FormalContext& context) {
  std::string out = "B\n\n";
  out += std::to_string(context.object_count()) + "\n" + std::to_string(context.attribute_count()) + "\n\n";
  for (const auto& g : context.objects()) out += g + "\n";
  for (const auto& m : context.attributes()) out += m + "\n";
  for (std::size_t g = 0; g < context.object_count(); ++g) {
    for (std::size_t m = 0; m < context.attribute_count(); ++m) out += context.incident(g, m) ? 'X' : '.';
    out += '\n';
  }
  return out;
}

ConceptLattice build_concept_lattice(const FormalContext& context, std::size_t cap) {
  const ClosureOperator closure(context);
  const std::size_t n_attr = context.attribute_count();
  const std::size_t n_obj = context.object_count();

  std::vector<Bits> intents;
  Bits current = closure.close(Bits(closure.attr_words(), 0));
  intents.push_back(current);
  // NextClosure: the lectically next closed set after `current`.
  while (true) {
    bool advanced = false;
    for (std::size_t i = n_attr; i-- > 0;) {
      if (bit(current, i)) continue;
      Bits candidate(closure.attr_words(), 0);
      for (std::size_t j = 0; j < i; ++j) {
        if (bit(current, j)) set_bit(candidate, j);
      }
      set_bit(candidate, i);
      Bits closed = closure.close(candidate);
      bool same_prefix = true;
      for (std::size_t j = 0; j < i && same_prefix; ++j) same_prefix = bit(closed, j) == bit(current, j);
      if (!same_prefix) continue;
      current = std::move(closed);
      advanced = true;
      break;
    }
    if (!advanced) break;
    if (intents.size() >= cap) {
      throw SizeLimitExceeded("concept lattice exceeds the cap of " + std::to_string(cap) + " concepts");
    }
    intents.push_back(current);
  }

  ConceptLattice lattice;
  const std::size_t n = intents.size();
  std::vector<Bits> extents;
  extents.reserve(n);
  for (const auto& intent : intents) {
    extents.push_back(closure.extent(intent));
    lattice.concepts.push_back({members(extents.back(), n_obj), members(intent, n_attr)});
  }

  BitMatrix leq(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      bool subset = true;
      for (std::size_t w = 0; w < extents[a].size() && subset; ++w) subset = (extents[a][w] & ~extents[b][w]) == 0;
      if (subset) leq.set(a, b);
    }
  }

  // Reduced labeling: attribute m sits at the concept with extent m',
  // object g at the concept with intent g'.
  std::vector<std::vector<std::string>> attr_labels(n);
  std::vector<std::vector<std::string>> obj_labels(n);
  for (std::size_t m = 0; m < n_attr; ++m) {
    Bits single(closure.attr_words(), 0);
    set_bit(single, m);
    const Bits closed = closure.close(single);
    for (std::size_t c = 0; c < n; ++c) {
      if (intents[c] == closed) attr_labels[c].push_back(context.attributes()[m]);
    }
  }
  for (std::size_t g = 0; g < n_obj; ++g) {
    Bits single((n_obj + 63) / 64, 0);
    set_bit(single, g);
    const Bits intent = closure.intent(single);
    for (std::size_t c = 0; c < n; ++c) {
      if (intents[c] == intent) obj_labels[c].push_back(context.objects()[g]);
    }
  }

  std::vector<std::string> ids;
  std::unordered_set<std::string> used;
  for (std::size_t c = 0; c < n; ++c) {
    std::string id = (attr_labels[c].empty() && obj_labels[c].empty())
                         ? "c" + std::to_string(c)
                         : join(attr_labels[c]) + "|" + join(obj_labels[c]);
    if (used.count(id) != 0) id += "#" + std::to_string(c);
    used.insert(id);
    ids.push_back(std::move(id));
  }
  lattice.order = OrderedSet(std::move(ids), std::move(leq));
  return lattice;
}

}  // namespace redraw
