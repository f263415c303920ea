#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace redraw {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Axiom { kReflexivity, kAntisymmetry, kTransitivity };

const char* to_string(Axiom axiom);

/// The supplied relation is not a partial order. `witness` holds the element
/// indices of the first offending pair (reflexivity: one index, antisymmetry:
/// two, transitivity: the triple a, b, c with a<=b, b<=c but not a<=c).
class AxiomViolation : public Error {
 public:
  AxiomViolation(Axiom axiom, std::vector<std::size_t> witness, const std::string& what)
      : Error(what), axiom_(axiom), witness_(std::move(witness)) {}

  Axiom axiom() const noexcept { return axiom_; }
  const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  Axiom axiom_;
  std::vector<std::size_t> witness_;
};

/// A directed cycle among distinct elements; `cycle` lists it in edge order.
class CycleDetected : public Error {
 public:
  CycleDetected(std::vector<std::size_t> cycle, const std::string& what)
      : Error(what), cycle_(std::move(cycle)) {}

  const std::vector<std::size_t>& cycle() const noexcept { return cycle_; }

 private:
  std::vector<std::size_t> cycle_;
};

class DegenerateGeometry : public Error {
 public:
  using Error::Error;
};

/// Overshooting protection found an empty vertical interval, i.e. the drawing
/// already violated the vertical constraint.
class InfeasibleClamp : public Error {
 public:
  using Error::Error;
};

class NotALattice : public Error {
 public:
  using Error::Error;
};

class SizeLimitExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  /// 1-based line number of the offending input line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace redraw
