#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "redraw/geometry.hpp"

namespace redraw {

/// Eigenpairs of a symmetric matrix, eigenvalues in descending order.
/// vectors[k] is the unit eigenvector for values[k], sign-normalised so its
/// largest-magnitude component is positive.
struct EigenDecomposition {
  Vec values;
  std::vector<Vec> vectors;
};

/// Cyclic Jacobi rotations on a dense symmetric n x n matrix given in
/// row-major order. Iterates until the off-diagonal Frobenius norm drops
/// below `tolerance` times the matrix norm.
EigenDecomposition symmetric_eigen(std::span<const double> matrix, std::size_t n, double tolerance = 1e-12);

/// Translates the drawing so that every coordinate has mean zero.
Drawing center(const Drawing& drawing);

/// Full result of one reduction step.
struct Reduction {
  Drawing drawing;         ///< dim - 1 dimensional, centered
  std::vector<Vec> basis;  ///< retained principal axes in the old horizontal space
  Vec variances;           ///< horizontal variance along each retained axis
};

/// Centers the drawing, projects its dim-1 horizontal coordinates onto their
/// dim-2 leading principal components and keeps the vertical coordinate.
/// Requires dim >= 3. Rank-deficient data simply yields zero coordinates
/// along the surplus axes.
Reduction reduce_dimension(const Drawing& drawing);

inline Drawing dimension_reduction(const Drawing& drawing) { return reduce_dimension(drawing).drawing; }

}  // namespace redraw
