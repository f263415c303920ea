#include "redraw/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "redraw/errors.hpp"

namespace redraw {

EigenDecomposition symmetric_eigen(std::span<const double> matrix, std::size_t n, double tolerance) {
  if (matrix.size() != n * n) throw Error("symmetric_eigen: matrix size mismatch");
  std::vector<double> a(matrix.begin(), matrix.end());
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  double norm2 = 0.0;
  for (const double x : a) norm2 += x * x;
  const double threshold = tolerance * tolerance * norm2;

  auto at = [n](std::vector<double>& m, std::size_t r, std::size_t c) -> double& { return m[r * n + c]; };

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * at(a, p, q) * at(a, p, q);
    }
    if (off <= threshold) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(a, p, q);
        if (apq == 0.0) continue;
        const double theta = (at(a, q, q) - at(a, p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(a, k, p);
          const double akq = at(a, k, q);
          at(a, k, p) = c * akp - s * akq;
          at(a, k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(a, p, k);
          const double aqk = at(a, q, k);
          at(a, p, k) = c * apk - s * aqk;
          at(a, q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = at(v, k, p);
          const double vkq = at(v, k, q);
          at(v, k, p) = c * vkp - s * vkq;
          at(v, k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a[i * n + i] > a[j * n + j]; });

  EigenDecomposition result;
  result.values.reserve(n);
  result.vectors.reserve(n);
  for (const std::size_t col : order) {
    result.values.push_back(a[col * n + col]);
    Vec vec(n);
    std::size_t largest = 0;
    for (std::size_t k = 0; k < n; ++k) {
      vec[k] = v[k * n + col];
      if (std::abs(vec[k]) > std::abs(vec[largest])) largest = k;
    }
    if (n > 0 && vec[largest] < 0.0) {
      for (double& x : vec) x = -x;
    }
    result.vectors.push_back(std::move(vec));
  }
  return result;
}

Drawing center(const Drawing& drawing) {
  Drawing out = drawing;
  const std::size_t n = drawing.size();
  if (n == 0) return out;
  for (std::size_t k = 0; k < drawing.dim(); ++k) {
    double mean = 0.0;
    for (std::size_t a = 0; a < n; ++a) mean += drawing.point(a)[k];
    mean /= static_cast<double>(n);
    for (std::size_t a = 0; a < n; ++a) out.point(a)[k] -= mean;
  }
  return out;
}

Reduction reduce_dimension(const Drawing& drawing) {
  const std::size_t dim = drawing.dim();
  if (dim < 3) throw Error("dimension reduction requires at least three dimensions");
  const std::size_t n = drawing.size();
  const std::size_t hdim = dim - 1;
  const std::size_t keep = dim - 2;

  const Drawing centered = center(drawing);
  std::vector<double> cov(hdim * hdim, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    const auto p = centered.point(a);
    for (std::size_t i = 0; i < hdim; ++i) {
      for (std::size_t j = i; j < hdim; ++j) cov[i * hdim + j] += p[i] * p[j];
    }
  }
  const double scale = n > 0 ? 1.0 / static_cast<double>(n) : 0.0;
  for (std::size_t i = 0; i < hdim; ++i) {
    for (std::size_t j = i; j < hdim; ++j) {
      cov[i * hdim + j] *= scale;
      cov[j * hdim + i] = cov[i * hdim + j];
    }
  }

  EigenDecomposition eig = symmetric_eigen(cov, hdim);

  Reduction result;
  result.drawing = Drawing(n, dim - 1);
  result.basis.assign(eig.vectors.begin(), eig.vectors.begin() + static_cast<std::ptrdiff_t>(keep));
  result.variances.assign(eig.values.begin(), eig.values.begin() + static_cast<std::ptrdiff_t>(keep));
  for (std::size_t a = 0; a < n; ++a) {
    const auto p = centered.point(a);
    auto q = result.drawing.point(a);
    for (std::size_t k = 0; k < keep; ++k) {
      double dot = 0.0;
      for (std::size_t i = 0; i < hdim; ++i) dot += p[i] * result.basis[k][i];
      q[k] = dot;
    }
    q[keep] = p[hdim];
  }
  return result;
}

}  // namespace redraw
