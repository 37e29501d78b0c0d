#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vqsearch {

/// Pearson correlation with population moments, clamped to [-1, 1].
/// Throws std::invalid_argument on unequal or too short inputs and on zero
/// variance.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar pearson(const Eigen::MatrixBase<DerivedA>& a,
                                  const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  if (a.size() != b.size()) throw std::invalid_argument("pearson: length mismatch");
  if (a.size() < 2) throw std::invalid_argument("pearson: need two points");
  const Vec x = a;
  const Vec y = b.template cast<Scalar>();
  const Vec dx = x.array() - x.mean();
  const Vec dy = y.array() - y.mean();
  const Scalar sx = dx.norm();
  const Scalar sy = dy.norm();
  if (sx == Scalar(0) || sy == Scalar(0)) {
    throw std::invalid_argument("pearson: zero variance");
  }
  return std::clamp(dx.dot(dy) / (sx * sy), Scalar(-1), Scalar(1));
}

/// Dynamic time warping distance, point cost |a_i - b_j|, no window.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar dtw(const Eigen::MatrixBase<DerivedA>& a,
                              const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  const Eigen::Index n = a.size();
  const Eigen::Index m = b.size();
  if (n == 0 || m == 0) throw std::invalid_argument("dtw: empty input");
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> acc(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const Scalar cost = std::abs(a[i] - static_cast<Scalar>(b[j]));
      if (i == 0 && j == 0) {
        acc(i, j) = cost;
      } else if (i == 0) {
        acc(i, j) = cost + acc(i, j - 1);
      } else if (j == 0) {
        acc(i, j) = cost + acc(i - 1, j);
      } else {
        acc(i, j) = cost + std::min({acc(i - 1, j - 1), acc(i - 1, j), acc(i, j - 1)});
      }
    }
  }
  return acc(n - 1, m - 1);
}

template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar dtw_similarity(const Eigen::MatrixBase<DerivedA>& a,
                                         const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  return Scalar(1) / (Scalar(1) + dtw(a, b));
}

}  // namespace vqsearch
