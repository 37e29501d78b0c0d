#pragma once

// Trend and pattern analysis of a selected value window (a "finding").
//
// All functions take any Eigen column-vector expression, so callers can pass
// `-f`, `c * f` or a segment without materializing it first. Computation is
// carried out in the expression's scalar type.

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <string_view>
#include <vector>

namespace vqsearch {

enum class Trend { ascending, descending, neutral };
enum class Pattern { stable, peak, valley, unstable };

constexpr std::string_view to_string(Trend t) noexcept {
  switch (t) {
    case Trend::ascending: return "ascending";
    case Trend::descending: return "descending";
    case Trend::neutral: return "neutral";
  }
  return "neutral";
}

constexpr std::string_view to_string(Pattern p) noexcept {
  switch (p) {
    case Pattern::stable: return "stable";
    case Pattern::peak: return "peak";
    case Pattern::valley: return "valley";
    case Pattern::unstable: return "unstable";
  }
  return "stable";
}

template <typename Scalar>
using SeriesVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Centered moving average over [i - half_window, i + half_window], the
/// window truncated at both ends.
template <typename Derived>
SeriesVector<typename Derived::Scalar> moving_average(
    const Eigen::MatrixBase<Derived>& f, Eigen::Index half_window) {
  using Scalar = typename Derived::Scalar;
  const SeriesVector<Scalar> x = f;
  const Eigen::Index n = x.size();
  SeriesVector<Scalar> out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index lo = std::max<Eigen::Index>(0, i - half_window);
    const Eigen::Index hi = std::min<Eigen::Index>(n - 1, i + half_window);
    out[i] = x.segment(lo, hi - lo + 1).mean();
  }
  return out;
}

/// Sum of the signs of consecutive differences of the moving average.
/// Equal neighbours contribute 0. Inputs shorter than two points are neutral.
template <typename Derived>
Trend detect_trend(const Eigen::MatrixBase<Derived>& f,
                   Eigen::Index half_window) {
  if (f.size() < 2) return Trend::neutral;
  const auto ma = moving_average(f, half_window);
  int tr = 0;
  for (Eigen::Index i = 1; i < ma.size(); ++i) {
    if (ma[i] > ma[i - 1]) ++tr;
    else if (ma[i] < ma[i - 1]) --tr;
  }
  if (tr > 0) return Trend::ascending;
  if (tr < 0) return Trend::descending;
  return Trend::neutral;
}

template <typename Scalar>
struct Peak {
  Eigen::Index index;  // leftmost sample of the peak's plateau
  Scalar prominence;   // value units
  Scalar width;        // samples, at height - rel_height * prominence
  Eigen::Index left_base;
  Eigen::Index right_base;
};

/// Local maxima with topographic prominence and interpolated width.
///
/// A peak is a sample (or flat run of samples) strictly higher than its left
/// neighbour and strictly higher than the first differing sample on its
/// right. Prominence is the height above the higher of the two lowest points
/// reached before climbing above the peak on each side (or hitting the
/// boundary). Width is measured where the signal, linearly interpolated,
/// crosses `peak - rel_height * prominence` within the bases.
template <typename Derived>
std::vector<Peak<typename Derived::Scalar>> find_peaks(
    const Eigen::MatrixBase<Derived>& f, typename Derived::Scalar rel_height) {
  using Scalar = typename Derived::Scalar;
  const SeriesVector<Scalar> x = f;
  const Eigen::Index n = x.size();
  std::vector<Peak<Scalar>> peaks;
  Eigen::Index i = 1;
  while (i < n - 1) {
    if (!(x[i] > x[i - 1])) {
      ++i;
      continue;
    }
    Eigen::Index ahead = i + 1;
    while (ahead < n && x[ahead] == x[i]) ++ahead;
    if (ahead >= n || !(x[ahead] < x[i])) {
      i = ahead;
      continue;
    }
    const Eigen::Index last = ahead - 1;  // end of plateau

    Eigen::Index left_base = i;
    Scalar left_min = x[i];
    for (Eigen::Index j = i; j >= 0 && x[j] <= x[i]; --j) {
      if (x[j] < left_min) {
        left_min = x[j];
        left_base = j;
      }
    }
    Eigen::Index right_base = last;
    Scalar right_min = x[i];
    for (Eigen::Index j = last; j < n && x[j] <= x[i]; ++j) {
      if (x[j] < right_min) {
        right_min = x[j];
        right_base = j;
      }
    }
    const Scalar prominence = x[i] - std::max(left_min, right_min);
    const Scalar height = x[i] - rel_height * prominence;

    Eigen::Index l = i;
    while (l > left_base && x[l] > height) --l;
    Scalar left_ip = static_cast<Scalar>(l);
    if (x[l] < height) left_ip += (height - x[l]) / (x[l + 1] - x[l]);

    Eigen::Index r = last;
    while (r < right_base && x[r] > height) ++r;
    Scalar right_ip = static_cast<Scalar>(r);
    if (x[r] < height) right_ip -= (height - x[r]) / (x[r - 1] - x[r]);

    peaks.push_back({i, prominence, right_ip - left_ip, left_base, right_base});
    i = ahead;
  }
  return peaks;
}

/// Population (divide by N) standard deviation, two-pass.
template <typename Derived>
typename Derived::Scalar population_stddev(const Eigen::MatrixBase<Derived>& f) {
  using Scalar = typename Derived::Scalar;
  if (f.size() == 0) return Scalar(0);
  const SeriesVector<Scalar> x = f;
  const Scalar mean = x.mean();
  return std::sqrt((x.array() - mean).square().sum() /
                   static_cast<Scalar>(x.size()));
}

template <typename Scalar>
struct PatternResult {
  Pattern pattern;
  Scalar factor;  // pf; 0 for stable findings
};

/// pf = |F| * (w+ - w-) / sigma, w+ summing width * prominence over the
/// peaks of F and w- over the peaks of -F. Stable when sigma < stable_below,
/// otherwise peak / valley when pf leaves [-peak_above, peak_above].
template <typename Derived>
PatternResult<typename Derived::Scalar> detect_pattern(
    const Eigen::MatrixBase<Derived>& f, typename Derived::Scalar stable_below,
    typename Derived::Scalar peak_above, typename Derived::Scalar rel_height) {
  using Scalar = typename Derived::Scalar;
  const SeriesVector<Scalar> x = f;
  const Scalar sigma = population_stddev(x);
  if (x.size() == 0 || sigma < stable_below || sigma == Scalar(0)) {
    return {Pattern::stable, Scalar(0)};
  }
  auto area = [rel_height](const SeriesVector<Scalar>& v) {
    Scalar sum(0);
    for (const auto& p : find_peaks(v, rel_height)) sum += p.width * p.prominence;
    return sum;
  };
  const SeriesVector<Scalar> neg = -x;
  const Scalar pf =
      static_cast<Scalar>(x.size()) * (area(x) - area(neg)) / sigma;
  if (pf > peak_above) return {Pattern::peak, pf};
  if (pf < -peak_above) return {Pattern::valley, pf};
  return {Pattern::unstable, pf};
}

}  // namespace vqsearch
