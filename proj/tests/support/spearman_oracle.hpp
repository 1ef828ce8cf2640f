#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace support {

// Counting-based ranks plus the textbook Pearson formula; shares nothing
// with the production implementation.
inline double brute_force_spearman(const std::vector<double>& x,
                                   const std::vector<double>& y) {
  auto rank_of = [](const std::vector<double>& v, std::size_t i) {
    double less = 0, equal = 0;
    for (double other : v) {
      if (other < v[i]) ++less;
      if (other == v[i]) ++equal;
    }
    return less + (equal + 1.0) / 2.0;
  };
  std::size_t n = x.size();
  std::vector<double> rx(n), ry(n);
  for (std::size_t i = 0; i < n; ++i) {
    rx[i] = rank_of(x, i);
    ry[i] = rank_of(y, i);
  }
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += rx[i];
    sy += ry[i];
  }
  double mx = sx / static_cast<double>(n), my = sy / static_cast<double>(n);
  double num = 0, dx = 0, dy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (rx[i] - mx) * (ry[i] - my);
    dx += (rx[i] - mx) * (rx[i] - mx);
    dy += (ry[i] - my) * (ry[i] - my);
  }
  return num / std::sqrt(dx * dy);
}

}  // namespace support
