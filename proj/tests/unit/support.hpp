#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include <doctest.h>

#include "flatpunct/geom.hpp"

namespace flatpunct::testing {

// True when `got` equals some cyclic rotation of `want` within `tol`.
inline bool cyclic_match(std::span<const double> got, const std::vector<double>& want,
                         double tol = 1e-9) {
  if (got.size() != want.size()) return false;
  const std::size_t k = want.size();
  for (std::size_t s = 0; s < k; ++s) {
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) ok = std::abs(got[(i + s) % k] - want[i]) <= tol;
    if (ok) return true;
  }
  return false;
}

inline double sum(std::span<const double> xs) {
  double s = 0;
  for (double x : xs) s += x;
  return s;
}

}  // namespace flatpunct::testing
