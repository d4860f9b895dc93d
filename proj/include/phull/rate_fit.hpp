#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace phull {

/// Least-squares line y = slope·x + intercept.
struct RateFit {
  double slope = 0;
  double intercept = 0;
  std::size_t points = 0;
};

/// nullopt for fewer than two points or constant x.
std::optional<RateFit> fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace phull
