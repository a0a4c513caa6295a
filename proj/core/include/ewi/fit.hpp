#pragma once

#include <cstddef>
#include <span>

namespace ewi {

/// Least-squares line log(error) = slope * log(tau) + intercept.
struct OrderFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Root-mean-square deviation of log(error) from the fitted line.
  double residual = 0.0;
  std::size_t points = 0;
};

/// Throws std::invalid_argument for fewer than 3 points, mismatched sizes,
/// or nonpositive entries.
OrderFit fit_order(std::span<const double> taus, std::span<const double> errors);

}  // namespace ewi
