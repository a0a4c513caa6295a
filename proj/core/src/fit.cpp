#include "ewi/fit.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace ewi {

OrderFit fit_order(std::span<const double> taus, std::span<const double> errors) {
  if (taus.size() != errors.size()) throw std::invalid_argument("fit_order: size mismatch");
  if (taus.size() < 3) throw std::invalid_argument("fit_order: need at least 3 points");
  const std::size_t n = taus.size();
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(taus[i] > 0.0) || !(errors[i] > 0.0)) {
      throw std::invalid_argument("fit_order: step sizes and errors must be positive");
    }
    x[i] = std::log(taus[i]);
    y[i] = std::log(errors[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("fit_order: step sizes must not all coincide");
  OrderFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  fit.points = n;
  return fit;
}

}  // namespace ewi
