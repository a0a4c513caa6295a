#include "ewi/multiplier.hpp"

#include <cmath>
#include <stdexcept>

namespace ewi {

Multiplier::Multiplier(GridPtr grid, ComplexVector symbol)
    : grid_(std::move(grid)), symbol_(std::move(symbol)) {
  if (!grid_ || symbol_.size() != grid_->size()) {
    throw std::invalid_argument("multiplier symbol size does not match grid");
  }
}

Multiplier Multiplier::identity(GridPtr grid) {
  const std::size_t n = grid->size();
  return Multiplier(std::move(grid), ComplexVector(n, Complex(1.0, 0.0)));
}

Multiplier Multiplier::compose(const Multiplier& other) const {
  if (!same_grid(grid_, other.grid_)) throw std::invalid_argument("compose: grid mismatch");
  ComplexVector s(symbol_.size());
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = symbol_[k] * other.symbol_[k];
  return Multiplier(grid_, std::move(s));
}

Multiplier Multiplier::scaled(Complex factor) const {
  ComplexVector s(symbol_);
  for (auto& v : s) v *= factor;
  return Multiplier(grid_, std::move(s));
}

void Multiplier::apply_in_place(std::span<Complex> coeffs) const {
  if (coeffs.size() != symbol_.size()) throw std::invalid_argument("apply: size mismatch");
  for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] *= symbol_[k];
}

double filter_profile(double r, FilterShape shape) {
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  if (shape == FilterShape::sharp) return 0.0;
  const double t = 2.0 - r;  // in (0, 1)
  const double rho_t = std::exp(-1.0 / t);
  const double rho_c = std::exp(-1.0 / (1.0 - t));
  return rho_t / (rho_t + rho_c);
}

Complex phi1(Complex z) {
  if (std::abs(z) < kPhi1SeriesThreshold) {
    return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0));
  }
  // e^z - 1 = (e^x cos y - 1) + i e^x sin y, with the real part rewritten to
  // avoid cancellation for small |z|.
  const double x = z.real();
  const double y = z.imag();
  const double em1 = std::expm1(x);
  const double s = std::sin(0.5 * y);
  const Complex num(em1 * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y));
  return num / z;
}

Multiplier build_filter(const GridPtr& grid, double tau, FilterShape shape) {
  if (!(tau > 0.0)) throw std::invalid_argument("filter needs tau > 0");
  const double st = std::sqrt(tau);
  const auto m2 = grid->mu_squared();
  ComplexVector s(m2.size());
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = filter_profile(st * std::sqrt(m2[k]), shape);
  return Multiplier(grid, std::move(s));
}

Multiplier build_free_flow(const GridPtr& grid, double t) {
  const auto m2 = grid->mu_squared();
  ComplexVector s(m2.size());
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = std::polar(1.0, -t * m2[k]);
  return Multiplier(grid, std::move(s));
}

Multiplier build_phi1(const GridPtr& grid, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("phi1 multiplier needs tau > 0");
  const auto m2 = grid->mu_squared();
  ComplexVector s(m2.size());
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = phi1(Complex(0.0, -tau * m2[k]));
  return Multiplier(grid, std::move(s));
}

Multiplier build_fractional_laplacian(const GridPtr& grid, double gamma) {
  const auto m2 = grid->mu_squared();
  ComplexVector s(m2.size());
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = m2[k] == 0.0 ? 0.0 : std::pow(m2[k], gamma);
  return Multiplier(grid, std::move(s));
}

SpectralField apply(const Multiplier& m, SpectralField field) {
  if (!same_grid(m.grid_ptr(), field.grid_ptr())) throw std::invalid_argument("apply: grid mismatch");
  SpectralField c = to_fourier(std::move(field));
  m.apply_in_place(c.coeffs());
  return c;
}

}  // namespace ewi
