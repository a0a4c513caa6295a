#pragma once

#include "ewi/field.hpp"

namespace ewi {

/// Diagonal Fourier-space operator: acts by multiplying coefficient l by symbol[l].
class Multiplier {
 public:
  Multiplier(GridPtr grid, ComplexVector symbol);

  static Multiplier identity(GridPtr grid);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::span<const Complex> symbol() const { return symbol_; }

  /// Pointwise symbol product; the operators commute.
  Multiplier compose(const Multiplier& other) const;
  Multiplier scaled(Complex s) const;

  /// Multiplies coefficients in place. `coeffs` must have grid().size() entries.
  void apply_in_place(std::span<Complex> coeffs) const;

 private:
  GridPtr grid_;
  ComplexVector symbol_;
};

enum class FilterShape { smooth, sharp };

/// Radial cutoff profile chi(|x|): 1 on |x| <= 1, 0 on |x| >= 2.
/// The smooth shape is S(2 - r) with S(t) = rho(t) / (rho(t) + rho(1 - t)),
/// rho(t) = exp(-1/t) for t > 0 and 0 otherwise. The sharp shape is the
/// indicator of |x| <= 1.
double filter_profile(double r, FilterShape shape);

/// phi_1(z) = (e^z - 1) / z, with the Taylor branch 1 + z/2 + z^2/6 + z^3/24
/// for |z| < 1e-4.
Complex phi1(Complex z);

inline constexpr double kPhi1SeriesThreshold = 1e-4;

/// Filter Pi_tau with symbol chi(sqrt(tau) mu_l). Throws for tau <= 0.
Multiplier build_filter(const GridPtr& grid, double tau, FilterShape shape = FilterShape::smooth);
/// Free Schroedinger flow e^{i t Delta}: symbol e^{-i t |mu_l|^2}.
Multiplier build_free_flow(const GridPtr& grid, double t);
/// phi_1(i tau Delta): symbol phi_1(-i tau |mu_l|^2). Throws for tau <= 0.
Multiplier build_phi1(const GridPtr& grid, double tau);
/// (-Delta)^gamma: symbol |mu_l|^{2 gamma}.
Multiplier build_fractional_laplacian(const GridPtr& grid, double gamma);

/// Applies the multiplier; the result is in Fourier representation.
SpectralField apply(const Multiplier& m, SpectralField field);

}  // namespace ewi
