#pragma once

#include <cmath>
#include <random>

#include "ewi/field.hpp"

namespace ewi::test {

inline constexpr double kPi = 3.14159265358979323846;

inline SpectralField random_field(const GridPtr& grid, unsigned seed, Representation rep = Representation::physical) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexVector data(grid->size());
  for (auto& z : data) z = {u(gen), u(gen)};
  return SpectralField(grid, rep, std::move(data));
}

/// Random coefficients supported on |l_j| < band_fraction * N_j / 2.
inline SpectralField random_band_limited(const GridPtr& grid, unsigned seed, double band_fraction) {
  SpectralField f = random_field(grid, seed, Representation::fourier);
  auto c = f.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    const Index3 idx = grid->unflatten(k);
    for (int a = 0; a < grid->dim(); ++a) {
      if (std::abs(grid->frequency(a, idx[a])) >= band_fraction * grid->points(a) / 2) c[k] = 0.0;
    }
  }
  return f;
}

inline SpectralField plane_wave(const GridPtr& grid, const Index3& l) {
  return SpectralField::sample(grid, [&](const Point3& x) {
    double phase = 0.0;
    for (int a = 0; a < grid->dim(); ++a) phase += grid->wave_scale(a) * l[a] * (x[a] - grid->bounds(a).lo);
    return std::polar(1.0, phase);
  });
}

inline double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

inline double max_abs(std::span<const Complex> a) {
  double m = 0.0;
  for (const auto& z : a) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace ewi::test
