#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ewi/grid.hpp"

namespace ewi {

enum class Representation { physical, fourier };

/// Complex field on a Grid, held either as node samples or as averaged
/// Fourier coefficients. Conversion is explicit (to_fourier / from_fourier);
/// accessors check the representation.
class SpectralField {
 public:
  SpectralField(GridPtr grid, Representation rep, ComplexVector data);

  static SpectralField zeros(GridPtr grid, Representation rep = Representation::fourier);
  /// Samples f(x) at every node.
  static SpectralField sample(GridPtr grid, const std::function<Complex(const Point3&)>& f);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  Representation representation() const noexcept { return rep_; }
  bool is_fourier() const noexcept { return rep_ == Representation::fourier; }

  std::span<const Complex> values() const;
  std::span<Complex> values();
  std::span<const Complex> coeffs() const;
  std::span<Complex> coeffs();

  /// Raw storage regardless of representation.
  std::span<const Complex> data() const { return data_; }
  std::span<Complex> data() { return data_; }

  /// Coefficient of frequency l; requires the Fourier representation.
  Complex coeff_at(const Index3& l) const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(Complex s);

 private:
  void require_compatible(const SpectralField& other) const;

  GridPtr grid_;
  Representation rep_;
  ComplexVector data_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(Complex s, SpectralField a);

/// Samples -> coefficients. A field already in Fourier form is returned as is.
SpectralField to_fourier(SpectralField field);
/// Coefficients -> samples. A field already in physical form is returned as is.
SpectralField from_fourier(SpectralField field);

/// For each flat index of `base`, the flat index of `fine` holding the same
/// frequency. `fine` must cover the same box with at least as many points.
std::vector<std::size_t> band_map(const Grid& base, const Grid& fine);

/// Zero-pad coefficients onto `fine`, which must be a refinement of the field's grid.
SpectralField upsample(const SpectralField& field, const GridPtr& fine);
/// Keep only the coefficients of `coarse`'s band.
SpectralField truncate(const SpectralField& field, const GridPtr& coarse);

}  // namespace ewi
