#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "ewi/field.hpp"

namespace ewi {

struct ConstantPotential {
  double value = 0.0;
};

/// V(x) = sum_j Z_j / |x - x_j|^alpha.
struct InversePower {
  std::vector<Point3> centers;
  std::vector<double> charges;
  double alpha = 1.0;
};

/// Coefficient rule vhat_l = amplitude * (1 + |mu_l|^2)^(-exponent).
struct SobolevDecay {
  double exponent = 1.0;
  double amplitude = 1.0;
};

/// Coefficient rule vhat_0 = zero_mode, vhat_l = xi_l / |mu_l|^exponent with
/// xi_l = U(-1,1) + i U(-1,1) drawn from a seeded generator (see rng.hpp).
/// Draws run over the lattice {-n_ref/2, ..., n_ref/2 - 1}^d in row-major
/// order, skipping l = 0; n_ref = 0 means "the oversampled lattice size".
struct RandomDecay {
  double exponent = 1.0;
  double zero_mode = 1.0;
  std::uint64_t seed = 0;
  int n_ref = 0;
};

/// Programmatic coefficient rule vhat(l, mu).
struct CustomCoefficients {
  std::function<Complex(const Index3& l, const Point3& mu)> rule;
};

struct PotentialSpec;

struct PotentialSum {
  std::vector<PotentialSpec> terms;
};

/// Declarative potential description.
struct PotentialSpec {
  std::variant<ConstantPotential, InversePower, SobolevDecay, RandomDecay, CustomCoefficients,
               PotentialSum>
      value;
};

bool is_fourier_rule(const PotentialSpec& spec);

enum class SingularRegularization {
  /// Gaussian-windowed singular part with closed-form coefficients plus a
  /// pointwise-sampled bounded remainder.
  window,
  /// Pointwise values, with quadrature cell averages on the cells near each center.
  cell_average,
};

struct RealizeOptions {
  /// Fine-grid factor for the product; 0 picks 4 for inverse-power terms under
  /// cell_average regularization and 2 otherwise.
  int oversample = 0;
  SingularRegularization regularization = SingularRegularization::window;
  /// cell_average only: rings of fine cells around each center that take cell
  /// averages; -1 picks 64 / 8 / 2 cells for d = 1 / 2 / 3.
  int near_field_cells = -1;
  double quadrature_tol = 1e-8;
};

/// A potential realized on an oversampled copy of the base grid.
///
/// fine_values are the real samples used by the de-aliased product;
/// coeffs() are the base-band Fourier coefficients of those samples.
/// Immutable; apply() is safe to call concurrently with distinct workspaces.
class PotentialField {
 public:
  PotentialField(GridPtr grid, int oversample, std::vector<double> fine_values);

  static PotentialField constant(GridPtr grid, double value);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const GridPtr& fine_grid() const { return fine_grid_; }
  int oversample() const noexcept { return oversample_; }

  std::span<const double> fine_values() const { return fine_values_; }
  /// Base-band coefficients.
  std::span<const Complex> coeffs() const { return coeffs_; }
  /// Coefficients on the whole oversampled lattice.
  SpectralField fine_coeffs() const;
  std::optional<double> constant_value() const noexcept { return constant_; }

  PotentialField operator+(const PotentialField& other) const;

  /// out = coefficients of the base-band projection of V psi.
  /// `workspace` is resized to the fine grid size as needed.
  void apply(std::span<const Complex> psi_coeffs, std::span<Complex> out,
             ComplexVector& workspace) const;

 private:
  GridPtr grid_;
  GridPtr fine_grid_;
  int oversample_;
  std::vector<double> fine_values_;
  ComplexVector coeffs_;
  std::shared_ptr<const std::vector<std::size_t>> band_;
  std::optional<double> constant_;
};

/// Throws std::invalid_argument when alpha >= d, a center lies outside the
/// box, or charges/centers disagree in count.
PotentialField realize_inverse_power(const InversePower& spec, const GridPtr& grid,
                                     const RealizeOptions& opts = {});

/// V(x) = Re sum_l vhat_l e^{i mu_l . (x - a)} on the oversampled lattice.
PotentialField realize_fourier(const PotentialSpec& spec, const GridPtr& grid,
                               const RealizeOptions& opts = {});

PotentialField realize(const PotentialSpec& spec, const GridPtr& grid, const RealizeOptions& opts = {});

/// Base-band projection of V psi computed on the oversampled grid; the result
/// is in Fourier representation.
SpectralField apply_potential(const PotentialField& potential, const SpectralField& psi);

/// Cell average of Z |x - c|^{-alpha} over prod_j [lo_j, hi_j] by nested
/// tanh-sinh quadrature, split at the center so the singularity sits on a corner.
double inverse_power_cell_average(const Point3& lo, const Point3& hi, int dim, const Point3& center,
                                  double charge, double alpha, double tol);

/// Fourier transform of |x|^{-alpha} exp(-|x|^2 / (2 width^2)) over R^dim at
/// frequency magnitude mu (convention int f(x) e^{-i mu.x} dx).
double windowed_inverse_power_transform(int dim, double alpha, double width, double mu);

}  // namespace ewi
