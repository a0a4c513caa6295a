#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "ewi/error.hpp"
#include "ewi/multiplier.hpp"
#include "ewi/potential.hpp"

namespace ewi {

enum class FilterMode { smooth, sharp, off };

struct EwiParams {
  double tau = 0.0;
  double final_time = 0.0;
  double beta = 0.0;
  double sigma = 1.0;
  /// `off` is a diagnostic mode: Pi_tau becomes the identity.
  FilterMode filter = FilterMode::smooth;
  GridPtr grid;
  /// Null means V = 0.
  std::shared_ptr<const PotentialField> potential;
};

/// Checks tau > 0, sigma > 0, T/tau a positive integer, grid/potential
/// consistency, and returns the number of steps.
std::size_t step_count(const EwiParams& params);

/// Pointwise beta |psi|^{2 sigma} psi on the physical grid (physical result).
SpectralField nonlinearity(const SpectralField& psi, double beta, double sigma);

/// The filter Pi_tau selected by the params (identity when filtering is off).
Multiplier build_scheme_filter(const EwiParams& params);

/// One-step map of the filtered exponential wave integrator
///   psi^{n+1} = e^{i tau Delta} psi^n - i tau phi_1(i tau Delta) Pi_tau (V psi^n + beta |psi^n|^{2 sigma} psi^n).
/// The multipliers are built once; step() reuses internal workspaces, so one
/// stepper must not be shared between threads.
class EwiStepper {
 public:
  explicit EwiStepper(EwiParams params);

  const EwiParams& params() const { return params_; }
  const Multiplier& free_flow() const { return free_flow_; }
  const Multiplier& phi1() const { return phi1_; }
  const Multiplier& filter() const { return filter_; }

  /// Coefficients in, coefficients out; `out` may alias `in`.
  void step(std::span<const Complex> in, std::span<Complex> out);
  SpectralField step(const SpectralField& psi);

  /// V psi + beta |psi|^{2 sigma} psi in Fourier form, before filtering.
  SpectralField forcing(const SpectralField& psi);

 private:
  void compute_forcing(std::span<const Complex> in);

  EwiParams params_;
  Multiplier free_flow_;
  Multiplier phi1_;
  Multiplier filter_;
  ComplexVector forcing_symbol_;  // -i tau phi_1 chi
  ComplexVector forcing_;
  ComplexVector scratch_;
  ComplexVector fine_workspace_;
};

/// One step of the scheme from psi (any representation); Fourier result.
SpectralField ewi_step(const SpectralField& psi, const EwiParams& params);

struct Snapshot {
  std::size_t step = 0;
  double time = 0.0;
  SpectralField state;  // Fourier representation
};

struct Trajectory {
  std::vector<Snapshot> snapshots;
  /// L2 norm after every step, index n = step n (index 0 is the filtered datum).
  std::vector<double> mass_trace;

  const Snapshot& final() const { return snapshots.back(); }
};

/// Called after each step with (step index, state in Fourier form).
using StepObserver = std::function<void(std::size_t, const SpectralField&)>;

/// psi^0 = Pi_tau psi_0, then T/tau steps. Snapshots every `stride` steps
/// (stride 0 keeps only the first and last); the final state is always kept.
/// Throws NumericalBlowup when the state stops being finite.
Trajectory evolve(const SpectralField& psi0, const EwiParams& params, std::size_t stride,
                  const StepObserver& observer = {});

/// Continue from an already filtered state at `start_step` for `steps` steps
/// without re-filtering. Snapshot times are (start_step + n) tau.
Trajectory resume(const SpectralField& state, std::size_t start_step, std::size_t steps,
                  const EwiParams& params, std::size_t stride, const StepObserver& observer = {});

}  // namespace ewi
