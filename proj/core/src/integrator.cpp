#include "ewi/integrator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ewi/norms.hpp"

namespace ewi {

NumericalBlowup::NumericalBlowup(std::size_t step, double last_finite_norm)
    : std::runtime_error("non-finite state at step " + std::to_string(step) +
                         " (last finite L2 norm " + std::to_string(last_finite_norm) + ")"),
      step_(step),
      last_finite_norm_(last_finite_norm) {}

std::size_t step_count(const EwiParams& p) {
  if (!p.grid) throw std::invalid_argument("scheme parameters need a grid");
  if (!(p.tau > 0.0)) throw std::invalid_argument("time step must be positive");
  if (!(p.sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (!(p.final_time > 0.0)) throw std::invalid_argument("final time must be positive");
  const double ratio = p.final_time / p.tau;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
    throw std::invalid_argument("final time " + std::to_string(p.final_time) +
                                " is not a positive integer multiple of tau " + std::to_string(p.tau));
  }
  if (p.potential && !same_grid(p.potential->grid_ptr(), p.grid)) {
    throw std::invalid_argument("potential was realized on a different grid");
  }
  return static_cast<std::size_t>(rounded);
}

SpectralField nonlinearity(const SpectralField& psi, double beta, double sigma) {
  SpectralField v = from_fourier(psi);
  auto vals = v.values();
  if (beta == 0.0) {
    for (auto& x : vals) x = 0.0;
    return v;
  }
  if (sigma == 1.0) {
    for (auto& x : vals) x *= beta * std::norm(x);
  } else {
    for (auto& x : vals) x *= beta * std::pow(std::norm(x), sigma);
  }
  return v;
}

Multiplier build_scheme_filter(const EwiParams& p) {
  switch (p.filter) {
    case FilterMode::smooth:
      return build_filter(p.grid, p.tau, FilterShape::smooth);
    case FilterMode::sharp:
      return build_filter(p.grid, p.tau, FilterShape::sharp);
    case FilterMode::off:
      return Multiplier::identity(p.grid);
  }
  throw std::logic_error("unknown filter mode");
}

EwiStepper::EwiStepper(EwiParams params)
    : params_(std::move(params)),
      free_flow_(build_free_flow(params_.grid, params_.tau)),
      phi1_(build_phi1(params_.grid, params_.tau)),
      filter_(build_scheme_filter(params_)) {
  step_count(params_);
  const std::size_t n = params_.grid->size();
  forcing_symbol_.resize(n);
  const Complex minus_i_tau(0.0, -params_.tau);
  const auto ph = phi1_.symbol();
  const auto ch = filter_.symbol();
  for (std::size_t k = 0; k < n; ++k) forcing_symbol_[k] = minus_i_tau * ph[k] * ch[k];
  forcing_.resize(n);
  scratch_.resize(n);
}

void EwiStepper::compute_forcing(std::span<const Complex> in) {
  const Grid& grid = *params_.grid;
  if (params_.potential) {
    params_.potential->apply(in, forcing_, fine_workspace_);
  } else {
    std::fill(forcing_.begin(), forcing_.end(), Complex(0.0, 0.0));
  }
  if (params_.beta != 0.0) {
    std::copy(in.begin(), in.end(), scratch_.begin());
    grid.backward(scratch_);
    const double beta = params_.beta;
    if (params_.sigma == 1.0) {
      for (auto& x : scratch_) x *= beta * std::norm(x);
    } else {
      const double s = params_.sigma;
      for (auto& x : scratch_) x *= beta * std::pow(std::norm(x), s);
    }
    grid.forward(scratch_);
    for (std::size_t k = 0; k < forcing_.size(); ++k) forcing_[k] += scratch_[k];
  }
}

void EwiStepper::step(std::span<const Complex> in, std::span<Complex> out) {
  const std::size_t n = params_.grid->size();
  if (in.size() != n || out.size() != n) throw std::invalid_argument("step: size mismatch");
  compute_forcing(in);
  const auto e = free_flow_.symbol();
  for (std::size_t k = 0; k < n; ++k) out[k] = e[k] * in[k] + forcing_symbol_[k] * forcing_[k];
}

SpectralField EwiStepper::step(const SpectralField& psi) {
  if (!same_grid(psi.grid_ptr(), params_.grid)) throw std::invalid_argument("step: grid mismatch");
  SpectralField c = to_fourier(psi);
  step(c.coeffs(), c.coeffs());
  return c;
}

SpectralField EwiStepper::forcing(const SpectralField& psi) {
  const SpectralField c = to_fourier(psi);
  compute_forcing(c.coeffs());
  return SpectralField(params_.grid, Representation::fourier, forcing_);
}

SpectralField ewi_step(const SpectralField& psi, const EwiParams& params) {
  EwiStepper stepper(params);
  return stepper.step(psi);
}

Trajectory evolve(const SpectralField& psi0, const EwiParams& params, std::size_t stride,
                  const StepObserver& observer) {
  const std::size_t steps = step_count(params);
  SpectralField filtered = apply(build_scheme_filter(params), psi0);
  return resume(filtered, 0, steps, params, stride, observer);
}

Trajectory resume(const SpectralField& state, std::size_t start_step, std::size_t steps,
                  const EwiParams& params, std::size_t stride, const StepObserver& observer) {
  EwiStepper stepper(params);
  SpectralField psi = to_fourier(state);
  if (!same_grid(psi.grid_ptr(), params.grid)) throw std::invalid_argument("evolve: grid mismatch");

  Trajectory traj;
  traj.mass_trace.reserve(steps + 1);
  double last = norm(psi, NormKind::l2());
  if (!std::isfinite(last)) throw NumericalBlowup(start_step, 0.0);
  traj.mass_trace.push_back(last);
  traj.snapshots.push_back({start_step, static_cast<double>(start_step) * params.tau, psi});
  if (observer) observer(start_step, psi);

  for (std::size_t n = 1; n <= steps; ++n) {
    stepper.step(psi.coeffs(), psi.coeffs());
    const std::size_t global = start_step + n;
    const double mass = norm(psi, NormKind::l2());
    if (!std::isfinite(mass)) throw NumericalBlowup(global, last);
    last = mass;
    traj.mass_trace.push_back(mass);
    if (observer) observer(global, psi);
    if (n == steps || (stride > 0 && global % stride == 0)) {
      traj.snapshots.push_back({global, static_cast<double>(global) * params.tau, psi});
    }
  }
  return traj;
}

}  // namespace ewi
