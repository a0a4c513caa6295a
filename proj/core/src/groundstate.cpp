#include "ewi/groundstate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ewi/error.hpp"

namespace ewi {

namespace {

constexpr double kStabilizingExponent = 1.5;  // p / (p - 1) for the cubic term
constexpr int kStallWindow = 40;

ComplexVector cube_coeffs(const Grid& grid, std::span<const Complex> coeffs) {
  ComplexVector v(coeffs.begin(), coeffs.end());
  grid.backward(v);
  for (auto& x : v) x = x * std::norm(x);
  grid.forward(v);
  return v;
}

double residual_from(const Grid& grid, std::span<const Complex> coeffs,
                     std::span<const Complex> cube, double omega) {
  const auto m2 = grid.mu_squared();
  double acc = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    acc += std::norm((omega + m2[k]) * coeffs[k] - cube[k]);
  }
  return std::sqrt(acc * grid.volume());
}

// phi <- |phi| in physical space; returns coefficients.
void take_modulus(const Grid& grid, ComplexVector& coeffs) {
  grid.backward(coeffs);
  for (auto& x : coeffs) x = std::abs(x);
  grid.forward(coeffs);
}

}  // namespace

double stationary_residual(const SpectralField& phi, double omega) {
  const SpectralField c = to_fourier(phi);
  const auto cube = cube_coeffs(c.grid(), c.coeffs());
  return residual_from(c.grid(), c.coeffs(), cube, omega);
}

double boundary_max(const SpectralField& phi) {
  const SpectralField v = from_fourier(phi);
  const Grid& g = v.grid();
  double m = 0.0;
  const auto vals = v.values();
  for (std::size_t k = 0; k < vals.size(); ++k) {
    const Index3 idx = g.unflatten(k);
    bool face = false;
    for (int j = 0; j < g.dim(); ++j) face = face || idx[j] == 0;
    if (face) m = std::max(m, std::abs(vals[k]));
  }
  return m;
}

GroundStateResult solve_ground_state(const GroundStateProblem& problem) {
  if (!problem.grid) throw std::invalid_argument("ground state needs a grid");
  if (!(problem.omega > 0.0)) throw std::invalid_argument("ground state needs omega > 0");
  if (!(problem.tol > 0.0)) throw std::invalid_argument("ground state needs tol > 0");
  const Grid& grid = *problem.grid;
  const double omega = problem.omega;
  const auto m2 = grid.mu_squared();

  Point3 center{0.0, 0.0, 0.0};
  for (int j = 0; j < grid.dim(); ++j) center[j] = 0.5 * (grid.bounds(j).lo + grid.bounds(j).hi);
  const double amp = std::sqrt(2.0 * omega);
  SpectralField guess = SpectralField::sample(problem.grid, [&](const Point3& x) {
    double r2 = 0.0;
    for (int j = 0; j < grid.dim(); ++j) r2 += (x[j] - center[j]) * (x[j] - center[j]);
    return Complex(amp * std::exp(-0.5 * omega * r2), 0.0);
  });
  guess = to_fourier(std::move(guess));
  ComplexVector phi(guess.coeffs().begin(), guess.coeffs().end());

  GroundStateResult result{SpectralField::zeros(problem.grid, Representation::physical)};
  double best = std::numeric_limits<double>::infinity();
  int best_at = 0;
  bool fallback = false;
  int it = 0;
  double res = std::numeric_limits<double>::infinity();

  for (; it < problem.max_iter; ++it) {
    const ComplexVector cube = cube_coeffs(grid, phi);
    res = residual_from(grid, phi, cube, omega);
    result.residual_history.push_back(res);
    if (!std::isfinite(res)) break;
    if (res < problem.tol) break;
    if (res < best * (1.0 - 1e-3)) {
      best = res;
      best_at = it;
    } else if (!fallback && it - best_at > kStallWindow) {
      fallback = true;
    }

    if (!fallback) {
      double lin = 0.0;
      double nl = 0.0;
      for (std::size_t k = 0; k < phi.size(); ++k) {
        lin += (omega + m2[k]) * std::norm(phi[k]);
        nl += (std::conj(phi[k]) * cube[k]).real();
      }
      if (!(nl > 0.0)) throw ConvergenceFailure("ground state: iterate lost its nonlinear mass");
      const double factor = std::pow(lin / nl, kStabilizingExponent);
      for (std::size_t k = 0; k < phi.size(); ++k) phi[k] = factor * cube[k] / (omega + m2[k]);
    } else {
      // Semi-implicit gradient step on the action, then rescale onto
      // <(omega - Delta) phi, phi> = int phi^4.
      const double dt = 0.5;
      for (std::size_t k = 0; k < phi.size(); ++k) {
        phi[k] = (phi[k] + dt * cube[k]) / (1.0 + dt * (omega + m2[k]));
      }
      const ComplexVector c2 = cube_coeffs(grid, phi);
      double lin = 0.0;
      double nl = 0.0;
      for (std::size_t k = 0; k < phi.size(); ++k) {
        lin += (omega + m2[k]) * std::norm(phi[k]);
        nl += (std::conj(phi[k]) * c2[k]).real();
      }
      if (!(nl > 0.0)) throw ConvergenceFailure("ground state: iterate lost its nonlinear mass");
      const double s = std::sqrt(lin / nl);
      for (auto& c : phi) c *= s;
    }
    take_modulus(grid, phi);
  }

  if (!(res < problem.tol)) {
    throw ConvergenceFailure("ground state: residual " + std::to_string(res) + " above tolerance " +
                             std::to_string(problem.tol) + " after " + std::to_string(it) +
                             " iterations");
  }

  grid.backward(phi);
  for (auto& x : phi) x = Complex(std::max(x.real(), 0.0), 0.0);
  result.phi = SpectralField(problem.grid, Representation::physical, std::move(phi));
  result.residual = stationary_residual(result.phi, omega);
  result.iterations = it;
  result.used_fallback = fallback;

  const double edge = boundary_max(result.phi);
  if (edge > problem.boundary_tol) {
    throw ConvergenceFailure("ground state: |phi| = " + std::to_string(edge) +
                             " on the box faces; enlarge the box");
  }
  return result;
}

}  // namespace ewi
