#pragma once

#include <vector>

#include "ewi/field.hpp"

namespace ewi {

/// Positive radial solution of -Delta phi + omega phi - phi^3 = 0 on a periodic box.
struct GroundStateProblem {
  double omega = 1.0;
  GridPtr grid;
  double tol = 1e-10;
  int max_iter = 2000;
  /// Largest |phi| allowed on the box faces.
  double boundary_tol = 1e-10;
};

struct GroundStateResult {
  SpectralField phi;  // physical, real, nonnegative
  double residual = 0.0;
  int iterations = 0;
  bool used_fallback = false;
  std::vector<double> residual_history;
};

/// L2 norm of -Delta phi + omega phi - phi^3, evaluated spectrally.
double stationary_residual(const SpectralField& phi, double omega);

/// Petviashvili iteration phi <- M^{3/2} (omega - Delta)^{-1} phi^3 with
/// M = <(omega - Delta) phi, phi> / <phi^3, phi>, started from a Gaussian at
/// the box center, followed by phi <- |phi|. If the residual stalls, switches
/// to a gradient flow on the action projected back onto the Nehari manifold.
///
/// Throws ConvergenceFailure if the tolerance is not met within max_iter or
/// the solution is not small on the box faces.
GroundStateResult solve_ground_state(const GroundStateProblem& problem);

/// Largest |phi| over nodes on the lower face of every axis (the upper face
/// is the same set under periodicity).
double boundary_max(const SpectralField& phi);

}  // namespace ewi
