#pragma once

#include <optional>
#include <vector>

#include "ewi/initial.hpp"
#include "ewi/integrator.hpp"

namespace ewi {

struct DynamicsConfig {
  EwiParams params;
  GroundStateDatum datum;
  /// Attracting centers tracked for the approach order (usually the potential's centers).
  std::vector<Point3> centers;
  std::size_t snapshot_stride = 0;
  /// Centroid sampled every this many steps.
  std::size_t track_stride = 10;
  /// A center counts as approached once the density centroid is this close.
  double approach_radius = 1.0;
  /// The ground state must satisfy its stationary equation to this residual.
  double ground_state_tol = 1e-8;
};

struct CentroidSample {
  std::size_t step = 0;
  double time = 0.0;
  Point3 centroid{0.0, 0.0, 0.0};
};

struct DynamicsResult {
  Trajectory trajectory;
  std::vector<CentroidSample> centroid_track;
  /// max_n |M_n - M_0| / M_0 with M the squared L2 norm.
  double mass_drift = 0.0;
  /// Index into config.centers of the first center approached, in order of approach.
  std::vector<std::size_t> approach_order;
  double ground_state_residual = 0.0;

  std::optional<std::size_t> first_approach() const {
    if (approach_order.empty()) return std::nullopt;
    return approach_order.front();
  }
};

/// First moment of |psi|^2 over the box.
Point3 density_centroid(const SpectralField& psi);

/// Relative squared-norm drift of a mass trace of L2 norms.
double relative_mass_drift(const std::vector<double>& l2_trace);

/// Builds psi_0 = phi(x - x_0) e^{i k . x} (solving for phi unless `phi` is
/// given), then evolves with snapshots and centroid tracking. Throws
/// ConvergenceFailure when phi misses ground_state_tol.
DynamicsResult run_dynamics_demo(const DynamicsConfig& config, const SpectralField* phi = nullptr);

}  // namespace ewi
