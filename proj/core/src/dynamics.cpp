#include "ewi/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ewi/error.hpp"
#include "ewi/groundstate.hpp"

namespace ewi {

Point3 density_centroid(const SpectralField& psi) {
  const SpectralField v = from_fourier(psi);
  const Grid& g = v.grid();
  const auto vals = v.values();
  Point3 acc{0.0, 0.0, 0.0};
  double mass = 0.0;
  for (std::size_t k = 0; k < vals.size(); ++k) {
    const double rho = std::norm(vals[k]);
    const Point3 x = g.position(k);
    for (int j = 0; j < g.dim(); ++j) acc[j] += rho * x[j];
    mass += rho;
  }
  if (mass > 0.0) {
    for (auto& a : acc) a /= mass;
  }
  return acc;
}

double relative_mass_drift(const std::vector<double>& trace) {
  if (trace.empty()) return 0.0;
  const double m0 = trace.front() * trace.front();
  double drift = 0.0;
  for (double n : trace) drift = std::max(drift, std::abs(n * n - m0));
  return m0 > 0.0 ? drift / m0 : drift;
}

DynamicsResult run_dynamics_demo(const DynamicsConfig& config, const SpectralField* phi) {
  const GridPtr& grid = config.params.grid;
  if (!grid) throw std::invalid_argument("dynamics demo needs a grid");

  DynamicsResult result;
  SpectralField datum = SpectralField::zeros(grid, Representation::physical);
  if (phi) {
    const double res = stationary_residual(*phi, config.datum.omega);
    if (!(res < config.ground_state_tol)) {
      throw ConvergenceFailure("supplied ground state has residual " + std::to_string(res) +
                               " above " + std::to_string(config.ground_state_tol));
    }
    result.ground_state_residual = res;
    datum = place_ground_state(*phi, grid, config.datum.shift, config.datum.momentum);
  } else {
    GroundStateProblem problem;
    problem.omega = config.datum.omega;
    problem.grid = ground_state_grid(*grid);
    problem.tol = std::min(config.datum.tol, config.ground_state_tol);
    const GroundStateResult gs = solve_ground_state(problem);
    result.ground_state_residual = gs.residual;
    datum = place_ground_state(gs.phi, grid, config.datum.shift, config.datum.momentum);
  }

  const std::size_t track = std::max<std::size_t>(1, config.track_stride);
  std::vector<bool> visited(config.centers.size(), false);
  auto observer = [&](std::size_t step, const SpectralField& psi) {
    if (step % track != 0) return;
    const Point3 c = density_centroid(psi);
    result.centroid_track.push_back({step, static_cast<double>(step) * config.params.tau, c});
    for (std::size_t j = 0; j < config.centers.size(); ++j) {
      if (visited[j]) continue;
      double d2 = 0.0;
      for (int a = 0; a < grid->dim(); ++a) {
        const double dx = c[a] - config.centers[j][a];
        d2 += dx * dx;
      }
      if (std::sqrt(d2) <= config.approach_radius) {
        visited[j] = true;
        result.approach_order.push_back(j);
      }
    }
  };

  result.trajectory = evolve(datum, config.params, config.snapshot_stride, observer);
  result.mass_drift = relative_mass_drift(result.trajectory.mass_trace);
  return result;
}

}  // namespace ewi
