#include "ewi/initial.hpp"

#include <cmath>
#include <stdexcept>

namespace ewi {

GridPtr ground_state_grid(const Grid& grid) {
  std::vector<Interval> bounds;
  std::vector<int> points;
  for (int j = 0; j < grid.dim(); ++j) {
    const double len = grid.length(j);
    bounds.push_back({-len, len});
    points.push_back(2 * grid.points(j));
  }
  return make_grid(grid.dim(), std::move(bounds), std::move(points));
}

SpectralField place_ground_state(const SpectralField& phi, const GridPtr& grid, const Point3& shift,
                                 const Point3& momentum) {
  const SpectralField src = from_fourier(phi);
  const Grid& g = src.grid();
  if (g.dim() != grid->dim()) throw std::invalid_argument("ground state: dimension mismatch");
  for (int j = 0; j < g.dim(); ++j) {
    if (std::abs(g.spacing(j) - grid->spacing(j)) > 1e-12 * grid->spacing(j)) {
      throw std::invalid_argument("ground state grid spacing differs from the target grid");
    }
  }
  const auto vals = src.values();
  return SpectralField::sample(grid, [&](const Point3& x) {
    Index3 idx{0, 0, 0};
    double phase = 0.0;
    for (int j = 0; j < g.dim(); ++j) {
      const double pos = (x[j] - shift[j] - g.bounds(j).lo) / g.spacing(j);
      const double k = std::round(pos);
      if (std::abs(pos - k) > 1e-6) {
        throw std::invalid_argument("shifted node does not land on the ground state grid");
      }
      if (k < 0 || k >= g.points(j)) return Complex(0.0, 0.0);
      idx[j] = static_cast<int>(k);
      phase += momentum[j] * x[j];
    }
    return vals[g.flatten(idx)] * std::polar(1.0, phase);
  });
}

SpectralField make_initial(const InitialSpec& spec, const GridPtr& grid) {
  if (const auto* g = std::get_if<GaussianDatum>(&spec.value)) {
    if (!(g->width > 0.0)) throw std::invalid_argument("Gaussian width must be positive");
    const int d = grid->dim();
    const double inv = 1.0 / (2.0 * g->width * g->width);
    return SpectralField::sample(grid, [&](const Point3& x) {
      double r2 = 0.0;
      double phase = 0.0;
      for (int j = 0; j < d; ++j) {
        r2 += (x[j] - g->center[j]) * (x[j] - g->center[j]);
        phase += g->momentum[j] * x[j];
      }
      return std::exp(-r2 * inv) * std::polar(1.0, phase);
    });
  }
  const auto& gs = std::get<GroundStateDatum>(spec.value);
  GroundStateProblem problem;
  problem.omega = gs.omega;
  problem.grid = ground_state_grid(*grid);
  problem.tol = gs.tol;
  const GroundStateResult solved = solve_ground_state(problem);
  return place_ground_state(solved.phi, grid, gs.shift, gs.momentum);
}

}  // namespace ewi
