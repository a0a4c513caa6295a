#pragma once

#include <variant>

#include "ewi/field.hpp"
#include "ewi/groundstate.hpp"

namespace ewi {

/// exp(-|x - center|^2 / (2 width^2)) e^{i k . x}
struct GaussianDatum {
  Point3 center{0.0, 0.0, 0.0};
  double width = 1.0;
  Point3 momentum{0.0, 0.0, 0.0};
};

/// phi(x - shift) e^{i k . x}, phi the positive ground state at frequency omega.
struct GroundStateDatum {
  double omega = 3.0;
  Point3 shift{0.0, 0.0, 0.0};
  Point3 momentum{0.0, 0.0, 0.0};
  double tol = 1e-10;
};

struct InitialSpec {
  std::variant<GaussianDatum, GroundStateDatum> value;
};

/// Box used to compute the ground state for a datum on `grid`: centered at
/// the origin, twice as long per axis, same spacing, so every shifted node
/// of `grid` is a node of it.
GridPtr ground_state_grid(const Grid& grid);

/// phi(x - shift) e^{i k . x} sampled on `grid`. `phi` must live on a grid
/// with the same spacing such that x - shift lands on its nodes; nodes
/// falling outside phi's box take the value 0.
SpectralField place_ground_state(const SpectralField& phi, const GridPtr& grid, const Point3& shift,
                                 const Point3& momentum);

/// Physical-space samples of the datum. Ground-state data are solved on
/// ground_state_grid(*grid).
SpectralField make_initial(const InitialSpec& spec, const GridPtr& grid);

}  // namespace ewi
