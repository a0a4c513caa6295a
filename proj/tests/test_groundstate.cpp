#include <cmath>

#include "doctest.h"
#include "ewi/error.hpp"
#include "ewi/groundstate.hpp"
#include "ewi/initial.hpp"
#include "ewi/norms.hpp"
#include "helpers.hpp"

using namespace ewi;

namespace {

GroundStateResult solve(double omega, const GridPtr& g, double tol = 1e-10) {
  GroundStateProblem p;
  p.omega = omega;
  p.grid = g;
  p.tol = tol;
  return solve_ground_state(p);
}

}  // namespace

TEST_CASE("1D soliton") {
  auto g = make_cube_grid(1, -32.0, 32.0, 1024);
  const auto r = solve(1.0, g);
  SUBCASE("omega = 1 is sqrt(2) sech(x)") {
    double worst = 0.0;
    for (std::size_t k = 0; k < g->size(); ++k) {
      const double x = g->position(k)[0];
      worst = std::max(worst, std::abs(r.phi.values()[k].real() - std::sqrt(2.0) / std::cosh(x)));
    }
    CHECK(worst < 1e-6);
    CHECK(r.residual < 1e-10);
  }
  SUBCASE("scaling law phi_omega(x) = sqrt(omega) phi_1(sqrt(omega) x)") {
    auto g4 = make_cube_grid(1, -16.0, 16.0, 1024);
    const auto r4 = solve(4.0, g4);
    double worst = 0.0;
    for (int k = 0; k < 1024; ++k) {
      // g4 has half the spacing of g, so node x_k of g4 maps to node 2 x_k = x_k of g
      const int j = k;
      worst = std::max(worst, std::abs(r4.phi.values()[k].real() - 2.0 * r.phi.values()[j].real()));
    }
    CHECK(worst < 1e-6);
  }
  SUBCASE("real and nonnegative") {
    for (const auto& z : r.phi.values()) {
      CHECK(std::abs(z.imag()) <= 1e-12);
      CHECK(z.real() >= -1e-10);
    }
  }
}

TEST_CASE("2D ground state at omega = 3") {
  auto g = make_cube_grid(2, -16.0, 16.0, 512);
  const auto r = solve(3.0, g, 1e-9);
  const auto vals = r.phi.values();
  CHECK(r.residual < 1e-8);
  CHECK(stationary_residual(r.phi, 3.0) < 1e-8);
  SUBCASE("positive and radially symmetric on the grid") {
    double asym = 0.0;
    for (int i = 0; i < 512; ++i) {
      for (int j = 0; j < 512; ++j) {
        CHECK(vals[g->flatten({i, j, 0})].real() >= -1e-10);
        const double v = vals[g->flatten({i, j, 0})].real();
        asym = std::max(asym, std::abs(v - vals[g->flatten({j, i, 0})].real()));
        const int mi = (512 - i) % 512, mj = (512 - j) % 512;
        asym = std::max(asym, std::abs(v - vals[g->flatten({mi, j, 0})].real()));
        asym = std::max(asym, std::abs(v - vals[g->flatten({i, mj, 0})].real()));
      }
    }
    CHECK(asym < 1e-8);
    CHECK(boundary_max(r.phi) < 1e-10);
  }
  SUBCASE("residual decreases after the first iterations") {
    const auto& h = r.residual_history;
    REQUIRE(h.size() > 6);
    if (!r.used_fallback) {
      for (std::size_t i = 6; i < h.size(); ++i) CHECK(h[i] <= h[i - 1] * (1.0 + 1e-9));
    }
  }
  SUBCASE("doubling n changes phi by less than 1e-6") {
    auto fine = make_cube_grid(2, -16.0, 16.0, 1024);
    const auto rf = solve(3.0, fine, 1e-9);
    double worst = 0.0;
    for (int i = 0; i < 512; ++i) {
      for (int j = 0; j < 512; ++j) {
        worst = std::max(worst, std::abs(vals[g->flatten({i, j, 0})] - rf.phi.values()[fine->flatten({2 * i, 2 * j, 0})]));
      }
    }
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("ground state failures") {
  SUBCASE("iteration cap") {
    GroundStateProblem p;
    p.omega = 1.0;
    p.grid = make_cube_grid(1, -32.0, 32.0, 512);
    p.max_iter = 2;
    CHECK_THROWS_AS(solve_ground_state(p), ConvergenceFailure);
  }
  SUBCASE("box too small for the decay") {
    GroundStateProblem p;
    p.omega = 1.0;
    p.grid = make_cube_grid(1, -3.0, 3.0, 128);
    CHECK_THROWS_AS(solve_ground_state(p), ConvergenceFailure);
  }
  SUBCASE("invalid omega") {
    GroundStateProblem p;
    p.omega = 0.0;
    p.grid = make_cube_grid(1, -3.0, 3.0, 128);
    CHECK_THROWS_AS(solve_ground_state(p), std::invalid_argument);
  }
}

TEST_CASE("placing the ground state") {
  auto g = make_cube_grid(2, -8.0, 8.0, 64);
  auto big = ground_state_grid(*g);
  CHECK(big->bounds(0).lo == -16.0);
  CHECK(big->points(0) == 128);
  CHECK(big->spacing(0) == g->spacing(0));
  const auto phi = SpectralField::sample(big, [](const Point3& x) { return Complex(std::exp(-(x[0] * x[0] + x[1] * x[1]))); });
  const auto psi = place_ground_state(phi, g, {-4.0, 2.0, 0.0}, {1.0, 0.0, 0.0});
  std::size_t arg = 0;
  for (std::size_t k = 0; k < g->size(); ++k) {
    if (std::abs(psi.values()[k]) > std::abs(psi.values()[arg])) arg = k;
  }
  CHECK(g->position(arg)[0] == -4.0);
  CHECK(g->position(arg)[1] == 2.0);
  CHECK(std::abs(psi.values()[arg] - std::polar(1.0, -4.0)) < 1e-15);
  CHECK_THROWS_AS(place_ground_state(phi, g, {0.1, 0.0, 0.0}, {0, 0, 0}), std::invalid_argument);
}
