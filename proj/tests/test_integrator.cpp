#include <cmath>
#include <limits>

#include "doctest.h"
#include "ewi/fit.hpp"
#include "ewi/initial.hpp"
#include "ewi/integrator.hpp"
#include "ewi/norms.hpp"
#include "helpers.hpp"

using namespace ewi;

namespace {

EwiParams free_params(const GridPtr& g, double tau, double T) {
  EwiParams p;
  p.tau = tau;
  p.final_time = T;
  p.grid = g;
  return p;
}

SpectralField gaussian(const GridPtr& g) { return make_initial(InitialSpec{GaussianDatum{}}, g); }

std::shared_ptr<const PotentialField> inverse_power_1d(const GridPtr& g, double alpha, double shift = 0.0) {
  auto v = realize_inverse_power(InversePower{{{0, 0, 0}}, {-1.0}, alpha}, g);
  if (shift == 0.0) return std::make_shared<const PotentialField>(std::move(v));
  return std::make_shared<const PotentialField>(v + PotentialField::constant(g, shift));
}

}  // namespace

TEST_CASE("nonlinearity") {
  auto g = make_cube_grid(2, -2, 2, 8);
  SUBCASE("beta = 0 gives zero") {
    const auto out = nonlinearity(test::random_field(g, 1), 0.0, 1.0);
    CHECK(test::max_abs(out.values()) == 0.0);
  }
  SUBCASE("beta = 1, sigma = 1, psi = 2 gives 8") {
    const auto psi = SpectralField::sample(g, [](const Point3&) { return Complex(2.0); });
    const auto n = nonlinearity(psi, 1.0, 1.0);
    for (const auto& z : n.values()) CHECK(z == Complex(8.0));
  }
  SUBCASE("matches a scalar loop") {
    const auto psi = test::random_field(g, 2);
    const auto out = nonlinearity(to_fourier(psi), -1.0, 1.5);
    const auto back = from_fourier(to_fourier(psi));
    for (std::size_t k = 0; k < g->size(); ++k) {
      const Complex z = back.values()[k];
      CHECK(std::abs(out.values()[k] - (-std::pow(std::abs(z), 3.0) * z)) < 1e-14);
    }
  }
}

TEST_CASE("single step") {
  auto g = make_cube_grid(1, -8, 8, 256);
  SUBCASE("free case collapses to the free flow") {
    const Index3 l{5, 0, 0};
    const double tau = 0.01;
    const auto out = ewi_step(test::plane_wave(g, l), free_params(g, tau, 1.0));
    const double mu2 = g->mu_squared()[g->frequency_slot(l)];
    CHECK(std::abs(out.coeff_at(l) - std::polar(1.0, -tau * mu2)) < 1e-13);
  }
  SUBCASE("constant potential: closed form and local second order") {
    const double c = 1.3;
    const Index3 l{4, 0, 0};
    const double mu2 = g->mu_squared()[g->frequency_slot(l)];
    std::vector<double> errs;
    for (double tau : {0.02, 0.01, 0.005, 0.0025}) {
      EwiParams p = free_params(g, tau, 1.0);
      p.potential = std::make_shared<const PotentialField>(PotentialField::constant(g, c));
      REQUIRE(std::sqrt(tau * mu2) <= 1.0);
      const Complex got = ewi_step(test::plane_wave(g, l), p).coeff_at(l);
      const Complex formula = std::polar(1.0, -tau * mu2) - Complex(0, tau * c) * phi1(Complex(0, -tau * mu2));
      CHECK(std::abs(got - formula) < 1e-14);
      errs.push_back(std::abs(got - std::polar(1.0, -tau * (mu2 + c))));
    }
    for (std::size_t i = 1; i < errs.size(); ++i) CHECK(errs[i - 1] / errs[i] == doctest::Approx(4.0).epsilon(0.1));
  }
  SUBCASE("equals the separately composed pieces") {
    auto v = inverse_power_1d(g, 0.51);
    EwiParams p = free_params(g, 0.01, 1.0);
    p.beta = 1.0;
    p.potential = v;
    const auto psi = to_fourier(gaussian(g));
    const auto forcing = to_fourier(apply_potential(*v, psi) + to_fourier(nonlinearity(psi, 1.0, 1.0)));
    auto expect = apply(build_free_flow(g, p.tau), psi);
    expect -= Complex(0, p.tau) * apply(build_phi1(g, p.tau), apply(build_filter(g, p.tau), forcing));
    CHECK(test::max_abs_diff(ewi_step(psi, p).coeffs(), expect.coeffs()) < 1e-13);
  }
  SUBCASE("forcing increment vanishes outside the filter band") {
    auto v = inverse_power_1d(g, 0.76);
    EwiParams p = free_params(g, 0.01, 1.0);
    p.beta = -1.0;
    p.potential = v;
    const auto psi = to_fourier(test::random_field(g, 4));
    auto increment = ewi_step(psi, p) - apply(build_free_flow(g, p.tau), psi);
    for (std::size_t k = 0; k < g->size(); ++k) {
      if (std::sqrt(p.tau * g->mu_squared()[k]) >= 2.0) CHECK(std::abs(increment.coeffs()[k]) <= 1e-14);
    }
  }
  SUBCASE("filter off is the identity filter") {
    EwiParams p = free_params(g, 0.01, 1.0);
    p.filter = FilterMode::off;
    const auto filter = build_scheme_filter(p);
    for (const auto& s : filter.symbol()) CHECK(s == Complex(1.0));
  }
}

TEST_CASE("step count validation") {
  auto g = make_cube_grid(1, -1, 1, 8);
  CHECK(step_count(free_params(g, 0.25, 1.0)) == 4);
  CHECK(step_count(free_params(g, 0.1, 1.0)) == 10);
  CHECK_THROWS_AS(step_count(free_params(g, 0.3, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(step_count(free_params(g, 0.0, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(step_count(free_params(g, 0.1, 0.0)), std::invalid_argument);
  EwiParams p = free_params(g, 0.1, 1.0);
  p.sigma = 0.0;
  CHECK_THROWS_AS(step_count(p), std::invalid_argument);
  p = free_params(g, 0.1, 1.0);
  p.potential = std::make_shared<const PotentialField>(PotentialField::constant(make_cube_grid(1, -1, 1, 16), 1.0));
  CHECK_THROWS(step_count(p));
}

TEST_CASE("evolve") {
  auto g = make_cube_grid(1, -16, 16, 512);
  const auto psi0 = gaussian(g);
  SUBCASE("the first snapshot is the filtered datum") {
    const double tau = 0.05;
    const auto traj = evolve(psi0, free_params(g, tau, 0.5), 1);
    const auto expect = apply(build_filter(g, tau), psi0);
    CHECK(traj.snapshots.front().step == 0);
    CHECK(test::max_abs_diff(traj.snapshots.front().state.coeffs(), expect.coeffs()) == 0.0);
    CHECK(traj.snapshots.size() == 11);
    for (const auto& s : traj.snapshots) CHECK(s.time == static_cast<double>(s.step) * tau);
    CHECK(traj.mass_trace.size() == 11);
  }
  SUBCASE("free evolution preserves the filtered norm") {
    const double tau = 0.01;
    const auto traj = evolve(test::random_field(g, 9), free_params(g, tau, 1.0), 0);
    const double n0 = norm(apply(build_filter(g, tau), test::random_field(g, 9)), NormKind::l2());
    CHECK(std::abs(norm(traj.final().state, NormKind::l2()) - n0) < 1e-12 * n0);
    CHECK(traj.snapshots.size() == 2);
  }
  SUBCASE("two resumed halves reproduce one run bitwise") {
    EwiParams p = free_params(g, 0.01, 1.0);
    p.beta = 1.0;
    p.potential = inverse_power_1d(g, 0.51);
    const auto full = evolve(psi0, p, 0);
    EwiParams half = p;
    half.final_time = 0.5;
    const auto first = evolve(psi0, half, 0);
    const auto second = resume(first.final().state, first.final().step, 50, p, 0);
    CHECK(second.final().step == 100);
    CHECK(second.final().time == full.final().time);
    const auto a = full.final().state.coeffs(), b = second.final().state.coeffs();
    CHECK(std::equal(a.begin(), a.end(), b.begin()));
  }
  SUBCASE("non-finite state aborts with the step index") {
    auto bad = gaussian(g);
    bad.values()[17] = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
    try {
      evolve(bad, free_params(g, 0.1, 1.0), 0);
      FAIL("expected NumericalBlowup");
    } catch (const NumericalBlowup& e) {
      CHECK(e.step() == 0);
    }
  }
  SUBCASE("blow-up mid-run reports the step and last finite mass") {
    EwiParams p = free_params(g, 0.1, 1.0);
    p.beta = 1e200;
    p.sigma = 1.0;
    try {
      evolve(psi0, p, 0);
      FAIL("expected NumericalBlowup");
    } catch (const NumericalBlowup& e) {
      CHECK(e.step() >= 1);
      CHECK(std::isfinite(e.last_finite_norm()));
    }
  }
}

TEST_CASE("integrator properties on a reduced 1D setup") {
  // Same physics as the 1D convergence preset, coarser grid.
  auto g = make_cube_grid(1, -16, 16, 1024);
  const auto psi0 = gaussian(g);
  auto params = [&](double tau, double shift = 0.0) {
    EwiParams p = free_params(g, tau, 1.0);
    p.beta = 1.0;
    p.sigma = 1.0;
    p.potential = inverse_power_1d(g, 0.51, shift);
    return p;
  };
  SUBCASE("self-convergence differences halve") {
    std::vector<SpectralField> finals;
    for (int k = 5; k <= 9; ++k) finals.push_back(evolve(psi0, params(std::ldexp(1.0, -k)), 0).final().state);
    std::vector<double> diffs;
    for (std::size_t i = 0; i + 1 < finals.size(); ++i) diffs.push_back(norm(finals[i] - finals[i + 1], NormKind::l2()));
    for (std::size_t i = 0; i + 1 < diffs.size(); ++i) {
      CHECK(diffs[i] / diffs[i + 1] == doctest::Approx(2.0).epsilon(0.1));
    }
  }
  SUBCASE("gauge covariance converges at first order") {
    const double c = 0.7;
    std::vector<double> taus, errs;
    for (int k = 5; k <= 8; ++k) {
      const double tau = std::ldexp(1.0, -k);
      const auto a = evolve(psi0, params(tau), 0).final();
      const auto b = evolve(psi0, params(tau, c), 0).final();
      const auto diff = b.state - std::polar(1.0, -c * a.time) * a.state;
      taus.push_back(tau);
      errs.push_back(norm(diff, NormKind::l2()));
    }
    CHECK(fit_order(taus, errs).slope >= 0.9);
  }
}
