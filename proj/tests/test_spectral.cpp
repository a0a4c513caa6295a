#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

#include "doctest.h"
#include "ewi/grid.hpp"
#include "ewi/multiplier.hpp"
#include "ewi/norms.hpp"
#include "helpers.hpp"

using namespace ewi;
using ewi::test::kPi;

TEST_CASE("make_grid geometry") {
  SUBCASE("1D (-16,16) n=512") {
    auto g = make_grid(1, {{-16.0, 16.0}}, {512});
    CHECK(g->spacing(0) == doctest::Approx(1.0 / 16.0).epsilon(1e-15));
    CHECK(g->wave_scale(0) == doctest::Approx(kPi / 16.0).epsilon(1e-15));
    CHECK(g->frequency(0, 255) == 255);
    CHECK(g->frequency(0, 256) == -256);
    CHECK(g->node(0, 0) == -16.0);
  }
  SUBCASE("2D reference grid has h = 2^-5") {
    auto g = make_cube_grid(2, -8.0, 8.0, 512);
    CHECK(g->spacing(0) == std::ldexp(1.0, -5));
    CHECK(g->spacing(1) == std::ldexp(1.0, -5));
    CHECK(g->cell_volume() == std::ldexp(1.0, -10));
  }
  SUBCASE("(0, 2pi) n=8 gives mu_l = l") {
    auto g = make_grid(1, {{0.0, 2.0 * kPi}}, {8});
    for (int k = 0; k < 8; ++k) CHECK(g->wave_number(0, k) == doctest::Approx(g->frequency(0, k)).epsilon(1e-15));
    CHECK(g->frequency(0, 4) == -4);
  }
  SUBCASE("rejections") {
    CHECK_THROWS_AS(make_grid(4, {{0, 1}, {0, 1}, {0, 1}, {0, 1}}, {4, 4, 4, 4}), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1, {{0, 1}}, {6}), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1, {{0, 1}}, {7}), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1, {{0, 1}}, {2}), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1, {{1, 1}}, {8}), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1, {{2, 1}}, {8}), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(2, {{0, 1}}, {8}), std::invalid_argument);
  }
  SUBCASE("flat indexing is row-major, last axis fastest") {
    auto g = make_grid(3, {{0, 1}, {0, 1}, {0, 1}}, {4, 8, 16});
    CHECK(g->flatten({1, 2, 3}) == (1 * 8 + 2) * 16 + 3);
    const Index3 idx = g->unflatten(g->flatten({3, 7, 15}));
    CHECK(idx == Index3{3, 7, 15});
    CHECK(g->frequency_slot({-1, -4, 0}) == g->flatten({3, 4, 0}));
  }
}

TEST_CASE("transforms") {
  SUBCASE("constant field has coeff_0 equal to the constant") {
    auto g = make_cube_grid(2, -1.0, 3.0, 16);
    auto f = to_fourier(SpectralField::sample(g, [](const Point3&) { return Complex(2.5, -1.0); }));
    CHECK(std::abs(f.coeff_at({0, 0, 0}) - Complex(2.5, -1.0)) < 1e-15);
    double rest = 0.0;
    for (std::size_t k = 1; k < g->size(); ++k) rest = std::max(rest, std::abs(f.coeffs()[k]));
    CHECK(rest < 1e-15);
  }
  SUBCASE("plane wave has a single unit coefficient") {
    auto g = make_grid(2, {{-2.0, 2.0}, {0.0, 3.0}}, {16, 32});
    const Index3 l{3, -5, 0};
    auto f = to_fourier(test::plane_wave(g, l));
    for (std::size_t k = 0; k < g->size(); ++k) {
      const Complex expect = k == g->frequency_slot(l) ? Complex(1.0) : Complex(0.0);
      CHECK(std::abs(f.coeffs()[k] - expect) < 1e-13);
    }
  }
  SUBCASE("round trip and Parseval over a grid matrix") {
    std::vector<GridPtr> grids{make_cube_grid(1, -16, 16, 64), make_grid(1, {{0, 1}}, {4}),
                               make_grid(2, {{-8, 8}, {-2, 6}}, {32, 16}), make_cube_grid(3, -4, 4, 8),
                               make_grid(3, {{0, 1}, {0, 2}, {0, 3}}, {4, 8, 16})};
    unsigned seed = 1;
    for (const auto& g : grids) {
      const auto f = test::random_field(g, seed++);
      const auto c = to_fourier(f);
      const auto back = from_fourier(c);
      CHECK(test::max_abs_diff(back.values(), f.values()) <= 1e-12 * test::max_abs(f.values()));
      double phys = 0.0, spec = 0.0;
      for (const auto& z : f.values()) phys += std::norm(z);
      for (const auto& z : c.coeffs()) spec += std::norm(z);
      phys *= g->cell_volume();
      spec *= g->volume();
      CHECK(std::abs(phys - spec) <= 1e-12 * phys);
    }
  }
  SUBCASE("wrong representation accessors throw") {
    auto g = make_cube_grid(1, 0, 1, 8);
    auto f = SpectralField::zeros(g, Representation::physical);
    CHECK_THROWS(f.coeffs());
    CHECK_THROWS(SpectralField(g, Representation::physical, ComplexVector(7)));
  }
  SUBCASE("upsample then truncate is the identity") {
    auto g = make_cube_grid(2, -1, 1, 8);
    auto f = test::random_field(g, 7, Representation::fourier);
    auto fine = g->refined(4);
    auto up = upsample(f, fine);
    CHECK(test::max_abs_diff(truncate(up, g).coeffs(), f.coeffs()) == 0.0);
  }
}

TEST_CASE("filter") {
  auto g = make_cube_grid(1, -16, 16, 1024);
  SUBCASE("passband, stopband and closed-form transition") {
    CHECK(filter_profile(0.5, FilterShape::smooth) == 1.0);
    CHECK(filter_profile(1.0, FilterShape::smooth) == 1.0);
    CHECK(filter_profile(3.0, FilterShape::smooth) == 0.0);
    CHECK(filter_profile(2.0, FilterShape::smooth) == 0.0);
    CHECK(filter_profile(1.5, FilterShape::smooth) == doctest::Approx(0.5).epsilon(1e-15));
    using boost::multiprecision::cpp_bin_float_50;
    for (double r : {1.1, 1.3, 1.7, 1.95}) {
      const cpp_bin_float_50 t = 2 - cpp_bin_float_50(r);
      const cpp_bin_float_50 a = exp(-1 / t), b = exp(-1 / (1 - t));
      const double oracle = static_cast<double>(a / (a + b));
      CHECK(std::abs(filter_profile(r, FilterShape::smooth) - oracle) < 1e-15);
    }
    CHECK(filter_profile(1.0, FilterShape::sharp) == 1.0);
    CHECK(filter_profile(1.0000001, FilterShape::sharp) == 0.0);
  }
  SUBCASE("symbol range and monotonicity") {
    const double tau = 0.01;
    const auto m = build_filter(g, tau);
    double prev_r = -1.0, prev_v = 2.0;
    std::vector<std::pair<double, double>> pts;
    for (std::size_t k = 0; k < g->size(); ++k) {
      const double r = std::sqrt(tau * g->mu_squared()[k]);
      const Complex s = m.symbol()[k];
      CHECK(s.imag() == 0.0);
      CHECK(s.real() >= 0.0);
      CHECK(s.real() <= 1.0);
      if (r <= 1.0) CHECK(s.real() == 1.0);
      if (r >= 2.0) CHECK(s.real() == 0.0);
      pts.emplace_back(r, s.real());
    }
    std::sort(pts.begin(), pts.end());
    for (const auto& [r, v] : pts) {
      if (r > prev_r) CHECK(v <= prev_v);
      prev_r = r;
      prev_v = v;
    }
  }
  SUBCASE("low-band field passes unchanged") {
    const double tau = 0.01;  // passband |mu| <= 10, |l| <= 50
    auto f = to_fourier(test::random_field(g, 3));
    auto c = f.coeffs();
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (std::abs(g->frequency(0, static_cast<int>(k))) > 50) c[k] = 0.0;
    }
    const auto out = apply(build_filter(g, tau), f);
    CHECK(test::max_abs_diff(out.coeffs(), f.coeffs()) == 0.0);
  }
  SUBCASE("rejects tau <= 0") {
    CHECK_THROWS_AS(build_filter(g, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_filter(g, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_phi1(g, 0.0), std::invalid_argument);
  }
}

TEST_CASE("free flow") {
  auto g = make_grid(2, {{-4, 4}, {-2, 2}}, {32, 16});
  SUBCASE("t = 0 is the identity") {
    const auto m = build_free_flow(g, 0.0);
    for (const auto& s : m.symbol()) CHECK(s == Complex(1.0));
  }
  SUBCASE("plane wave picks up exp(-i t |mu|^2)") {
    const Index3 l{2, -3, 0};
    const double t = 0.37;
    const auto out = apply(build_free_flow(g, t), test::plane_wave(g, l));
    const double mu2 = g->mu_squared()[g->frequency_slot(l)];
    const Complex expect = std::polar(1.0, -t * mu2);
    for (std::size_t k = 0; k < g->size(); ++k) {
      CHECK(std::abs(out.coeffs()[k] - (k == g->frequency_slot(l) ? expect : Complex(0.0))) < 1e-13);
    }
  }
  SUBCASE("group property and isometry") {
    const auto a = build_free_flow(g, 0.3), b = build_free_flow(g, -0.85), ab = build_free_flow(g, -0.55);
    const auto comp = a.compose(b);
    CHECK(test::max_abs_diff(comp.symbol(), ab.symbol()) < 1e-12);
    const auto f = test::random_field(g, 11);
    const auto out = apply(build_free_flow(g, 1.7), f);
    CHECK(std::abs(norm(out, NormKind::l2()) - norm(f, NormKind::l2())) < 1e-12 * norm(f, NormKind::l2()));
  }
  SUBCASE("commutes with the filter") {
    const double tau = 0.05;
    const auto f = test::random_field(g, 12);
    const auto x = apply(build_filter(g, tau), apply(build_free_flow(g, tau), f));
    const auto y = apply(build_free_flow(g, tau), apply(build_filter(g, tau), f));
    CHECK(test::max_abs_diff(x.coeffs(), y.coeffs()) < 1e-13);
  }
}

TEST_CASE("phi1") {
  using boost::multiprecision::cpp_bin_float_50;
  auto oracle = [](double theta) {  // phi1(-i theta) = sin(theta)/theta + i (cos(theta) - 1)/theta
    const cpp_bin_float_50 t(theta);
    return Complex(static_cast<double>(sin(t) / t), static_cast<double>((cos(t) - 1) / t));
  };
  CHECK(phi1(Complex(0.0)) == Complex(1.0));
  CHECK(std::abs(std::abs(phi1(Complex(0.0, -kPi))) - 2.0 / kPi) < 1e-15);
  CHECK(std::abs(phi1(Complex(0.0, -1e-6)) - oracle(1e-6)) < 1e-13);
  for (double theta : {9.9e-5, 1.01e-4, 1e-3, 0.5, 3.0, 100.0, 1e6}) {
    CHECK(std::abs(phi1(Complex(0.0, -theta)) - oracle(theta)) < 1e-13);
  }
  auto g = make_cube_grid(1, -16, 16, 2048);
  const auto m = build_phi1(g, 0.01);
  CHECK(m.symbol()[0] == Complex(1.0));
  for (const auto& s : m.symbol()) CHECK(std::abs(s) <= 1.0);
}

TEST_CASE("multiplier algebra") {
  auto g = make_cube_grid(2, -3, 3, 16);
  const auto f = test::random_field(g, 21);
  const auto h = test::random_field(g, 22);
  const auto m = build_phi1(g, 0.2).compose(build_filter(g, 0.2));
  SUBCASE("identity leaves the field unchanged") {
    const auto out = apply(Multiplier::identity(g), f);
    CHECK(test::max_abs_diff(from_fourier(out).values(), f.values()) < 1e-14);
  }
  SUBCASE("linearity") {
    const Complex a(0.3, -1.2);
    const auto lhs = apply(m, a * f + h);
    const auto rhs = a * apply(m, f) + apply(m, h);
    CHECK(test::max_abs_diff(lhs.coeffs(), rhs.coeffs()) < 1e-14);
  }
  SUBCASE("composition equals sequential application") {
    const auto a = apply(m, f);
    const auto b = apply(build_phi1(g, 0.2), apply(build_filter(g, 0.2), f));
    CHECK(test::max_abs_diff(a.coeffs(), b.coeffs()) < 1e-15);
  }
  SUBCASE("grid mismatch is rejected") {
    auto other = make_cube_grid(2, -3, 3, 32);
    CHECK_THROWS(apply(Multiplier::identity(other), f));
  }
  SUBCASE("fractional laplacian of a plane wave") {
    const Index3 l{2, 1, 0};
    const auto out = apply(build_fractional_laplacian(g, 0.5), test::plane_wave(g, l));
    const double mu = std::sqrt(g->mu_squared()[g->frequency_slot(l)]);
    CHECK(std::abs(out.coeffs()[g->frequency_slot(l)] - mu) < 1e-13);
  }
}

TEST_CASE("norms") {
  SUBCASE("constant 1 on (-16,16) has L2 = sqrt(32)") {
    auto g = make_cube_grid(1, -16, 16, 256);
    const auto f = SpectralField::sample(g, [](const Point3&) { return Complex(1.0); });
    CHECK(norm(f, NormKind::l2()) == doctest::Approx(std::sqrt(32.0)).epsilon(1e-14));
    CHECK(norm(to_fourier(f), NormKind::l2()) == doctest::Approx(std::sqrt(32.0)).epsilon(1e-14));
    CHECK(norm(f, NormKind::lp(1.0)) == doctest::Approx(32.0).epsilon(1e-14));
    CHECK(norm(f, NormKind::linf()) == 1.0);
  }
  SUBCASE("plane wave H1 = sqrt((1 + |mu|^2) |Omega|)") {
    auto g = make_grid(2, {{-8, 8}, {-4, 4}}, {64, 32});
    const Index3 l{3, -2, 0};
    const auto f = test::plane_wave(g, l);
    const double mu2 = g->mu_squared()[g->frequency_slot(l)];
    CHECK(norm(f, NormKind::h1()) == doctest::Approx(std::sqrt((1 + mu2) * g->volume())).epsilon(1e-13));
  }
  SUBCASE("Gaussian on a large 1D box has L2 = pi^(1/4)") {
    auto g = make_cube_grid(1, -16, 16, 512);
    const auto f = SpectralField::sample(g, [](const Point3& x) { return Complex(std::exp(-x[0] * x[0] / 2)); });
    CHECK(std::abs(norm(f, NormKind::l2()) - std::pow(kPi, 0.25)) < 1e-8);
    // L4^4 = int e^{-2 x^2} = sqrt(pi / 2)
    CHECK(std::abs(norm(f, NormKind::lp(4.0)) - std::pow(std::sqrt(kPi / 2), 0.25)) < 1e-8);
  }
  SUBCASE("lp(2) is the L2 norm and p < 1 is rejected") {
    auto g = make_cube_grid(2, -1, 1, 8);
    const auto f = test::random_field(g, 5);
    CHECK(norm(f, NormKind::lp(2.0)) == doctest::Approx(norm(f, NormKind::l2())).epsilon(1e-14));
    CHECK_THROWS_AS(NormKind::lp(0.5), std::invalid_argument);
  }
  SUBCASE("H1 equals L2 of (1 - Delta)^(1/2) psi") {
    auto g = make_cube_grid(1, -4, 4, 64);
    const auto f = to_fourier(test::random_field(g, 9));
    SpectralField w = f;
    auto c = w.coeffs();
    for (std::size_t k = 0; k < c.size(); ++k) c[k] *= std::sqrt(1.0 + g->mu_squared()[k]);
    CHECK(norm(f, NormKind::h1()) == doctest::Approx(norm(w, NormKind::l2())).epsilon(1e-13));
  }
}
