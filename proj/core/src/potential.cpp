#include "ewi/potential.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ewi/rng.hpp"

namespace ewi {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool contains_inverse_power(const PotentialSpec& spec) {
  return std::visit(overloaded{
                        [](const InversePower&) { return true; },
                        [](const PotentialSum& s) {
                          return std::any_of(s.terms.begin(), s.terms.end(), contains_inverse_power);
                        },
                        [](const auto&) { return false; },
                    },
                    spec.value);
}

int resolve_oversample(const PotentialSpec& spec, const RealizeOptions& opts) {
  // Pointwise samples of a singular potential alias into the base band; the
  // windowed split has exact coefficients, so twice the base band is enough.
  const bool sampled_singularity =
      contains_inverse_power(spec) && opts.regularization == SingularRegularization::cell_average;
  const int f = opts.oversample > 0 ? opts.oversample : (sampled_singularity ? 4 : 2);
  if (f != 1 && f != 2 && f != 4 && f != 8) {
    throw std::invalid_argument("oversample factor must be 1, 2, 4 or 8, got " + std::to_string(f));
  }
  return f;
}

int resolve_near_field(int dim, const RealizeOptions& opts) {
  if (opts.near_field_cells >= 0) return opts.near_field_cells;
  static constexpr int defaults[] = {64, 8, 2};
  return defaults[dim - 1];
}

using Box = std::array<std::array<double, 2>, kMaxDim>;

// Integral of |u|^{-alpha} over a box of nonnegative offsets.
double integrate_offset_box(const Box& box, int dim, double alpha, double tol) {
  for (int j = 0; j < dim; ++j) {
    if (!(box[j][1] > box[j][0])) return 0.0;
  }
  boost::math::quadrature::tanh_sinh<double> ts;
  const double e = -alpha;
  switch (dim) {
    case 1:
      return ts.integrate([&](double u) { return std::pow(u, e); }, box[0][0], box[0][1], tol);
    case 2:
      return ts.integrate(
          [&](double u0) {
            return ts.integrate([&](double u1) { return std::pow(std::hypot(u0, u1), e); },
                                box[1][0], box[1][1], tol);
          },
          box[0][0], box[0][1], tol);
    case 3:
      return ts.integrate(
          [&](double u0) {
            return ts.integrate(
                [&](double u1) {
                  return ts.integrate(
                      [&](double u2) { return std::pow(std::hypot(u0, u1, u2), e); }, box[2][0],
                      box[2][1], tol);
                },
                box[1][0], box[1][1], tol);
          },
          box[0][0], box[0][1], tol);
    default:
      throw std::logic_error("unsupported dimension");
  }
}

// Fine-lattice coefficient array of the Fourier-rule (and constant) parts of `spec`.
void accumulate_coefficients(const PotentialSpec& spec, const Grid& fine, ComplexVector& acc) {
  const int d = fine.dim();
  auto mu_of = [&](const Index3& l) {
    Point3 mu{0.0, 0.0, 0.0};
    for (int j = 0; j < d; ++j) mu[j] = fine.wave_scale(j) * l[j];
    return mu;
  };
  auto lattice_l = [&](std::size_t flat) {
    const Index3 idx = fine.unflatten(flat);
    Index3 l{0, 0, 0};
    for (int j = 0; j < d; ++j) l[j] = fine.frequency(j, idx[j]);
    return l;
  };

  std::visit(
      overloaded{
          [&](const ConstantPotential& c) { acc[0] += c.value; },
          [&](const SobolevDecay& s) {
            const auto m2 = fine.mu_squared();
            for (std::size_t k = 0; k < acc.size(); ++k) {
              acc[k] += s.amplitude * std::pow(1.0 + m2[k], -s.exponent);
            }
          },
          [&](const CustomCoefficients& c) {
            if (!c.rule) throw std::invalid_argument("custom potential rule is empty");
            for (std::size_t k = 0; k < acc.size(); ++k) {
              const Index3 l = lattice_l(k);
              acc[k] += c.rule(l, mu_of(l));
            }
          },
          [&](const RandomDecay& r) {
            const int n_ref = r.n_ref > 0 ? r.n_ref : fine.points(0);
            if (n_ref % 2 != 0) throw std::invalid_argument("random potential n_ref must be even");
            PortableUniform uniform(r.seed);
            const int half = n_ref / 2;
            Index3 l{0, 0, 0};
            // Row-major walk over {-half, ..., half-1}^d; draws are consumed for
            // every l != 0 so the sequence does not depend on the fine grid.
            std::size_t total = 1;
            for (int j = 0; j < d; ++j) total *= static_cast<std::size_t>(n_ref);
            for (std::size_t t = 0; t < total; ++t) {
              std::size_t rem = t;
              for (int j = d - 1; j >= 0; --j) {
                l[j] = static_cast<int>(rem % n_ref) - half;
                rem /= n_ref;
              }
              bool zero = true;
              bool inside = true;
              for (int j = 0; j < d; ++j) {
                zero = zero && l[j] == 0;
                inside = inside && l[j] >= -fine.points(j) / 2 && l[j] < fine.points(j) / 2;
              }
              if (zero) {
                acc[0] += r.zero_mode;
                continue;
              }
              const double re = uniform(-1.0, 1.0);
              const double im = uniform(-1.0, 1.0);
              if (!inside) continue;
              const Point3 mu = mu_of(l);
              double m2 = 0.0;
              for (int j = 0; j < d; ++j) m2 += mu[j] * mu[j];
              acc[fine.frequency_slot(l)] += Complex(re, im) * std::pow(m2, -0.5 * r.exponent);
            }
          },
          [&](const PotentialSum& s) {
            for (const auto& term : s.terms) accumulate_coefficients(term, fine, acc);
          },
          [&](const InversePower&) {
            throw std::invalid_argument("inverse-power terms have no closed-form coefficient rule");
          },
      },
      spec.value);
}

// Confluent hypergeometric M(a, b, -x) for x >= 0 and b > a > 0.
double kummer_m_negative(double a, double b, double x) {
  if (x < 50.0) {
    // Kummer transformation turns the alternating series into a positive one.
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < 2000; ++k) {
      term *= (b - a + k) / (b + k) * x / (k + 1);
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    return std::exp(-x) * sum;
  }
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < 200; ++k) {
    const double next = term * (a + k) * (1.0 + a - b + k) / ((k + 1) * x);
    if (std::abs(next) > std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return std::exp(std::lgamma(b) - std::lgamma(b - a) - a * std::log(x)) * sum;
}

void check_inverse_power(const InversePower& spec, const Grid& grid) {
  const int d = grid.dim();
  if (!(spec.alpha > 0.0)) throw std::invalid_argument("inverse power needs alpha > 0");
  if (!(spec.alpha < d)) {
    throw std::invalid_argument("inverse power with alpha >= d is not locally integrable");
  }
  if (spec.centers.empty()) throw std::invalid_argument("inverse power needs at least one center");
  if (spec.centers.size() != spec.charges.size()) {
    throw std::invalid_argument("inverse power: centers and charges differ in count");
  }
  for (const auto& c : spec.centers) {
    for (int j = 0; j < d; ++j) {
      if (!(c[j] >= grid.bounds(j).lo && c[j] <= grid.bounds(j).hi)) {
        throw std::invalid_argument("inverse power center lies outside the box");
      }
    }
  }
}

// Z |x - c|^{-alpha} is split into Z |y|^{-alpha} exp(-|y|^2 / 2s^2), whose
// periodized Fourier coefficients are known in closed form, plus a bounded
// remainder that vanishes like |y|^{2 - alpha} at the center and is sampled
// pointwise.
std::vector<double> inverse_power_samples(const InversePower& spec, const Grid& fine) {
  const int d = fine.dim();
  check_inverse_power(spec, fine);
  double shortest = fine.bounds(0).hi - fine.bounds(0).lo;
  for (int j = 1; j < d; ++j) shortest = std::min(shortest, fine.bounds(j).hi - fine.bounds(j).lo);
  const double s = shortest / 16.0;
  const double inv2s2 = 0.5 / (s * s);
  double volume = 1.0;
  for (int j = 0; j < d; ++j) volume *= fine.bounds(j).hi - fine.bounds(j).lo;

  const auto m2 = fine.mu_squared();
  std::vector<double> radial(m2.size());
  for (std::size_t k = 0; k < m2.size(); ++k) {
    radial[k] = windowed_inverse_power_transform(d, spec.alpha, s, std::sqrt(m2[k])) / volume;
  }

  ComplexVector acc(fine.size(), Complex(0.0, 0.0));
  for (std::size_t j = 0; j < spec.centers.size(); ++j) {
    const Point3& c = spec.centers[j];
    for (std::size_t k = 0; k < acc.size(); ++k) {
      const Index3 idx = fine.unflatten(k);
      double phase = 0.0;
      for (int a = 0; a < d; ++a) {
        phase -= fine.wave_scale(a) * fine.frequency(a, idx[a]) * (c[a] - fine.bounds(a).lo);
      }
      acc[k] += spec.charges[j] * radial[k] * Complex(std::cos(phase), std::sin(phase));
    }
  }
  fine.backward(acc);

  std::vector<double> values(fine.size());
  for (std::size_t k = 0; k < values.size(); ++k) values[k] = acc[k].real();

  const int images = d == 1 ? 3 : (d == 2 ? 9 : 27);
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    const Index3 idx = fine.unflatten(flat);
    double v = 0.0;
    for (std::size_t j = 0; j < spec.centers.size(); ++j) {
      const Point3& c = spec.centers[j];
      double r2 = 0.0;
      for (int a = 0; a < d; ++a) {
        const double dx = fine.node(a, idx[a]) - c[a];
        r2 += dx * dx;
      }
      double rem = r2 > 0.0 ? -std::expm1(-r2 * inv2s2) * std::pow(r2, -0.5 * spec.alpha) : 0.0;
      for (int m = 0; m < images; ++m) {
        int code = m;
        bool origin = true;
        double y2 = 0.0;
        for (int a = 0; a < d; ++a) {
          const int shift = code % 3 - 1;
          code /= 3;
          origin = origin && shift == 0;
          const double len = fine.bounds(a).hi - fine.bounds(a).lo;
          const double dy = fine.node(a, idx[a]) - c[a] - shift * len;
          y2 += dy * dy;
        }
        if (origin || y2 * inv2s2 > 40.0) continue;
        rem -= std::exp(-y2 * inv2s2) * std::pow(y2, -0.5 * spec.alpha);
      }
      v += spec.charges[j] * rem;
    }
    values[flat] += v;
  }
  return values;
}

std::vector<double> cell_average_samples(const InversePower& spec, const Grid& fine, int near_field,
                                         double tol) {
  const int d = fine.dim();
  check_inverse_power(spec, fine);
  std::vector<double> values(fine.size(), 0.0);
  for (std::size_t j = 0; j < spec.centers.size(); ++j) {
    const Point3& c = spec.centers[j];
    const double z = spec.charges[j];

    // Node index box whose dual cells lie within near_field rings of the center.
    std::array<int, kMaxDim> kmin{0, 0, 0};
    std::array<int, kMaxDim> kmax{0, 0, 0};
    for (int a = 0; a < d; ++a) {
      const double h = fine.spacing(a);
      const double kc = (c[a] - fine.bounds(a).lo) / h;
      kmin[a] = std::max(0, static_cast<int>(std::ceil(kc - near_field - 0.5)));
      kmax[a] = std::min(fine.points(a) - 1, static_cast<int>(std::floor(kc + near_field + 0.5)));
    }

    for (std::size_t flat = 0; flat < values.size(); ++flat) {
      const Index3 idx = fine.unflatten(flat);
      bool near = true;
      for (int a = 0; a < d; ++a) near = near && idx[a] >= kmin[a] && idx[a] <= kmax[a];
      if (near) continue;
      double r2 = 0.0;
      for (int a = 0; a < d; ++a) {
        const double dx = fine.node(a, idx[a]) - c[a];
        r2 += dx * dx;
      }
      values[flat] += z * std::pow(r2, -0.5 * spec.alpha);
    }

    Index3 idx{0, 0, 0};
    for (idx[0] = kmin[0]; idx[0] <= kmax[0]; ++idx[0]) {
      for (idx[1] = kmin[1]; idx[1] <= (d > 1 ? kmax[1] : 0); ++idx[1]) {
        for (idx[2] = kmin[2]; idx[2] <= (d > 2 ? kmax[2] : 0); ++idx[2]) {
          Point3 lo{0.0, 0.0, 0.0};
          Point3 hi{0.0, 0.0, 0.0};
          for (int a = 0; a < d; ++a) {
            const double x = fine.node(a, idx[a]);
            lo[a] = x - 0.5 * fine.spacing(a);
            hi[a] = x + 0.5 * fine.spacing(a);
          }
          values[fine.flatten(idx)] += inverse_power_cell_average(lo, hi, d, c, z, spec.alpha, tol);
        }
      }
    }
  }
  return values;
}

}  // namespace

bool is_fourier_rule(const PotentialSpec& spec) { return !contains_inverse_power(spec); }

double windowed_inverse_power_transform(int dim, double alpha, double width, double mu) {
  const double a = 0.5 * (dim - alpha);
  const double b = 0.5 * dim;
  const double x = 0.5 * width * width * mu * mu;
  const double pre = std::exp(0.5 * dim * std::log(std::numbers::pi) + a * std::log(2.0 * width * width) +
                              std::lgamma(a) - std::lgamma(b));
  return pre * kummer_m_negative(a, b, x);
}

double inverse_power_cell_average(const Point3& lo, const Point3& hi, int dim, const Point3& center,
                                  double charge, double alpha, double tol) {
  // Per axis, fold the offset interval [lo - c, hi - c] onto u >= 0 pieces.
  std::array<std::vector<std::array<double, 2>>, kMaxDim> pieces;
  double volume = 1.0;
  for (int a = 0; a < dim; ++a) {
    const double l = lo[a] - center[a];
    const double h = hi[a] - center[a];
    volume *= h - l;
    if (l >= 0.0) {
      pieces[a].push_back({l, h});
    } else if (h <= 0.0) {
      pieces[a].push_back({-h, -l});
    } else {
      pieces[a].push_back({0.0, -l});
      pieces[a].push_back({0.0, h});
    }
  }
  for (int a = dim; a < kMaxDim; ++a) pieces[a].push_back({0.0, 0.0});

  double total = 0.0;
  for (const auto& p0 : pieces[0]) {
    for (const auto& p1 : pieces[1]) {
      for (const auto& p2 : pieces[2]) {
        const Box box{p0, p1, p2};
        total += integrate_offset_box(box, dim, alpha, tol);
      }
    }
  }
  return charge * total / volume;
}

PotentialField::PotentialField(GridPtr grid, int oversample, std::vector<double> fine_values)
    : grid_(std::move(grid)), oversample_(oversample), fine_values_(std::move(fine_values)) {
  if (!grid_) throw std::invalid_argument("potential needs a grid");
  fine_grid_ = oversample_ == 1 ? grid_ : grid_->refined(oversample_);
  if (fine_values_.size() != fine_grid_->size()) {
    throw std::invalid_argument("potential samples do not match the oversampled grid");
  }
  band_ = std::make_shared<const std::vector<std::size_t>>(band_map(*grid_, *fine_grid_));
  ComplexVector fine(fine_values_.begin(), fine_values_.end());
  fine_grid_->forward(fine);
  coeffs_.resize(grid_->size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] = fine[(*band_)[k]];
}

PotentialField PotentialField::constant(GridPtr grid, double value) {
  const std::size_t n = grid->size();
  PotentialField p(std::move(grid), 1, std::vector<double>(n, value));
  p.constant_ = value;
  return p;
}

SpectralField PotentialField::fine_coeffs() const {
  ComplexVector fine(fine_values_.begin(), fine_values_.end());
  fine_grid_->forward(fine);
  return SpectralField(fine_grid_, Representation::fourier, std::move(fine));
}

PotentialField PotentialField::operator+(const PotentialField& other) const {
  if (!same_grid(grid_, other.grid_)) throw std::invalid_argument("potential sum: grid mismatch");
  if (constant_ && other.constant_) return constant(grid_, *constant_ + *other.constant_);
  // A constant term is exact at any oversampling.
  if (constant_ || other.constant_) {
    const PotentialField& base = constant_ ? other : *this;
    const double c = constant_ ? *constant_ : *other.constant_;
    std::vector<double> v(base.fine_values_);
    for (auto& x : v) x += c;
    return PotentialField(grid_, base.oversample_, std::move(v));
  }
  if (oversample_ != other.oversample_) {
    throw std::invalid_argument("potential sum: oversampling factors differ");
  }
  std::vector<double> v(fine_values_);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] += other.fine_values_[k];
  return PotentialField(grid_, oversample_, std::move(v));
}

void PotentialField::apply(std::span<const Complex> psi, std::span<Complex> out,
                           ComplexVector& workspace) const {
  if (psi.size() != grid_->size() || out.size() != grid_->size()) {
    throw std::invalid_argument("potential apply: size mismatch");
  }
  if (constant_) {
    for (std::size_t k = 0; k < psi.size(); ++k) out[k] = *constant_ * psi[k];
    return;
  }
  const auto& band = *band_;
  workspace.assign(fine_grid_->size(), Complex(0.0, 0.0));
  for (std::size_t k = 0; k < band.size(); ++k) workspace[band[k]] = psi[k];
  fine_grid_->backward(workspace);
  for (std::size_t m = 0; m < workspace.size(); ++m) workspace[m] *= fine_values_[m];
  fine_grid_->forward(workspace);
  for (std::size_t k = 0; k < band.size(); ++k) out[k] = workspace[band[k]];
}

PotentialField realize_inverse_power(const InversePower& spec, const GridPtr& grid,
                                     const RealizeOptions& opts) {
  const PotentialSpec wrapped{spec};
  const int f = resolve_oversample(wrapped, opts);
  const GridPtr fine = f == 1 ? grid : grid->refined(f);
  auto values = opts.regularization == SingularRegularization::cell_average
                    ? cell_average_samples(spec, *fine, resolve_near_field(grid->dim(), opts),
                                           opts.quadrature_tol)
                    : inverse_power_samples(spec, *fine);
  return PotentialField(grid, f, std::move(values));
}

PotentialField realize_fourier(const PotentialSpec& spec, const GridPtr& grid,
                               const RealizeOptions& opts) {
  if (!is_fourier_rule(spec)) throw std::invalid_argument("realize_fourier: spec has inverse-power terms");
  const int f = resolve_oversample(spec, opts);
  const GridPtr fine = f == 1 ? grid : grid->refined(f);
  ComplexVector acc(fine->size());
  accumulate_coefficients(spec, *fine, acc);
  fine->backward(acc);
  std::vector<double> values(acc.size());
  for (std::size_t k = 0; k < acc.size(); ++k) values[k] = acc[k].real();
  return PotentialField(grid, f, std::move(values));
}

PotentialField realize(const PotentialSpec& spec, const GridPtr& grid, const RealizeOptions& opts) {
  if (const auto* c = std::get_if<ConstantPotential>(&spec.value)) {
    return PotentialField::constant(grid, c->value);
  }
  if (const auto* ip = std::get_if<InversePower>(&spec.value)) {
    return realize_inverse_power(*ip, grid, opts);
  }
  if (is_fourier_rule(spec)) return realize_fourier(spec, grid, opts);

  // Mixed sum: every term shares one oversampled grid.
  const auto& sum = std::get<PotentialSum>(spec.value);
  RealizeOptions shared = opts;
  shared.oversample = resolve_oversample(spec, opts);
  const GridPtr fine = shared.oversample == 1 ? grid : grid->refined(shared.oversample);
  std::vector<double> total(fine->size(), 0.0);
  for (const auto& term : sum.terms) {
    const PotentialField p = realize(term, grid, shared);
    if (p.constant_value()) {
      for (auto& v : total) v += *p.constant_value();
      continue;
    }
    const auto v = p.fine_values();
    for (std::size_t k = 0; k < total.size(); ++k) total[k] += v[k];
  }
  return PotentialField(grid, shared.oversample, std::move(total));
}

SpectralField apply_potential(const PotentialField& potential, const SpectralField& psi) {
  if (!same_grid(potential.grid_ptr(), psi.grid_ptr())) {
    throw std::invalid_argument("apply_potential: grid mismatch");
  }
  const SpectralField c = to_fourier(psi);
  SpectralField out = SpectralField::zeros(psi.grid_ptr());
  ComplexVector workspace;
  potential.apply(c.coeffs(), out.coeffs(), workspace);
  return out;
}

}  // namespace ewi
