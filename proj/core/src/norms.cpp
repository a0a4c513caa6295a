#include "ewi/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ewi {

NormKind NormKind::lp(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("Lp norm needs p >= 1");
  if (p == 2.0) return l2();
  return {Tag::lp, p};
}

double sobolev_norm_squared(std::span<const Complex> coeffs, const Grid& grid, double s) {
  const auto m2 = grid.mu_squared();
  double acc = 0.0;
  if (s == 0.0) {
    for (const auto& c : coeffs) acc += std::norm(c);
  } else if (s == 1.0) {
    for (std::size_t k = 0; k < coeffs.size(); ++k) acc += (1.0 + m2[k]) * std::norm(coeffs[k]);
  } else {
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      acc += std::pow(1.0 + m2[k], s) * std::norm(coeffs[k]);
    }
  }
  return acc * grid.volume();
}

double norm(const SpectralField& field, NormKind kind) {
  switch (kind.tag) {
    case NormKind::Tag::l2:
      if (field.is_fourier()) return std::sqrt(sobolev_norm_squared(field.coeffs(), field.grid(), 0.0));
      {
        double acc = 0.0;
        for (const auto& v : field.values()) acc += std::norm(v);
        return std::sqrt(acc * field.grid().cell_volume());
      }
    case NormKind::Tag::h1: {
      const SpectralField c = to_fourier(field);
      return std::sqrt(sobolev_norm_squared(c.coeffs(), c.grid(), 1.0));
    }
    case NormKind::Tag::lp: {
      if (!(kind.p >= 1.0)) throw std::invalid_argument("Lp norm needs p >= 1");
      const SpectralField v = from_fourier(field);
      const auto vals = v.values();
      if (std::isinf(kind.p)) {
        double m = 0.0;
        for (const auto& x : vals) m = std::max(m, std::abs(x));
        return m;
      }
      double acc = 0.0;
      for (const auto& x : vals) acc += std::pow(std::abs(x), kind.p);
      return std::pow(acc * v.grid().cell_volume(), 1.0 / kind.p);
    }
  }
  throw std::logic_error("unknown norm kind");
}

}  // namespace ewi
