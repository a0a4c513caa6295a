#pragma once

#include <limits>

#include "ewi/field.hpp"

namespace ewi {

struct NormKind {
  enum class Tag { l2, h1, lp };

  Tag tag = Tag::l2;
  double p = 2.0;

  static NormKind l2() { return {Tag::l2, 2.0}; }
  static NormKind h1() { return {Tag::h1, 2.0}; }
  /// Discrete L^p; p = infinity gives the max norm. Throws for p < 1.
  static NormKind lp(double p);
  static NormKind linf() { return lp(std::numeric_limits<double>::infinity()); }
};

/// Discrete norms:
///   L2 = sqrt(h sum |v|^2)  (evaluated from coefficients via Parseval when available)
///   H1 = sqrt(|Omega| sum (1 + |mu|^2) |c|^2)
///   Lp = (h sum |v|^p)^(1/p), Linf = max |v|.
double norm(const SpectralField& field, NormKind kind);

/// Sum of |c_l|^2 |Omega| (1 + |mu_l|^2)^s over coefficients; s = 0 gives L2^2.
double sobolev_norm_squared(std::span<const Complex> coeffs, const Grid& grid, double s);

}  // namespace ewi
