#include "ewi/strichartz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ewi/norms.hpp"

namespace ewi {

namespace {

struct Rational {
  std::int64_t num;
  std::int64_t den;
};

Rational reduce(std::int64_t num, std::int64_t den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  return g > 0 ? Rational{num / g, den / g} : Rational{0, 1};
}

// 1 / e as a rational; 0 for infinity.
Rational reciprocal(const Exponent& e) {
  if (e.is_infinite()) return {0, 1};
  return reduce(e.den(), e.num());
}

bool less(Rational a, Rational b) { return a.num * b.den < b.num * a.den; }

}  // namespace

Exponent::Exponent(std::int64_t num, std::int64_t den) {
  if (den <= 0 || num <= 0) throw std::invalid_argument("exponent must be a positive rational");
  const Rational r = reduce(num, den);
  num_ = r.num;
  den_ = r.den;
}

Exponent Exponent::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "oo") return infinity();
  try {
    const auto slash = text.find('/');
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const long long n = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return Exponent(n);
    }
    const std::string a = text.substr(0, slash);
    const std::string b = text.substr(slash + 1);
    std::size_t ua = 0, ub = 0;
    const long long n = std::stoll(a, &ua);
    const long long d = std::stoll(b, &ub);
    if (ua != a.size() || ub != b.size()) throw std::invalid_argument(text);
    return Exponent(n, d);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("cannot parse exponent '" + text + "' (use e.g. 8, 8/3, inf)");
  }
}

double Exponent::value() const {
  return is_infinite() ? std::numeric_limits<double>::infinity()
                       : static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Exponent::str() const {
  if (is_infinite()) return "inf";
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

void check_admissible(int dim, const Exponent& q, const Exponent& r) {
  const Rational half{1, 2};
  const Rational iq = reciprocal(q);
  const Rational ir = reciprocal(r);
  if (less(half, iq) || less(half, ir)) {
    throw InadmissiblePair("(q, r) = (" + q.str() + ", " + r.str() + ") must lie in [2, inf] x [2, inf]");
  }
  // 2/q == d (1/2 - 1/r)
  const Rational lhs = reduce(2 * iq.num, iq.den);
  const Rational rhs = reduce(dim * (ir.den - 2 * ir.num), 2 * ir.den);
  if (lhs.num * rhs.den != rhs.num * lhs.den) {
    throw InadmissiblePair("(q, r) = (" + q.str() + ", " + r.str() + ") violates 2/q = d(1/2 - 1/r) for d = " +
                           std::to_string(dim) + ": 2/q = " + std::to_string(lhs.num) + "/" +
                           std::to_string(lhs.den) + " but d(1/2 - 1/r) = " + std::to_string(rhs.num) + "/" +
                           std::to_string(rhs.den));
  }
  if (dim == 2 && q == Exponent(2) && r.is_infinite()) {
    throw InadmissiblePair("(q, r, d) = (2, inf, 2) is the excluded endpoint");
  }
}

std::pair<Exponent, Exponent> strichartz_pair_for(int dim, const Exponent& p) {
  if (p.is_infinite()) return {Exponent::infinity(), Exponent(2)};
  if (!(p.num() > p.den())) throw std::invalid_argument("strichartz pair needs p > 1");
  // q = 4p/d, r = 2p/(p-1)
  const Exponent q(4 * p.num(), dim * p.den());
  const Exponent r(2 * p.num(), p.num() - p.den());
  return {q, r};
}

StrichartzReport strichartz_probe(const StrichartzConfig& cfg, const SpectralField& datum) {
  const GridPtr& grid = datum.grid_ptr();
  check_admissible(grid->dim(), cfg.q, cfg.r);
  if (!(cfg.horizon > 0.0)) throw std::invalid_argument("probe horizon must be positive");
  if (cfg.tau_list.empty()) throw std::invalid_argument("probe needs at least one tau");

  StrichartzReport report;
  report.datum_norm = norm(datum, NormKind::l2());
  if (!(report.datum_norm > 0.0)) throw std::invalid_argument("probe datum has zero L2 norm");

  std::vector<double> taus = cfg.tau_list;
  std::sort(taus.begin(), taus.end(), std::greater<>());
  const NormKind space = NormKind::lp(cfg.r.value());
  const double q = cfg.q.value();

  for (double tau : taus) {
    if (!(tau > 0.0)) throw std::invalid_argument("probe step must be positive");
    const auto steps = static_cast<std::size_t>(std::floor(cfg.horizon / tau + 1e-9));
    SpectralField u = apply(build_filter(grid, tau / 4.0, cfg.shape), datum);
    const Multiplier flow = build_free_flow(grid, tau);

    double acc = 0.0;
    for (std::size_t k = 0; k <= steps; ++k) {
      if (k > 0) flow.apply_in_place(u.coeffs());
      const double n = norm(u, space);
      if (cfg.q.is_infinite()) {
        acc = std::max(acc, n);
      } else {
        acc += tau * std::pow(n, q);
      }
    }
    StrichartzRow row;
    row.tau = tau;
    row.steps = steps;
    row.space_time_norm = cfg.q.is_infinite() ? acc : std::pow(acc, 1.0 / q);
    row.ratio = row.space_time_norm / report.datum_norm;
    report.rows.push_back(row);
  }
  report.max_ratio = report.rows.front().ratio;
  report.min_ratio = report.rows.front().ratio;
  for (const auto& r : report.rows) {
    report.max_ratio = std::max(report.max_ratio, r.ratio);
    report.min_ratio = std::min(report.min_ratio, r.ratio);
  }
  return report;
}

}  // namespace ewi
