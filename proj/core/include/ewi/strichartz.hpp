#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ewi/multiplier.hpp"

namespace ewi {

/// Exponent in [1, inf] stored as an exact rational (den == 0 means infinity).
class Exponent {
 public:
  Exponent(std::int64_t num, std::int64_t den = 1);
  static Exponent infinity() { return Exponent(); }
  /// Accepts "8", "8/3", "inf".
  static Exponent parse(const std::string& text);

  bool is_infinite() const noexcept { return den_ == 0; }
  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double value() const;
  std::string str() const;

  bool operator==(const Exponent&) const = default;

 private:
  Exponent() : num_(1), den_(0) {}
  std::int64_t num_;
  std::int64_t den_;
};

class InadmissiblePair : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requires q, r in [2, inf], 2/q = d (1/2 - 1/r) exactly, and (q, r, d) != (2, inf, 2).
/// Throws InadmissiblePair naming the violated condition.
void check_admissible(int dim, const Exponent& q, const Exponent& r);

/// Admissible pair (4 p / d, 2 p / (p - 1)) attached to a spatial exponent p > 1.
std::pair<Exponent, Exponent> strichartz_pair_for(int dim, const Exponent& p);

struct StrichartzConfig {
  Exponent q{2};
  Exponent r{2};
  double horizon = 1.0;
  std::vector<double> tau_list;
  FilterShape shape = FilterShape::smooth;
};

struct StrichartzRow {
  double tau = 0.0;
  std::size_t steps = 0;
  double space_time_norm = 0.0;
  double ratio = 0.0;
};

struct StrichartzReport {
  std::vector<StrichartzRow> rows;  // tau descending
  double datum_norm = 0.0;
  double max_ratio = 0.0;
  double min_ratio = 0.0;
};

/// For each tau: || S_tau(k tau) phi ||_{l^q_tau([0, T]; L^r)} / ||phi||_{L2} with
/// S_tau(t) = e^{i t Delta} Pi_{tau/4}, the time norm being
/// (tau sum_{k tau in [0, T]} ||.||_{L^r}^q)^{1/q} (max over k when q = inf).
StrichartzReport strichartz_probe(const StrichartzConfig& cfg, const SpectralField& datum);

}  // namespace ewi
