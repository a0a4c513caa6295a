#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ewi/fit.hpp"
#include "ewi/initial.hpp"
#include "ewi/integrator.hpp"

namespace ewi {

/// Time-step sweep against a reference solution on one fixed grid.
struct SweepConfig {
  EwiParams base;  // tau is ignored
  std::vector<double> tau_list;
  double tau_ref = 0.0;
  InitialSpec initial;
  bool l2 = true;
  bool h1 = true;
  int threads = 1;
  /// Re-run the reference at tau_ref / 2 and compare the largest-tau errors.
  bool check_reference = false;
};

struct SweepRow {
  double tau = 0.0;
  std::size_t steps = 0;
  std::optional<double> err_l2;
  std::optional<double> err_h1;
  bool failed = false;
  std::string failure;
  double seconds = 0.0;
};

struct ConvergenceReport {
  std::vector<SweepRow> rows;  // tau descending
  std::optional<OrderFit> fit_l2;
  std::optional<OrderFit> fit_h1;
  std::vector<std::string> notes;
  /// All errors at round-off level relative to the reference; no orders fitted.
  bool degenerate = false;
  bool monotone_l2 = true;
  bool monotone_h1 = true;

  double tau_ref = 0.0;
  double reference_norm = 0.0;
  double reference_seconds = 0.0;
  /// Largest relative change of the largest-tau errors when the reference is
  /// recomputed at tau_ref / 2 (only with check_reference).
  std::optional<double> reference_shift;
  bool reference_flagged = false;

  std::size_t failed_count() const;
};

inline constexpr double kDegenerateRelativeError = 1e-10;
inline constexpr double kReferenceShiftLimit = 0.05;

/// Validates the sweep (tau_ref <= min(tau) / 4, every tau divides T),
/// runs the reference and every member (concurrently with `threads`), and
/// fits orders over the members that finished.
ConvergenceReport run_convergence(const SweepConfig& sweep);

/// Errors strictly decrease with tau, tolerating one inversion at the
/// smallest step. `errors` follow tau descending.
bool errors_monotone(const std::vector<double>& errors);

}  // namespace ewi
