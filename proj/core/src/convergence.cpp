#include "ewi/convergence.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "ewi/norms.hpp"
#include "parallel.hpp"

namespace ewi {

namespace {

struct RunOutcome {
  std::optional<SpectralField> final_state;
  std::string failure;
  std::size_t steps = 0;
  double seconds = 0.0;
};

RunOutcome run_member(const SpectralField& datum, EwiParams params) {
  RunOutcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    out.steps = step_count(params);
    Trajectory traj = evolve(datum, params, 0);
    out.final_state = std::move(traj.snapshots.back().state);
  } catch (const NumericalBlowup& e) {
    out.failure = e.what();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

std::optional<OrderFit> fit_column(const std::vector<SweepRow>& rows,
                                   std::optional<double> SweepRow::*column,
                                   std::vector<std::string>& notes, const char* name) {
  std::vector<double> taus, errs;
  for (const auto& r : rows) {
    if (r.failed || !(r.*column) || !(*(r.*column) > 0.0)) continue;
    taus.push_back(r.tau);
    errs.push_back(*(r.*column));
  }
  if (taus.size() < 3) {
    notes.push_back(std::string(name) + ": fewer than 3 valid points, no order fitted");
    return std::nullopt;
  }
  return fit_order(taus, errs);
}

}  // namespace

std::size_t ConvergenceReport::failed_count() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return r.failed; }));
}

bool errors_monotone(const std::vector<double>& errors) {
  std::size_t inversions = 0;
  for (std::size_t i = 1; i < errors.size(); ++i) {
    if (!(errors[i] < errors[i - 1])) {
      if (i + 1 != errors.size()) return false;
      ++inversions;
    }
  }
  return inversions <= 1;
}

ConvergenceReport run_convergence(const SweepConfig& sweep) {
  if (sweep.tau_list.empty()) throw std::invalid_argument("sweep needs at least one tau");
  if (!sweep.l2 && !sweep.h1) throw std::invalid_argument("sweep needs at least one norm");
  std::vector<double> taus = sweep.tau_list;
  std::sort(taus.begin(), taus.end(), std::greater<>());
  const double tau_min = taus.back();
  if (!(sweep.tau_ref > 0.0) || sweep.tau_ref > tau_min / 4.0 * (1.0 + 1e-12)) {
    throw std::invalid_argument("reference step must satisfy tau_ref <= min(tau) / 4");
  }
  auto with_tau = [&](double tau) {
    EwiParams p = sweep.base;
    p.tau = tau;
    step_count(p);  // validates T / tau
    return p;
  };
  for (double t : taus) with_tau(t);
  with_tau(sweep.tau_ref);
  if (sweep.check_reference) with_tau(sweep.tau_ref / 2.0);

  const SpectralField datum = make_initial(sweep.initial, sweep.base.grid);

  // Job 0 is the reference, job 1 the optional half-step reference, then the members.
  std::vector<double> job_taus{sweep.tau_ref};
  if (sweep.check_reference) job_taus.push_back(sweep.tau_ref / 2.0);
  const std::size_t first_member = job_taus.size();
  job_taus.insert(job_taus.end(), taus.begin(), taus.end());

  std::vector<RunOutcome> outcomes(job_taus.size());
  detail::parallel_for(job_taus.size(), sweep.threads,
                       [&](std::size_t i) { outcomes[i] = run_member(datum, with_tau(job_taus[i])); });

  ConvergenceReport report;
  report.tau_ref = sweep.tau_ref;
  report.reference_seconds = outcomes[0].seconds;
  if (!outcomes[0].final_state) {
    for (std::size_t i = first_member; i < outcomes.size(); ++i) {
      SweepRow row;
      row.tau = job_taus[i];
      row.steps = outcomes[i].steps;
      row.seconds = outcomes[i].seconds;
      row.failed = true;
      row.failure = outcomes[i].final_state ? "no reference to compare against" : outcomes[i].failure;
      report.rows.push_back(std::move(row));
    }
    report.notes.push_back("reference run failed: " + outcomes[0].failure);
    report.notes.push_back("every sweep member failed");
    return report;
  }
  const SpectralField& reference = *outcomes[0].final_state;

  report.reference_norm = norm(reference, NormKind::l2());

  auto errors_against = [&](const SpectralField& ref, const SpectralField& state, SweepRow& row) {
    const SpectralField diff = ref - state;
    if (sweep.l2) row.err_l2 = norm(diff, NormKind::l2());
    if (sweep.h1) row.err_h1 = norm(diff, NormKind::h1());
  };

  for (std::size_t i = first_member; i < outcomes.size(); ++i) {
    SweepRow row;
    row.tau = job_taus[i];
    row.steps = outcomes[i].steps;
    row.seconds = outcomes[i].seconds;
    if (outcomes[i].final_state) {
      errors_against(reference, *outcomes[i].final_state, row);
    } else {
      row.failed = true;
      row.failure = outcomes[i].failure;
    }
    report.rows.push_back(std::move(row));
  }

  if (sweep.check_reference) {
    if (!outcomes[1].final_state) {
      report.reference_flagged = true;
      report.notes.push_back("half-step reference failed: " + outcomes[1].failure);
    } else if (!report.rows.front().failed) {
      SweepRow alt;
      errors_against(*outcomes[1].final_state, *outcomes[first_member].final_state, alt);
      const SweepRow& base = report.rows.front();
      double shift = 0.0;
      if (alt.err_l2) shift = std::max(shift, std::abs(*alt.err_l2 - *base.err_l2) / *base.err_l2);
      if (alt.err_h1) shift = std::max(shift, std::abs(*alt.err_h1 - *base.err_h1) / *base.err_h1);
      report.reference_shift = shift;
      report.reference_flagged = shift >= kReferenceShiftLimit;
      if (report.reference_flagged) report.notes.push_back("reference not converged: errors moved by more than 5%");
    }
  }

  double worst = 0.0;
  for (const auto& r : report.rows) {
    if (r.failed) continue;
    if (r.err_l2) worst = std::max(worst, *r.err_l2);
    if (r.err_h1) worst = std::max(worst, *r.err_h1);
  }
  if (report.failed_count() == report.rows.size()) {
    report.notes.push_back("every sweep member failed");
    return report;
  }
  if (worst <= kDegenerateRelativeError * std::max(report.reference_norm, 1e-300)) {
    report.degenerate = true;
    report.notes.push_back("degenerate: all errors at round-off level, no orders fitted");
    return report;
  }

  if (sweep.l2) report.fit_l2 = fit_column(report.rows, &SweepRow::err_l2, report.notes, "L2");
  if (sweep.h1) report.fit_h1 = fit_column(report.rows, &SweepRow::err_h1, report.notes, "H1");

  std::vector<double> e2, e1;
  for (const auto& r : report.rows) {
    if (r.failed) continue;
    if (r.err_l2) e2.push_back(*r.err_l2);
    if (r.err_h1) e1.push_back(*r.err_h1);
  }
  report.monotone_l2 = errors_monotone(e2);
  report.monotone_h1 = errors_monotone(e1);
  if (!report.monotone_l2 || !report.monotone_h1) report.notes.push_back("errors are not monotone in tau");
  return report;
}

}  // namespace ewi
