#include "ewi/runner.hpp"

#include <exception>
#include <ostream>

#include "ewi/error.hpp"
#include "ewi/field_io.hpp"
#include "ewi/report_io.hpp"

namespace ewi {

namespace {

int run_convergence_kind(const RunConfig& config, const GridPtr& grid,
                         std::shared_ptr<const PotentialField> v, std::ostream& log) {
  SweepConfig sweep;
  sweep.base = build_params(config, grid, std::move(v));
  sweep.tau_list = config.scheme.tau_list;
  sweep.tau_ref = config.reference->tau;
  sweep.check_reference = config.reference->check;
  sweep.initial = config.initial;
  sweep.threads = config.io.threads;
  log << "sweep over " << sweep.tau_list.size() << " tau values, reference tau = " << sweep.tau_ref << "\n";
  ConvergenceReport report;
  try {
    report = run_convergence(sweep);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  write_convergence_report(config.io.out, config, report);
  for (const auto& r : report.rows) {
    log << "  tau = " << r.tau;
    if (r.failed) {
      log << "  FAILED: " << r.failure << "\n";
      continue;
    }
    if (r.err_l2) log << "  err_L2 = " << *r.err_l2;
    if (r.err_h1) log << "  err_H1 = " << *r.err_h1;
    log << "\n";
  }
  if (report.fit_l2) log << "order L2 = " << report.fit_l2->slope << "\n";
  if (report.fit_h1) log << "order H1 = " << report.fit_h1->slope << "\n";
  for (const auto& n : report.notes) log << "note: " << n << "\n";
  return report.failed_count() == report.rows.size() ? kExitRuntime : kExitOk;
}

int run_strichartz_kind(const RunConfig& config, const GridPtr& grid, std::ostream& log) {
  StrichartzConfig probe;
  probe.q = config.strichartz->q;
  probe.r = config.strichartz->r;
  probe.horizon = config.scheme.final_time;
  probe.tau_list = config.scheme.tau_list;
  probe.shape = config.scheme.filter == FilterMode::sharp ? FilterShape::sharp : FilterShape::smooth;
  const SpectralField datum = make_initial(config.initial, grid);
  StrichartzReport report;
  try {
    report = strichartz_probe(probe, datum);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  write_strichartz_report(config.io.out, config, report);
  for (const auto& r : report.rows) log << "  tau = " << r.tau << "  ratio = " << r.ratio << "\n";
  log << "max/min ratio = " << report.max_ratio / report.min_ratio << "\n";
  return kExitOk;
}

int run_dynamics_kind(const RunConfig& config, const GridPtr& grid, std::shared_ptr<const PotentialField> v,
                      std::ostream& log) {
  DynamicsConfig dc;
  dc.params = build_params(config, grid, std::move(v));
  dc.datum = std::get<GroundStateDatum>(config.initial.value);
  const DynamicsBlock block = config.dynamics.value_or(DynamicsBlock{});
  dc.centers = block.centers;
  dc.snapshot_stride = config.io.snapshot_stride;
  dc.track_stride = block.track_stride;
  dc.approach_radius = block.approach_radius;
  dc.ground_state_tol = block.ground_state_tol;
  DynamicsResult result;
  if (block.ground_state_artifact) {
    const SpectralField phi = from_fourier(read_field(*block.ground_state_artifact));
    result = run_dynamics_demo(dc, &phi);
  } else {
    result = run_dynamics_demo(dc);
  }
  write_dynamics_report(config.io.out, config, result);
  log << "ground-state residual = " << result.ground_state_residual << "\n";
  log << "mass drift = " << result.mass_drift << "\n";
  if (auto first = result.first_approach()) {
    const Point3& c = dc.centers[*first];
    log << "first approach: center " << *first << " at (" << c[0] << ", " << c[1] << ")\n";
  } else {
    log << "no center approached\n";
  }
  return kExitOk;
}

int run_single(const RunConfig& config, const GridPtr& grid, std::shared_ptr<const PotentialField> v,
               std::ostream& log) {
  const EwiParams params = build_params(config, grid, std::move(v));
  try {
    step_count(params);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const Trajectory traj = evolve(make_initial(config.initial, grid), params, config.io.snapshot_stride);
  write_trajectory(config.io.out, config, traj);
  log << "steps = " << traj.mass_trace.size() - 1 << "  final L2 = " << traj.mass_trace.back() << "\n";
  return kExitOk;
}

}  // namespace

int run_experiment(const RunConfig& config, std::ostream& log) {
  const GridPtr grid = build_grid(config);
  auto v = config.kind == ExperimentKind::strichartz ? nullptr : build_potential(config, grid);
  log << "[" << config.name << "] " << to_string(config.kind) << " -> " << config.io.out << "\n";
  switch (config.kind) {
    case ExperimentKind::convergence:
      return run_convergence_kind(config, grid, std::move(v), log);
    case ExperimentKind::strichartz:
      return run_strichartz_kind(config, grid, log);
    case ExperimentKind::dynamics:
      return run_dynamics_kind(config, grid, std::move(v), log);
    case ExperimentKind::single_run:
      return run_single(config, grid, std::move(v), log);
  }
  return kExitOk;
}

int exit_code_for_current_exception(std::ostream& err) {
  try {
    throw;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const NumericalBlowup& e) {
    err << "aborted: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const ConvergenceFailure& e) {
    err << "aborted: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace ewi
