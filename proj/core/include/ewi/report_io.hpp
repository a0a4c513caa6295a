#pragma once

#include <string>

#include "ewi/config.hpp"
#include "ewi/convergence.hpp"
#include "ewi/dynamics.hpp"
#include "ewi/strichartz.hpp"

namespace ewi {

/// tau,err_L2,err_H1 with one row per finished sweep member (tau descending).
std::string convergence_csv(const ConvergenceReport& report);
/// Fits, residuals, seeds, notes and failures. Contains no wall-clock data,
/// so identical reports give identical bytes.
std::string convergence_manifest(const RunConfig& config, const ConvergenceReport& report);

/// Every writer also stores the resolved config as config.json. IO failures
/// raise IoError naming the path.
void write_config(const std::string& dir, const RunConfig& config);

/// results.csv, manifest.json, loglog_L2.dat, loglog_H1.dat, timings.json.
void write_convergence_report(const std::string& dir, const RunConfig& config, const ConvergenceReport& report);

/// strichartz.csv and manifest.json.
void write_strichartz_report(const std::string& dir, const RunConfig& config, const StrichartzReport& report);

/// density_<step>.ewif with .json sidecars, state_final.ewif, centroid.csv and
/// manifest.json with the mass trace.
void write_dynamics_report(const std::string& dir, const RunConfig& config, const DynamicsResult& result);

/// snapshot_<step>.ewif (coefficients) with sidecars and manifest.json.
void write_trajectory(const std::string& dir, const RunConfig& config, const Trajectory& trajectory);

}  // namespace ewi
