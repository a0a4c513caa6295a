#include "ewi/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ewi/error.hpp"
#include "ewi/field_io.hpp"
#include "json.hpp"

namespace ewi {

using ojson = nlohmann::ordered_json;

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError(dir, "cannot create directory: " + ec.message());
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  out << text;
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

ojson fit_json(const std::optional<OrderFit>& fit) {
  if (!fit) return nullptr;
  return ojson{{"slope", fit->slope}, {"intercept", fit->intercept}, {"residual", fit->residual},
               {"points", fit->points}};
}

ojson grid_json(const Grid& g) {
  ojson bounds = ojson::array();
  ojson n = ojson::array();
  for (int a = 0; a < g.dim(); ++a) {
    bounds.push_back({g.bounds(a).lo, g.bounds(a).hi});
    n.push_back(g.points(a));
  }
  return ojson{{"dim", g.dim()}, {"bounds", bounds}, {"n", n}};
}

ojson grid_json(const GridBlock& g) {
  ojson bounds = ojson::array();
  for (const auto& b : g.bounds) bounds.push_back({b.lo, b.hi});
  return ojson{{"dim", g.n.size()}, {"bounds", bounds}, {"n", g.n}};
}

ojson scheme_json(const RunConfig& c) {
  ojson s{{"T", c.scheme.final_time},
          {"beta", c.scheme.beta},
          {"sigma", c.scheme.sigma},
          {"filter", to_string(c.scheme.filter)}};
  if (c.scheme.tau) s["tau"] = *c.scheme.tau;
  return s;
}

ojson header(const RunConfig& c) {
  return ojson{{"preset", c.name}, {"experiment", to_string(c.kind)}, {"seed", c.io.seed},
               {"grid", grid_json(c.grid)}, {"scheme", scheme_json(c)}};
}

std::string loglog(const ConvergenceReport& report, std::optional<double> SweepRow::*column, const char* label) {
  std::string out = std::string("# tau ") + label + "\n";
  for (const auto& r : report.rows) {
    if (r.failed || !(r.*column)) continue;
    out += fmt(r.tau) + " " + fmt(*(r.*column)) + "\n";
  }
  return out;
}

std::string step_tag(std::size_t step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%07zu", step);
  return buf;
}

}  // namespace

std::string convergence_csv(const ConvergenceReport& report) {
  std::string out = "tau,err_L2,err_H1\r\n";
  for (const auto& r : report.rows) {
    if (r.failed) continue;
    out += fmt(r.tau) + "," + (r.err_l2 ? fmt(*r.err_l2) : "") + "," + (r.err_h1 ? fmt(*r.err_h1) : "") + "\r\n";
  }
  return out;
}

std::string convergence_manifest(const RunConfig& config, const ConvergenceReport& report) {
  ojson m = header(config);
  m["tau_ref"] = report.tau_ref;
  m["reference_norm_L2"] = report.reference_norm;
  m["order_L2"] = fit_json(report.fit_l2);
  m["order_H1"] = fit_json(report.fit_h1);
  m["degenerate"] = report.degenerate;
  m["monotone_L2"] = report.monotone_l2;
  m["monotone_H1"] = report.monotone_h1;
  m["reference_shift"] = report.reference_shift ? ojson(*report.reference_shift) : ojson(nullptr);
  m["reference_flagged"] = report.reference_flagged;
  ojson rows = ojson::array();
  for (const auto& r : report.rows) {
    ojson row{{"tau", r.tau}, {"steps", r.steps}};
    row["err_L2"] = r.err_l2 ? ojson(*r.err_l2) : ojson(nullptr);
    row["err_H1"] = r.err_h1 ? ojson(*r.err_h1) : ojson(nullptr);
    row["failed"] = r.failed;
    if (r.failed) row["failure"] = r.failure;
    rows.push_back(row);
  }
  m["runs"] = rows;
  m["failed_runs"] = report.failed_count();
  m["notes"] = report.notes;
  return m.dump(2) + "\n";
}

void write_config(const std::string& dir, const RunConfig& config) {
  ensure_dir(dir);
  write_text(join(dir, "config.json"), serialize_config(config));
}

void write_convergence_report(const std::string& dir, const RunConfig& config, const ConvergenceReport& report) {
  write_config(dir, config);
  write_text(join(dir, "results.csv"), convergence_csv(report));
  write_text(join(dir, "manifest.json"), convergence_manifest(config, report));
  write_text(join(dir, "loglog_L2.dat"), loglog(report, &SweepRow::err_l2, "err_L2"));
  write_text(join(dir, "loglog_H1.dat"), loglog(report, &SweepRow::err_h1, "err_H1"));
  ojson t{{"reference_seconds", report.reference_seconds}};
  ojson runs = ojson::array();
  for (const auto& r : report.rows) runs.push_back({{"tau", r.tau}, {"seconds", r.seconds}});
  t["runs"] = runs;
  write_text(join(dir, "timings.json"), t.dump(2) + "\n");
}

void write_strichartz_report(const std::string& dir, const RunConfig& config, const StrichartzReport& report) {
  write_config(dir, config);
  std::string csv = "tau,steps,norm,ratio\r\n";
  for (const auto& r : report.rows) {
    csv += fmt(r.tau) + "," + std::to_string(r.steps) + "," + fmt(r.space_time_norm) + "," + fmt(r.ratio) + "\r\n";
  }
  write_text(join(dir, "strichartz.csv"), csv);
  ojson m = header(config);
  if (config.strichartz) {
    m["q"] = config.strichartz->q.str();
    m["r"] = config.strichartz->r.str();
  }
  m["datum_norm_L2"] = report.datum_norm;
  m["max_ratio"] = report.max_ratio;
  m["min_ratio"] = report.min_ratio;
  m["spread"] = report.min_ratio > 0.0 ? report.max_ratio / report.min_ratio : 0.0;
  write_text(join(dir, "manifest.json"), m.dump(2) + "\n");
}

void write_dynamics_report(const std::string& dir, const RunConfig& config, const DynamicsResult& result) {
  write_config(dir, config);
  const auto& snaps = result.trajectory.snapshots;
  ojson files = ojson::array();
  for (const auto& s : snaps) {
    const SpectralField v = from_fourier(s.state);
    ComplexVector rho(v.values().size());
    for (std::size_t k = 0; k < rho.size(); ++k) rho[k] = std::norm(v.values()[k]);
    const std::string name = "density_" + step_tag(s.step);
    write_field(join(dir, name + ".ewif"), SpectralField(v.grid_ptr(), Representation::physical, std::move(rho)),
                s.time);
    ojson side{{"file", name + ".ewif"}, {"quantity", "density"}, {"step", s.step}, {"time", s.time},
               {"grid", grid_json(v.grid())}, {"seed", config.io.seed}};
    if (s.step < result.trajectory.mass_trace.size()) side["mass_L2"] = result.trajectory.mass_trace[s.step];
    write_text(join(dir, name + ".json"), side.dump(2) + "\n");
    files.push_back(name + ".ewif");
  }
  if (!snaps.empty()) write_field(join(dir, "state_final.ewif"), snaps.back().state, snaps.back().time);

  std::string csv = "step,time,x,y,z\r\n";
  for (const auto& c : result.centroid_track) {
    csv += std::to_string(c.step) + "," + fmt(c.time) + "," + fmt(c.centroid[0]) + "," + fmt(c.centroid[1]) + "," +
           fmt(c.centroid[2]) + "\r\n";
  }
  write_text(join(dir, "centroid.csv"), csv);

  ojson m = header(config);
  m["ground_state_residual"] = result.ground_state_residual;
  m["mass_drift"] = result.mass_drift;
  ojson centers = ojson::array();
  if (config.dynamics) {
    for (const auto& c : config.dynamics->centers) centers.push_back({c[0], c[1], c[2]});
  }
  m["centers"] = centers;
  m["approach_order"] = result.approach_order;
  m["first_approach"] = result.first_approach() ? ojson(*result.first_approach()) : ojson(nullptr);
  m["snapshots"] = files;
  m["mass_trace"] = result.trajectory.mass_trace;
  write_text(join(dir, "manifest.json"), m.dump(2) + "\n");
}

void write_trajectory(const std::string& dir, const RunConfig& config, const Trajectory& trajectory) {
  write_config(dir, config);
  ojson files = ojson::array();
  for (const auto& s : trajectory.snapshots) {
    const std::string name = "snapshot_" + step_tag(s.step);
    write_field(join(dir, name + ".ewif"), s.state, s.time);
    ojson side{{"file", name + ".ewif"}, {"quantity", "coefficients"}, {"step", s.step}, {"time", s.time},
               {"grid", grid_json(s.state.grid())}, {"seed", config.io.seed}};
    write_text(join(dir, name + ".json"), side.dump(2) + "\n");
    files.push_back(name + ".ewif");
  }
  ojson m = header(config);
  m["snapshots"] = files;
  m["mass_trace"] = trajectory.mass_trace;
  write_text(join(dir, "manifest.json"), m.dump(2) + "\n");
}

}  // namespace ewi
