#include "ewi/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "ewi/error.hpp"
#include "ewi/field_io.hpp"
#include "ewi/rng.hpp"
#include "json.hpp"

namespace ewi {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const std::map<std::string, std::string>& key_synonyms() {
  static const std::map<std::string, std::string> m{
      {"dt", "tau"},          {"time_step", "tau"},   {"timestep", "tau"},     {"step", "tau"},
      {"dts", "tau_list"},    {"taus", "tau_list"},   {"final_time", "T"},     {"t_final", "T"},
      {"tmax", "T"},          {"N", "n"},             {"points", "n"},         {"domain", "bounds"},
      {"box", "bounds"},      {"nref", "n_ref"},      {"N_ref", "n_ref"},      {"output", "out"},
      {"output_dir", "out"},  {"stride", "snapshot_stride"}, {"type", "kind"}, {"Z", "charges"},
      {"x0", "shift"},        {"k", "momentum"},
  };
  return m;
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

void check_keys(const json& obj, const std::vector<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) != allowed.end()) continue;
    std::string msg = where + ": unknown key \"" + key + "\"";
    const std::string hint = suggest_key(key, allowed);
    if (!hint.empty()) msg += " (did you mean \"" + hint + "\"?)";
    throw ConfigError(msg);
  }
}

template <class T>
T get(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + ": missing required key \"" + key + "\"");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

template <class T>
T get_or(const json& obj, const char* key, T fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  return get<T>(obj, key, where);
}

Point3 to_point(const json& j, int dim, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    throw ConfigError(where + ": expected an array of " + std::to_string(dim) + " numbers");
  }
  Point3 p{0.0, 0.0, 0.0};
  for (int a = 0; a < dim; ++a) {
    if (!j[a].is_number()) throw ConfigError(where + ": expected numbers");
    p[a] = j[a].get<double>();
  }
  return p;
}

json from_point(const Point3& p, int dim) {
  json a = json::array();
  for (int j = 0; j < dim; ++j) a.push_back(p[j]);
  return a;
}

FilterMode parse_filter(const std::string& s) {
  if (s == "smooth") return FilterMode::smooth;
  if (s == "sharp") return FilterMode::sharp;
  if (s == "off") return FilterMode::off;
  throw ConfigError("scheme.filter: expected smooth, sharp or off, got \"" + s + "\"");
}

ExperimentKind parse_kind(const std::string& s) {
  if (s == "convergence") return ExperimentKind::convergence;
  if (s == "strichartz") return ExperimentKind::strichartz;
  if (s == "dynamics") return ExperimentKind::dynamics;
  if (s == "single-run") return ExperimentKind::single_run;
  throw ConfigError("experiment: expected convergence, strichartz, dynamics or single-run, got \"" + s +
                    "\"");
}

PotentialSpec parse_spec(const json& j, int dim, const std::string& where, bool top_level) {
  const auto kind = get<std::string>(j, "kind", where);
  std::vector<std::string> common;
  if (top_level) common = {"oversample", "regularization", "near_field", "quadrature_tol"};
  auto allow = [&](std::vector<std::string> keys) {
    keys.push_back("kind");
    keys.insert(keys.end(), common.begin(), common.end());
    check_keys(j, keys, where);
  };
  if (kind == "constant") {
    allow({"value"});
    return {ConstantPotential{get<double>(j, "value", where)}};
  }
  if (kind == "inverse_power") {
    allow({"alpha", "centers", "charges"});
    InversePower ip;
    ip.alpha = get<double>(j, "alpha", where);
    const json& centers = j.contains("centers") ? j.at("centers") : json::array({json(std::vector<double>(dim, 0.0))});
    for (const auto& c : centers) ip.centers.push_back(to_point(c, dim, where + ".centers"));
    if (j.contains("charges")) {
      ip.charges = get<std::vector<double>>(j, "charges", where);
    } else {
      ip.charges.assign(ip.centers.size(), -1.0);
    }
    if (ip.charges.size() != ip.centers.size()) {
      throw ConfigError(where + ": centers and charges differ in count");
    }
    return {ip};
  }
  if (kind == "sobolev_decay") {
    allow({"exponent", "amplitude"});
    return {SobolevDecay{get<double>(j, "exponent", where), get_or<double>(j, "amplitude", 1.0, where)}};
  }
  if (kind == "random_decay") {
    allow({"exponent", "zero_mode", "n_ref", "seed"});
    RandomDecay r;
    r.exponent = get_or<double>(j, "exponent", 1.0, where);
    r.zero_mode = get_or<double>(j, "zero_mode", 1.0, where);
    r.n_ref = get_or<int>(j, "n_ref", 0, where);
    r.seed = get_or<std::uint64_t>(j, "seed", 0, where);
    return {r};
  }
  if (kind == "sum") {
    allow({"terms"});
    PotentialSum s;
    const json& terms = j.at("terms");
    if (!terms.is_array() || terms.empty()) throw ConfigError(where + ".terms: expected a nonempty array");
    for (std::size_t i = 0; i < terms.size(); ++i) {
      s.terms.push_back(parse_spec(terms[i], dim, where + ".terms[" + std::to_string(i) + "]", false));
    }
    return {s};
  }
  throw ConfigError(where + ".kind: unknown potential kind \"" + kind +
                    "\" (expected none, constant, inverse_power, sobolev_decay, random_decay, sum, artifact)");
}

json spec_to_json(const PotentialSpec& spec, int dim) {
  return std::visit(
      overloaded{
          [](const ConstantPotential& c) { return json{{"kind", "constant"}, {"value", c.value}}; },
          [&](const InversePower& ip) {
            json centers = json::array();
            for (const auto& c : ip.centers) centers.push_back(from_point(c, dim));
            return json{{"kind", "inverse_power"}, {"alpha", ip.alpha}, {"centers", centers}, {"charges", ip.charges}};
          },
          [](const SobolevDecay& s) {
            return json{{"kind", "sobolev_decay"}, {"exponent", s.exponent}, {"amplitude", s.amplitude}};
          },
          [](const RandomDecay& r) {
            return json{{"kind", "random_decay"}, {"exponent", r.exponent}, {"zero_mode", r.zero_mode},
                        {"n_ref", r.n_ref},      {"seed", r.seed}};
          },
          [](const CustomCoefficients&) -> json {
            throw ConfigError("programmatic coefficient rules cannot be serialized");
          },
          [&](const PotentialSum& s) {
            json terms = json::array();
            for (const auto& t : s.terms) terms.push_back(spec_to_json(t, dim));
            return json{{"kind", "sum"}, {"terms", terms}};
          },
      },
      spec.value);
}

void fill_random_seeds(PotentialSpec& spec, std::uint64_t seed, bool force) {
  std::visit(overloaded{
                 [&](RandomDecay& r) {
                   if (force || r.seed == 0) r.seed = seed;
                 },
                 [&](PotentialSum& s) {
                   for (auto& t : s.terms) fill_random_seeds(t, seed, force);
                 },
                 [](auto&) {},
             },
             spec.value);
}

void collect_centers(const PotentialSpec& spec, std::vector<Point3>& out) {
  std::visit(overloaded{
                 [&](const InversePower& ip) { out.insert(out.end(), ip.centers.begin(), ip.centers.end()); },
                 [&](const PotentialSum& s) {
                   for (const auto& t : s.terms) collect_centers(t, out);
                 },
                 [](const auto&) {},
             },
             spec.value);
}

std::vector<double> powers_of_two(int from, int to) {
  std::vector<double> v;
  for (int k = from; k <= to; ++k) v.push_back(std::ldexp(1.0, -k));
  return v;
}

RunConfig parse_json(const json& root) {
  check_keys(root, {"name", "experiment", "grid", "potential", "scheme", "reference", "initial", "strichartz",
                    "dynamics", "io"},
             "config");
  RunConfig c;
  c.name = get_or<std::string>(root, "name", "custom", "config");
  c.kind = parse_kind(get<std::string>(root, "experiment", "config"));

  const json& g = root.contains("grid") ? root.at("grid") : throw ConfigError("config: missing block \"grid\"");
  check_keys(g, {"bounds", "n"}, "grid");
  const json& bounds = g.at("bounds");
  const auto n = get<std::vector<int>>(g, "n", "grid");
  if (!bounds.is_array() || bounds.size() != n.size() || n.empty() || n.size() > 3) {
    throw ConfigError("grid: bounds and n must list the same 1 to 3 axes");
  }
  for (const auto& b : bounds) {
    if (!b.is_array() || b.size() != 2) throw ConfigError("grid.bounds: each axis needs [lo, hi]");
    c.grid.bounds.push_back({b[0].get<double>(), b[1].get<double>()});
  }
  c.grid.n = n;
  const int dim = static_cast<int>(n.size());

  if (root.contains("potential")) {
    const json& p = root.at("potential");
    const auto kind = get<std::string>(p, "kind", "potential");
    if (kind == "none") {
      check_keys(p, {"kind"}, "potential");
    } else if (kind == "artifact") {
      check_keys(p, {"kind", "path"}, "potential");
      c.potential.artifact = get<std::string>(p, "path", "potential");
    } else {
      c.potential.spec = parse_spec(p, dim, "potential", true);
      auto& o = c.potential.options;
      o.oversample = get_or<int>(p, "oversample", 0, "potential");
      const auto reg = get_or<std::string>(p, "regularization", "window", "potential");
      if (reg == "window") {
        o.regularization = SingularRegularization::window;
      } else if (reg == "cell_average") {
        o.regularization = SingularRegularization::cell_average;
      } else {
        throw ConfigError("potential.regularization: expected \"window\" or \"cell_average\", got \"" +
                          reg + "\"");
      }
      o.near_field_cells = get_or<int>(p, "near_field", -1, "potential");
      o.quadrature_tol = get_or<double>(p, "quadrature_tol", 1e-8, "potential");
    }
  }

  const json& s = root.contains("scheme") ? root.at("scheme") : throw ConfigError("config: missing block \"scheme\"");
  check_keys(s, {"tau", "tau_list", "T", "beta", "sigma", "filter"}, "scheme");
  if (s.contains("tau")) c.scheme.tau = get<double>(s, "tau", "scheme");
  c.scheme.tau_list = get_or<std::vector<double>>(s, "tau_list", {}, "scheme");
  c.scheme.final_time = get<double>(s, "T", "scheme");
  c.scheme.beta = get_or<double>(s, "beta", 0.0, "scheme");
  c.scheme.sigma = get_or<double>(s, "sigma", 1.0, "scheme");
  c.scheme.filter = parse_filter(get_or<std::string>(s, "filter", "smooth", "scheme"));

  if (root.contains("reference")) {
    const json& r = root.at("reference");
    check_keys(r, {"tau", "check"}, "reference");
    c.reference = ReferenceBlock{get<double>(r, "tau", "reference"), get_or<bool>(r, "check", false, "reference")};
  }

  if (root.contains("initial")) {
    const json& i = root.at("initial");
    const auto kind = get<std::string>(i, "kind", "initial");
    if (kind == "gaussian") {
      check_keys(i, {"kind", "center", "width", "momentum"}, "initial");
      GaussianDatum gd;
      if (i.contains("center")) gd.center = to_point(i.at("center"), dim, "initial.center");
      if (i.contains("momentum")) gd.momentum = to_point(i.at("momentum"), dim, "initial.momentum");
      gd.width = get_or<double>(i, "width", 1.0, "initial");
      c.initial.value = gd;
    } else if (kind == "ground_state") {
      check_keys(i, {"kind", "omega", "shift", "momentum", "tol"}, "initial");
      GroundStateDatum gs;
      gs.omega = get<double>(i, "omega", "initial");
      if (i.contains("shift")) gs.shift = to_point(i.at("shift"), dim, "initial.shift");
      if (i.contains("momentum")) gs.momentum = to_point(i.at("momentum"), dim, "initial.momentum");
      gs.tol = get_or<double>(i, "tol", 1e-10, "initial");
      c.initial.value = gs;
    } else {
      throw ConfigError("initial.kind: expected gaussian or ground_state, got \"" + kind + "\"");
    }
  }

  if (root.contains("strichartz")) {
    const json& st = root.at("strichartz");
    check_keys(st, {"q", "r"}, "strichartz");
    try {
      c.strichartz = StrichartzBlock{Exponent::parse(get<std::string>(st, "q", "strichartz")),
                                     Exponent::parse(get<std::string>(st, "r", "strichartz"))};
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("strichartz: ") + e.what());
    }
  }

  if (root.contains("dynamics")) {
    const json& d = root.at("dynamics");
    check_keys(d, {"track_stride", "approach_radius", "ground_state_tol", "centers", "ground_state_artifact"},
               "dynamics");
    DynamicsBlock db;
    db.track_stride = get_or<std::size_t>(d, "track_stride", 10, "dynamics");
    db.approach_radius = get_or<double>(d, "approach_radius", 1.0, "dynamics");
    db.ground_state_tol = get_or<double>(d, "ground_state_tol", 1e-8, "dynamics");
    if (d.contains("centers")) {
      for (const auto& p : d.at("centers")) db.centers.push_back(to_point(p, dim, "dynamics.centers"));
    }
    if (d.contains("ground_state_artifact")) {
      db.ground_state_artifact = get<std::string>(d, "ground_state_artifact", "dynamics");
    }
    c.dynamics = db;
  }

  if (root.contains("io")) {
    const json& io = root.at("io");
    check_keys(io, {"out", "snapshot_stride", "seed", "threads"}, "io");
    c.io.out = get_or<std::string>(io, "out", "runs", "io");
    c.io.snapshot_stride = get_or<std::size_t>(io, "snapshot_stride", 0, "io");
    c.io.seed = get_or<std::uint64_t>(io, "seed", kDefaultSeed, "io");
    c.io.threads = get_or<int>(io, "threads", 1, "io");
  } else {
    c.io.seed = kDefaultSeed;
  }
  if (c.io.threads < 1) throw ConfigError("io.threads: must be >= 1");
  if (c.potential.spec) fill_random_seeds(*c.potential.spec, c.io.seed, false);

  // Experiment-specific requirements.
  switch (c.kind) {
    case ExperimentKind::convergence:
      if (c.scheme.tau_list.size() < 3) throw ConfigError("scheme.tau_list: a convergence study needs >= 3 steps");
      if (!c.reference) throw ConfigError("config: convergence needs a \"reference\" block");
      break;
    case ExperimentKind::strichartz:
      if (c.scheme.tau_list.empty()) throw ConfigError("scheme.tau_list: the probe needs step sizes");
      if (!c.strichartz) throw ConfigError("config: strichartz needs a \"strichartz\" block");
      break;
    case ExperimentKind::dynamics:
      if (!c.scheme.tau) throw ConfigError("scheme.tau: dynamics needs a time step");
      if (!std::holds_alternative<GroundStateDatum>(c.initial.value)) {
        throw ConfigError("initial: dynamics needs a ground_state datum");
      }
      if (!c.dynamics) c.dynamics = DynamicsBlock{};
      if (c.dynamics->centers.empty() && c.potential.spec) collect_centers(*c.potential.spec, c.dynamics->centers);
      break;
    case ExperimentKind::single_run:
      if (!c.scheme.tau) throw ConfigError("scheme.tau: single-run needs a time step");
      break;
  }
  return c;
}

json to_json(const RunConfig& c) {
  const int dim = static_cast<int>(c.grid.n.size());
  json root;
  root["name"] = c.name;
  root["experiment"] = to_string(c.kind);
  json bounds = json::array();
  for (const auto& b : c.grid.bounds) bounds.push_back({b.lo, b.hi});
  root["grid"] = {{"bounds", bounds}, {"n", c.grid.n}};

  if (c.potential.artifact) {
    root["potential"] = {{"kind", "artifact"}, {"path", *c.potential.artifact}};
  } else if (c.potential.spec) {
    json p = spec_to_json(*c.potential.spec, dim);
    const auto& o = c.potential.options;
    p["oversample"] = o.oversample;
    if (o.regularization == SingularRegularization::cell_average) {
      p["regularization"] = "cell_average";
      p["near_field"] = o.near_field_cells;
      p["quadrature_tol"] = o.quadrature_tol;
    }
    root["potential"] = p;
  } else {
    root["potential"] = {{"kind", "none"}};
  }

  json s;
  if (c.scheme.tau) s["tau"] = *c.scheme.tau;
  if (!c.scheme.tau_list.empty()) s["tau_list"] = c.scheme.tau_list;
  s["T"] = c.scheme.final_time;
  s["beta"] = c.scheme.beta;
  s["sigma"] = c.scheme.sigma;
  s["filter"] = to_string(c.scheme.filter);
  root["scheme"] = s;

  if (c.reference) root["reference"] = {{"tau", c.reference->tau}, {"check", c.reference->check}};

  std::visit(overloaded{
                 [&](const GaussianDatum& g) {
                   root["initial"] = {{"kind", "gaussian"},
                                      {"center", from_point(g.center, dim)},
                                      {"width", g.width},
                                      {"momentum", from_point(g.momentum, dim)}};
                 },
                 [&](const GroundStateDatum& g) {
                   root["initial"] = {{"kind", "ground_state"},
                                      {"omega", g.omega},
                                      {"shift", from_point(g.shift, dim)},
                                      {"momentum", from_point(g.momentum, dim)},
                                      {"tol", g.tol}};
                 },
             },
             c.initial.value);

  if (c.strichartz) root["strichartz"] = {{"q", c.strichartz->q.str()}, {"r", c.strichartz->r.str()}};
  if (c.dynamics) {
    json centers = json::array();
    for (const auto& p : c.dynamics->centers) centers.push_back(from_point(p, dim));
    json d{{"track_stride", c.dynamics->track_stride},
           {"approach_radius", c.dynamics->approach_radius},
           {"ground_state_tol", c.dynamics->ground_state_tol},
           {"centers", centers}};
    if (c.dynamics->ground_state_artifact) d["ground_state_artifact"] = *c.dynamics->ground_state_artifact;
    root["dynamics"] = d;
  }
  root["io"] = {{"out", c.io.out},
                {"snapshot_stride", c.io.snapshot_stride},
                {"seed", c.io.seed},
                {"threads", c.io.threads}};
  return root;
}

RunConfig make_convergence_1d(const std::string& name, double alpha) {
  RunConfig c;
  c.name = name;
  c.kind = ExperimentKind::convergence;
  c.grid = {{{-16.0, 16.0}}, {16384}};  // h = 2^-9
  c.potential.spec = PotentialSpec{InversePower{{{0.0, 0.0, 0.0}}, {-1.0}, alpha}};
  // Coarser steps are pre-asymptotic: at tau = 1/16 the explicit potential term
  // grows the L2 norm by 64% for alpha = 0.76.
  c.scheme.tau_list = powers_of_two(9, 15);
  c.scheme.final_time = 1.0;
  c.scheme.beta = 1.0;
  c.scheme.sigma = 1.0;
  c.reference = ReferenceBlock{1e-6, false};
  c.initial.value = GaussianDatum{};
  c.io.out = "runs/" + name;
  c.io.seed = kDefaultSeed;
  return c;
}

RunConfig make_convergence_2d(const std::string& name, PotentialSpec spec, int oversample) {
  RunConfig c;
  c.name = name;
  c.kind = ExperimentKind::convergence;
  c.grid = {{{-8.0, 8.0}, {-8.0, 8.0}}, {256, 256}};
  c.potential.spec = std::move(spec);
  c.potential.options.oversample = oversample;
  // Below 2^-9 the cutoff 2 / sqrt(tau) exceeds the largest grid wavenumber (50)
  // and the filter no longer acts.
  c.scheme.tau_list = powers_of_two(4, 9);
  c.scheme.final_time = 0.25;
  c.scheme.beta = -1.0;
  c.scheme.sigma = 1.0;
  c.reference = ReferenceBlock{1e-4, false};
  c.initial.value = GaussianDatum{};
  c.io.out = "runs/" + name;
  c.io.seed = kDefaultSeed;
  return c;
}

RunConfig make_convergence_3d(const std::string& name, double exponent) {
  RunConfig c;
  c.name = name;
  c.kind = ExperimentKind::convergence;
  c.grid = {{{-4.0, 4.0}, {-4.0, 4.0}, {-4.0, 4.0}}, {64, 64, 64}};
  c.potential.spec = PotentialSpec{SobolevDecay{exponent, 1.0}};
  c.potential.options.oversample = 2;
  // The potential peaks at the box corner (about 7.8e3 for exponent 0.76); from tau = 2^-8
  // down to 2^-12 the explicit potential term amplifies a mode there and the run diverges.
  c.scheme.tau_list = powers_of_two(4, 7);
  c.scheme.final_time = 1.0 / 16.0;
  c.scheme.beta = 1.0;
  c.scheme.sigma = 1.0;
  c.reference = ReferenceBlock{1e-4, false};
  c.initial.value = GaussianDatum{};
  c.io.out = "runs/" + name;
  c.io.seed = kDefaultSeed;
  return c;
}

RunConfig make_fig4() {
  RunConfig c;
  c.name = "fig4";
  c.kind = ExperimentKind::dynamics;
  c.grid = {{{-8.0, 8.0}, {-8.0, 8.0}}, {256, 256}};
  InversePower ip;
  ip.alpha = 1.0;
  ip.centers = {{-1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, -1.0, 0.0}};
  ip.charges = {-1.0, -1.0, -1.0, -1.0};
  c.potential.spec = PotentialSpec{ip};
  c.scheme.tau = 1e-3;
  c.scheme.final_time = 4.0;
  c.scheme.beta = -1.0;
  c.scheme.sigma = 1.0;
  GroundStateDatum gs;
  gs.omega = 3.0;
  gs.shift = {-4.0, 2.0, 0.0};
  gs.momentum = {1.0, 0.0, 0.0};
  c.initial.value = gs;
  DynamicsBlock d;
  d.centers = ip.centers;
  c.dynamics = d;
  c.io.out = "runs/fig4";
  c.io.snapshot_stride = 250;
  c.io.seed = kDefaultSeed;
  return c;
}

RunConfig make_strichartz_1d() {
  RunConfig c;
  c.name = "strichartz-1d";
  c.kind = ExperimentKind::strichartz;
  c.grid = {{{-16.0, 16.0}}, {1024}};
  c.scheme.tau_list = powers_of_two(3, 9);
  c.scheme.final_time = 1.0;
  c.initial.value = GaussianDatum{};
  // p0 = 2 in 1D gives (q0, r0) = (4 p0 / d, 2 p0 / (p0 - 1)) = (8, 4).
  c.strichartz = StrichartzBlock{Exponent(8), Exponent(4)};
  c.io.out = "runs/strichartz-1d";
  c.io.seed = kDefaultSeed;
  return c;
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::convergence:
      return "convergence";
    case ExperimentKind::strichartz:
      return "strichartz";
    case ExperimentKind::dynamics:
      return "dynamics";
    case ExperimentKind::single_run:
      return "single-run";
  }
  return "unknown";
}

std::string to_string(FilterMode mode) {
  switch (mode) {
    case FilterMode::smooth:
      return "smooth";
    case FilterMode::sharp:
      return "sharp";
    case FilterMode::off:
      return "off";
  }
  return "unknown";
}

std::string suggest_key(const std::string& key, const std::vector<std::string>& allowed) {
  const auto& syn = key_synonyms();
  if (auto it = syn.find(key); it != syn.end()) {
    if (std::find(allowed.begin(), allowed.end(), it->second) != allowed.end()) return it->second;
  }
  std::string best;
  std::size_t best_d = 3;
  for (const auto& a : allowed) {
    const std::size_t d = edit_distance(key, a);
    if (d < best_d) {
      best_d = d;
      best = a;
    }
  }
  return best;
}

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_json(root);
}

std::string serialize_config(const RunConfig& config) { return to_json(config).dump(2) + "\n"; }

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fig1a", "fig1b", "fig2a", "fig2b",
                                              "fig3a", "fig3b", "fig4",  "strichartz-1d"};
  return names;
}

std::string preset_summary(const std::string& name) {
  static const std::map<std::string, std::string> s{
      {"fig1a", "1D tau-sweep, V = -|x|^-0.51 on (-16,16), T = 1, beta = sigma = 1, h = 2^-9"},
      {"fig1b", "1D tau-sweep, V = -|x|^-0.76 on (-16,16), T = 1, beta = sigma = 1, h = 2^-9"},
      {"fig2a", "2D tau-sweep, Coulomb V = -1/|x| on (-8,8)^2, T = 1/4, beta = -1, n = 256^2"},
      {"fig2b", "2D tau-sweep, random Fourier potential (n_ref = 512) on (-8,8)^2, T = 1/4, beta = -1"},
      {"fig3a", "3D tau-sweep, vhat = (1+|mu|^2)^-1 on (-4,4)^3, T = 1/16, n = 64^3"},
      {"fig3b", "3D tau-sweep, vhat = (1+|mu|^2)^-0.76 on (-4,4)^3, T = 1/16, n = 64^3"},
      {"fig4", "2D dynamics of a ground-state soliton among four Coulomb centers, T = 4"},
      {"strichartz-1d", "1D discrete Strichartz probe, (q, r) = (8, 4), tau = 2^-3 .. 2^-9"},
  };
  auto it = s.find(name);
  return it == s.end() ? std::string{} : it->second;
}

RunConfig preset(const std::string& name) {
  if (name == "fig1a") return make_convergence_1d(name, 0.51);
  if (name == "fig1b") return make_convergence_1d(name, 0.76);
  if (name == "fig2a") {
    return make_convergence_2d(name, PotentialSpec{InversePower{{{0.0, 0.0, 0.0}}, {-1.0}, 1.0}}, 0);
  }
  if (name == "fig2b") {
    RandomDecay r;
    r.exponent = 1.0;
    r.zero_mode = 1.0;
    r.n_ref = 512;
    r.seed = kDefaultSeed;
    return make_convergence_2d(name, PotentialSpec{r}, 2);
  }
  if (name == "fig3a") return make_convergence_3d(name, 1.0);
  if (name == "fig3b") return make_convergence_3d(name, 0.76);
  if (name == "fig4") return make_fig4();
  if (name == "strichartz-1d") return make_strichartz_1d();
  std::string list;
  for (const auto& n : preset_names()) list += (list.empty() ? "" : ", ") + n;
  throw ConfigError("unknown preset \"" + name + "\"; valid presets: " + list);
}

RunConfig load_config(const std::string& path_or_preset) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(path_or_preset, ec)) {
    std::ifstream in(path_or_preset);
    if (!in) throw IoError(path_or_preset, "cannot open config");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
  }
  return preset(path_or_preset);
}

void override_seed(RunConfig& config, std::uint64_t seed) {
  config.io.seed = seed;
  if (config.potential.spec) fill_random_seeds(*config.potential.spec, seed, true);
}

GridPtr build_grid(const RunConfig& config) {
  try {
    return make_grid(static_cast<int>(config.grid.n.size()), config.grid.bounds, config.grid.n);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
}

std::shared_ptr<const PotentialField> build_potential(const RunConfig& config, const GridPtr& grid) {
  if (config.potential.artifact) {
    return std::make_shared<const PotentialField>(load_potential(*config.potential.artifact, grid));
  }
  if (!config.potential.spec) return nullptr;
  try {
    return std::make_shared<const PotentialField>(realize(*config.potential.spec, grid, config.potential.options));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("potential: ") + e.what());
  }
}

EwiParams build_params(const RunConfig& config, const GridPtr& grid,
                       std::shared_ptr<const PotentialField> potential) {
  EwiParams p;
  p.tau = config.scheme.tau.value_or(0.0);
  p.final_time = config.scheme.final_time;
  p.beta = config.scheme.beta;
  p.sigma = config.scheme.sigma;
  p.filter = config.scheme.filter;
  p.grid = grid;
  p.potential = std::move(potential);
  return p;
}

}  // namespace ewi
