#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "ewi/config.hpp"
#include "ewi/error.hpp"
#include "ewi/field_io.hpp"
#include "ewi/report_io.hpp"
#include "ewi/runner.hpp"
#include "helpers.hpp"

using namespace ewi;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("ewi_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kMinimal = R"({
  "experiment": "single-run",
  "grid": {"bounds": [[-4, 4]], "n": [64]},
  "scheme": {"tau": 0.125, "T": 0.5, "beta": 1},
  "initial": {"kind": "gaussian"},
  "io": {"snapshot_stride": 2}
})";

}  // namespace

TEST_CASE("presets") {
  SUBCASE("fig1a encodes the 1D setup") {
    const auto c = preset("fig1a");
    CHECK(c.kind == ExperimentKind::convergence);
    CHECK(c.grid.n == std::vector<int>{16384});
    CHECK(c.grid.bounds[0] == Interval{-16.0, 16.0});
    CHECK(c.scheme.final_time == 1.0);
    CHECK(c.scheme.beta == 1.0);
    CHECK(c.scheme.sigma == 1.0);
    const auto& ip = std::get<InversePower>(c.potential.spec->value);
    CHECK(ip.alpha == 0.51);
    CHECK(ip.charges == std::vector<double>{-1.0});
  }
  SUBCASE("every preset validates and round-trips") {
    for (const auto& name : preset_names()) {
      const auto c = preset(name);
      CHECK_FALSE(preset_summary(name).empty());
      const std::string text = serialize_config(c);
      CHECK(serialize_config(parse_config(text)) == text);
    }
  }
  SUBCASE("unknown preset lists the valid names") {
    try {
      preset("fig1c");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      const std::string msg = e.what();
      for (const auto& name : preset_names()) CHECK(msg.find(name) != std::string::npos);
    }
  }
}

TEST_CASE("config validation") {
  SUBCASE("unknown key dt suggests tau") {
    std::string text = kMinimal;
    text.replace(text.find("\"tau\""), 5, "\"dt\"");
    try {
      parse_config(text);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("\"dt\"") != std::string::npos);
      CHECK(msg.find("\"tau\"") != std::string::npos);
    }
  }
  SUBCASE("typos get the closest key") {
    CHECK(suggest_key("snapshot_strid", {"out", "snapshot_stride", "seed"}) == "snapshot_stride");
    CHECK(suggest_key("zzzzzzzz", {"out", "seed"}).empty());
  }
  SUBCASE("structural errors") {
    CHECK_THROWS_AS(parse_config("{"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"experiment": "single-run"})"), ConfigError);
    std::string text = kMinimal;
    text.replace(text.find("single-run"), 10, "sweeping");
    CHECK_THROWS_AS(parse_config(text), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"experiment": "convergence", "grid": {"bounds": [[-4, 4]], "n": [64]},
                                     "scheme": {"tau_list": [0.1, 0.05, 0.025], "T": 1}})"),
                    ConfigError);
  }
  SUBCASE("potential blocks") {
    const auto c = parse_config(R"({
      "experiment": "single-run",
      "grid": {"bounds": [[-4, 4], [-4, 4]], "n": [32, 32]},
      "potential": {"kind": "sum", "oversample": 4, "terms": [
        {"kind": "inverse_power", "alpha": 1, "centers": [[1, 0], [0, 1]], "charges": [-1, -1]},
        {"kind": "random_decay", "n_ref": 64}]},
      "scheme": {"tau": 0.01, "T": 0.1}
    })");
    CHECK(c.potential.options.oversample == 4);
    const auto& sum = std::get<PotentialSum>(c.potential.spec->value);
    CHECK(std::get<RandomDecay>(sum.terms[1].value).seed == c.io.seed);
    CHECK(c.io.seed != 0);
    CHECK_THROWS_AS(parse_config(R"({"experiment": "single-run", "grid": {"bounds": [[-4, 4]], "n": [32]},
                                     "potential": {"kind": "magic"}, "scheme": {"tau": 0.1, "T": 1}})"),
                    ConfigError);
  }
  SUBCASE("seed override reaches random terms") {
    auto c = preset("fig2b");
    override_seed(c, 99);
    CHECK(std::get<RandomDecay>(c.potential.spec->value).seed == 99);
    CHECK(c.io.seed == 99);
  }
  SUBCASE("load_config reads files and presets") {
    const auto dir = scratch("load");
    fs::create_directories(dir);
    std::ofstream(dir / "c.json") << kMinimal;
    CHECK(load_config((dir / "c.json").string()).kind == ExperimentKind::single_run);
    CHECK(load_config("fig4").kind == ExperimentKind::dynamics);
    CHECK_THROWS_AS(load_config((dir / "missing.json").string()), ConfigError);
  }
}

TEST_CASE("field artifacts") {
  auto g = make_grid(3, {{-1, 1}, {0, 2}, {-3, 3}}, {4, 8, 16});
  const auto f = test::random_field(g, 12, Representation::fourier);
  const auto dir = scratch("fields");
  SUBCASE("complex128 round trip is exact") {
    const auto path = (dir / "a.ewif").string();
    write_field(path, f, 0.75);
    const auto h = read_field_header(path);
    CHECK(h.dim == 3);
    CHECK(h.n == std::array<int, 3>{4, 8, 16});
    CHECK(h.bounds[2] == Interval{-3, 3});
    CHECK(h.representation == Representation::fourier);
    CHECK(h.count == g->size());
    double t = 0.0;
    const auto back = read_field(path, g, &t);
    CHECK(t == 0.75);
    CHECK(test::max_abs_diff(back.data(), f.data()) == 0.0);
  }
  SUBCASE("complex64 keeps single precision") {
    const auto path = (dir / "b.ewif").string();
    write_field(path, f, 0.0, Precision::complex64);
    CHECK(fs::file_size(path) == 4 + 4 * 7 + 8 * 7 + 8 + g->size() * 8);
    const auto back = read_field(path);
    CHECK(test::max_abs_diff(back.data(), f.data()) < 1e-6);
  }
  SUBCASE("corrupt and mismatched files") {
    const auto path = (dir / "c.ewif").string();
    write_field(path, f);
    CHECK_THROWS_AS(read_field(path, make_cube_grid(1, 0, 1, 8)), IoError);
    std::ofstream(dir / "junk.ewif") << "not a field";
    CHECK_THROWS_AS(read_field((dir / "junk.ewif").string()), IoError);
    CHECK_THROWS_AS(read_field((dir / "nothing.ewif").string()), IoError);
    fs::resize_file(path, 200);
    CHECK_THROWS_AS(read_field(path), IoError);
  }
  SUBCASE("potential export and reload") {
    auto g1 = make_cube_grid(1, -4, 4, 32);
    const auto v = realize_inverse_power(InversePower{{{0.5, 0, 0}}, {-1.0}, 0.5}, g1);
    const auto path = (dir / "v.ewif").string();
    save_potential(path, v);
    const auto w = load_potential(path, g1);
    CHECK(w.oversample() == v.oversample());
    CHECK(std::equal(v.fine_values().begin(), v.fine_values().end(), w.fine_values().begin()));
    // The same fine samples serve a 64-point base grid at half the oversampling.
    CHECK(load_potential(path, make_cube_grid(1, -4, 4, 64)).oversample() == v.oversample() / 2);
    CHECK_THROWS_AS(load_potential(path, make_cube_grid(1, -5, 5, 32)), IoError);
    CHECK_THROWS_AS(load_potential(path, make_cube_grid(1, -4, 4, 256)), IoError);
  }
}

TEST_CASE("reports") {
  RunConfig c = preset("fig1a");
  ConvergenceReport r;
  r.tau_ref = 1e-5;
  r.rows = {{0.1, 10, 1e-2, 1e-1, false, "", 1.0}, {0.05, 20, 5e-3, 7e-2, false, "", 2.0},
            {0.025, 40, {}, {}, true, "blew up at step 3", 3.0}};
  r.fit_l2 = OrderFit{1.0, 0.1, 0.0, 2};
  SUBCASE("csv omits failed rows and uses full precision") {
    const std::string csv = convergence_csv(r);
    CHECK(csv == "tau,err_L2,err_H1\r\n0.10000000000000001,0.01,0.10000000000000001\r\n"
                 "0.050000000000000003,0.0050000000000000001,0.070000000000000007\r\n");
  }
  SUBCASE("manifest is deterministic and carries failures") {
    const std::string m = convergence_manifest(c, r);
    CHECK(m == convergence_manifest(c, r));
    CHECK(m.find("blew up at step 3") != std::string::npos);
    CHECK(m.find("\"preset\": \"fig1a\"") != std::string::npos);
    CHECK(m.find("\"seed\"") != std::string::npos);
    CHECK(m.find("seconds") == std::string::npos);
  }
  SUBCASE("report directory contents are byte-stable") {
    const auto a = scratch("rep_a"), b = scratch("rep_b");
    write_convergence_report(a.string(), c, r);
    write_convergence_report(b.string(), c, r);
    for (const char* f : {"results.csv", "manifest.json", "loglog_L2.dat", "loglog_H1.dat", "config.json"}) {
      CHECK(fs::exists(a / f));
      CHECK(slurp(a / f) == slurp(b / f));
    }
    CHECK(fs::exists(a / "timings.json"));
    CHECK(serialize_config(load_config((a / "config.json").string())) == serialize_config(c));
  }
  SUBCASE("all-failed sweep writes no csv rows") {
    ConvergenceReport bad;
    bad.rows = {{0.1, 10, {}, {}, true, "nan", 0.0}};
    bad.notes = {"every sweep member failed"};
    CHECK(convergence_csv(bad) == "tau,err_L2,err_H1\r\n");
  }
  SUBCASE("unwritable directory surfaces the path") {
    const auto blocker = scratch("blocker");
    std::ofstream(blocker.string()) << "x";
    try {
      write_config((blocker / "sub").string(), c);
      FAIL("expected IoError");
    } catch (const IoError& e) {
      CHECK(e.path().find("blocker") != std::string::npos);
    }
  }
}

TEST_CASE("runner") {
  SUBCASE("single run writes snapshots and config") {
    auto c = parse_config(kMinimal);
    const auto dir = scratch("single");
    c.io.out = dir.string();
    std::ostringstream log;
    CHECK(run_experiment(c, log) == kExitOk);
    CHECK(fs::exists(dir / "config.json"));
    CHECK(fs::exists(dir / "manifest.json"));
    CHECK(fs::exists(dir / "snapshot_0000000.ewif"));
    CHECK(fs::exists(dir / "snapshot_0000004.ewif"));
    const auto snap = read_field((dir / "snapshot_0000004.ewif").string());
    CHECK(snap.is_fourier());
  }
  SUBCASE("all-failed sweep exits with the runtime code") {
    auto c = parse_config(R"({
      "experiment": "convergence",
      "grid": {"bounds": [[-8, 8]], "n": [64]},
      "scheme": {"tau_list": [0.25, 0.125, 0.0625], "T": 1, "beta": 1e200},
      "reference": {"tau": 0.015625},
      "initial": {"kind": "gaussian"}
    })");
    const auto dir = scratch("allfail");
    c.io.out = dir.string();
    std::ostringstream log;
    CHECK(run_experiment(c, log) == kExitRuntime);
    CHECK(slurp(dir / "results.csv") == "tau,err_L2,err_H1\r\n");
    CHECK(slurp(dir / "manifest.json").find("\"failed\": true") != std::string::npos);
  }
  SUBCASE("exception mapping") {
    std::ostringstream err;
    auto code = [&](auto ex) {
      try {
        throw ex;
      } catch (...) {
        return exit_code_for_current_exception(err);
      }
    };
    CHECK(code(ConfigError("x")) == kExitConfig);
    CHECK(code(IoError("p", "x")) == kExitIo);
    CHECK(code(NumericalBlowup(3, 1.0)) == kExitRuntime);
    CHECK(code(ConvergenceFailure("x")) == kExitRuntime);
  }
}
