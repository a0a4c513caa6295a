#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ewi/config.hpp"
#include "ewi/error.hpp"
#include "ewi/field_io.hpp"
#include "ewi/norms.hpp"
#include "ewi/runner.hpp"

namespace {

void inspect(const std::string& path) {
  const ewi::FieldHeader h = ewi::read_field_header(path);
  std::cout << "format version " << h.version << "\n"
            << "dimension      " << h.dim << "\n"
            << "precision      " << (h.precision == ewi::Precision::complex64 ? "complex64" : "complex128") << "\n"
            << "representation " << (h.representation == ewi::Representation::fourier ? "fourier" : "physical")
            << "\n";
  for (int a = 0; a < h.dim; ++a) {
    std::cout << "axis " << a << "         n = " << h.n[a] << " on (" << h.bounds[a].lo << ", " << h.bounds[a].hi
              << ")\n";
  }
  std::cout << "time           " << h.time << "\n";
  const ewi::SpectralField f = ewi::read_field(path);
  std::cout << "L2 norm        " << ewi::norm(f, ewi::NormKind::l2()) << "\n"
            << "max modulus    " << ewi::norm(f, ewi::NormKind::linf()) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Filtered exponential wave integrator for the NLSE with singular potentials"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a preset or a JSON config");
  std::string preset_name, config_path, out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::size_t> stride;
  auto* preset_opt = run->add_option("--preset", preset_name, "Preset name (see list-presets)");
  auto* config_opt = run->add_option("--config", config_path, "Path to a JSON config")->check(CLI::ExistingFile);
  preset_opt->excludes(config_opt);
  run->add_option("--out", out_dir, "Output directory (overrides io.out)");
  run->add_option("--seed", seed, "Seed for random potentials");
  run->add_option("--threads", threads, "Concurrent sweep members")->check(CLI::PositiveNumber);
  run->add_option("--snapshot-stride", stride, "Steps between stored snapshots");

  auto* list = app.add_subcommand("list-presets", "List the built-in presets");
  bool dump = false;
  list->add_flag("--json", dump, "Print each preset's resolved config");

  auto* insp = app.add_subcommand("inspect", "Print the header and norms of a field artifact");
  std::string artifact;
  insp->add_option("file", artifact, "Field artifact (.ewif)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ewi::kExitConfig;
  }

  try {
    if (*list) {
      for (const auto& name : ewi::preset_names()) {
        if (dump) {
          std::cout << ewi::serialize_config(ewi::preset(name));
        } else {
          std::cout << name << "  " << ewi::preset_summary(name) << "\n";
        }
      }
      return ewi::kExitOk;
    }
    if (*insp) {
      inspect(artifact);
      return ewi::kExitOk;
    }
    if (preset_name.empty() && config_path.empty()) {
      throw ewi::ConfigError("run needs --preset or --config");
    }
    ewi::RunConfig config = preset_name.empty() ? ewi::load_config(config_path) : ewi::preset(preset_name);
    if (!out_dir.empty()) config.io.out = out_dir;
    if (seed) ewi::override_seed(config, *seed);
    if (threads) config.io.threads = *threads;
    if (stride) config.io.snapshot_stride = *stride;
    return ewi::run_experiment(config, std::cout);
  } catch (...) {
    return ewi::exit_code_for_current_exception(std::cerr);
  }
}
