#pragma once

#include <iosfwd>
#include <string>

#include "ewi/config.hpp"

namespace ewi {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;
inline constexpr int kExitIo = 4;

/// Runs the experiment described by `config` and writes its report into
/// config.io.out. Progress goes to `log`. Returns kExitOk, or kExitRuntime
/// when every sweep member failed. Errors propagate as exceptions
/// (ConfigError, NumericalBlowup, ConvergenceFailure, IoError).
int run_experiment(const RunConfig& config, std::ostream& log);

/// Maps an in-flight exception to an exit code and writes the message to `err`.
int exit_code_for_current_exception(std::ostream& err);

}  // namespace ewi
