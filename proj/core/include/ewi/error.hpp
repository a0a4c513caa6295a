#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ewi {

/// Invalid user-facing configuration (unknown keys, bad presets, malformed values).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A run stopped because the numerical state stopped being finite.
class NumericalBlowup : public std::runtime_error {
 public:
  NumericalBlowup(std::size_t step, double last_finite_norm);

  std::size_t step() const noexcept { return step_; }
  double last_finite_norm() const noexcept { return last_finite_norm_; }

 private:
  std::size_t step_;
  double last_finite_norm_;
};

/// An iterative solver did not reach its tolerance.
class ConvergenceFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  IoError(const std::string& path, const std::string& what);

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace ewi
