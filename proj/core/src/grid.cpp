#include "ewi/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ewi {

namespace {

// The FFTW planner is not reentrant; plan creation and destruction are
// serialized here. Execution through fftw_execute_dft is thread safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

fftw_complex* as_fftw(std::span<Complex> data) {
  return reinterpret_cast<fftw_complex*>(data.data());
}

}  // namespace

struct Grid::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  Plans(int rank, const int* n, std::size_t size) {
    // ESTIMATE keeps the chosen algorithm, and hence the rounding, identical
    // from run to run. UNALIGNED permits new-array execution on any vector.
    ComplexVector scratch(size);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    std::lock_guard lock(planner_mutex());
    forward = fftw_plan_dft(rank, n, buf, buf, FFTW_FORWARD, flags);
    backward = fftw_plan_dft(rank, n, buf, buf, FFTW_BACKWARD, flags);
    if (!forward || !backward) throw std::runtime_error("FFTW plan creation failed");
  }

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }

  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
};

Grid::Grid(int dim, std::span<const Interval> bounds, std::span<const int> points) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw std::invalid_argument("grid dimension must be 1, 2 or 3, got " + std::to_string(dim));
  }
  if (bounds.size() != static_cast<std::size_t>(dim) ||
      points.size() != static_cast<std::size_t>(dim)) {
    throw std::invalid_argument("grid needs one interval and one point count per axis");
  }
  for (int j = 0; j < dim; ++j) {
    const Interval& iv = bounds[j];
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || !(iv.hi > iv.lo)) {
      throw std::invalid_argument("axis " + std::to_string(j) + ": empty or non-finite interval");
    }
    const int n = points[j];
    if (n < 4 || !is_power_of_two(n)) {
      throw std::invalid_argument("axis " + std::to_string(j) +
                                  ": point count must be a power of two >= 4, got " +
                                  std::to_string(n));
    }
    bounds_[j] = iv;
    points_[j] = n;
    spacing_[j] = iv.length() / n;
    wave_scale_[j] = 2.0 * std::numbers::pi / iv.length();
    size_ *= static_cast<std::size_t>(n);
    cell_volume_ *= spacing_[j];
    volume_ *= iv.length();
  }

  mu_squared_.resize(size_);
  for (std::size_t flat = 0; flat < size_; ++flat) {
    const Index3 idx = unflatten(flat);
    double m2 = 0.0;
    for (int j = 0; j < dim_; ++j) {
      const double mu = wave_number(j, idx[j]);
      m2 += mu * mu;
    }
    mu_squared_[flat] = m2;
  }

  plans_ = std::make_unique<Plans>(dim_, points_.data(), size_);
}

Grid::~Grid() = default;

Index3 Grid::unflatten(std::size_t flat) const {
  Index3 idx{0, 0, 0};
  for (int j = dim_ - 1; j >= 0; --j) {
    idx[j] = static_cast<int>(flat % points_[j]);
    flat /= points_[j];
  }
  return idx;
}

std::size_t Grid::flatten(const Index3& idx) const {
  std::size_t flat = 0;
  for (int j = 0; j < dim_; ++j) flat = flat * points_[j] + idx[j];
  return flat;
}

std::size_t Grid::frequency_slot(const Index3& l) const {
  Index3 idx{0, 0, 0};
  for (int j = 0; j < dim_; ++j) {
    const int n = points_[j];
    idx[j] = ((l[j] % n) + n) % n;
  }
  return flatten(idx);
}

Point3 Grid::position(std::size_t flat) const {
  const Index3 idx = unflatten(flat);
  Point3 x{0.0, 0.0, 0.0};
  for (int j = 0; j < dim_; ++j) x[j] = node(j, idx[j]);
  return x;
}

void Grid::forward(std::span<Complex> data) const {
  if (data.size() != size_) throw std::invalid_argument("forward transform: size mismatch");
  fftw_execute_dft(plans_->forward, as_fftw(data), as_fftw(data));
  const double scale = 1.0 / static_cast<double>(size_);
  for (auto& c : data) c *= scale;
}

void Grid::backward(std::span<Complex> data) const {
  if (data.size() != size_) throw std::invalid_argument("backward transform: size mismatch");
  fftw_execute_dft(plans_->backward, as_fftw(data), as_fftw(data));
}

GridPtr Grid::refined(int factor) const {
  if (factor < 1) throw std::invalid_argument("refinement factor must be >= 1");
  std::vector<Interval> b(bounds_.begin(), bounds_.begin() + dim_);
  std::vector<int> n(points_.begin(), points_.begin() + dim_);
  for (int& v : n) v *= factor;
  return make_grid(dim_, std::move(b), std::move(n));
}

bool Grid::same_as(const Grid& other) const {
  if (dim_ != other.dim_) return false;
  for (int j = 0; j < dim_; ++j) {
    if (points_[j] != other.points_[j] || !(bounds_[j] == other.bounds_[j])) return false;
  }
  return true;
}

GridPtr make_grid(int dim, std::vector<Interval> bounds, std::vector<int> points) {
  return std::make_shared<const Grid>(dim, bounds, points);
}

GridPtr make_cube_grid(int dim, double lo, double hi, int points) {
  if (dim < 1 || dim > kMaxDim) {
    throw std::invalid_argument("grid dimension must be 1, 2 or 3, got " + std::to_string(dim));
  }
  return make_grid(dim, std::vector<Interval>(dim, Interval{lo, hi}), std::vector<int>(dim, points));
}

}  // namespace ewi
