#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace ewi {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

inline constexpr int kMaxDim = 3;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

using Index3 = std::array<int, kMaxDim>;
using Point3 = std::array<double, kMaxDim>;

class Grid;
using GridPtr = std::shared_ptr<const Grid>;

/// Uniform periodic grid on a box Omega = prod_j (a_j, b_j).
///
/// Nodes are x_{j,k} = a_j + k h_j, k = 0..N_j-1. Flat storage is row-major
/// with the last active axis fastest. The wave-number lattice is
/// mu_j = 2 pi l_j / (b_j - a_j) with l_j in {-N_j/2, ..., N_j/2 - 1}; flat
/// index k along an axis carries l = k for k < N/2 and l = k - N otherwise.
///
/// Fourier coefficients are averages: coeff_l = (1/N) sum_k v_k e^{-i mu_l (x_k - a)},
/// so a constant field has coeff_0 equal to that constant.
///
/// Immutable after construction; share through GridPtr.
class Grid {
 public:
  Grid(int dim, std::span<const Interval> bounds, std::span<const int> points);
  ~Grid();

  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  int dim() const noexcept { return dim_; }
  const Interval& bounds(int axis) const { return bounds_[axis]; }
  int points(int axis) const { return points_[axis]; }
  std::size_t size() const noexcept { return size_; }

  double spacing(int axis) const { return spacing_[axis]; }
  double length(int axis) const { return bounds_[axis].length(); }
  double cell_volume() const noexcept { return cell_volume_; }
  double volume() const noexcept { return volume_; }

  double node(int axis, int k) const { return bounds_[axis].lo + k * spacing_[axis]; }
  int frequency(int axis, int k) const {
    return k < points_[axis] / 2 ? k : k - points_[axis];
  }
  double wave_number(int axis, int k) const { return wave_scale_[axis] * frequency(axis, k); }
  double wave_scale(int axis) const { return wave_scale_[axis]; }

  /// |mu_l|^2 for every flat index.
  std::span<const double> mu_squared() const { return mu_squared_; }

  Index3 unflatten(std::size_t flat) const;
  std::size_t flatten(const Index3& idx) const;
  /// Flat index holding frequency l (each component taken modulo N_j).
  std::size_t frequency_slot(const Index3& l) const;
  Point3 position(std::size_t flat) const;

  /// In place: samples -> averaged coefficients.
  void forward(std::span<Complex> data) const;
  /// In place: coefficients -> samples (unnormalized synthesis).
  void backward(std::span<Complex> data) const;

  /// Same box with every axis refined by `factor`.
  GridPtr refined(int factor) const;

  bool same_as(const Grid& other) const;

 private:
  struct Plans;

  int dim_;
  std::array<Interval, kMaxDim> bounds_{};
  std::array<int, kMaxDim> points_{1, 1, 1};
  std::array<double, kMaxDim> spacing_{1.0, 1.0, 1.0};
  std::array<double, kMaxDim> wave_scale_{0.0, 0.0, 0.0};
  std::size_t size_ = 1;
  double cell_volume_ = 1.0;
  double volume_ = 1.0;
  std::vector<double> mu_squared_;
  std::unique_ptr<Plans> plans_;
};

/// Validating factory. Throws std::invalid_argument for d outside {1,2,3},
/// empty intervals, or point counts that are not powers of two >= 4.
GridPtr make_grid(int dim, std::vector<Interval> bounds, std::vector<int> points);

/// Cube (lo, hi)^d with n points per axis.
GridPtr make_cube_grid(int dim, double lo, double hi, int points);

inline bool same_grid(const GridPtr& a, const GridPtr& b) {
  return a == b || (a && b && a->same_as(*b));
}

}  // namespace ewi
