#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "ewi/field.hpp"
#include "ewi/potential.hpp"

namespace ewi {

enum class Precision : std::uint32_t { complex64 = 1, complex128 = 2 };

/// Binary field artifact, little-endian:
///   "EWIF" | u32 version | u32 dim | u32 precision | u32 representation |
///   u32 n[3] | f64 bounds[3][2] | f64 time | u64 count | count complex values
/// Unused axes store n = 1 and bounds (0, 0).
inline constexpr std::uint32_t kFieldFormatVersion = 1;

struct FieldHeader {
  std::uint32_t version = kFieldFormatVersion;
  int dim = 1;
  Precision precision = Precision::complex128;
  Representation representation = Representation::physical;
  std::array<int, kMaxDim> n{1, 1, 1};
  std::array<Interval, kMaxDim> bounds{};
  double time = 0.0;
  std::uint64_t count = 0;
};

void write_field(const std::string& path, const SpectralField& field, double time = 0.0,
                 Precision precision = Precision::complex128);

FieldHeader read_field_header(const std::string& path);

/// Reads a field. With `grid` given, the stored geometry must match it;
/// otherwise a grid is built from the header.
SpectralField read_field(const std::string& path, const GridPtr& grid = nullptr, double* time = nullptr);

/// Stores the oversampled samples of V.
void save_potential(const std::string& path, const PotentialField& v);
/// Rebuilds V on `grid` from a saved artifact; the oversampling factor is
/// recovered from the stored lattice.
PotentialField load_potential(const std::string& path, const GridPtr& grid);

}  // namespace ewi
