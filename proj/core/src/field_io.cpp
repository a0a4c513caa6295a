#include "ewi/field_io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "ewi/error.hpp"

namespace ewi {

IoError::IoError(const std::string& path, const std::string& what)
    : std::runtime_error(path + ": " + what), path_(path) {}

namespace {

constexpr char kMagic[4] = {'E', 'W', 'I', 'F'};

template <class T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
  }
}

template <class T>
void put(std::ostream& out, T v) {
  v = to_little(v);
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T take(std::istream& in, const std::string& path) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw IoError(path, "truncated field file");
  return to_little(v);
}

FieldHeader read_header(std::istream& in, const std::string& path) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) throw IoError(path, "not a field file (bad magic)");
  FieldHeader h;
  h.version = take<std::uint32_t>(in, path);
  if (h.version != kFieldFormatVersion) {
    throw IoError(path, "unsupported field format version " + std::to_string(h.version));
  }
  h.dim = static_cast<int>(take<std::uint32_t>(in, path));
  if (h.dim < 1 || h.dim > kMaxDim) throw IoError(path, "bad dimension " + std::to_string(h.dim));
  const auto prec = take<std::uint32_t>(in, path);
  if (prec != 1 && prec != 2) throw IoError(path, "bad precision flag " + std::to_string(prec));
  h.precision = static_cast<Precision>(prec);
  const auto rep = take<std::uint32_t>(in, path);
  if (rep > 1) throw IoError(path, "bad representation flag " + std::to_string(rep));
  h.representation = rep == 0 ? Representation::physical : Representation::fourier;
  for (auto& n : h.n) n = static_cast<int>(take<std::uint32_t>(in, path));
  for (auto& b : h.bounds) {
    b.lo = take<double>(in, path);
    b.hi = take<double>(in, path);
  }
  h.time = take<double>(in, path);
  h.count = take<std::uint64_t>(in, path);
  std::uint64_t expect = 1;
  for (int a = 0; a < h.dim; ++a) expect *= static_cast<std::uint64_t>(std::max(h.n[a], 0));
  if (h.count != expect) throw IoError(path, "value count does not match the stored grid");
  return h;
}

GridPtr grid_from_header(const FieldHeader& h, const std::string& path) {
  try {
    return make_grid(h.dim, std::vector<Interval>(h.bounds.begin(), h.bounds.begin() + h.dim),
                     std::vector<int>(h.n.begin(), h.n.begin() + h.dim));
  } catch (const std::invalid_argument& e) {
    throw IoError(path, std::string("stored grid is invalid: ") + e.what());
  }
}

}  // namespace

void write_field(const std::string& path, const SpectralField& field, double time, Precision precision) {
  const Grid& g = field.grid();
  const std::filesystem::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(target.parent_path(), ec);
  }
  const std::string tmp = path + ".part";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path, "cannot open for writing");
    out.write(kMagic, 4);
    put<std::uint32_t>(out, kFieldFormatVersion);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(g.dim()));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(precision));
    put<std::uint32_t>(out, field.is_fourier() ? 1u : 0u);
    for (int a = 0; a < kMaxDim; ++a) put<std::uint32_t>(out, a < g.dim() ? g.points(a) : 1);
    for (int a = 0; a < kMaxDim; ++a) {
      put<double>(out, a < g.dim() ? g.bounds(a).lo : 0.0);
      put<double>(out, a < g.dim() ? g.bounds(a).hi : 0.0);
    }
    put<double>(out, time);
    put<std::uint64_t>(out, g.size());
    for (const Complex& z : field.data()) {
      if (precision == Precision::complex64) {
        put<float>(out, static_cast<float>(z.real()));
        put<float>(out, static_cast<float>(z.imag()));
      } else {
        put<double>(out, z.real());
        put<double>(out, z.imag());
      }
    }
    if (!out) throw IoError(path, "write failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError(path, "cannot finalize file: " + ec.message());
}

FieldHeader read_field_header(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  return read_header(in, path);
}

SpectralField read_field(const std::string& path, const GridPtr& grid, double* time) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  const FieldHeader h = read_header(in, path);
  GridPtr stored = grid_from_header(h, path);
  if (grid && !grid->same_as(*stored)) throw IoError(path, "stored grid does not match the requested grid");
  ComplexVector data(h.count);
  for (auto& z : data) {
    if (h.precision == Precision::complex64) {
      const float re = take<float>(in, path);
      const float im = take<float>(in, path);
      z = {re, im};
    } else {
      const double re = take<double>(in, path);
      const double im = take<double>(in, path);
      z = {re, im};
    }
  }
  if (time) *time = h.time;
  return SpectralField(grid ? grid : stored, h.representation, std::move(data));
}

void save_potential(const std::string& path, const PotentialField& v) {
  const auto fine = v.fine_values();
  ComplexVector data(fine.begin(), fine.end());
  write_field(path, SpectralField(v.fine_grid(), Representation::physical, std::move(data)));
}

PotentialField load_potential(const std::string& path, const GridPtr& grid) {
  const SpectralField f = from_fourier(read_field(path));
  const Grid& fine = f.grid();
  if (fine.dim() != grid->dim()) throw IoError(path, "potential dimension does not match the grid");
  const int factor = fine.points(0) / grid->points(0);
  if (factor < 1 || factor * grid->points(0) != fine.points(0) || !grid->refined(factor)->same_as(fine)) {
    throw IoError(path, "potential lattice is not an oversampling of the run grid");
  }
  std::vector<double> values(fine.size());
  const auto vals = f.values();
  for (std::size_t k = 0; k < values.size(); ++k) values[k] = vals[k].real();
  try {
    return PotentialField(grid, factor, std::move(values));
  } catch (const std::invalid_argument& e) {
    throw IoError(path, e.what());
  }
}

}  // namespace ewi
