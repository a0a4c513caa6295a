#include "ewi/field.hpp"

#include <stdexcept>

namespace ewi {

std::vector<std::size_t> band_map(const Grid& base, const Grid& fine) {
  if (base.dim() != fine.dim()) throw std::invalid_argument("band map: dimension mismatch");
  for (int j = 0; j < base.dim(); ++j) {
    if (!(base.bounds(j) == fine.bounds(j)) || fine.points(j) < base.points(j)) {
      throw std::invalid_argument("band map: grids do not share a box or fine grid is coarser");
    }
  }
  std::vector<std::size_t> map(base.size());
  for (std::size_t flat = 0; flat < base.size(); ++flat) {
    const Index3 idx = base.unflatten(flat);
    Index3 l{0, 0, 0};
    for (int j = 0; j < base.dim(); ++j) l[j] = base.frequency(j, idx[j]);
    map[flat] = fine.frequency_slot(l);
  }
  return map;
}

SpectralField::SpectralField(GridPtr grid, Representation rep, ComplexVector data)
    : grid_(std::move(grid)), rep_(rep), data_(std::move(data)) {
  if (!grid_) throw std::invalid_argument("field needs a grid");
  if (data_.size() != grid_->size()) {
    throw std::invalid_argument("field data size " + std::to_string(data_.size()) +
                                " does not match grid size " + std::to_string(grid_->size()));
  }
}

SpectralField SpectralField::zeros(GridPtr grid, Representation rep) {
  const std::size_t n = grid->size();
  return SpectralField(std::move(grid), rep, ComplexVector(n));
}

SpectralField SpectralField::sample(GridPtr grid, const std::function<Complex(const Point3&)>& f) {
  ComplexVector v(grid->size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = f(grid->position(k));
  return SpectralField(std::move(grid), Representation::physical, std::move(v));
}

std::span<const Complex> SpectralField::values() const {
  if (rep_ != Representation::physical) throw std::logic_error("field is in Fourier representation");
  return data_;
}

std::span<Complex> SpectralField::values() {
  if (rep_ != Representation::physical) throw std::logic_error("field is in Fourier representation");
  return data_;
}

std::span<const Complex> SpectralField::coeffs() const {
  if (rep_ != Representation::fourier) throw std::logic_error("field is in physical representation");
  return data_;
}

std::span<Complex> SpectralField::coeffs() {
  if (rep_ != Representation::fourier) throw std::logic_error("field is in physical representation");
  return data_;
}

Complex SpectralField::coeff_at(const Index3& l) const { return coeffs()[grid_->frequency_slot(l)]; }

void SpectralField::require_compatible(const SpectralField& other) const {
  if (!same_grid(grid_, other.grid_)) throw std::invalid_argument("fields live on different grids");
  if (rep_ != other.rep_) throw std::invalid_argument("fields are in different representations");
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_compatible(other);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_compatible(other);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

SpectralField& SpectralField::operator*=(Complex s) {
  for (auto& v : data_) v *= s;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(Complex s, SpectralField a) { return a *= s; }

SpectralField to_fourier(SpectralField field) {
  if (field.is_fourier()) return field;
  ComplexVector data(field.data().begin(), field.data().end());
  field.grid().forward(data);
  return SpectralField(field.grid_ptr(), Representation::fourier, std::move(data));
}

SpectralField from_fourier(SpectralField field) {
  if (!field.is_fourier()) return field;
  ComplexVector data(field.data().begin(), field.data().end());
  field.grid().backward(data);
  return SpectralField(field.grid_ptr(), Representation::physical, std::move(data));
}

SpectralField upsample(const SpectralField& field, const GridPtr& fine) {
  const SpectralField c = to_fourier(field);
  const auto map = band_map(c.grid(), *fine);
  ComplexVector out(fine->size());
  const auto src = c.coeffs();
  for (std::size_t k = 0; k < map.size(); ++k) out[map[k]] = src[k];
  return SpectralField(fine, Representation::fourier, std::move(out));
}

SpectralField truncate(const SpectralField& field, const GridPtr& coarse) {
  const SpectralField c = to_fourier(field);
  const auto map = band_map(*coarse, c.grid());
  ComplexVector out(coarse->size());
  const auto src = c.coeffs();
  for (std::size_t k = 0; k < map.size(); ++k) out[k] = src[map[k]];
  return SpectralField(coarse, Representation::fourier, std::move(out));
}

}  // namespace ewi
