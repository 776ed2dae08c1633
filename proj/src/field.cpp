#include "cgolab/field.hpp"

#include <algorithm>
#include <cmath>

#include "cgolab/errors.hpp"
#include "cgolab/fft.hpp"

namespace cgolab {

namespace {

void require_physical(const Field& f, const char* what) {
  if (!f.is_physical()) throw InvalidArgument(std::string(what) + " needs a physical field");
}

void require_compatible(const Field& a, const Field& b) {
  require_same_grid(a.grid(), b.grid());
  if (a.representation() != b.representation()) {
    throw InvalidArgument("fields have different representations");
  }
}

}  // namespace

Field::Field(const Grid2D& grid, Representation rep)
    : grid_(grid), rep_(rep), values_(grid.size(), cplx{0.0, 0.0}) {}

Field::Field(const Grid2D& grid, Buffer values, Representation rep)
    : grid_(grid), rep_(rep), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw InvalidArgument("field value count does not match the grid");
  }
}

Field Field::from_function(const Grid2D& grid, const std::function<cplx(cplx)>& f) {
  Field out(grid);
  const std::size_t n = grid.resolution();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = f(grid.point(i, j));
  }
  return out;
}

Field Field::constant(const Grid2D& grid, cplx value) {
  Field out(grid);
  std::fill(out.values_.begin(), out.values_.end(), value);
  return out;
}

std::vector<cplx> corner_phase_axis(const Grid2D& grid, bool second_axis) {
  const std::size_t n = grid.resolution();
  const double corner =
      (second_axis ? grid.center().imag() : grid.center().real()) - grid.q_half_width();
  std::vector<cplx> out(n);
  for (std::size_t m = 0; m < n; ++m) out[m] = std::polar(1.0, -grid.frequency(m) * corner);
  return out;
}

Field Field::to_spectral() const {
  if (!is_physical()) return *this;
  Field out(*this);
  out.rep_ = Representation::kSpectral;
  const std::size_t n = grid_.resolution();
  fft_forward(out.data(), n);
  const auto p1 = corner_phase_axis(grid_, false);
  const auto p2 = corner_phase_axis(grid_, true);
  const double h2 = grid_.cell_area();
  for (std::size_t i = 0; i < n; ++i) {
    const cplx a = h2 * p1[i];
    for (std::size_t j = 0; j < n; ++j) out(i, j) *= a * p2[j];
  }
  return out;
}

Field Field::to_physical() const {
  if (is_physical()) return *this;
  Field out(*this);
  out.rep_ = Representation::kPhysical;
  const std::size_t n = grid_.resolution();
  const auto p1 = corner_phase_axis(grid_, false);
  const auto p2 = corner_phase_axis(grid_, true);
  // Inverse of h^2 * phase * DFT is IDFT(conj(phase) * . ) / (N^2 h^2) = IDFT(.) / L^2.
  const double scale = 1.0 / (grid_.side_length() * grid_.side_length());
  for (std::size_t i = 0; i < n; ++i) {
    const cplx a = scale * std::conj(p1[i]);
    for (std::size_t j = 0; j < n; ++j) out(i, j) *= a * std::conj(p2[j]);
  }
  fft_inverse(out.data(), n);
  return out;
}

Field& Field::operator+=(const Field& other) {
  require_compatible(*this, other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_compatible(*this, other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
  return *this;
}

Field& Field::operator*=(cplx c) {
  for (auto& v : values_) v *= c;
  return *this;
}

Field& Field::operator*=(const Field& other) {
  require_compatible(*this, other);
  require_physical(*this, "pointwise product");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] *= other.values_[k];
  return *this;
}

Field Field::conj() const {
  require_physical(*this, "conj");
  Field out(*this);
  for (auto& v : out.values_) v = std::conj(v);
  return out;
}

Field Field::real_part() const {
  require_physical(*this, "real_part");
  Field out(*this);
  for (auto& v : out.values_) v = v.real();
  return out;
}

double Field::l2_norm() const {
  double acc = 0.0;
  for (const auto& v : values_) acc += std::norm(v);
  if (is_physical()) return std::sqrt(acc * grid_.cell_area());
  return std::sqrt(acc) / grid_.side_length();
}

double Field::max_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

cplx Field::mean() const {
  if (!is_physical()) {
    // Zero-frequency coefficient is h^2 * sum F.
    return values_[0] / (grid_.side_length() * grid_.side_length());
  }
  cplx acc{0.0, 0.0};
  for (const auto& v : values_) acc += v;
  return acc / static_cast<double>(values_.size());
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(Field a, cplx c) { return a *= c; }
Field operator*(cplx c, Field a) { return a *= c; }
Field operator*(Field a, const Field& b) { return a *= b; }

double l2_norm_on_box(const Field& f, double half_width) {
  require_physical(f, "l2_norm_on_box");
  const Grid2D& g = f.grid();
  const std::size_t n = g.resolution();
  const double tol = 1e-9 * g.spacing();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(g.x1(i) - g.center().real()) > half_width + tol) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(g.x2(j) - g.center().imag()) > half_width + tol) continue;
      acc += std::norm(f(i, j));
    }
  }
  return std::sqrt(acc * g.cell_area());
}

}  // namespace cgolab
