#pragma once

#include <cstddef>
#include <functional>
#include <new>
#include <vector>

#include "cgolab/grid.hpp"

namespace cgolab {

template <class T, std::size_t Alignment = 64>
struct AlignedAllocator {
  using value_type = T;
  template <class U>
  struct rebind {
    using other = AlignedAllocator<U, Alignment>;
  };

  AlignedAllocator() noexcept = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U, Alignment>&) noexcept {}

  T* allocate(std::size_t n) {
    return static_cast<T*>(::operator new(n * sizeof(T), std::align_val_t{Alignment}));
  }
  void deallocate(T* p, std::size_t) noexcept {
    ::operator delete(p, std::align_val_t{Alignment});
  }

  template <class U>
  bool operator==(const AlignedAllocator<U, Alignment>&) const noexcept {
    return true;
  }
};

using Buffer = std::vector<cplx, AlignedAllocator<cplx>>;

enum class Representation { kPhysical = 0, kSpectral = 1 };

/// Complex samples on a Grid2D.
///
/// The spectral representation stores continuum-scaled Fourier coefficients
///   F^(xi_k) = h^2 * sum_m F(z_m) exp(-i xi_k . z_m),
/// so that ||F||_2^2 = h^2 sum |F|^2 = L^-2 sum |F^|^2 and the coefficients
/// approximate the continuum transform of a compactly supported field.
class Field {
 public:
  explicit Field(const Grid2D& grid, Representation rep = Representation::kPhysical);
  Field(const Grid2D& grid, Buffer values, Representation rep = Representation::kPhysical);

  static Field from_function(const Grid2D& grid, const std::function<cplx(cplx)>& f);
  static Field constant(const Grid2D& grid, cplx value);

  const Grid2D& grid() const { return grid_; }
  Representation representation() const { return rep_; }
  bool is_physical() const { return rep_ == Representation::kPhysical; }

  std::size_t size() const { return values_.size(); }
  cplx* data() { return values_.data(); }
  const cplx* data() const { return values_.data(); }
  Buffer& values() { return values_; }
  const Buffer& values() const { return values_; }
  cplx& operator[](std::size_t k) { return values_[k]; }
  const cplx& operator[](std::size_t k) const { return values_[k]; }
  cplx& operator()(std::size_t i, std::size_t j) { return values_[grid_.index(i, j)]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return values_[grid_.index(i, j)]; }

  Field to_spectral() const;
  Field to_physical() const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(cplx c);
  /// Pointwise product.
  Field& operator*=(const Field& other);

  Field conj() const;
  Field real_part() const;

  /// Continuum L2 norm (Parseval-scaled in either representation).
  double l2_norm() const;
  double max_abs() const;
  /// Average of the physical samples.
  cplx mean() const;

 private:
  Grid2D grid_;
  Representation rep_;
  Buffer values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(Field a, cplx c);
Field operator*(cplx c, Field a);
Field operator*(Field a, const Field& b);

/// Discrete L2 norm restricted to samples whose point lies in the closed box
/// center + [-half_width, half_width]^2.
double l2_norm_on_box(const Field& f, double half_width);

/// Exponential e^{-i xi_k . corner} that links raw DFT bins to the
/// continuum-scaled coefficients; separable, returned per axis.
std::vector<cplx> corner_phase_axis(const Grid2D& grid, bool second_axis);

}  // namespace cgolab
