#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "biqwlct/hypercomplex.hpp"
#include "biqwlct/lct_kernel.hpp"

namespace biqwlct {

/// Uniform sampling of one coordinate: x(i) = origin + i * step.
struct Axis {
  std::size_t n = 2;
  double origin = 0.0;
  double step = 1.0;

  /// n samples centred on zero: origin = -(n - 1) step / 2.
  static Axis symmetric(std::size_t n, double step);

  double coord(std::size_t i) const noexcept { return origin + step * static_cast<double>(i); }

  /// Throws Error(InvalidArgument) unless n >= 2 and step > 0 (finite).
  void validate() const;

  /// Same n, and origin/step equal up to round-off.
  bool matches(const Axis& other) const noexcept;

  friend bool operator==(const Axis&, const Axis&) noexcept = default;
};

struct GridSpec {
  Axis axis1;
  Axis axis2;

  static GridSpec symmetric(std::size_t n1, std::size_t n2, double step1, double step2);

  std::size_t size() const noexcept { return axis1.n * axis2.n; }
  const Axis& axis(int k) const { return k == 1 ? axis1 : axis2; }
  /// Product of the two spacings, the Riemann weight of one lattice site.
  double cell_area() const noexcept { return axis1.step * axis2.step; }

  void validate() const;
  bool matches(const GridSpec& other) const noexcept {
    return axis1.matches(other.axis1) && axis2.matches(other.axis2);
  }

  friend bool operator==(const GridSpec&, const GridSpec&) noexcept = default;
};

/// Frequency axis paired with a sample axis so that the discrete transform
/// core is a unitary DFT: same n, step 2 pi |b| / (n step), symmetric about 0.
Axis dual_axis(const Axis& xi, const LctParam& m);

/// dual_axis applied to one axis (1 or 2) of g.
Axis dual_grid(const GridSpec& g, const LctParam& m, int axis);

/// dual_axis applied to both axes.
GridSpec dual_grid(const GridSpec& g, const LctParam& m1, const LctParam& m2);

/// Biquaternion samples on a GridSpec, stored with axis 1 fastest.
class Field2D {
 public:
  explicit Field2D(GridSpec grid);
  /// Throws Error(InvalidArgument) on a size mismatch or non-finite entries.
  Field2D(GridSpec grid, std::vector<Biquaternion> values);

  const GridSpec& grid() const noexcept { return grid_; }
  std::size_t n1() const noexcept { return grid_.axis1.n; }
  std::size_t n2() const noexcept { return grid_.axis2.n; }
  std::size_t size() const noexcept { return values_.size(); }

  std::size_t index(std::size_t i1, std::size_t i2) const noexcept { return i1 + n1() * i2; }
  Biquaternion& at(std::size_t i1, std::size_t i2) noexcept { return values_[index(i1, i2)]; }
  const Biquaternion& at(std::size_t i1, std::size_t i2) const noexcept {
    return values_[index(i1, i2)];
  }

  std::span<Biquaternion> values() noexcept { return values_; }
  std::span<const Biquaternion> values() const noexcept { return values_; }

  bool all_finite() const noexcept;

 private:
  GridSpec grid_;
  std::vector<Biquaternion> values_;
};

/// Windowed transform values indexed by (omega1, omega2, nu1, nu2), held as
/// one omega-field per nu lattice point.
class WlctField {
 public:
  WlctField(GridSpec omega_grid, GridSpec nu_grid);

  const GridSpec& omega_grid() const noexcept { return omega_grid_; }
  const GridSpec& nu_grid() const noexcept { return nu_grid_; }

  Field2D& slice(std::size_t v1, std::size_t v2) noexcept {
    return slices_[v1 + nu_grid_.axis1.n * v2];
  }
  const Field2D& slice(std::size_t v1, std::size_t v2) const noexcept {
    return slices_[v1 + nu_grid_.axis1.n * v2];
  }
  std::span<Field2D> slices() noexcept { return slices_; }
  std::span<const Field2D> slices() const noexcept { return slices_; }

  Biquaternion& at(std::size_t w1, std::size_t w2, std::size_t v1, std::size_t v2) noexcept {
    return slice(v1, v2).at(w1, w2);
  }
  const Biquaternion& at(std::size_t w1, std::size_t w2, std::size_t v1,
                         std::size_t v2) const noexcept {
    return slice(v1, v2).at(w1, w2);
  }

  /// Riemann weight of one (omega, nu) site.
  double cell_volume() const noexcept {
    return omega_grid_.cell_area() * nu_grid_.cell_area();
  }

 private:
  GridSpec omega_grid_;
  GridSpec nu_grid_;
  std::vector<Field2D> slices_;
};

}  // namespace biqwlct
