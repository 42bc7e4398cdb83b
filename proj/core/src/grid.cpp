#include "biqwlct/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "biqwlct/error.hpp"

namespace biqwlct {

Axis Axis::symmetric(std::size_t n, double step) {
  Axis a{n, -0.5 * static_cast<double>(n - 1) * step, step};
  a.validate();
  return a;
}

void Axis::validate() const {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "grid axis needs at least 2 samples");
  if (!(step > 0.0) || !std::isfinite(step) || !std::isfinite(origin)) {
    throw Error(ErrorCode::InvalidArgument, "grid spacing must be positive and finite");
  }
}

bool Axis::matches(const Axis& other) const noexcept {
  if (n != other.n) return false;
  const double span = std::max(std::abs(step), std::abs(other.step)) * static_cast<double>(n);
  return std::abs(step - other.step) <= 1e-12 * std::max(std::abs(step), 1.0) &&
         std::abs(origin - other.origin) <= 1e-12 * std::max(span, 1.0);
}

GridSpec GridSpec::symmetric(std::size_t n1, std::size_t n2, double step1, double step2) {
  return {Axis::symmetric(n1, step1), Axis::symmetric(n2, step2)};
}

void GridSpec::validate() const {
  axis1.validate();
  axis2.validate();
}

Axis dual_axis(const Axis& xi, const LctParam& m) {
  xi.validate();
  require_nondegenerate(m);
  const double step = 2.0 * std::numbers::pi * std::abs(m.b) / (static_cast<double>(xi.n) * xi.step);
  return Axis::symmetric(xi.n, step);
}

Axis dual_grid(const GridSpec& g, const LctParam& m, int axis) {
  if (axis != 1 && axis != 2) throw Error(ErrorCode::InvalidArgument, "axis must be 1 or 2");
  return dual_axis(g.axis(axis), m);
}

GridSpec dual_grid(const GridSpec& g, const LctParam& m1, const LctParam& m2) {
  return {dual_axis(g.axis1, m1), dual_axis(g.axis2, m2)};
}

Field2D::Field2D(GridSpec grid) : grid_(grid) {
  grid_.validate();
  values_.assign(grid_.size(), Biquaternion{});
}

Field2D::Field2D(GridSpec grid, std::vector<Biquaternion> values)
    : grid_(grid), values_(std::move(values)) {
  grid_.validate();
  if (values_.size() != grid_.size()) {
    throw Error(ErrorCode::InvalidArgument, "field value count does not match its grid");
  }
  if (!all_finite()) throw Error(ErrorCode::InvalidArgument, "field contains non-finite values");
}

bool Field2D::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(),
                     [](const Biquaternion& h) { return h.is_finite(); });
}

WlctField::WlctField(GridSpec omega_grid, GridSpec nu_grid)
    : omega_grid_(omega_grid), nu_grid_(nu_grid) {
  omega_grid_.validate();
  nu_grid_.validate();
  slices_.assign(nu_grid_.size(), Field2D{omega_grid_});
}

}  // namespace biqwlct
