#include "biqwlct/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "biqwlct/error.hpp"

namespace biqwlct {

namespace {

const Axis& axis_of(const GridSpec& g, int axis) {
  if (axis != 1 && axis != 2) throw Error(ErrorCode::InvalidArgument, "axis must be 1 or 2");
  return g.axis(axis);
}

double coord_k(const GridSpec& g, int axis, std::size_t i1, std::size_t i2) {
  return axis == 1 ? g.axis1.coord(i1) : g.axis2.coord(i2);
}

double raw_energy(const Field2D& f) {
  double e = 0.0;
  for (const auto& v : f.values()) e += norm_sq(v);
  return e;
}

const LctParam& param_of(const TransformConfig& cfg, int axis) {
  return axis == 1 ? cfg.m1 : cfg.m2;
}

// Half-open membership with a relative slack so round-off on lattice
// coordinates does not move a sample across a breakpoint.
bool in_half_open(double x, double lo, double hi, double eps) {
  return x >= lo - eps && x < hi - eps;
}

}  // namespace

double energy(const Field2D& f) { return raw_energy(f) * f.grid().cell_area(); }

double scalar_inner(const Field2D& f, const Field2D& g) {
  if (!f.grid().matches(g.grid())) {
    throw Error(ErrorCode::GridMismatch, "inner product of fields on different grids");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    acc += (f.values()[i] * conjugate(g.values()[i])).scalar().real();
  }
  return acc * f.grid().cell_area();
}

double second_moment(const Field2D& f, int axis) {
  axis_of(f.grid(), axis);
  double acc = 0.0;
  for (std::size_t i2 = 0; i2 < f.n2(); ++i2) {
    for (std::size_t i1 = 0; i1 < f.n1(); ++i1) {
      const double x = coord_k(f.grid(), axis, i1, i2);
      acc += x * x * norm_sq(f.at(i1, i2));
    }
  }
  return acc * f.grid().cell_area();
}

double wlct_frequency_moment(const WlctField& w, int axis) {
  axis_of(w.omega_grid(), axis);
  double acc = 0.0;
  for (const auto& slice : w.slices()) {
    for (std::size_t i2 = 0; i2 < slice.n2(); ++i2) {
      for (std::size_t i1 = 0; i1 < slice.n1(); ++i1) {
        const double x = coord_k(slice.grid(), axis, i1, i2);
        acc += x * x * norm_sq(slice.at(i1, i2));
      }
    }
  }
  return acc * w.cell_volume();
}

double wlct_inner(const WlctField& w, const WlctField& v) {
  if (!w.omega_grid().matches(v.omega_grid()) || !w.nu_grid().matches(v.nu_grid())) {
    throw Error(ErrorCode::GridMismatch, "inner product of transforms on different grids");
  }
  double acc = 0.0;
  for (std::size_t s = 0; s < w.slices().size(); ++s) {
    const auto a = w.slices()[s].values();
    const auto b = v.slices()[s].values();
    for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] * conjugate(b[i])).scalar().real();
  }
  return acc * w.cell_volume();
}

double relative_l2(const Field2D& a, const Field2D& ref) {
  if (a.size() != ref.size()) throw Error(ErrorCode::GridMismatch, "field sizes differ");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += norm_sq(a.values()[i] - ref.values()[i]);
    den += norm_sq(ref.values()[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

double max_abs_diff(const Field2D& a, const Field2D& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::GridMismatch, "field sizes differ");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, max_abs_diff(a.values()[i], b.values()[i]));
  }
  return m;
}

namespace {

UncertaintyReport make_uncertainty(double freq_moment, const Field2D& f, const Field2D& window,
                                   const TransformConfig& cfg, int axis) {
  UncertaintyReport r;
  r.axis = axis;
  r.lhs = std::sqrt(freq_moment) * std::sqrt(second_moment(f, axis));
  const double b = std::abs(param_of(cfg, axis).b);
  const double ef = energy(f);
  const double ephi = energy(window);
  r.rhs = b / 4.0 * ef * ephi;
  r.rhs_single = b / 4.0 * ef * std::sqrt(ephi);
  r.satisfied = r.lhs >= r.rhs - 1e-12;
  r.satisfied_single = r.lhs >= r.rhs_single - 1e-12;
  r.margin = r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
  r.margin_single = r.rhs_single > 0.0 ? r.lhs / r.rhs_single : 0.0;
  return r;
}

}  // namespace

UncertaintyReport uncertainty_from(const WlctField& w, const Field2D& f, const Field2D& window,
                                   const TransformConfig& cfg, int axis) {
  require_nonzero_window(window);
  return make_uncertainty(wlct_frequency_moment(w, axis), f, window, cfg, axis);
}

std::array<UncertaintyReport, 2> uncertainty_check_axes(const Field2D& f, const Field2D& window,
                                                        const TransformConfig& cfg) {
  require_nonzero_window(window);
  const GridSpec omega = dual_grid(f.grid(), cfg.m1, cfg.m2);
  const GridSpec nu = nu_lattice(f.grid(), 1);
  std::array<double, 2> moment{};
  biqwlct_stream(f, window, cfg, omega, nu, [&](std::size_t, std::size_t, Field2D&& slice) {
    moment[0] += second_moment(slice, 1);
    moment[1] += second_moment(slice, 2);
  });
  const double weight = nu.cell_area();
  return {make_uncertainty(moment[0] * weight, f, window, cfg, 1),
          make_uncertainty(moment[1] * weight, f, window, cfg, 2)};
}

UncertaintyReport uncertainty_check(const Field2D& f, const Field2D& window,
                                    const TransformConfig& cfg, int axis) {
  axis_of(f.grid(), axis);
  return uncertainty_check_axes(f, window, cfg)[static_cast<std::size_t>(axis - 1)];
}

HeisenbergReport lct_uncertainty(const Field2D& f, const TransformConfig& cfg, int axis) {
  const Field2D spectrum = rbiqlct(f, cfg, dual_grid(f.grid(), cfg.m1, cfg.m2));
  HeisenbergReport r;
  r.axis = axis;
  r.lhs = second_moment(f, axis) * second_moment(spectrum, axis);
  const double half = std::abs(param_of(cfg, axis).b) / 2.0 * energy(f);
  r.rhs = half * half;
  r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
  return r;
}

MomentIdentityReport windowed_moment_identity(const WlctField& w, const Field2D& f,
                                              const Field2D& window, const TransformConfig& cfg,
                                              int axis) {
  MomentIdentityReport r;
  r.axis = axis;
  r.lhs = energy(window) * second_moment(f, axis);
  double acc = 0.0;
  for (const auto& slice : w.slices()) acc += second_moment(rbiqlct_inverse(slice, cfg, f.grid()), axis);
  r.rhs = acc * w.nu_grid().cell_area();
  r.relative_error = std::abs(r.lhs - r.rhs) / std::max(std::abs(r.lhs), 1e-300);
  return r;
}

Field2D make_gaussian(Complex c0, double alpha1, double alpha2, const GridSpec& grid) {
  if (!(alpha1 > 0.0) || !(alpha2 > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "Gaussian widths must be positive");
  }
  Field2D f{grid};
  for (std::size_t i2 = 0; i2 < f.n2(); ++i2) {
    const double x2 = grid.axis2.coord(i2);
    for (std::size_t i1 = 0; i1 < f.n1(); ++i1) {
      const double x1 = grid.axis1.coord(i1);
      f.at(i1, i2) = Biquaternion{c0 * std::exp(-(alpha1 * x1 * x1 + alpha2 * x2 * x2))};
    }
  }
  return f;
}

Field2D make_haar_window(const GridSpec& grid) {
  grid.validate();
  for (const Axis* a : {&grid.axis1, &grid.axis2}) {
    const double q = 0.5 / a->step;
    if (std::abs(q - std::round(q)) > 1e-9 * std::max(1.0, q)) {
      throw Error(ErrorCode::GridMismatch, "Haar window needs a spacing that divides 1/2");
    }
  }
  Field2D f{grid};
  const double e1 = 1e-9 * grid.axis1.step, e2 = 1e-9 * grid.axis2.step;
  for (std::size_t i2 = 0; i2 < f.n2(); ++i2) {
    const double x2 = grid.axis2.coord(i2);
    for (std::size_t i1 = 0; i1 < f.n1(); ++i1) {
      const double x1 = grid.axis1.coord(i1);
      if (in_half_open(x1, 0.0, 0.5, e1) && in_half_open(x2, 0.0, 0.5, e2)) {
        f.at(i1, i2) = 1.0;
      } else if (in_half_open(x1, 0.5, 1.0, e1) && in_half_open(x2, 0.5, 1.0, e2)) {
        f.at(i1, i2) = -1.0;
      }
    }
  }
  return f;
}

Field2D make_impulse(const GridSpec& grid, double x1, double x2, const Biquaternion& value) {
  grid.validate();
  auto nearest = [](const Axis& a, double x) {
    const double t = std::round((x - a.origin) / a.step);
    return static_cast<std::size_t>(std::clamp(t, 0.0, static_cast<double>(a.n - 1)));
  };
  Field2D f{grid};
  f.at(nearest(grid.axis1, x1), nearest(grid.axis2, x2)) = value;
  return f;
}

Field2D make_random_field(const GridSpec& grid, std::uint64_t seed, double taper) {
  if (!(taper > 0.0)) throw Error(ErrorCode::InvalidArgument, "taper must be positive");
  grid.validate();
  std::mt19937_64 rng{seed};
  std::normal_distribution<double> normal{0.0, 1.0};
  const double half1 = 0.5 * grid.axis1.step * static_cast<double>(grid.axis1.n);
  const double half2 = 0.5 * grid.axis2.step * static_cast<double>(grid.axis2.n);
  const double s = taper * std::max(half1, half2);
  Field2D f{grid};
  for (std::size_t i2 = 0; i2 < f.n2(); ++i2) {
    for (std::size_t i1 = 0; i1 < f.n1(); ++i1) {
      std::array<double, 8> r{};
      for (auto& x : r) x = normal(rng);
      const double x1 = grid.axis1.coord(i1), x2 = grid.axis2.coord(i2);
      const double env = std::exp(-(x1 * x1 + x2 * x2) / (2.0 * s * s));
      f.at(i1, i2) = Biquaternion::from_reals(r) * env;
    }
  }
  return f;
}

}  // namespace biqwlct
