#pragma once

#include <array>
#include <cstdint>

#include "biqwlct/grid.hpp"
#include "biqwlct/hypercomplex.hpp"
#include "biqwlct/transform.hpp"

namespace biqwlct {

/// sum norm_sq(f) * cell area.
double energy(const Field2D& f);

/// sum Re[f conj(g)]_0 * cell area. Throws Error(GridMismatch) for
/// different grids.
double scalar_inner(const Field2D& f, const Field2D& g);

/// sum xi_k^2 norm_sq(f) * cell area, axis k in {1, 2}.
double second_moment(const Field2D& f, int axis);

/// sum omega_k^2 norm_sq(W) over omega and nu with cell_volume() weights.
double wlct_frequency_moment(const WlctField& w, int axis);

/// sum over omega and nu of Re[W conj(V)]_0 * cell volume.
double wlct_inner(const WlctField& w, const WlctField& v);

/// sqrt(sum |a - ref|^2 / sum |ref|^2); the absolute norm when ref is zero.
double relative_l2(const Field2D& a, const Field2D& ref);

/// Largest coefficient-wise |a - b| over all samples.
double max_abs_diff(const Field2D& a, const Field2D& b);

struct UncertaintyReport {
  int axis = 1;
  /// sqrt(frequency moment of the windowed transform) * sqrt(second_moment(f)).
  double lhs = 0.0;
  /// (|b_k| / 4) ||f||^2 ||phi||^2.
  double rhs = 0.0;
  bool satisfied = false;
  /// lhs / rhs.
  double margin = 0.0;
  /// (|b_k| / 4) ||f||^2 ||phi||, the form reached after dividing by one
  /// power of the window norm.
  double rhs_single = 0.0;
  bool satisfied_single = false;
  double margin_single = 0.0;
};

/// Evaluates both normalizations of the windowed Heisenberg bound from an
/// already computed transform w = biqwlct(f, window, cfg, ...).
UncertaintyReport uncertainty_from(const WlctField& w, const Field2D& f, const Field2D& window,
                                   const TransformConfig& cfg, int axis);

/// Streams biqwlct over the dual grid and the stride-1 nu lattice and
/// evaluates the bound for the given axis. Throws Error(ZeroWindow).
UncertaintyReport uncertainty_check(const Field2D& f, const Field2D& window,
                                    const TransformConfig& cfg, int axis);

/// Both axes from a single streamed transform.
std::array<UncertaintyReport, 2> uncertainty_check_axes(const Field2D& f, const Field2D& window,
                                                        const TransformConfig& cfg);

/// Unwindowed bound second_moment(f) * freq_moment(L f) >= ((|b_k|/2) ||f||^2)^2.
struct HeisenbergReport {
  int axis = 1;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // lhs / rhs
};

/// Evaluated with cfg.path on the dual grid of f.
HeisenbergReport lct_uncertainty(const Field2D& f, const TransformConfig& cfg, int axis);

/// ||phi||^2 second_moment(f) against sum_nu sum_xi xi_k^2 |L^{-1} G(., nu)|^2.
struct MomentIdentityReport {
  int axis = 1;
  double lhs = 0.0;
  double rhs = 0.0;
  double relative_error = 0.0;
};

MomentIdentityReport windowed_moment_identity(const WlctField& w, const Field2D& f,
                                              const Field2D& window, const TransformConfig& cfg,
                                              int axis);

/// c0 exp(-(alpha1 xi1^2 + alpha2 xi2^2)) in the scalar coefficient.
/// Throws Error(InvalidArgument) unless both alphas are positive.
Field2D make_gaussian(Complex c0, double alpha1, double alpha2, const GridSpec& grid);

/// +1 on [0, 1/2)^2, -1 on [1/2, 1)^2, 0 elsewhere. Throws
/// Error(GridMismatch) unless each spacing divides 1/2.
Field2D make_haar_window(const GridSpec& grid);

/// value at the sample nearest xi = (x1, x2), zero elsewhere.
Field2D make_impulse(const GridSpec& grid, double x1, double x2, const Biquaternion& value = 1.0);

/// Independent standard normals in all 8 real coordinates, multiplied by
/// exp(-|xi|^2 / (2 s^2)) with s = taper * (half the larger grid extent).
Field2D make_random_field(const GridSpec& grid, std::uint64_t seed, double taper = 0.5);

}  // namespace biqwlct
