#pragma once

#include "biqwlct/hypercomplex.hpp"

namespace biqwlct {

/// Linear canonical transform parameter matrix [[a, b], [c, d]] with
/// ad - bc = 1.
struct LctParam {
  double a = 0.0;
  double b = 1.0;
  double c = -1.0;
  double d = 0.0;

  /// Throws Error(InvalidArgument) unless |ad - bc - 1| <= 1e-12 and all
  /// entries are finite.
  static LctParam make(double a, double b, double c, double d);

  double det() const noexcept { return a * d - b * c; }

  friend bool operator==(const LctParam&, const LctParam&) noexcept = default;
};

/// Smallest |b| accepted by the kernel; below it the transform degenerates
/// into a chirp multiplication, which is not supported.
inline constexpr double kMinAbsB = 1e-12;

/// Throws Error(DegenerateB) if |m.b| < kMinAbsB.
void require_nondegenerate(const LctParam& m);

/// [[d, -b], [-c, a]].
LctParam inverse_param(const LctParam& m) noexcept;

/// Phase of the kernel exponent in radians.
struct KernelPhase {
  double value = 0.0;
};

/// (a/2b) xi^2 - xi omega / b + (d/2b) omega^2 - pi/4.
KernelPhase kernel_phase(const LctParam& m, double xi, double omega);

/// (2 pi |b|)^{-1/2}.
double kernel_amplitude(const LctParam& m);

/// (2 pi |b|)^{-1/2} e^{mu phase} = (2 pi |b|)^{-1/2} (cos phase + mu sin phase).
Biquaternion kernel_eval(const LctParam& m, const RootOfMinusOne& mu, double xi,
                         double omega);

}  // namespace biqwlct
