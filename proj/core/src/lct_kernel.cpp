#include "biqwlct/lct_kernel.hpp"

#include <cmath>
#include <numbers>

#include "biqwlct/error.hpp"

namespace biqwlct {

LctParam LctParam::make(double a, double b, double c, double d) {
  const LctParam m{a, b, c, d};
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d)) {
    throw Error(ErrorCode::InvalidArgument, "LCT parameters must be finite");
  }
  if (std::abs(m.det() - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "LCT parameter matrix must have determinant 1");
  }
  return m;
}

void require_nondegenerate(const LctParam& m) {
  if (!(std::abs(m.b) >= kMinAbsB)) {
    throw Error(ErrorCode::DegenerateB, "LCT parameter b is zero; the Dirac branch is not supported");
  }
}

LctParam inverse_param(const LctParam& m) noexcept { return {m.d, -m.b, -m.c, m.a}; }

KernelPhase kernel_phase(const LctParam& m, double xi, double omega) {
  require_nondegenerate(m);
  const double inv_2b = 0.5 / m.b;
  return {m.a * inv_2b * xi * xi - xi * omega / m.b + m.d * inv_2b * omega * omega -
          std::numbers::pi / 4.0};
}

double kernel_amplitude(const LctParam& m) {
  require_nondegenerate(m);
  return 1.0 / std::sqrt(2.0 * std::numbers::pi * std::abs(m.b));
}

Biquaternion kernel_eval(const LctParam& m, const RootOfMinusOne& mu, double xi,
                         double omega) {
  const double phase = kernel_phase(m, xi, omega).value;
  const double amp = kernel_amplitude(m);
  return amp * (Biquaternion{std::cos(phase)} + std::sin(phase) * mu.value());
}

}  // namespace biqwlct
