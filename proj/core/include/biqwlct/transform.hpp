#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "biqwlct/grid.hpp"
#include "biqwlct/hypercomplex.hpp"
#include "biqwlct/lct_kernel.hpp"

namespace biqwlct {

enum class TransformPath {
  Direct,  // O(n^4) Riemann sum over kernel_eval values, any output grid
  Fast,    // chirp, 16 real DFTs per line, chirp; dual grids only
};

/// How the window is continued outside the lattice it was sampled on.
enum class WindowExtension {
  Zero,      // compact support
  Periodic,  // shifts wrap around the window's lattice
};

/// Deliberate kernel corruption used by mutation tests of the verifier.
enum class KernelFault {
  None,
  QuadrantSignFlip,  // axis-1 kernel negated where xi > 0 and omega > 0
};

struct TransformConfig {
  LctParam m1;
  LctParam m2;
  RootOfMinusOne mu = RootOfMinusOne::i();
  /// Root used by the axis-2 kernel; mu when unset.
  std::optional<RootOfMinusOne> theta;
  TransformPath path = TransformPath::Direct;
  WindowExtension window_extension = WindowExtension::Zero;
  KernelFault fault = KernelFault::None;

  const RootOfMinusOne& axis2_root() const noexcept { return theta ? *theta : mu; }

  /// Throws Error(DegenerateB) if either |b| < kMinAbsB.
  void validate() const;
};

/// F(omega, nu) = sum f(xi) e^{-mu (omega xi1 + nu xi2)} dxi1 dxi2, kernel on
/// the right.
Field2D rbiqft_direct(const Field2D& f, const RootOfMinusOne& mu, const GridSpec& omega_grid);

/// Riemann sum of f(xi) K^mu_{M1}(xi1, omega1) K^theta_{M2}(xi2, omega2).
Field2D rbiqlct_direct(const Field2D& f, const TransformConfig& cfg, const GridSpec& omega_grid);

/// Same sum evaluated by chirp - DFT - chirp on dual_grid(f.grid(), M1, M2).
Field2D rbiqlct_fast(const Field2D& f, const TransformConfig& cfg);

/// As above; throws Error(GridMismatch) unless omega_grid is the dual grid.
Field2D rbiqlct_fast(const Field2D& f, const TransformConfig& cfg, const GridSpec& omega_grid);

/// Dispatches on cfg.path.
Field2D rbiqlct(const Field2D& f, const TransformConfig& cfg, const GridSpec& omega_grid);

/// Inverse transform back onto xi_grid:
///   f(xi) = sum F(omega) conj(K^mu_{M1}(xi1, omega1) K^theta_{M2}(xi2, omega2)) domega
/// with the conjugated kernel product written as K^{-theta}_{M2} K^{-mu}_{M1}.
/// F must live on dual_grid(xi_grid, M1, M2), otherwise Error(GridMismatch).
/// Honors cfg.path.
Field2D rbiqlct_inverse(const Field2D& spectrum, const TransformConfig& cfg,
                        const GridSpec& xi_grid);

/// Lattice of window translations: per axis ceil(n / stride) multiples of
/// stride * step, k = -floor(count / 2) ... count - 1 - floor(count / 2).
GridSpec nu_lattice(const GridSpec& xi_grid, std::size_t stride = 1);

/// f(xi) conj(phi(xi - nu)) on f's grid. Throws Error(GridMismatch) unless
/// xi - nu lands on phi's lattice (equal spacing, integer offsets).
Field2D window_product(const Field2D& f, const Field2D& window, double nu1, double nu2,
                       WindowExtension extension);

/// phi(xi - nu) sampled on f's grid under the same lattice rules.
Field2D shifted_window(const GridSpec& xi_grid, const Field2D& window, double nu1, double nu2,
                       WindowExtension extension);

/// Windowed transform G(omega, nu) = L{ f conj(phi(. - nu)) }(omega).
///
/// Errors: ZeroWindow if ||phi|| < 1e-14, GridMismatch for nu values off
/// the lattice or (fast path) a non-dual omega grid.
WlctField biqwlct(const Field2D& f, const Field2D& window, const TransformConfig& cfg,
                  const GridSpec& omega_grid, const GridSpec& nu_grid);

/// Streaming form of biqwlct: hands each nu slice to sink in lattice order
/// (axis 1 fastest) without materializing the 4-D array.
void biqwlct_stream(const Field2D& f, const Field2D& window, const TransformConfig& cfg,
                    const GridSpec& omega_grid, const GridSpec& nu_grid,
                    const std::function<void(std::size_t v1, std::size_t v2, Field2D&& slice)>& sink);

/// f(xi) = ||phi||^{-2} sum_nu [L^{-1} G(., nu)](xi) phi(xi - nu) dnu, with
/// ||phi||^2 the discrete window energy.
Field2D biqwlct_inverse(const WlctField& transform, const Field2D& window,
                        const TransformConfig& cfg, const GridSpec& xi_grid);

/// Throws Error(ZeroWindow) if the window's L2 norm is below 1e-14.
void require_nonzero_window(const Field2D& window);

}  // namespace biqwlct
