#include "biqwlct/hypercomplex.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <utility>

#include "biqwlct/error.hpp"

namespace biqwlct {

Biquaternion Biquaternion::from_reals(std::span<const double, 8> r) noexcept {
  return {Complex{r[0], r[1]}, Complex{r[2], r[3]}, Complex{r[4], r[5]},
          Complex{r[6], r[7]}};
}

std::array<double, 8> Biquaternion::to_reals() const noexcept {
  std::array<double, 8> r{};
  for (std::size_t n = 0; n < 4; ++n) {
    r[2 * n] = c_[n].real();
    r[2 * n + 1] = c_[n].imag();
  }
  return r;
}

Biquaternion Biquaternion::real_part() const noexcept {
  return {c_[0].real(), c_[1].real(), c_[2].real(), c_[3].real()};
}

Biquaternion Biquaternion::imag_part() const noexcept {
  return {c_[0].imag(), c_[1].imag(), c_[2].imag(), c_[3].imag()};
}

bool Biquaternion::is_real_quaternion(double tol) const noexcept {
  return std::all_of(c_.begin(), c_.end(),
                     [tol](const Complex& z) { return std::abs(z.imag()) <= tol; });
}

bool Biquaternion::is_finite() const noexcept {
  return std::all_of(c_.begin(), c_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

Biquaternion conjugate(const Biquaternion& h, Conjugation kind) noexcept {
  switch (kind) {
    case Conjugation::Quaternion:
      return {h[0], -h[1], -h[2], -h[3]};
    case Conjugation::Complex:
      return {std::conj(h[0]), std::conj(h[1]), std::conj(h[2]), std::conj(h[3])};
    case Conjugation::Biquaternion:
      break;
  }
  return {std::conj(h[0]), -std::conj(h[1]), -std::conj(h[2]), -std::conj(h[3])};
}

double norm_sq(const Biquaternion& h) noexcept {
  return std::norm(h[0]) + std::norm(h[1]) + std::norm(h[2]) + std::norm(h[3]);
}

double norm(const Biquaternion& h) noexcept { return std::sqrt(norm_sq(h)); }

double max_abs_diff(const Biquaternion& h, const Biquaternion& g) noexcept {
  double m = 0.0;
  for (std::size_t n = 0; n < 4; ++n) {
    m = std::max({m, std::abs(h[n].real() - g[n].real()),
                  std::abs(h[n].imag() - g[n].imag())});
  }
  return m;
}

Biquaternion exp(const Biquaternion& h) noexcept {
  using detail::cmul;
  // V(h)^2 = -theta^2, so e^{V} = cos(theta) + V sin(theta)/theta; both
  // functions are even in theta and the branch of the root drops out.
  const Complex theta_sq = cmul(h[1], h[1]) + cmul(h[2], h[2]) + cmul(h[3], h[3]);
  const Complex theta = std::sqrt(theta_sq);
  Complex cos_t;
  Complex sinc_t;
  if (std::abs(theta) < 1e-6) {
    const Complex t4 = cmul(theta_sq, theta_sq);
    cos_t = 1.0 - theta_sq / 2.0 + t4 / 24.0;
    sinc_t = 1.0 - theta_sq / 6.0 + t4 / 120.0;
  } else {
    cos_t = std::cos(theta);
    sinc_t = std::sin(theta) / theta;
  }
  const Complex es = std::exp(h[0]);
  return {cmul(es, cos_t), cmul(es, cmul(sinc_t, h[1])), cmul(es, cmul(sinc_t, h[2])),
          cmul(es, cmul(sinc_t, h[3]))};
}

bool is_root_of_minus_one(const Biquaternion& h, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  return norm_sq(h * h + Biquaternion{1.0}) <= tol * tol;
}

Complex vector_inner(const Biquaternion& h, const Biquaternion& g) noexcept {
  using detail::cmul;
  return cmul(h[1], g[1]) + cmul(h[2], g[2]) + cmul(h[3], g[3]);
}

Biquaternion vector_wedge(const Biquaternion& h, const Biquaternion& g) noexcept {
  using detail::cmul;
  return {Complex{}, cmul(h[2], g[3]) - cmul(h[3], g[2]),
          -(cmul(h[1], g[3]) - cmul(h[3], g[1])), cmul(h[1], g[2]) - cmul(h[2], g[1])};
}

RootOfMinusOne RootOfMinusOne::make(const Biquaternion& value, double tol) {
  if (!value.is_finite() || !is_root_of_minus_one(value, tol)) {
    throw Error(ErrorCode::NotRootOfMinusOne, "value does not square to -1");
  }
  return RootOfMinusOne{value};
}

bool RootOfMinusOne::is_conjugate_antisymmetric(double tol) const noexcept {
  return max_abs_diff(conjugate(value_), -value_) <= tol;
}

SimplexPerplex split_simplex_perplex(const Biquaternion& h, const RootOfMinusOne& gamma,
                                     const RootOfMinusOne& nu) {
  if (std::abs(vector_inner(gamma.value(), nu.value())) > 1e-10) {
    throw Error(ErrorCode::NotOrthogonal, "simplex/perplex roots are not orthogonal");
  }
  const Biquaternion gamma_nu = gamma.value() * nu.value();
  const std::array<Biquaternion, 4> basis{Biquaternion{1.0}, gamma.value(), nu.value(),
                                          gamma_nu};

  // Solve sum_m coef[m] basis[m] = h; complex scalars commute with the basis,
  // so this is an ordinary 4x4 complex system on the coefficient vectors.
  std::array<std::array<Complex, 5>, 4> a{};
  for (std::size_t row = 0; row < 4; ++row) {
    for (std::size_t col = 0; col < 4; ++col) a[row][col] = basis[col][row];
    a[row][4] = h[row];
  }
  for (std::size_t col = 0; col < 4; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < 4; ++row) {
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    }
    if (std::abs(a[pivot][col]) < 1e-10) {
      throw Error(ErrorCode::NotOrthogonal, "{1, gamma, nu, gamma nu} is not a basis");
    }
    std::swap(a[col], a[pivot]);
    for (std::size_t row = 0; row < 4; ++row) {
      if (row == col) continue;
      const Complex factor = a[row][col] / a[col][col];
      for (std::size_t k = col; k < 5; ++k) a[row][k] -= factor * a[col][k];
    }
  }
  std::array<Complex, 4> coef{};
  for (std::size_t n = 0; n < 4; ++n) coef[n] = a[n][4] / a[n][n];

  SimplexPerplex out;
  out.simplex = Biquaternion{coef[0]} + coef[1] * gamma.value();
  out.perplex = (Biquaternion{coef[2]} + coef[3] * gamma.value()) * nu.value();
  return out;
}

std::ostream& operator<<(std::ostream& os, const Biquaternion& h) {
  return os << '(' << h[0] << ", " << h[1] << " i, " << h[2] << " j, " << h[3] << " k)";
}

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotRootOfMinusOne: return "NotRootOfMinusOne";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::DegenerateB: return "DegenerateB";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::ZeroWindow: return "ZeroWindow";
    case ErrorCode::Format: return "Format";
  }
  return "Unknown";
}

}  // namespace biqwlct
