#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>

namespace biqwlct {

/// Complex scalar over the commuting imaginary unit I (I^2 = -1).
using Complex = std::complex<double>;

inline constexpr Complex kImagUnit{0.0, 1.0};

namespace detail {

// std::complex operator* goes through the C99 Annex G path on GCC, which is
// an order of magnitude slower than the textbook formula in the hot loops.
constexpr Complex cmul(const Complex& a, const Complex& b) noexcept {
  return {a.real() * b.real() - a.imag() * b.imag(),
          a.real() * b.imag() + a.imag() * b.real()};
}

}  // namespace detail

/// h = h0 + h1 i + h2 j + h3 k with complex coefficients h0..h3.
///
/// Quaternions are represented as the special case where every coefficient
/// has zero imaginary part; see is_real_quaternion().
class Biquaternion {
 public:
  constexpr Biquaternion() noexcept = default;
  constexpr Biquaternion(double s) noexcept : c_{Complex{s}, {}, {}, {}} {}
  constexpr Biquaternion(Complex h0, Complex h1 = {}, Complex h2 = {},
                         Complex h3 = {}) noexcept
      : c_{h0, h1, h2, h3} {}

  static constexpr Biquaternion unit_i() noexcept { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Biquaternion unit_j() noexcept { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Biquaternion unit_k() noexcept { return {0.0, 0.0, 0.0, 1.0}; }
  /// The commuting complex unit I as a biquaternion.
  static constexpr Biquaternion unit_I() noexcept { return {kImagUnit}; }

  /// Real coordinates in storage order: re h0, im h0, re h1, ..., im h3.
  static Biquaternion from_reals(std::span<const double, 8> r) noexcept;
  std::array<double, 8> to_reals() const noexcept;

  constexpr const Complex& operator[](std::size_t n) const noexcept { return c_[n]; }
  constexpr Complex& operator[](std::size_t n) noexcept { return c_[n]; }

  /// S(h) = h0.
  constexpr Complex scalar() const noexcept { return c_[0]; }
  /// V(h) = h1 i + h2 j + h3 k.
  constexpr Biquaternion vector() const noexcept { return {Complex{}, c_[1], c_[2], c_[3]}; }
  /// R(h): real quaternion of the real parts.
  Biquaternion real_part() const noexcept;
  /// I(h): real quaternion of the imaginary parts, so h = R(h) + I * I(h).
  Biquaternion imag_part() const noexcept;

  bool is_real_quaternion(double tol = 0.0) const noexcept;
  bool is_finite() const noexcept;

  constexpr Biquaternion& operator+=(const Biquaternion& g) noexcept {
    for (std::size_t n = 0; n < 4; ++n) c_[n] += g.c_[n];
    return *this;
  }
  constexpr Biquaternion& operator-=(const Biquaternion& g) noexcept {
    for (std::size_t n = 0; n < 4; ++n) c_[n] -= g.c_[n];
    return *this;
  }
  constexpr Biquaternion& operator*=(double s) noexcept {
    for (auto& z : c_) z *= s;
    return *this;
  }
  constexpr Biquaternion& operator*=(const Complex& s) noexcept {
    for (auto& z : c_) z = detail::cmul(z, s);
    return *this;
  }
  constexpr Biquaternion& operator*=(const Biquaternion& g) noexcept;

  friend constexpr bool operator==(const Biquaternion&, const Biquaternion&) noexcept = default;

 private:
  std::array<Complex, 4> c_{};
};

/// Hamilton product extended bilinearly over the complex coefficients
/// (i^2 = j^2 = k^2 = -1, ij = k, jk = i, ki = j; I commutes with i, j, k).
constexpr Biquaternion multiply(const Biquaternion& h, const Biquaternion& g) noexcept {
  using detail::cmul;
  return {cmul(h[0], g[0]) - cmul(h[1], g[1]) - cmul(h[2], g[2]) - cmul(h[3], g[3]),
          cmul(h[0], g[1]) + cmul(h[1], g[0]) + cmul(h[2], g[3]) - cmul(h[3], g[2]),
          cmul(h[0], g[2]) - cmul(h[1], g[3]) + cmul(h[2], g[0]) + cmul(h[3], g[1]),
          cmul(h[0], g[3]) + cmul(h[1], g[2]) - cmul(h[2], g[1]) + cmul(h[3], g[0])};
}

constexpr Biquaternion& Biquaternion::operator*=(const Biquaternion& g) noexcept {
  *this = multiply(*this, g);
  return *this;
}

constexpr Biquaternion operator+(Biquaternion h, const Biquaternion& g) noexcept { return h += g; }
constexpr Biquaternion operator-(Biquaternion h, const Biquaternion& g) noexcept { return h -= g; }
constexpr Biquaternion operator-(Biquaternion h) noexcept { return h *= -1.0; }
constexpr Biquaternion operator*(const Biquaternion& h, const Biquaternion& g) noexcept {
  return multiply(h, g);
}
constexpr Biquaternion operator*(Biquaternion h, double s) noexcept { return h *= s; }
constexpr Biquaternion operator*(double s, Biquaternion h) noexcept { return h *= s; }
constexpr Biquaternion operator*(Biquaternion h, const Complex& s) noexcept { return h *= s; }
constexpr Biquaternion operator*(const Complex& s, Biquaternion h) noexcept { return h *= s; }

enum class Conjugation {
  Quaternion,    // S(h) - V(h)
  Complex,       // conjugate every complex coefficient
  Biquaternion,  // both of the above
};

Biquaternion conjugate(const Biquaternion& h, Conjugation kind) noexcept;

/// Biquaternion conjugate (the bar operation); reverses products.
inline Biquaternion conjugate(const Biquaternion& h) noexcept {
  return conjugate(h, Conjugation::Biquaternion);
}

/// ||h||^2 = |h0|^2 + |h1|^2 + |h2|^2 + |h3|^2.
double norm_sq(const Biquaternion& h) noexcept;
double norm(const Biquaternion& h) noexcept;

/// Largest absolute difference over the eight real coordinates.
double max_abs_diff(const Biquaternion& h, const Biquaternion& g) noexcept;

/// Closed-form exponential e^h = e^{S(h)} (cos t + V(h) sin(t)/t), with
/// t = sqrt(h1^2 + h2^2 + h3^2) on the principal branch.
Biquaternion exp(const Biquaternion& h) noexcept;

/// True iff ||h h + 1|| <= tol.
bool is_root_of_minus_one(const Biquaternion& h, double tol = 1e-12);

/// <V(h), V(g)> = h1 g1 + h2 g2 + h3 g3 (bilinear, no conjugation).
Complex vector_inner(const Biquaternion& h, const Biquaternion& g) noexcept;

/// V(h) ^ V(g), the complexified cross product.
Biquaternion vector_wedge(const Biquaternion& h, const Biquaternion& g) noexcept;

/// A biquaternion known to square to -1.
class RootOfMinusOne {
 public:
  /// Throws Error(NotRootOfMinusOne) unless value^2 = -1 within tol.
  static RootOfMinusOne make(const Biquaternion& value, double tol = 1e-12);

  static RootOfMinusOne i() noexcept { return RootOfMinusOne{Biquaternion::unit_i()}; }
  static RootOfMinusOne j() noexcept { return RootOfMinusOne{Biquaternion::unit_j()}; }
  static RootOfMinusOne k() noexcept { return RootOfMinusOne{Biquaternion::unit_k()}; }
  static RootOfMinusOne I() noexcept { return RootOfMinusOne{Biquaternion::unit_I()}; }

  const Biquaternion& value() const noexcept { return value_; }
  operator const Biquaternion&() const noexcept { return value_; }

  RootOfMinusOne negated() const noexcept { return RootOfMinusOne{-value_}; }

  /// Whether the biquaternion conjugate equals the negation, which is what
  /// makes kernels built on this root unimodular.
  bool is_conjugate_antisymmetric(double tol = 1e-12) const noexcept;

  friend bool operator==(const RootOfMinusOne&, const RootOfMinusOne&) noexcept = default;

 private:
  explicit RootOfMinusOne(const Biquaternion& v) noexcept : value_(v) {}
  Biquaternion value_;
};

struct SimplexPerplex {
  Biquaternion simplex;  // in span{1, gamma}
  Biquaternion perplex;  // in span{nu, gamma nu}
};

/// Splits h = (c0 + c1 gamma) + (c2 + c3 gamma) nu with complex c0..c3.
///
/// Throws Error(NotOrthogonal) if <V(gamma), V(nu)> exceeds 1e-10 in modulus
/// or if {1, gamma, nu, gamma nu} does not span the algebra.
SimplexPerplex split_simplex_perplex(const Biquaternion& h, const RootOfMinusOne& gamma,
                                     const RootOfMinusOne& nu);

std::ostream& operator<<(std::ostream& os, const Biquaternion& h);

}  // namespace biqwlct
