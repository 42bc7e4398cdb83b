#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "biqwlct/hypercomplex.hpp"
#include "biqwlct/lct_kernel.hpp"

namespace testing_support {

// splitmix64; every test draws from its own fixed seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // [0, 1) with 53 random bits
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller, one value per call
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  biqwlct::Biquaternion biquaternion(double scale = 1.0) {
    std::array<double, 8> r{};
    for (auto& x : r) x = scale * normal();
    return biqwlct::Biquaternion::from_reals(r);
  }

  biqwlct::Biquaternion real_quaternion(double scale = 1.0) {
    return {scale * normal(), scale * normal(), scale * normal(), scale * normal()};
  }

  // Unit pure real quaternion: a root of -1.
  biqwlct::Biquaternion unit_vector() {
    double v[3];
    double n = 0.0;
    do {
      for (double& x : v) x = normal();
      n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    } while (n < 1e-3);
    return {0.0, v[0] / n, v[1] / n, v[2] / n};
  }

  // det-1 matrix with |b| >= min_b, either sign of b.
  biqwlct::LctParam lct_param(double min_b = 0.25) {
    for (;;) {
      const double a = uniform(-2.0, 2.0);
      double b = uniform(min_b, 2.0);
      if (uniform() < 0.5) b = -b;
      const double c = uniform(-2.0, 2.0);
      const double d = (1.0 + b * c) / a;
      if (std::abs(a) > 0.2 && std::abs(d) < 5.0) return biqwlct::LctParam::make(a, b, c, d);
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace testing_support
