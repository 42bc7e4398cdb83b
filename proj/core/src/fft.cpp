#include "biqwlct/fft.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "biqwlct/error.hpp"

namespace biqwlct {

namespace {

std::size_t smallest_factor(std::size_t n) {
  if (n % 2 == 0) return 2;
  for (std::size_t p = 3; p * p <= n; p += 2) {
    if (n % p == 0) return p;
  }
  return n;
}

}  // namespace

FftPlan::FftPlan(std::size_t n) : n_(n), twiddle_(n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "FFT size must be positive");
  for (std::size_t j = 0; j < n; ++j) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    twiddle_[j] = Complex{std::cos(angle), std::sin(angle)};
  }
}

void FftPlan::forward(std::span<const Complex> in, std::span<Complex> out) const {
  if (in.size() != n_ || out.size() != n_) {
    throw Error(ErrorCode::InvalidArgument, "FFT buffer size mismatch");
  }
  recurse(in.data(), 1, out.data(), n_, 1);
}

void FftPlan::recurse(const Complex* in, std::size_t in_stride, Complex* out, std::size_t n,
                      std::size_t tw_stride) const {
  using detail::cmul;
  if (n == 1) {
    out[0] = in[0];
    return;
  }
  const std::size_t p = smallest_factor(n);
  if (p == n) {
    for (std::size_t k = 0; k < n; ++k) {
      Complex acc{};
      for (std::size_t j = 0; j < n; ++j) {
        acc += cmul(in[j * in_stride], twiddle_[((j * k) % n) * tw_stride]);
      }
      out[k] = acc;
    }
    return;
  }

  const std::size_t m = n / p;
  for (std::size_t r = 0; r < p; ++r) {
    recurse(in + r * in_stride, in_stride * p, out + r * m, m, tw_stride * p);
  }

  // Combine: X[k + q m] = sum_r W_n^{r (k + q m)} Y_r[k].
  std::vector<Complex> column(p);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t r = 0; r < p; ++r) column[r] = out[r * m + k];
    for (std::size_t q = 0; q < p; ++q) {
      const std::size_t kk = k + q * m;
      Complex acc = column[0];
      for (std::size_t r = 1; r < p; ++r) {
        acc += cmul(column[r], twiddle_[((r * kk) % n) * tw_stride]);
      }
      out[kk] = acc;
    }
  }
}

}  // namespace biqwlct
