#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "biqwlct/hypercomplex.hpp"

namespace biqwlct {

/// Forward DFT X[k] = sum_n x[n] e^{-2 pi I n k / N} for any N >= 1.
///
/// Recursive mixed-radix decimation in time: split by the smallest prime
/// factor, direct O(p^2) butterflies for prime sizes.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);

  std::size_t size() const noexcept { return n_; }

  /// in and out must both have size() elements and must not alias.
  void forward(std::span<const Complex> in, std::span<Complex> out) const;

 private:
  void recurse(const Complex* in, std::size_t in_stride, Complex* out, std::size_t n,
               std::size_t tw_stride) const;

  std::size_t n_;
  std::vector<Complex> twiddle_;  // e^{-2 pi I j / N}
};

}  // namespace biqwlct
