#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "biqwlct/transform.hpp"

namespace biqwlct {

struct CheckResult {
  std::string id;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  /// Informational rows are reported but never fail the run.
  bool mandatory = true;
  std::string notes;
};

class VerificationReport {
 public:
  /// Mandatory row; pass iff residual <= tolerance (NaN fails).
  void add(std::string id, double residual, double tolerance, std::string notes = {});
  /// Informational row: infinite tolerance, notes prefixed "measured only".
  void add_measured(std::string id, double value, std::string notes = {});

  const std::vector<CheckResult>& rows() const noexcept { return rows_; }
  bool all_mandatory_passed() const noexcept;
  std::size_t failures() const noexcept;
  const CheckResult* find(const std::string& id) const noexcept;

  /// One line per row: id, residual, tolerance, PASS|FAIL, notes, tab separated.
  std::string to_text() const;

 private:
  std::vector<CheckResult> rows_;
};

std::string format_row(const CheckResult& row);

enum class VerifyScale { Small, Default };

struct VerifyOptions {
  VerifyScale scale = VerifyScale::Small;
  /// Corrupts the forward kernel everywhere the suite transforms.
  KernelFault fault = KernelFault::None;
  /// Runs only the signal-dependent checks, with every signal set to zero
  /// (windows stay nonzero).
  bool zero_signals = false;
  std::uint64_t seed = 0x5eed2024;
};

/// Deterministic run of every identity and inequality check.
VerificationReport verify_all(const VerifyOptions& options = {});

}  // namespace biqwlct
