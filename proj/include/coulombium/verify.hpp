#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coulombium {

struct VerifyCheck {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<VerifyCheck> checks;

  bool passed() const noexcept;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  /// Charge ratio used by the counterexample suite.
  double z = 0.5;
};

/// forms | bnorm | rearrange | counterexample | delta | innerprod
std::span<const std::string_view> verify_suite_names() noexcept;

/// Throws Error(InvalidArgument) for an unknown suite.
VerifyReport run_verify_suite(std::string_view suite, const VerifyOptions& options);

}  // namespace coulombium
