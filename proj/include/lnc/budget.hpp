#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>

namespace lnc {

/// Raised whenever a request would exceed an explicit budget.  Callers must
/// treat it as a refusal: nothing was silently truncated.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Budget {
  /// Full GL(L,p) enumeration allowed while L^2 * log2(p) stays within this.
  double gl_enumeration_bits = 25.0;
  /// Max number of candidate layer-4 subsets when instantiating N_{omega,d}.
  std::uint64_t receiver_subsets = 10'000'000;
  /// Max product choices scanned by the layer-condition checker.
  std::uint64_t lemma1_products = 1ULL << 24;
  /// Max products scanned by the Swirl-condition checker (2^omega).
  std::uint64_t lemma2_products = 1ULL << 24;
  /// Max code assignments visited by brute-force scalar search.
  std::uint64_t brute_force_codes = 50'000'000;
  /// Max matrix dimension materialized by the construction builders.
  std::size_t max_materialized_dim = 64;
  /// Max bit length of p^L handled exactly by certificate arithmetic.
  std::uint64_t certificate_bits = 1ULL << 23;
  /// Wall-clock cap for a single search phase (0 = unlimited).
  std::uint64_t phase_ms = 0;

  /// Defaults, with phase_ms taken from LNC_BUDGET_MS when set.
  static Budget from_env() {
    Budget b;
    if (const char* env = std::getenv("LNC_BUDGET_MS")) {
      try {
        b.phase_ms = std::stoull(env);
      } catch (const std::exception&) {
        throw std::invalid_argument("LNC_BUDGET_MS must be a non-negative integer");
      }
    }
    return b;
  }
};

/// Wall-clock guard for one search phase.
class Deadline {
 public:
  explicit Deadline(std::uint64_t ms) {
    if (ms > 0) end_ = std::chrono::steady_clock::now() + std::chrono::milliseconds(ms);
  }
  bool expired() const { return end_ && std::chrono::steady_clock::now() >= *end_; }

 private:
  std::optional<std::chrono::steady_clock::time_point> end_;
};

}  // namespace lnc
