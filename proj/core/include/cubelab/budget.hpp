#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cubelab {

/// Raised when an exhaustive request would exceed its point-operation
/// budget. Refusal, not silent downgrade: the caller sees the estimate.
class budget_error : public std::runtime_error {
 public:
  budget_error(uint64_t estimate, uint64_t budget)
      : std::runtime_error("work estimate " + std::to_string(estimate) +
                           " point-ops exceeds budget " +
                           std::to_string(budget)),
        estimate_(estimate),
        budget_(budget) {}

  uint64_t estimate() const { return estimate_; }
  uint64_t budget() const { return budget_; }

 private:
  uint64_t estimate_;
  uint64_t budget_;
};

constexpr uint64_t kDefaultPointOpBudget = uint64_t{1} << 38;

}  // namespace cubelab
