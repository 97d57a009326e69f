#pragma once

#include <stdexcept>
#include <string>

namespace sharing {

// Malformed or contract-violating input (bad documents, precondition
// violations, inconsistent parameters). CLI maps this to exit code 2.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// An exact search refused to run (or to continue) because its configured
// node budget would be exceeded. Distinct from InputError so callers can
// tell "instance too large for this engine" from "instance malformed".
// CLI maps this to exit code 3.
struct SearchBudgetError : std::runtime_error {
  explicit SearchBudgetError(const std::string& what)
      : std::runtime_error(what) {}
};

// Shared countdown for exponential searches. Engines call tick() once per
// search node; exhausting the budget aborts the search with
// SearchBudgetError rather than returning a wrong or partial answer.
class NodeBudget {
 public:
  static constexpr long long kDefaultCap = 10'000'000;

  explicit NodeBudget(long long cap = kDefaultCap) : remaining_(cap) {}

  void tick(const char* engine) {
    if (--remaining_ < 0) {
      throw SearchBudgetError(std::string(engine) +
                              ": search node budget exhausted");
    }
  }

  long long remaining() const { return remaining_; }

 private:
  long long remaining_;
};

}  // namespace sharing
