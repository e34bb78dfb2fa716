#pragma once

#include <optional>
#include <string>
#include <vector>

namespace reqcheck {

enum class VerdictStatus { Satisfied, Violated, Vacuous };

std::string to_string(VerdictStatus s);

struct Violation {
  int trigger_index = 0;   // step of the first failing trigger
  int failing_step = 0;    // step where the obligation failed
  std::string response_value_witness;
};

/// Outcome of checking one requirement against one trace.
/// Invariants: Violated => violation present; Vacuous => trigger_indices empty.
struct Verdict {
  VerdictStatus status = VerdictStatus::Vacuous;
  std::vector<int> trigger_indices;
  std::optional<Violation> violation;

  bool ok() const { return status != VerdictStatus::Violated; }
};

}  // namespace reqcheck
