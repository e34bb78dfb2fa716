#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reqcheck/compile.hpp"
#include "reqcheck/ground.hpp"
#include "reqcheck/trace.hpp"
#include "reqcheck/verdict.hpp"

namespace reqcheck {

/// Reference semantics: computes the verdict directly from trigger/stop
/// intervals on the grounded series, independent of the compiled temporal
/// formulas. Mode scope restricts triggers and obligations to maximal mode
/// intervals; obligations clipped by the trace end follow the strong
/// interpretation (unserved eventualities violate, with a trace-truncation
/// warning).
Verdict oracle_check(const Requirement& req, const Trace& trace,
                     const SignalMap& map, const ParameterSet& params,
                     std::vector<std::string>* warnings = nullptr);

struct FormulaVerdicts {
  bool past_verdict = false;    // past formula at the final step
  bool future_verdict = false;  // future formula at step 0
};

FormulaVerdicts formula_check(const CompiledRequirement& creq,
                              const Trace& trace, const SignalMap& map,
                              const ParameterSet& params);

struct CheckRow {
  std::string req_id;
  std::string trace_id;
  Verdict verdict;
  bool past_verdict = false;
  bool future_verdict = false;
  bool agreement = false;  // oracle vs both formula verdicts
  std::vector<std::string> warnings;
  std::optional<std::string> error;  // per-pair failure, not a crash

  bool passed() const {
    return !error && verdict.ok() && agreement;
  }
};

/// Checks one requirement/trace pair with a caller-supplied compilation
/// (test fixtures may pass a deliberately miscompiled one).
CheckRow check_one(const Requirement& req, const CompiledRequirement& creq,
                   const std::string& trace_id, const Trace& trace,
                   const SignalMap& map, const ParameterSet& params);

/// Cross product of requirements and traces, rows ordered by
/// (req id, trace id). Per-pair errors become per-pair results.
std::vector<CheckRow> check_project(
    const std::vector<Requirement>& reqs,
    const std::vector<std::pair<std::string, Trace>>& traces,
    const SignalMap& map, const ParameterSet& params);

/// JSON rows for the results file (schema: req_id, trace_id, status,
/// trigger_indices, violation, past/future verdicts, agreement, warnings).
std::string check_rows_to_json(const std::vector<CheckRow>& rows);
std::vector<CheckRow> check_rows_from_json(const std::string& text);

}  // namespace reqcheck
