#pragma once

#include <stdexcept>
#include <string>

#include "reqcheck/ast.hpp"
#include "reqcheck/temporal.hpp"

namespace reqcheck {

/// Unsupported timing/scope combination or an internally inconsistent
/// requirement. Compilation never silently approximates.
class CompileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// trigger_of on an unconditioned requirement. Such requirements compile
/// without a trigger; their obligation starts at step 0.
class NoConditionTrigger : public CompileError {
 public:
  NoConditionTrigger() : CompileError("requirement has no condition clause") {}
};

struct CompiledRequirement {
  std::string id;
  FormulaPtr trigger;          // rising-edge formula; null when unconditioned
  FormulaPtr past_formula;     // past/boolean operators only
  FormulaPtr future_formula;   // future/boolean operators only
  std::string contract_name;   // equals the requirement id

  // Emitter inputs: the (scoped) condition expression and the per-trigger
  // obligation in future form.
  BoolExprPtr condition;       // null when unconditioned and unscoped
  FormulaPtr future_obligation;
};

/// The rising-edge trigger c && (Y(!c) || FTP), where c conjoins all
/// condition clauses. Throws NoConditionTrigger when there are none.
FormulaPtr trigger_of(const Requirement& req);

/// Past-time formula, evaluated at the final step by the monitor.
/// Default and Eventually instantiate H(not c) or not(SI(edge, not r));
/// the other timings use templates validated against the oracle.
FormulaPtr compile_past(const Requirement& req);

/// Future-time formula, evaluated at step 0. Edges are rewritten with
/// next-step bookkeeping: (c -> obl) && G((!c && X c) -> X obl).
FormulaPtr compile_future(const Requirement& req);

CompiledRequirement compile_requirement(const Requirement& req);

/// The boolean expression `mode = M` for a scoped requirement (the mode
/// signal is compared against the mode code parameter M).
BoolExprPtr scope_mode_expr(const ScopeSpec& scope);

}  // namespace reqcheck
