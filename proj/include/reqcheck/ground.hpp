#pragma once

#include <stdexcept>
#include <vector>

#include "reqcheck/ast.hpp"
#include "reqcheck/params.hpp"
#include "reqcheck/temporal.hpp"
#include "reqcheck/trace.hpp"

namespace reqcheck {

class GroundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GroundResult {
  bool value = false;
  /// Set when an unavailable operand forced a comparison to false.
  /// The `= null` availability test never raises it.
  bool unavailable = false;
};

/// Evaluates a boolean expression at step t. Name lookup order: signal
/// binding (map, then same-name column), then parameter. Comparisons follow
/// the eq_tol rule for `=` and `!=`; a comparison with an unavailable
/// operand is false and flags the step.
GroundResult ground(const BoolExprPtr& expr, const Trace& trace,
                    const SignalMap& map, const ParameterSet& params,
                    std::size_t t);

struct BoolifyResult {
  BoolTrace bool_trace;
  std::vector<std::size_t> unavailable_steps;  // sorted, unique
};

/// Valuates every expression at every step of the trace. Atom keys follow
/// BoolTrace::key_of.
BoolifyResult boolify(const std::vector<BoolExprPtr>& exprs, const Trace& trace,
                      const SignalMap& map, const ParameterSet& params);

}  // namespace reqcheck
