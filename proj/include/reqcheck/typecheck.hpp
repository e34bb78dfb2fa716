#pragma once

#include <map>
#include <string>
#include <vector>

#include "reqcheck/ast.hpp"
#include "reqcheck/diagnostics.hpp"
#include "reqcheck/params.hpp"

namespace reqcheck {

enum class SignalKind { Bool, Numeric };

/// Declared signal names with their kinds.
using SignalTable = std::map<std::string, SignalKind>;

/// Checks that `expr` is well-typed and all names resolve against the
/// declared signals and parameters. The empty list means well-typed.
/// Deterministic: diagnostics are emitted in source (traversal) order.
///
/// Rules: boolean atoms must name bool signals; numeric operands must name
/// numeric signals or parameters; diff takes 2 numeric args, sensorValue
/// takes 1 selector identifier (resolved later through the signal map).
std::vector<Diagnostic> typecheck(const BoolExpr& expr,
                                  const SignalTable& signals,
                                  const ParameterSet& params);

std::vector<Diagnostic> typecheck(const BoolExprPtr& expr,
                                  const SignalTable& signals,
                                  const ParameterSet& params);

}  // namespace reqcheck
