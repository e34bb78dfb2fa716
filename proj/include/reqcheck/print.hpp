#pragma once

#include <string>

#include "reqcheck/temporal.hpp"

namespace reqcheck {

enum class Dialect { Ptltl, Ltl, Cocospec, Smv };

/// Deterministic rendering of a temporal formula.
///
/// - ptltl/ltl: function-style operators (H(..), Y(..), S(a, b), G[a,b](..)),
///   past-only / future-only respectively.
/// - cocospec: Lustre contract body syntax (H, O, S, SI, pre, FTP, and, or,
///   not, =>); metric past operators are expanded into pre/FTP chains.
/// - smv: LTLSPEC syntax (G, F, X, U, !, &, |, ->); metric future operators
///   are expanded into nested X chains.
///
/// Throws MalformedFormulaError when the formula uses an operator the
/// dialect cannot express.
std::string pretty_print(const FormulaPtr& f, Dialect dialect);

}  // namespace reqcheck
