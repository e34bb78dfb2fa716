#pragma once

#include <string>

#include "reqcheck/compile.hpp"

namespace reqcheck {

/// One CoCoSpec guarantee line for inclusion in a Lustre contract node:
/// `guarantee "<id>" (<past formula>);`.
std::string emit_cocospec(const CompiledRequirement& creq);

/// SMV text: DEFINE/VAR/ASSIGN lines that latch the previous condition value
/// and define the rising edge, plus one LTLSPEC over the future obligation.
std::string emit_smv(const CompiledRequirement& creq);

/// Plain-text past-time / future-time formula artifacts.
std::string emit_ptltl(const CompiledRequirement& creq);
std::string emit_ltl(const CompiledRequirement& creq);

/// SMV rendering of a grounded boolean expression (used for DEFINE lines).
std::string print_smv_expr(const BoolExprPtr& expr);

}  // namespace reqcheck
