#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "reqcheck/diagnostics.hpp"

namespace reqcheck {

struct NumExpr;
struct BoolExpr;
using NumExprPtr = std::shared_ptr<const NumExpr>;
using BoolExprPtr = std::shared_ptr<const BoolExpr>;

enum class CmpOp { Lt, Le, Gt, Ge, Eq, Ne };
enum class ArithOp { Add, Sub, Mul, Div };

// ---------------------------------------------------------------------------
// Numeric expressions
// ---------------------------------------------------------------------------

/// Identifier reference. Resolves to either a trace signal or a scenario
/// parameter at grounding time. `sampled` records a `(i)` suffix in the
/// source; it denotes current-step sampling and has no semantic effect.
struct NumName {
  std::string name;
  bool sampled = false;
};

struct NumLiteral {
  double value = 0.0;
};

/// Function application. Known functions: diff/2 (|a - b|) and
/// sensorValue/1 (selector resolved through the signal map).
struct NumCall {
  std::string fn;
  std::vector<NumExprPtr> args;
};

struct NumBinary {
  ArithOp op;
  NumExprPtr lhs, rhs;
};

/// Explicit parentheses from the source. Preserved so that emitted
/// verification text reproduces the author's grouping verbatim.
struct NumParen {
  NumExprPtr inner;
};

struct NumExpr {
  std::variant<NumName, NumLiteral, NumCall, NumBinary, NumParen> node;
  Span span;
};

// ---------------------------------------------------------------------------
// Boolean expressions
// ---------------------------------------------------------------------------

struct BoolAtom {
  std::string name;
};

struct BoolConst {
  bool value = false;
};

struct BoolNot {
  BoolExprPtr arg;
};

struct BoolBinary {
  enum Kind { And, Or, Implies } kind;
  BoolExprPtr lhs, rhs;
};

struct BoolCompare {
  CmpOp op;
  NumExprPtr lhs, rhs;
};

/// Availability test `x = null`: true iff x is unavailable at the step.
struct BoolIsNull {
  NumExprPtr arg;
};

struct BoolParen {
  BoolExprPtr inner;
};

struct BoolExpr {
  std::variant<BoolAtom, BoolConst, BoolNot, BoolBinary, BoolCompare,
               BoolIsNull, BoolParen>
      node;
  Span span;
};

// Convenience constructors. Spans default to empty for programmatic trees.
NumExprPtr num_name(std::string name, bool sampled = false, Span span = {});
NumExprPtr num_literal(double value, Span span = {});
NumExprPtr num_call(std::string fn, std::vector<NumExprPtr> args, Span span = {});
NumExprPtr num_binary(ArithOp op, NumExprPtr lhs, NumExprPtr rhs, Span span = {});
NumExprPtr num_paren(NumExprPtr inner, Span span = {});

BoolExprPtr bool_atom(std::string name, Span span = {});
BoolExprPtr bool_const(bool value, Span span = {});
BoolExprPtr bool_not(BoolExprPtr arg, Span span = {});
BoolExprPtr bool_and(BoolExprPtr lhs, BoolExprPtr rhs, Span span = {});
BoolExprPtr bool_or(BoolExprPtr lhs, BoolExprPtr rhs, Span span = {});
BoolExprPtr bool_implies(BoolExprPtr lhs, BoolExprPtr rhs, Span span = {});
BoolExprPtr bool_compare(CmpOp op, NumExprPtr lhs, NumExprPtr rhs, Span span = {});
BoolExprPtr bool_is_null(NumExprPtr arg, Span span = {});
BoolExprPtr bool_paren(BoolExprPtr inner, Span span = {});

/// Structural equality; source spans are ignored.
bool structurally_equal(const NumExpr& a, const NumExpr& b);
bool structurally_equal(const BoolExpr& a, const BoolExpr& b);
bool structurally_equal(const NumExprPtr& a, const NumExprPtr& b);
bool structurally_equal(const BoolExprPtr& a, const BoolExprPtr& b);

/// Strips redundant outer parenthesis layers (Paren(Paren(x)) -> x's core).
BoolExprPtr strip_outer_parens(BoolExprPtr e);

// ---------------------------------------------------------------------------
// Requirements
// ---------------------------------------------------------------------------

enum class TimingKind { Default, Always, Never, Eventually, Until, Within, For };

struct TimingSpec {
  TimingKind kind = TimingKind::Default;
  BoolExprPtr stop_expr;      // Until only
  std::optional<int> ticks;   // Within / For only
};

/// `in <mode> mode` scope. InMode is the only scope kind.
struct ScopeSpec {
  std::string mode;
};

enum class ConditionKeyword { When, If };

struct ConditionClause {
  ConditionKeyword keyword = ConditionKeyword::If;
  BoolExprPtr expr;
};

struct Requirement {
  std::string id;
  std::optional<std::string> parent_id;
  std::string project;
  std::string rationale;
  std::optional<ScopeSpec> scope;
  std::vector<ConditionClause> conditions;
  std::string component;
  TimingSpec timing;
  BoolExprPtr response;
  std::string source_text;  // verbatim FRETISH sentence
};

bool structurally_equal(const TimingSpec& a, const TimingSpec& b);
bool structurally_equal(const Requirement& a, const Requirement& b);

/// Conjunction of all condition clauses in source order, or null when the
/// requirement is unconditioned.
BoolExprPtr combined_condition(const Requirement& req);

/// Deterministic s-expression dump of a requirement, used by golden tests.
std::string dump(const Requirement& req);
std::string dump(const BoolExprPtr& e);
std::string dump(const NumExprPtr& e);

}  // namespace reqcheck
