#include "reqcheck/print.hpp"

#include <cstdio>

#include "reqcheck/emit.hpp"
#include "reqcheck/parser.hpp"

namespace reqcheck {

namespace {

std::string format_double(double v) {
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

// ---------------------------------------------------------------------------
// CoCoSpec expression rendering: names print bare, grouping comes from the
// Paren nodes of the source, so contract text reproduces the requirement
// author's own bracketing.
// ---------------------------------------------------------------------------

std::string coco_num(const NumExprPtr& e) {
  if (const auto* n = std::get_if<NumName>(&e->node)) return n->name;
  if (const auto* n = std::get_if<NumLiteral>(&e->node))
    return format_double(n->value);
  if (const auto* n = std::get_if<NumCall>(&e->node)) {
    std::string out = n->fn + "(";
    for (std::size_t i = 0; i < n->args.size(); ++i) {
      if (i) out += ", ";
      out += coco_num(n->args[i]);
    }
    return out + ")";
  }
  if (const auto* n = std::get_if<NumBinary>(&e->node)) {
    const char* op = n->op == ArithOp::Add   ? " + "
                     : n->op == ArithOp::Sub ? " - "
                     : n->op == ArithOp::Mul ? " * "
                                             : " / ";
    return coco_num(n->lhs) + op + coco_num(n->rhs);
  }
  const auto& n = std::get<NumParen>(e->node);
  return "(" + coco_num(n.inner) + ")";
}

std::string coco_expr(const BoolExprPtr& e) {
  if (const auto* n = std::get_if<BoolAtom>(&e->node)) return n->name;
  if (const auto* n = std::get_if<BoolConst>(&e->node))
    return n->value ? "true" : "false";
  if (const auto* n = std::get_if<BoolNot>(&e->node))
    return "not(" + coco_expr(n->arg) + ")";
  if (const auto* n = std::get_if<BoolBinary>(&e->node)) {
    const char* op = n->kind == BoolBinary::And  ? " and "
                     : n->kind == BoolBinary::Or ? " or "
                                                 : " => ";
    return coco_expr(n->lhs) + op + coco_expr(n->rhs);
  }
  if (const auto* n = std::get_if<BoolCompare>(&e->node)) {
    const char* op = nullptr;
    switch (n->op) {
      case CmpOp::Lt: op = " < "; break;
      case CmpOp::Le: op = " <= "; break;
      case CmpOp::Gt: op = " > "; break;
      case CmpOp::Ge: op = " >= "; break;
      case CmpOp::Eq: op = " = "; break;
      case CmpOp::Ne: op = " <> "; break;
    }
    return coco_num(n->lhs) + op + coco_num(n->rhs);
  }
  if (const auto* n = std::get_if<BoolIsNull>(&e->node))
    return coco_num(n->arg) + " = null";
  const auto& n = std::get<BoolParen>(e->node);
  return "(" + coco_expr(n.inner) + ")";
}

// Metric past operators expand into pre/FTP-free chains before printing:
//   O[0,0](f) = f
//   O[0,b](f) = f or pre(O[0,b-1](f))      (pre is strong; false at step 0)
//   O[a,b](f) = pre(O[a-1,b-1](f))         for a >= 1
//   H[a,b](f) = not(O[a,b](not f))
FormulaPtr expand_once_within(int lo, int hi, const FormulaPtr& f) {
  if (lo > 0) return f_prev(expand_once_within(lo - 1, hi - 1, f));
  if (hi == 0) return f;
  return f_or(f, f_prev(expand_once_within(0, hi - 1, f)));
}

FormulaPtr expand_metric_past(const FormulaPtr& f) {
  if (!f) return f;
  FormulaPtr lhs = expand_metric_past(f->lhs);
  FormulaPtr rhs = expand_metric_past(f->rhs);
  if (f->op == TemporalOp::OnceWithin)
    return expand_once_within(f->lo, f->hi, lhs);
  if (f->op == TemporalOp::HistoricallyWithin)
    return f_not(expand_once_within(f->lo, f->hi, f_not(lhs)));
  if (lhs == f->lhs && rhs == f->rhs) return f;
  auto copy = std::make_shared<TemporalFormula>(*f);
  copy->lhs = lhs;
  copy->rhs = rhs;
  return copy;
}

// Metric future operators expand into X chains:
//   F[0,0](f) = f;  F[0,b](f) = f | X(F[0,b-1](f));  F[a,b] = X(F[a-1,b-1])
// F uses strong X (the witness must sit inside the trace). G clips
// vacuously at the trace end, so its shifts are weak: !X!(g) keeps the
// finite-trace reading while staying plain X under infinite semantics.
FormulaPtr weak_next(const FormulaPtr& f) { return f_not(f_next(f_not(f))); }

FormulaPtr expand_finally_within(int lo, int hi, const FormulaPtr& f) {
  if (lo > 0) return f_next(expand_finally_within(lo - 1, hi - 1, f));
  if (hi == 0) return f;
  return f_or(f, f_next(expand_finally_within(0, hi - 1, f)));
}

FormulaPtr expand_globally_within(int lo, int hi, const FormulaPtr& f) {
  if (lo > 0) return weak_next(expand_globally_within(lo - 1, hi - 1, f));
  if (hi == 0) return f;
  return f_and(f, weak_next(expand_globally_within(0, hi - 1, f)));
}

FormulaPtr expand_metric_future(const FormulaPtr& f) {
  if (!f) return f;
  FormulaPtr lhs = expand_metric_future(f->lhs);
  FormulaPtr rhs = expand_metric_future(f->rhs);
  if (f->op == TemporalOp::FinallyWithin)
    return expand_finally_within(f->lo, f->hi, lhs);
  if (f->op == TemporalOp::GloballyWithin)
    return expand_globally_within(f->lo, f->hi, lhs);
  if (lhs == f->lhs && rhs == f->rhs) return f;
  auto copy = std::make_shared<TemporalFormula>(*f);
  copy->lhs = lhs;
  copy->rhs = rhs;
  return copy;
}

[[noreturn]] void unsupported(const char* what, const char* dialect) {
  throw MalformedFormulaError(std::string(what) + " is not supported in the " +
                              dialect + " dialect");
}

// ---------------------------------------------------------------------------
// CoCoSpec formula rendering
// ---------------------------------------------------------------------------

std::string coco_formula(const FormulaPtr& f);

bool coco_self_parenthesized(const FormulaPtr& f) {
  return f->op == TemporalOp::And || f->op == TemporalOp::Or ||
         f->op == TemporalOp::Implies;
}

std::string coco_operand(const FormulaPtr& f) {
  std::string s = coco_formula(f);
  if (coco_self_parenthesized(f) || f->op == TemporalOp::FirstTimePoint)
    return s;
  return "(" + s + ")";
}

std::string coco_formula(const FormulaPtr& f) {
  switch (f->op) {
    case TemporalOp::Atom: return coco_expr(f->atom);
    case TemporalOp::FirstTimePoint: return "FTP";
    case TemporalOp::Not: return "not(" + coco_formula(f->lhs) + ")";
    case TemporalOp::Prev: return "pre(" + coco_formula(f->lhs) + ")";
    case TemporalOp::Historically: return "H(" + coco_formula(f->lhs) + ")";
    case TemporalOp::Once: return "O(" + coco_formula(f->lhs) + ")";
    case TemporalOp::Since:
      return "S(" + coco_operand(f->lhs) + ", " + coco_operand(f->rhs) + ")";
    case TemporalOp::SinceInclusive:
      return "SI(" + coco_operand(f->lhs) + ", " + coco_operand(f->rhs) + ")";
    case TemporalOp::And:
      return "(" + coco_operand(f->lhs) + " and " + coco_operand(f->rhs) + ")";
    case TemporalOp::Or:
      return "(" + coco_operand(f->lhs) + " or " + coco_operand(f->rhs) + ")";
    case TemporalOp::Implies:
      return "(" + coco_operand(f->lhs) + " => " + coco_operand(f->rhs) + ")";
    default:
      unsupported("future operator", "cocospec");
  }
}

// ---------------------------------------------------------------------------
// ptltl / ltl / smv rendering (precedence-minimal)
// ---------------------------------------------------------------------------

struct MathStyle {
  bool function_unary = false;  // H(x) vs G x
  const char* implies = " -> ";
  std::string (*atom)(const BoolExprPtr&) = nullptr;
};

int math_prec(const FormulaPtr& f) {
  switch (f->op) {
    case TemporalOp::Implies: return 1;
    case TemporalOp::Or: return 2;
    case TemporalOp::And: return 3;
    case TemporalOp::Until:
    case TemporalOp::Since:
    case TemporalOp::SinceInclusive:
      return 4;
    case TemporalOp::Atom: {
      const auto& node = f->atom->node;
      bool leafish = std::holds_alternative<BoolAtom>(node) ||
                     std::holds_alternative<BoolConst>(node) ||
                     std::holds_alternative<BoolParen>(node);
      return leafish ? 6 : 0;  // composite grounded atoms always wrapped
    }
    default: return 5;  // unary operators
  }
}

std::string math_formula(const FormulaPtr& f, const MathStyle& style);

std::string math_child(const FormulaPtr& child, int parent_prec,
                       bool right_side, const MathStyle& style) {
  int prec = math_prec(child);
  bool wrap = right_side ? prec <= parent_prec : prec < parent_prec;
  // -> is right-associative; U and S are printed non-associatively.
  if (parent_prec == 1 && prec == 1) wrap = !right_side;
  if (!right_side && parent_prec == 4 && prec == 4) wrap = true;
  std::string s = math_formula(child, style);
  return wrap ? "(" + s + ")" : s;
}

std::string math_unary(const char* name, const FormulaPtr& arg,
                       const MathStyle& style) {
  if (style.function_unary) return std::string(name) + "(" + math_formula(arg, style) + ")";
  int prec = math_prec(arg);
  std::string s = math_formula(arg, style);
  if (prec < 5) return std::string(name) + " (" + s + ")";
  return std::string(name) + " " + s;
}

std::string math_formula(const FormulaPtr& f, const MathStyle& style) {
  switch (f->op) {
    case TemporalOp::Atom:
      return style.atom ? style.atom(f->atom) : print_fretish(f->atom);
    case TemporalOp::FirstTimePoint: return "FTP";
    case TemporalOp::Not: {
      int prec = math_prec(f->lhs);
      std::string s = math_formula(f->lhs, style);
      return prec < 5 ? "!(" + s + ")" : "!" + s;
    }
    case TemporalOp::And:
      return math_child(f->lhs, 3, false, style) + " & " +
             math_child(f->rhs, 3, true, style);
    case TemporalOp::Or:
      return math_child(f->lhs, 2, false, style) + " | " +
             math_child(f->rhs, 2, true, style);
    case TemporalOp::Implies:
      return math_child(f->lhs, 1, false, style) + style.implies +
             math_child(f->rhs, 1, true, style);
    case TemporalOp::Prev: return math_unary("Y", f->lhs, style);
    case TemporalOp::Historically: return math_unary("H", f->lhs, style);
    case TemporalOp::Once: return math_unary("O", f->lhs, style);
    case TemporalOp::Since:
      return "S(" + math_formula(f->lhs, style) + ", " +
             math_formula(f->rhs, style) + ")";
    case TemporalOp::SinceInclusive:
      return "SI(" + math_formula(f->lhs, style) + ", " +
             math_formula(f->rhs, style) + ")";
    case TemporalOp::HistoricallyWithin:
      return "H[" + std::to_string(f->lo) + "," + std::to_string(f->hi) +
             "](" + math_formula(f->lhs, style) + ")";
    case TemporalOp::OnceWithin:
      return "O[" + std::to_string(f->lo) + "," + std::to_string(f->hi) +
             "](" + math_formula(f->lhs, style) + ")";
    case TemporalOp::Next: return math_unary("X", f->lhs, style);
    case TemporalOp::Globally: return math_unary("G", f->lhs, style);
    case TemporalOp::Finally: return math_unary("F", f->lhs, style);
    case TemporalOp::Until:
      return math_child(f->lhs, 4, false, style) + " U " +
             math_child(f->rhs, 4, true, style);
    case TemporalOp::GloballyWithin:
      return "G[" + std::to_string(f->lo) + "," + std::to_string(f->hi) +
             "](" + math_formula(f->lhs, style) + ")";
    case TemporalOp::FinallyWithin:
      return "F[" + std::to_string(f->lo) + "," + std::to_string(f->hi) +
             "](" + math_formula(f->lhs, style) + ")";
  }
  return {};
}

}  // namespace

std::string pretty_print(const FormulaPtr& f, Dialect dialect) {
  if (!f) throw std::invalid_argument("null formula");
  switch (dialect) {
    case Dialect::Ptltl: {
      if (!is_past_only(f)) unsupported("future operator", "ptltl");
      MathStyle style{/*function_unary=*/true, " -> "};
      return math_formula(f, style);
    }
    case Dialect::Ltl: {
      if (!is_future_only(f)) unsupported("past operator", "ltl");
      MathStyle style{/*function_unary=*/true, " -> "};
      return math_formula(f, style);
    }
    case Dialect::Cocospec: {
      if (!is_past_only(f)) unsupported("future operator", "cocospec");
      return coco_formula(expand_metric_past(f));
    }
    case Dialect::Smv: {
      if (!is_future_only(f)) unsupported("past operator", "smv");
      MathStyle style{/*function_unary=*/false, " -> ", print_smv_expr};
      return math_formula(expand_metric_future(f), style);
    }
  }
  return {};
}

}  // namespace reqcheck
