#include "reqcheck/emit.hpp"

#include <cctype>
#include <cstdio>

#include "reqcheck/print.hpp"

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

std::string smv_num(const NumExprPtr& e) {
  if (const auto* n = std::get_if<NumName>(&e->node)) return n->name;
  if (const auto* n = std::get_if<NumLiteral>(&e->node))
    return format_double(n->value);
  if (const auto* n = std::get_if<NumCall>(&e->node)) {
    std::string out = n->fn + "(";
    for (std::size_t i = 0; i < n->args.size(); ++i) {
      if (i) out += ", ";
      out += smv_num(n->args[i]);
    }
    return out + ")";
  }
  if (const auto* n = std::get_if<NumBinary>(&e->node)) {
    const char* op = n->op == ArithOp::Add   ? " + "
                     : n->op == ArithOp::Sub ? " - "
                     : n->op == ArithOp::Mul ? " * "
                                             : " / ";
    return smv_num(n->lhs) + op + smv_num(n->rhs);
  }
  const auto& n = std::get<NumParen>(e->node);
  return "(" + smv_num(n.inner) + ")";
}

}  // namespace

std::string print_smv_expr(const BoolExprPtr& e) {
  if (const auto* n = std::get_if<BoolAtom>(&e->node)) return n->name;
  if (const auto* n = std::get_if<BoolConst>(&e->node))
    return n->value ? "TRUE" : "FALSE";
  if (const auto* n = std::get_if<BoolNot>(&e->node)) {
    std::string inner = print_smv_expr(n->arg);
    bool leaf = std::holds_alternative<BoolAtom>(n->arg->node) ||
                std::holds_alternative<BoolConst>(n->arg->node) ||
                std::holds_alternative<BoolParen>(n->arg->node);
    return leaf ? "!" + inner : "!(" + inner + ")";
  }
  if (const auto* n = std::get_if<BoolBinary>(&e->node)) {
    const char* op = n->kind == BoolBinary::And  ? " & "
                     : n->kind == BoolBinary::Or ? " | "
                                                 : " -> ";
    return print_smv_expr(n->lhs) + op + print_smv_expr(n->rhs);
  }
  if (const auto* n = std::get_if<BoolCompare>(&e->node)) {
    const char* op = nullptr;
    switch (n->op) {
      case CmpOp::Lt: op = " < "; break;
      case CmpOp::Le: op = " <= "; break;
      case CmpOp::Gt: op = " > "; break;
      case CmpOp::Ge: op = " >= "; break;
      case CmpOp::Eq: op = " = "; break;
      case CmpOp::Ne: op = " != "; break;
    }
    return smv_num(n->lhs) + op + smv_num(n->rhs);
  }
  if (const auto* n = std::get_if<BoolIsNull>(&e->node))
    return smv_num(n->arg) + " = null";
  const auto& n = std::get<BoolParen>(e->node);
  return "(" + print_smv_expr(n.inner) + ")";
}

std::string emit_cocospec(const CompiledRequirement& creq) {
  std::string body = pretty_print(creq.past_formula, Dialect::Cocospec);
  TemporalOp op = creq.past_formula->op;
  bool self_parenthesized = op == TemporalOp::And || op == TemporalOp::Or ||
                            op == TemporalOp::Implies;
  if (!self_parenthesized) body = "(" + body + ")";
  return "guarantee \"" + creq.contract_name + "\" " + body + ";";
}

std::string emit_smv(const CompiledRequirement& creq) {
  std::string obligation = pretty_print(creq.future_obligation, Dialect::Smv);
  if (!creq.condition) return "LTLSPEC " + obligation + "\n";

  // SMV identifiers: dots and dashes in requirement ids become underscores.
  std::string id = creq.id;
  for (char& c : id)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') c = '_';
  std::string out;
  out += "DEFINE cond_" + id + " := " + print_smv_expr(creq.condition) + ";\n";
  out += "VAR cond_" + id + "_prev : boolean;\n";
  out += "ASSIGN init(cond_" + id + "_prev) := FALSE;\n";
  out += "ASSIGN next(cond_" + id + "_prev) := cond_" + id + ";\n";
  out += "DEFINE edge_" + id + " := cond_" + id + " & !cond_" + id + "_prev;\n";
  out += "LTLSPEC G (edge_" + id + " -> " + obligation + ")\n";
  return out;
}

std::string emit_ptltl(const CompiledRequirement& creq) {
  return "-- " + creq.id + " (past-time, evaluated at the final step)\n" +
         pretty_print(creq.past_formula, Dialect::Ptltl) + "\n";
}

std::string emit_ltl(const CompiledRequirement& creq) {
  return "-- " + creq.id + " (future-time, evaluated at step 0)\n" +
         pretty_print(creq.future_formula, Dialect::Ltl) + "\n";
}

}  // namespace reqcheck
