#include "reqcheck/ast.hpp"

#include <sstream>

namespace reqcheck {

NumExprPtr num_name(std::string name, bool sampled, Span span) {
  return std::make_shared<NumExpr>(NumExpr{NumName{std::move(name), sampled}, span});
}
NumExprPtr num_literal(double value, Span span) {
  return std::make_shared<NumExpr>(NumExpr{NumLiteral{value}, span});
}
NumExprPtr num_call(std::string fn, std::vector<NumExprPtr> args, Span span) {
  return std::make_shared<NumExpr>(NumExpr{NumCall{std::move(fn), std::move(args)}, span});
}
NumExprPtr num_binary(ArithOp op, NumExprPtr lhs, NumExprPtr rhs, Span span) {
  return std::make_shared<NumExpr>(NumExpr{NumBinary{op, std::move(lhs), std::move(rhs)}, span});
}
NumExprPtr num_paren(NumExprPtr inner, Span span) {
  return std::make_shared<NumExpr>(NumExpr{NumParen{std::move(inner)}, span});
}

BoolExprPtr bool_atom(std::string name, Span span) {
  return std::make_shared<BoolExpr>(BoolExpr{BoolAtom{std::move(name)}, span});
}
BoolExprPtr bool_const(bool value, Span span) {
  return std::make_shared<BoolExpr>(BoolExpr{BoolConst{value}, span});
}
BoolExprPtr bool_not(BoolExprPtr arg, Span span) {
  return std::make_shared<BoolExpr>(BoolExpr{BoolNot{std::move(arg)}, span});
}
BoolExprPtr bool_and(BoolExprPtr lhs, BoolExprPtr rhs, Span span) {
  return std::make_shared<BoolExpr>(
      BoolExpr{BoolBinary{BoolBinary::And, std::move(lhs), std::move(rhs)}, span});
}
BoolExprPtr bool_or(BoolExprPtr lhs, BoolExprPtr rhs, Span span) {
  return std::make_shared<BoolExpr>(
      BoolExpr{BoolBinary{BoolBinary::Or, std::move(lhs), std::move(rhs)}, span});
}
BoolExprPtr bool_implies(BoolExprPtr lhs, BoolExprPtr rhs, Span span) {
  return std::make_shared<BoolExpr>(
      BoolExpr{BoolBinary{BoolBinary::Implies, std::move(lhs), std::move(rhs)}, span});
}
BoolExprPtr bool_compare(CmpOp op, NumExprPtr lhs, NumExprPtr rhs, Span span) {
  return std::make_shared<BoolExpr>(
      BoolExpr{BoolCompare{op, std::move(lhs), std::move(rhs)}, span});
}
BoolExprPtr bool_is_null(NumExprPtr arg, Span span) {
  return std::make_shared<BoolExpr>(BoolExpr{BoolIsNull{std::move(arg)}, span});
}
BoolExprPtr bool_paren(BoolExprPtr inner, Span span) {
  return std::make_shared<BoolExpr>(BoolExpr{BoolParen{std::move(inner)}, span});
}

// ---------------------------------------------------------------------------
// Structural equality (spans ignored)
// ---------------------------------------------------------------------------

bool structurally_equal(const NumExpr& a, const NumExpr& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* n = std::get_if<NumName>(&a.node)) {
    const auto& m = std::get<NumName>(b.node);
    return n->name == m.name && n->sampled == m.sampled;
  }
  if (const auto* n = std::get_if<NumLiteral>(&a.node)) {
    return n->value == std::get<NumLiteral>(b.node).value;
  }
  if (const auto* n = std::get_if<NumCall>(&a.node)) {
    const auto& m = std::get<NumCall>(b.node);
    if (n->fn != m.fn || n->args.size() != m.args.size()) return false;
    for (std::size_t i = 0; i < n->args.size(); ++i)
      if (!structurally_equal(n->args[i], m.args[i])) return false;
    return true;
  }
  if (const auto* n = std::get_if<NumBinary>(&a.node)) {
    const auto& m = std::get<NumBinary>(b.node);
    return n->op == m.op && structurally_equal(n->lhs, m.lhs) &&
           structurally_equal(n->rhs, m.rhs);
  }
  const auto& n = std::get<NumParen>(a.node);
  return structurally_equal(n.inner, std::get<NumParen>(b.node).inner);
}

bool structurally_equal(const BoolExpr& a, const BoolExpr& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* n = std::get_if<BoolAtom>(&a.node)) {
    return n->name == std::get<BoolAtom>(b.node).name;
  }
  if (const auto* n = std::get_if<BoolConst>(&a.node)) {
    return n->value == std::get<BoolConst>(b.node).value;
  }
  if (const auto* n = std::get_if<BoolNot>(&a.node)) {
    return structurally_equal(n->arg, std::get<BoolNot>(b.node).arg);
  }
  if (const auto* n = std::get_if<BoolBinary>(&a.node)) {
    const auto& m = std::get<BoolBinary>(b.node);
    return n->kind == m.kind && structurally_equal(n->lhs, m.lhs) &&
           structurally_equal(n->rhs, m.rhs);
  }
  if (const auto* n = std::get_if<BoolCompare>(&a.node)) {
    const auto& m = std::get<BoolCompare>(b.node);
    return n->op == m.op && structurally_equal(n->lhs, m.lhs) &&
           structurally_equal(n->rhs, m.rhs);
  }
  if (const auto* n = std::get_if<BoolIsNull>(&a.node)) {
    return structurally_equal(n->arg, std::get<BoolIsNull>(b.node).arg);
  }
  const auto& n = std::get<BoolParen>(a.node);
  return structurally_equal(n.inner, std::get<BoolParen>(b.node).inner);
}

bool structurally_equal(const NumExprPtr& a, const NumExprPtr& b) {
  if (!a || !b) return !a && !b;
  return structurally_equal(*a, *b);
}

bool structurally_equal(const BoolExprPtr& a, const BoolExprPtr& b) {
  if (!a || !b) return !a && !b;
  return structurally_equal(*a, *b);
}

BoolExprPtr strip_outer_parens(BoolExprPtr e) {
  while (e) {
    const auto* p = std::get_if<BoolParen>(&e->node);
    if (!p) break;
    e = p->inner;
  }
  return e;
}

bool structurally_equal(const TimingSpec& a, const TimingSpec& b) {
  if (a.kind != b.kind) return false;
  if (!structurally_equal(a.stop_expr, b.stop_expr)) return false;
  return a.ticks == b.ticks;
}

bool structurally_equal(const Requirement& a, const Requirement& b) {
  if (a.id != b.id || a.parent_id != b.parent_id || a.project != b.project ||
      a.rationale != b.rationale || a.component != b.component)
    return false;
  if (a.scope.has_value() != b.scope.has_value()) return false;
  if (a.scope && a.scope->mode != b.scope->mode) return false;
  if (a.conditions.size() != b.conditions.size()) return false;
  for (std::size_t i = 0; i < a.conditions.size(); ++i) {
    if (a.conditions[i].keyword != b.conditions[i].keyword) return false;
    if (!structurally_equal(a.conditions[i].expr, b.conditions[i].expr))
      return false;
  }
  if (!structurally_equal(a.timing, b.timing)) return false;
  return structurally_equal(a.response, b.response);
}

BoolExprPtr combined_condition(const Requirement& req) {
  BoolExprPtr acc;
  for (const auto& clause : req.conditions) {
    acc = acc ? bool_and(acc, clause.expr) : clause.expr;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Debug dump (golden-file format)
// ---------------------------------------------------------------------------

namespace {

const char* cmp_name(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
  }
  return "?";
}

const char* arith_name(ArithOp op) {
  switch (op) {
    case ArithOp::Add: return "+";
    case ArithOp::Sub: return "-";
    case ArithOp::Mul: return "*";
    case ArithOp::Div: return "/";
  }
  return "?";
}

std::string fmt_number(double v) {
  std::ostringstream out;
  out.precision(15);
  out << v;
  return out.str();
}

void dump_num(const NumExprPtr& e, std::string& out);

void dump_bool(const BoolExprPtr& e, std::string& out) {
  if (!e) {
    out += "nil";
    return;
  }
  if (const auto* n = std::get_if<BoolAtom>(&e->node)) {
    out += "(atom " + n->name + ")";
  } else if (const auto* n = std::get_if<BoolConst>(&e->node)) {
    out += n->value ? "(const true)" : "(const false)";
  } else if (const auto* n = std::get_if<BoolNot>(&e->node)) {
    out += "(not ";
    dump_bool(n->arg, out);
    out += ")";
  } else if (const auto* n = std::get_if<BoolBinary>(&e->node)) {
    out += n->kind == BoolBinary::And  ? "(and "
           : n->kind == BoolBinary::Or ? "(or "
                                       : "(implies ";
    dump_bool(n->lhs, out);
    out += " ";
    dump_bool(n->rhs, out);
    out += ")";
  } else if (const auto* n = std::get_if<BoolCompare>(&e->node)) {
    out += std::string("(cmp ") + cmp_name(n->op) + " ";
    dump_num(n->lhs, out);
    out += " ";
    dump_num(n->rhs, out);
    out += ")";
  } else if (const auto* n = std::get_if<BoolIsNull>(&e->node)) {
    out += "(is-null ";
    dump_num(n->arg, out);
    out += ")";
  } else if (const auto* n = std::get_if<BoolParen>(&e->node)) {
    out += "(paren ";
    dump_bool(n->inner, out);
    out += ")";
  }
}

void dump_num(const NumExprPtr& e, std::string& out) {
  if (!e) {
    out += "nil";
    return;
  }
  if (const auto* n = std::get_if<NumName>(&e->node)) {
    out += "(name " + n->name + (n->sampled ? " sampled" : "") + ")";
  } else if (const auto* n = std::get_if<NumLiteral>(&e->node)) {
    out += "(lit " + fmt_number(n->value) + ")";
  } else if (const auto* n = std::get_if<NumCall>(&e->node)) {
    out += "(call " + n->fn;
    for (const auto& a : n->args) {
      out += " ";
      dump_num(a, out);
    }
    out += ")";
  } else if (const auto* n = std::get_if<NumBinary>(&e->node)) {
    out += std::string("(arith ") + arith_name(n->op) + " ";
    dump_num(n->lhs, out);
    out += " ";
    dump_num(n->rhs, out);
    out += ")";
  } else if (const auto* n = std::get_if<NumParen>(&e->node)) {
    out += "(paren ";
    dump_num(n->inner, out);
    out += ")";
  }
}

}  // namespace

std::string dump(const BoolExprPtr& e) {
  std::string out;
  dump_bool(e, out);
  return out;
}

std::string dump(const NumExprPtr& e) {
  std::string out;
  dump_num(e, out);
  return out;
}

std::string dump(const Requirement& req) {
  std::ostringstream out;
  out << "(requirement\n";
  out << "  (id " << req.id << ")\n";
  out << "  (parent " << (req.parent_id ? *req.parent_id : "-") << ")\n";
  out << "  (project " << (req.project.empty() ? "-" : req.project) << ")\n";
  if (req.scope) out << "  (scope in-mode " << req.scope->mode << ")\n";
  for (const auto& c : req.conditions) {
    out << "  (condition "
        << (c.keyword == ConditionKeyword::When ? "when " : "if ")
        << dump(c.expr) << ")\n";
  }
  out << "  (component " << req.component << ")\n";
  out << "  (timing ";
  switch (req.timing.kind) {
    case TimingKind::Default: out << "default"; break;
    case TimingKind::Always: out << "always"; break;
    case TimingKind::Never: out << "never"; break;
    case TimingKind::Eventually: out << "eventually"; break;
    case TimingKind::Until:
      out << "until " << dump(req.timing.stop_expr);
      break;
    case TimingKind::Within:
      out << "within " << (req.timing.ticks ? *req.timing.ticks : -1);
      break;
    case TimingKind::For:
      out << "for " << (req.timing.ticks ? *req.timing.ticks : -1);
      break;
  }
  out << ")\n";
  out << "  (response " << dump(req.response) << "))\n";
  return out.str();
}

}  // namespace reqcheck
