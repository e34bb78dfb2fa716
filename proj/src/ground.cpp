#include "reqcheck/ground.hpp"

#include <algorithm>
#include <cmath>

namespace reqcheck {

namespace {

struct Grounder {
  const Trace& trace;
  const SignalMap& map;
  const ParameterSet& params;
  std::size_t t;
  bool unavailable_flag = false;

  std::optional<double> eval_num(const NumExprPtr& e) {
    if (const auto* n = std::get_if<NumName>(&e->node)) {
      std::string col = map.resolve(n->name);
      if (trace.has_column(col)) {
        const Column& c = trace.column(col);
        if (c.kind != ColumnKind::Numeric)
          throw GroundError("boolean column '" + col +
                            "' used in a numeric context");
        return c.nums[t];
      }
      if (auto v = params.get(n->name)) return *v;
      throw GroundError("unbound name '" + n->name + "'");
    }
    if (const auto* n = std::get_if<NumLiteral>(&e->node)) return n->value;
    if (const auto* n = std::get_if<NumCall>(&e->node)) {
      if (n->fn == "diff") {
        auto a = eval_num(n->args.at(0));
        auto b = eval_num(n->args.at(1));
        if (!a || !b) return std::nullopt;
        return std::fabs(*a - *b);
      }
      if (n->fn == "sensorValue") {
        const auto* sel = std::get_if<NumName>(&n->args.at(0)->node);
        if (!sel) throw GroundError("sensorValue selector must be an identifier");
        std::string key = "sensorValue(" + sel->name + ")";
        auto it = map.bindings.find(key);
        if (it == map.bindings.end())
          throw GroundError("unbound sensor binding '" + key + "'");
        if (!trace.has_column(it->second))
          throw GroundError("sensor binding '" + key +
                            "' points at missing column '" + it->second + "'");
        const Column& c = trace.column(it->second);
        if (c.kind != ColumnKind::Numeric)
          throw GroundError("sensor column '" + it->second + "' is not numeric");
        return c.nums[t];
      }
      throw GroundError("unknown function '" + n->fn + "'");
    }
    if (const auto* n = std::get_if<NumBinary>(&e->node)) {
      auto a = eval_num(n->lhs);
      auto b = eval_num(n->rhs);
      if (!a || !b) return std::nullopt;
      switch (n->op) {
        case ArithOp::Add: return *a + *b;
        case ArithOp::Sub: return *a - *b;
        case ArithOp::Mul: return *a * *b;
        case ArithOp::Div: return *a / *b;  // IEEE semantics on zero divisors
      }
    }
    const auto& n = std::get<NumParen>(e->node);
    return eval_num(n.inner);
  }

  bool eval_bool(const BoolExprPtr& e) {
    if (const auto* n = std::get_if<BoolAtom>(&e->node)) {
      std::string col = map.resolve(n->name);
      if (!trace.has_column(col))
        throw GroundError("unbound boolean atom '" + n->name + "'");
      const Column& c = trace.column(col);
      if (c.kind != ColumnKind::Bool)
        throw GroundError("numeric column '" + col + "' used as a boolean atom");
      return c.bools[t] != 0;
    }
    if (const auto* n = std::get_if<BoolConst>(&e->node)) return n->value;
    if (const auto* n = std::get_if<BoolNot>(&e->node)) return !eval_bool(n->arg);
    if (const auto* n = std::get_if<BoolBinary>(&e->node)) {
      // Both sides evaluate so unavailability flags are never skipped.
      bool l = eval_bool(n->lhs);
      bool r = eval_bool(n->rhs);
      switch (n->kind) {
        case BoolBinary::And: return l && r;
        case BoolBinary::Or: return l || r;
        case BoolBinary::Implies: return !l || r;
      }
    }
    if (const auto* n = std::get_if<BoolCompare>(&e->node)) {
      auto a = eval_num(n->lhs);
      auto b = eval_num(n->rhs);
      if (!a || !b) {
        unavailable_flag = true;
        return false;
      }
      switch (n->op) {
        case CmpOp::Lt: return *a < *b;
        case CmpOp::Le: return *a <= *b;
        case CmpOp::Gt: return *a > *b;
        case CmpOp::Ge: return *a >= *b;
        case CmpOp::Eq: return std::fabs(*a - *b) <= params.eq_tol();
        case CmpOp::Ne: return std::fabs(*a - *b) > params.eq_tol();
      }
    }
    if (const auto* n = std::get_if<BoolIsNull>(&e->node)) {
      return !eval_num(n->arg).has_value();
    }
    const auto& n = std::get<BoolParen>(e->node);
    return eval_bool(n.inner);
  }
};

}  // namespace

GroundResult ground(const BoolExprPtr& expr, const Trace& trace,
                    const SignalMap& map, const ParameterSet& params,
                    std::size_t t) {
  if (!expr) throw GroundError("null expression");
  if (t >= trace.length()) throw GroundError("step index out of trace bounds");
  Grounder g{trace, map, params, t};
  GroundResult result;
  result.value = g.eval_bool(expr);
  result.unavailable = g.unavailable_flag;
  return result;
}

BoolifyResult boolify(const std::vector<BoolExprPtr>& exprs, const Trace& trace,
                      const SignalMap& map, const ParameterSet& params) {
  BoolifyResult result{BoolTrace(trace.length()), {}};
  std::vector<uint8_t> flagged(trace.length(), 0);
  for (const auto& expr : exprs) {
    std::vector<uint8_t> values(trace.length());
    for (std::size_t t = 0; t < trace.length(); ++t) {
      GroundResult g = ground(expr, trace, map, params, t);
      values[t] = g.value ? 1 : 0;
      if (g.unavailable) flagged[t] = 1;
    }
    result.bool_trace.add_atom(BoolTrace::key_of(expr), std::move(values));
  }
  for (std::size_t t = 0; t < flagged.size(); ++t)
    if (flagged[t]) result.unavailable_steps.push_back(t);
  return result;
}

}  // namespace reqcheck
