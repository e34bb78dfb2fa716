#include "reqcheck/typecheck.hpp"

#include <variant>

namespace reqcheck {

namespace {

struct Checker {
  const SignalTable& signals;
  const ParameterSet& params;
  std::vector<Diagnostic> diags;

  void error(const Span& span, std::string message) {
    diags.push_back({Severity::Error, span, std::move(message), {}});
  }

  void check_num(const NumExprPtr& e) {
    if (!e) return;
    if (const auto* n = std::get_if<NumName>(&e->node)) {
      auto it = signals.find(n->name);
      if (it != signals.end()) {
        if (it->second == SignalKind::Bool)
          error(e->span, "boolean signal '" + n->name +
                             "' used in a numeric context");
        return;
      }
      if (!params.contains(n->name))
        error(e->span, "unbound parameter or signal '" + n->name + "'");
    } else if (std::get_if<NumLiteral>(&e->node)) {
      // always fine
    } else if (const auto* n = std::get_if<NumCall>(&e->node)) {
      if (n->fn == "diff") {
        if (n->args.size() != 2) {
          error(e->span, "diff takes exactly 2 arguments");
        } else {
          check_num(n->args[0]);
          check_num(n->args[1]);
        }
      } else if (n->fn == "sensorValue") {
        // The selector names a sensor, bound through the signal map at
        // check time, so it is not resolved against signals/params here.
        if (n->args.size() != 1)
          error(e->span, "sensorValue takes exactly 1 argument");
        else if (!std::holds_alternative<NumName>(n->args[0]->node))
          error(e->span, "sensorValue selector must be an identifier");
      } else {
        error(e->span, "unknown function '" + n->fn + "'");
      }
    } else if (const auto* n = std::get_if<NumBinary>(&e->node)) {
      check_num(n->lhs);
      check_num(n->rhs);
    } else if (const auto* n = std::get_if<NumParen>(&e->node)) {
      check_num(n->inner);
    }
  }

  void check_bool(const BoolExprPtr& e) {
    if (!e) return;
    if (const auto* n = std::get_if<BoolAtom>(&e->node)) {
      auto it = signals.find(n->name);
      if (it == signals.end()) {
        if (params.contains(n->name))
          error(e->span, "parameter '" + n->name +
                             "' used as a boolean atom (parameters are numeric)");
        else
          error(e->span, "unbound boolean atom '" + n->name + "'");
      } else if (it->second == SignalKind::Numeric) {
        error(e->span, "numeric signal '" + n->name +
                           "' used as a boolean atom");
      }
    } else if (std::get_if<BoolConst>(&e->node)) {
      // fine
    } else if (const auto* n = std::get_if<BoolNot>(&e->node)) {
      check_bool(n->arg);
    } else if (const auto* n = std::get_if<BoolBinary>(&e->node)) {
      check_bool(n->lhs);
      check_bool(n->rhs);
    } else if (const auto* n = std::get_if<BoolCompare>(&e->node)) {
      check_num(n->lhs);
      check_num(n->rhs);
    } else if (const auto* n = std::get_if<BoolIsNull>(&e->node)) {
      check_num(n->arg);
    } else if (const auto* n = std::get_if<BoolParen>(&e->node)) {
      check_bool(n->inner);
    }
  }
};

}  // namespace

std::vector<Diagnostic> typecheck(const BoolExpr& expr,
                                  const SignalTable& signals,
                                  const ParameterSet& params) {
  Checker checker{signals, params, {}};
  checker.check_bool(std::make_shared<BoolExpr>(expr));
  return std::move(checker.diags);
}

std::vector<Diagnostic> typecheck(const BoolExprPtr& expr,
                                  const SignalTable& signals,
                                  const ParameterSet& params) {
  Checker checker{signals, params, {}};
  checker.check_bool(expr);
  return std::move(checker.diags);
}

}  // namespace reqcheck
