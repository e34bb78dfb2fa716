#include "reqcheck/compile.hpp"

namespace reqcheck {

BoolExprPtr scope_mode_expr(const ScopeSpec& scope) {
  return bool_compare(CmpOp::Eq, num_name("mode"), num_name(scope.mode));
}

namespace {

FormulaPtr edge_of(const FormulaPtr& cond_atom) {
  return f_and(cond_atom, f_or(f_prev(f_not(cond_atom)), f_ftp()));
}

/// The compilation context: one condition atom (condition conjoined with
/// the mode predicate when scoped), plus the mode atom when scoped.
struct Template {
  FormulaPtr cond;   // null => obligation starts at step 0 (edge := FTP)
  FormulaPtr mode;   // null => unscoped
  FormulaPtr resp;
  FormulaPtr stop;   // Until only
  int ticks = 0;     // Within / For only

  FormulaPtr edge() const { return cond ? edge_of(cond) : f_ftp(); }

  FormulaPtr mode_and(const FormulaPtr& f) const {
    return mode ? f_and(mode, f) : f;
  }
};

int required_ticks(const Requirement& req) {
  if (!req.timing.ticks)
    throw CompileError("requirement '" + req.id +
                       "': timing needs a tick count");
  if (*req.timing.ticks < 0)
    throw CompileError("requirement '" + req.id + "': negative tick count");
  return *req.timing.ticks;
}

FormulaPtr required_stop(const Requirement& req, bool strip) {
  if (!req.timing.stop_expr)
    throw CompileError("requirement '" + req.id +
                       "': until timing needs a stop condition");
  return f_atom(strip ? strip_outer_parens(req.timing.stop_expr)
                      : req.timing.stop_expr);
}

// -------------------------------------------------------------------- past

/// Default/Eventually: the printed contract shape. The condition and
/// response expressions substitute verbatim, reproducing the requirement
/// author's bracketing in emitted contracts.
FormulaPtr past_default(const Template& t) {
  if (!t.cond) return f_once(t.resp);
  FormulaPtr edge = t.edge();
  if (!t.mode) {
    return f_or(f_historically(f_not(t.cond)),
                f_not(f_since_inclusive(edge, f_not(t.resp))));
  }
  // Mode-scoped: the obligation must be served before the mode interval
  // ends. `unserved` marks steps still waiting inside the interval; a
  // violation surfaces when the interval ends (mode exit or trace end)
  // while still unserved.
  FormulaPtr unserved =
      f_since_inclusive(edge, f_and(t.mode, f_not(t.resp)));
  return f_or(f_historically(f_not(t.cond)),
              f_not(f_or(unserved,
                         f_once(f_and(f_not(t.mode), f_prev(unserved))))));
}

/// Always: response at every step from each trigger to the end of the
/// trace (or of the mode interval).
FormulaPtr past_always(const Template& t, bool negate_response) {
  FormulaPtr obligation = negate_response ? f_not(t.resp) : t.resp;
  if (!t.cond && !t.mode) return f_historically(obligation);
  FormulaPtr in_window = t.mode ? f_since_inclusive(t.edge(), t.mode)
                                : f_once(t.edge());
  return f_historically(f_implies(in_window, obligation));
}

/// Until: response at every step from each trigger up to (exclusive) the
/// first stop point; to the end of the trace when no stop occurs.
FormulaPtr past_until(const Template& t) {
  FormulaPtr edge = t.edge();
  FormulaPtr in_window = f_since_inclusive(edge, t.mode_and(f_not(t.stop)));
  return f_historically(f_implies(in_window, t.resp));
}

/// For n: response at every step within n of a trigger (clipped by the
/// trace and the mode interval).
FormulaPtr past_for(const Template& t) {
  FormulaPtr edge = t.edge();
  if (!t.mode)
    return f_historically(f_implies(f_once_within(0, t.ticks, edge), t.resp));
  FormulaPtr in_window;
  for (int k = 0; k <= t.ticks; ++k) {
    FormulaPtr piece =
        f_and(f_once_within(k, k, edge), f_historically_within(0, k, t.mode));
    in_window = in_window ? f_or(in_window, piece) : piece;
  }
  return f_historically(f_implies(in_window, t.resp));
}

/// Within n: some response inside [trigger, trigger+n], clipped by the
/// trace and the mode interval; a clipped window with no response violates.
FormulaPtr past_within(const Template& t) {
  FormulaPtr edge = t.edge();
  int n = t.ticks;

  if (!t.mode) {
    // Full windows are checked where they close; clipped windows at the
    // evaluation point (the final step).
    FormulaPtr full = f_historically(
        f_implies(f_once_within(n, n, edge), f_once_within(0, n, t.resp)));
    FormulaPtr result = full;
    for (int k = 0; k < n; ++k) {
      result = f_and(result, f_implies(f_once_within(k, k, edge),
                                       f_once_within(0, k, t.resp)));
    }
    return result;
  }

  FormulaPtr waiting = f_and(t.mode, f_not(t.resp));
  FormulaPtr full_window =
      f_and(f_once_within(n, n, edge), f_historically_within(0, n, waiting));
  FormulaPtr partial;
  for (int k = 0; k < n; ++k) {
    FormulaPtr piece =
        f_and(f_once_within(k, k, edge), f_historically_within(0, k, waiting));
    partial = partial ? f_or(partial, piece) : piece;
  }
  FormulaPtr violation = f_once(
      partial ? f_or(full_window, f_and(f_not(t.mode), f_prev(partial)))
              : full_window);
  if (partial) violation = f_or(violation, partial);
  return f_not(violation);
}

// ------------------------------------------------------------------ future

FormulaPtr future_obligation_of(const Template& t, TimingKind kind) {
  switch (kind) {
    case TimingKind::Default:
    case TimingKind::Eventually:
      if (t.mode) return f_until(t.mode, f_and(t.mode, t.resp));
      return f_finally(t.resp);
    case TimingKind::Always:
      if (t.mode) return f_not(f_until(t.mode, f_and(t.mode, f_not(t.resp))));
      return f_globally(t.resp);
    case TimingKind::Never:
      if (t.mode) return f_not(f_until(t.mode, f_and(t.mode, t.resp)));
      return f_globally(f_not(t.resp));
    case TimingKind::Until: {
      if (t.mode) {
        FormulaPtr open = f_and(t.mode, f_not(t.stop));
        return f_not(f_until(open, f_and(open, f_not(t.resp))));
      }
      return f_or(f_until(t.resp, t.stop), f_globally(t.resp));
    }
    case TimingKind::Within: {
      if (!t.mode) return f_finally_within(0, t.ticks, t.resp);
      FormulaPtr w = t.resp;
      for (int k = 0; k < t.ticks; ++k)
        w = f_or(t.resp, f_and(f_next(t.mode), f_next(w)));
      return w;
    }
    case TimingKind::For: {
      if (!t.mode) return f_globally_within(0, t.ticks, t.resp);
      FormulaPtr v = t.resp;
      for (int k = 0; k < t.ticks; ++k)
        v = f_and(t.resp, f_implies(f_next(t.mode), f_next(v)));
      return v;
    }
  }
  throw CompileError("unsupported timing kind");
}

/// G(edge -> obl) without past operators: the step-0 edge is the condition
/// itself, later edges are detected one step early via X.
FormulaPtr future_with_edges(const FormulaPtr& cond, const FormulaPtr& obl) {
  if (!cond) return obl;
  return f_and(f_implies(cond, obl),
               f_globally(f_implies(f_and(f_not(cond), f_next(cond)),
                                    f_next(obl))));
}

// ----------------------------------------------------------------- context

/// Assembles the compilation context. Default/Eventually keep the author's
/// parenthesization in the substituted atoms (the printed-contract
/// convention); the self-authored templates strip redundant outer parens.
Template template_of(const Requirement& req) {
  bool verbatim = !req.scope &&
                  !req.conditions.empty() &&
                  (req.timing.kind == TimingKind::Default ||
                   req.timing.kind == TimingKind::Eventually);

  Template t;
  BoolExprPtr core = combined_condition(req);
  if (core && !verbatim) core = strip_outer_parens(core);

  if (req.scope) {
    BoolExprPtr mode = scope_mode_expr(*req.scope);
    t.mode = f_atom(mode);
    t.cond = f_atom(core ? bool_and(mode, core) : mode);
  } else if (core) {
    t.cond = f_atom(core);
  }
  t.resp = f_atom(verbatim ? req.response : strip_outer_parens(req.response));
  if (req.timing.kind == TimingKind::Until)
    t.stop = required_stop(req, /*strip=*/!verbatim);
  if (req.timing.kind == TimingKind::Within ||
      req.timing.kind == TimingKind::For)
    t.ticks = required_ticks(req);
  return t;
}

}  // namespace

FormulaPtr trigger_of(const Requirement& req) {
  if (req.conditions.empty()) throw NoConditionTrigger();
  return edge_of(f_atom(combined_condition(req)));
}

FormulaPtr compile_past(const Requirement& req) {
  if (!req.response)
    throw CompileError("requirement '" + req.id + "' has no response");
  Template t = template_of(req);
  switch (req.timing.kind) {
    case TimingKind::Default:
    case TimingKind::Eventually:
      return past_default(t);
    case TimingKind::Always:
      return past_always(t, /*negate_response=*/false);
    case TimingKind::Never:
      return past_always(t, /*negate_response=*/true);
    case TimingKind::Until:
      return past_until(t);
    case TimingKind::Within:
      return past_within(t);
    case TimingKind::For:
      return past_for(t);
  }
  throw CompileError("unsupported timing kind");
}

FormulaPtr compile_future(const Requirement& req) {
  if (!req.response)
    throw CompileError("requirement '" + req.id + "' has no response");
  Template t = template_of(req);
  FormulaPtr obl = future_obligation_of(t, req.timing.kind);
  return future_with_edges(t.cond, obl);
}

CompiledRequirement compile_requirement(const Requirement& req) {
  Template t = template_of(req);
  CompiledRequirement out;
  out.id = req.id;
  out.contract_name = req.id;
  out.trigger = t.cond ? edge_of(t.cond) : nullptr;
  out.past_formula = compile_past(req);
  out.future_obligation = future_obligation_of(t, req.timing.kind);
  out.future_formula = future_with_edges(t.cond, out.future_obligation);
  out.condition = t.cond ? t.cond->atom : nullptr;
  return out;
}

}  // namespace reqcheck
