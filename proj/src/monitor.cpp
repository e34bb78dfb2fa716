#include "reqcheck/monitor.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace reqcheck {

namespace {

struct GroundedSeries {
  std::vector<uint8_t> values;
  std::vector<std::size_t> unavailable_steps;
};

GroundedSeries ground_series(const BoolExprPtr& expr, const Trace& trace,
                             const SignalMap& map, const ParameterSet& params) {
  GroundedSeries out;
  out.values.resize(trace.length());
  for (std::size_t t = 0; t < trace.length(); ++t) {
    GroundResult g = ground(expr, trace, map, params, t);
    out.values[t] = g.value ? 1 : 0;
    if (g.unavailable) out.unavailable_steps.push_back(t);
  }
  return out;
}

std::string steps_to_string(const std::vector<std::size_t>& steps) {
  // Compact run rendering: "3..7, 12".
  std::string out;
  std::size_t i = 0;
  while (i < steps.size()) {
    std::size_t j = i;
    while (j + 1 < steps.size() && steps[j + 1] == steps[j] + 1) ++j;
    if (!out.empty()) out += ", ";
    out += std::to_string(steps[i]);
    if (j > i) out += ".." + std::to_string(steps[j]);
    i = j + 1;
  }
  return out;
}

}  // namespace

Verdict oracle_check(const Requirement& req, const Trace& trace,
                     const SignalMap& map, const ParameterSet& params,
                     std::vector<std::string>* warnings) {
  const std::size_t n = trace.length();
  std::vector<std::size_t> unavailable;

  auto grounded = [&](const BoolExprPtr& expr) {
    GroundedSeries s = ground_series(expr, trace, map, params);
    unavailable.insert(unavailable.end(), s.unavailable_steps.begin(),
                       s.unavailable_steps.end());
    return std::move(s.values);
  };

  BoolExprPtr core = combined_condition(req);
  std::vector<uint8_t> mode(n, 1);
  if (req.scope) mode = grounded(scope_mode_expr(*req.scope));

  std::vector<uint8_t> cm(n, 1);
  if (core) {
    std::vector<uint8_t> c = grounded(core);
    for (std::size_t t = 0; t < n; ++t) cm[t] = c[t] && mode[t];
  } else {
    cm = mode;
  }

  std::vector<uint8_t> resp = grounded(req.response);
  std::vector<uint8_t> stop;
  if (req.timing.kind == TimingKind::Until) {
    if (!req.timing.stop_expr)
      throw CompileError("requirement '" + req.id +
                         "': until timing needs a stop condition");
    stop = grounded(req.timing.stop_expr);
  }
  int ticks = 0;
  if (req.timing.kind == TimingKind::Within ||
      req.timing.kind == TimingKind::For) {
    if (!req.timing.ticks)
      throw CompileError("requirement '" + req.id +
                         "': timing needs a tick count");
    ticks = *req.timing.ticks;
  }

  Verdict verdict;
  for (std::size_t t = 0; t < n; ++t)
    if (cm[t] && (t == 0 || !cm[t - 1]))
      verdict.trigger_indices.push_back(static_cast<int>(t));

  if (verdict.trigger_indices.empty()) {
    verdict.status = VerdictStatus::Vacuous;
  } else {
    verdict.status = VerdictStatus::Satisfied;
    for (int trigger : verdict.trigger_indices) {
      const std::size_t t0 = static_cast<std::size_t>(trigger);
      // End of the enclosing mode interval (exclusive).
      std::size_t mode_end = t0 + 1;
      while (mode_end < n && mode[mode_end]) ++mode_end;

      std::optional<Violation> violation;
      bool truncated_by_trace = false;

      switch (req.timing.kind) {
        case TimingKind::Default:
        case TimingKind::Eventually: {
          bool served = false;
          for (std::size_t t = t0; t < mode_end && !served; ++t)
            served = resp[t] != 0;
          if (!served) {
            violation = Violation{trigger, static_cast<int>(mode_end - 1),
                                  "response never true in steps " +
                                      std::to_string(t0) + ".." +
                                      std::to_string(mode_end - 1)};
            truncated_by_trace = mode_end == n;
          }
          break;
        }
        case TimingKind::Always:
        case TimingKind::Never: {
          bool expect = req.timing.kind == TimingKind::Always;
          for (std::size_t t = t0; t < mode_end; ++t) {
            if ((resp[t] != 0) != expect) {
              violation = Violation{
                  trigger, static_cast<int>(t),
                  std::string("response ") + (expect ? "false" : "true") +
                      " at step " + std::to_string(t)};
              break;
            }
          }
          break;
        }
        case TimingKind::Until: {
          std::size_t window_end = mode_end;  // exclusive
          for (std::size_t t = t0; t < mode_end; ++t) {
            if (stop[t]) {
              window_end = t;
              break;
            }
          }
          for (std::size_t t = t0; t < window_end; ++t) {
            if (!resp[t]) {
              violation = Violation{trigger, static_cast<int>(t),
                                    "response false at step " +
                                        std::to_string(t)};
              break;
            }
          }
          break;
        }
        case TimingKind::Within: {
          std::size_t last =
              std::min({t0 + static_cast<std::size_t>(ticks), mode_end - 1,
                        n - 1});
          bool served = false;
          for (std::size_t t = t0; t <= last && !served; ++t)
            served = resp[t] != 0;
          if (!served) {
            violation = Violation{trigger, static_cast<int>(last),
                                  "response never true in steps " +
                                      std::to_string(t0) + ".." +
                                      std::to_string(last)};
            truncated_by_trace =
                t0 + static_cast<std::size_t>(ticks) > n - 1 && last == n - 1;
          }
          break;
        }
        case TimingKind::For: {
          std::size_t last =
              std::min({t0 + static_cast<std::size_t>(ticks), mode_end - 1,
                        n - 1});
          for (std::size_t t = t0; t <= last; ++t) {
            if (!resp[t]) {
              violation = Violation{trigger, static_cast<int>(t),
                                    "response false at step " +
                                        std::to_string(t)};
              break;
            }
          }
          break;
        }
      }

      if (violation) {
        verdict.status = VerdictStatus::Violated;
        verdict.violation = std::move(violation);
        if (truncated_by_trace && warnings)
          warnings->push_back(
              "trace-truncation: the obligation from trigger " +
              std::to_string(trigger) + " ran into the end of the trace");
        break;  // first failing trigger
      }
    }
  }

  if (warnings && !unavailable.empty()) {
    std::sort(unavailable.begin(), unavailable.end());
    unavailable.erase(std::unique(unavailable.begin(), unavailable.end()),
                      unavailable.end());
    warnings->push_back("unavailable values affected comparisons at steps " +
                        steps_to_string(unavailable));
  }
  return verdict;
}

namespace {

void collect_atoms(const FormulaPtr& f, std::vector<BoolExprPtr>& atoms,
                   std::set<std::string>& seen) {
  if (!f) return;
  if (f->op == TemporalOp::Atom) {
    if (seen.insert(BoolTrace::key_of(f->atom)).second) atoms.push_back(f->atom);
    return;
  }
  collect_atoms(f->lhs, atoms, seen);
  collect_atoms(f->rhs, atoms, seen);
}

}  // namespace

FormulaVerdicts formula_check(const CompiledRequirement& creq,
                              const Trace& trace, const SignalMap& map,
                              const ParameterSet& params) {
  std::vector<BoolExprPtr> atoms;
  std::set<std::string> seen;
  collect_atoms(creq.past_formula, atoms, seen);
  collect_atoms(creq.future_formula, atoms, seen);
  BoolifyResult grounded = boolify(atoms, trace, map, params);

  FormulaVerdicts out;
  out.past_verdict =
      eval_past(creq.past_formula, grounded.bool_trace, trace.length() - 1);
  out.future_verdict = eval_future(creq.future_formula, grounded.bool_trace, 0);
  return out;
}

CheckRow check_one(const Requirement& req, const CompiledRequirement& creq,
                   const std::string& trace_id, const Trace& trace,
                   const SignalMap& map, const ParameterSet& params) {
  CheckRow row;
  row.req_id = req.id;
  row.trace_id = trace_id;
  try {
    row.verdict = oracle_check(req, trace, map, params, &row.warnings);
    FormulaVerdicts fv = formula_check(creq, trace, map, params);
    row.past_verdict = fv.past_verdict;
    row.future_verdict = fv.future_verdict;
    row.agreement = (row.verdict.ok() == fv.past_verdict) &&
                    (fv.past_verdict == fv.future_verdict);
  } catch (const std::exception& e) {
    row.error = e.what();
    row.agreement = false;
  }
  return row;
}

std::vector<CheckRow> check_project(
    const std::vector<Requirement>& reqs,
    const std::vector<std::pair<std::string, Trace>>& traces,
    const SignalMap& map, const ParameterSet& params) {
  std::vector<CheckRow> rows;
  for (const auto& req : reqs) {
    std::optional<CompiledRequirement> creq;
    std::optional<std::string> compile_error;
    try {
      creq = compile_requirement(req);
    } catch (const std::exception& e) {
      compile_error = e.what();
    }
    for (const auto& [trace_id, trace] : traces) {
      if (compile_error) {
        CheckRow row;
        row.req_id = req.id;
        row.trace_id = trace_id;
        row.error = compile_error;
        rows.push_back(std::move(row));
        continue;
      }
      rows.push_back(check_one(req, *creq, trace_id, trace, map, params));
    }
  }
  std::sort(rows.begin(), rows.end(), [](const CheckRow& a, const CheckRow& b) {
    if (a.req_id != b.req_id) return a.req_id < b.req_id;
    return a.trace_id < b.trace_id;
  });
  return rows;
}

// ---------------------------------------------------------------------------
// JSON serialization
// ---------------------------------------------------------------------------

std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Satisfied: return "satisfied";
    case VerdictStatus::Violated: return "violated";
    case VerdictStatus::Vacuous: return "vacuous";
  }
  return "?";
}

std::string check_rows_to_json(const std::vector<CheckRow>& rows) {
  nlohmann::json out;
  out["results"] = nlohmann::json::array();
  for (const CheckRow& row : rows) {
    nlohmann::json r;
    r["req_id"] = row.req_id;
    r["trace_id"] = row.trace_id;
    r["status"] = to_string(row.verdict.status);
    r["trigger_indices"] = row.verdict.trigger_indices;
    if (row.verdict.violation) {
      r["violation"] = {
          {"trigger_index", row.verdict.violation->trigger_index},
          {"failing_step", row.verdict.violation->failing_step},
          {"response_value_witness",
           row.verdict.violation->response_value_witness}};
    } else {
      r["violation"] = nullptr;
    }
    r["past_verdict"] = row.past_verdict;
    r["future_verdict"] = row.future_verdict;
    r["agreement"] = row.agreement;
    r["warnings"] = row.warnings;
    if (row.error)
      r["error"] = *row.error;
    else
      r["error"] = nullptr;
    out["results"].push_back(std::move(r));
  }
  return out.dump(2) + "\n";
}

std::vector<CheckRow> check_rows_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::vector<CheckRow> rows;
  for (const auto& r : j.at("results")) {
    CheckRow row;
    row.req_id = r.at("req_id").get<std::string>();
    row.trace_id = r.at("trace_id").get<std::string>();
    std::string status = r.at("status").get<std::string>();
    row.verdict.status = status == "satisfied" ? VerdictStatus::Satisfied
                         : status == "violated" ? VerdictStatus::Violated
                                                : VerdictStatus::Vacuous;
    for (const auto& t : r.at("trigger_indices"))
      row.verdict.trigger_indices.push_back(t.get<int>());
    if (!r.at("violation").is_null()) {
      Violation v;
      v.trigger_index = r.at("violation").at("trigger_index").get<int>();
      v.failing_step = r.at("violation").at("failing_step").get<int>();
      v.response_value_witness =
          r.at("violation").at("response_value_witness").get<std::string>();
      row.verdict.violation = std::move(v);
    }
    row.past_verdict = r.at("past_verdict").get<bool>();
    row.future_verdict = r.at("future_verdict").get<bool>();
    row.agreement = r.at("agreement").get<bool>();
    for (const auto& w : r.at("warnings"))
      row.warnings.push_back(w.get<std::string>());
    if (!r.at("error").is_null()) row.error = r.at("error").get<std::string>();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace reqcheck
