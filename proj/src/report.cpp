#include "reqcheck/report.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include <json.hpp>

#include "reqcheck/parser.hpp"
#include "reqcheck/print.hpp"

namespace reqcheck {

ReportModel build_report(const std::vector<Requirement>& reqs,
                         const std::vector<CheckRow>& results) {
  std::map<std::string, const Requirement*> by_id;
  for (const auto& req : reqs) {
    if (!by_id.emplace(req.id, &req).second)
      throw ReportError("duplicate requirement id '" + req.id + "'");
  }
  for (const auto& row : results)
    if (!by_id.count(row.req_id))
      throw ReportError("result row references unknown requirement '" +
                        row.req_id + "'");

  ReportModel model;
  std::map<std::string, std::vector<CheckRow>> rows_by_id;
  for (const auto& row : results) {
    rows_by_id[row.req_id].push_back(row);
    switch (row.verdict.status) {
      case VerdictStatus::Satisfied: ++model.summary.satisfied; break;
      case VerdictStatus::Violated: ++model.summary.violated; break;
      case VerdictStatus::Vacuous: ++model.summary.vacuous; break;
    }
  }

  auto make_entry = [&](const Requirement& req) {
    ReportEntry entry;
    entry.id = req.id;
    entry.parent = req.parent_id;
    entry.source_text = req.source_text;
    entry.rationale = req.rationale;
    entry.fretish = pretty_print_requirement(req);
    entry.contract_name = req.id;
    try {
      CompiledRequirement creq = compile_requirement(req);
      entry.past_formula = pretty_print(creq.past_formula, Dialect::Ptltl);
      entry.future_formula = pretty_print(creq.future_formula, Dialect::Ltl);
    } catch (const std::exception& e) {
      entry.past_formula = entry.future_formula =
          std::string("<uncompilable: ") + e.what() + ">";
    }
    auto it = rows_by_id.find(req.id);
    if (it != rows_by_id.end()) {
      entry.results = it->second;
      std::sort(entry.results.begin(), entry.results.end(),
                [](const CheckRow& a, const CheckRow& b) {
                  return a.trace_id < b.trace_id;
                });
    } else {
      ++model.summary.unchecked;
    }
    return entry;
  };

  if (!reqs.empty()) model.project = reqs.front().project;

  // Children grouped under their parents; orphaned parents and any cyclic
  // leftovers fall back to root placement so each requirement shows once.
  std::map<std::string, std::vector<std::string>> children;
  std::vector<std::string> roots;
  for (const auto& req : reqs) {
    if (req.parent_id && by_id.count(*req.parent_id) &&
        *req.parent_id != req.id)
      children[*req.parent_id].push_back(req.id);
    else
      roots.push_back(req.id);
  }
  std::sort(roots.begin(), roots.end());
  for (auto& [parent, kids] : children) {
    (void)parent;
    std::sort(kids.begin(), kids.end());
  }

  std::set<std::string> placed;
  std::function<ReportEntry(const std::string&)> build =
      [&](const std::string& id) {
        placed.insert(id);
        ReportEntry entry = make_entry(*by_id.at(id));
        auto it = children.find(id);
        if (it != children.end())
          for (const auto& child : it->second)
            if (!placed.count(child)) entry.children.push_back(build(child));
        return entry;
      };
  for (const auto& id : roots)
    if (!placed.count(id)) model.roots.push_back(build(id));
  for (const auto& req : reqs)
    if (!placed.count(req.id)) model.roots.push_back(build(req.id));
  return model;
}

// ---------------------------------------------------------------------------
// Markdown
// ---------------------------------------------------------------------------

namespace {

std::string verdict_cell(const std::vector<CheckRow>& rows) {
  if (rows.empty()) return "unchecked";
  std::string out;
  for (const auto& row : rows) {
    if (!out.empty()) out += "; ";
    out += row.trace_id + ": " +
           (row.error ? "error" : to_string(row.verdict.status));
  }
  return out;
}

void traceability_rows(const ReportEntry& entry, std::string& out) {
  out += "| " + entry.id + " | " + (entry.parent ? *entry.parent : "-") +
         " | " + entry.contract_name + " | " + verdict_cell(entry.results) +
         " |\n";
  for (const auto& child : entry.children) traceability_rows(child, out);
}

void entry_section(const ReportEntry& entry, int depth, std::string& out) {
  out += std::string(static_cast<std::size_t>(depth) + 2, '#') + " " +
         entry.id + "\n\n";
  if (entry.parent) out += "- parent: " + *entry.parent + "\n";
  if (!entry.rationale.empty()) out += "- rationale: " + entry.rationale + "\n";
  out += "- FRETISH: `" + entry.fretish + "`\n";
  out += "- past-time formula: `" + entry.past_formula + "`\n";
  out += "- future-time formula: `" + entry.future_formula + "`\n";
  out += "- contract: " + entry.contract_name + "\n";
  if (entry.results.empty()) {
    out += "- verdicts: unchecked\n";
  } else {
    for (const auto& row : entry.results) {
      out += "- trace `" + row.trace_id + "`: ";
      if (row.error) {
        out += "error (" + *row.error + ")";
      } else {
        out += to_string(row.verdict.status);
        if (!row.verdict.trigger_indices.empty()) {
          out += ", triggers at ";
          for (std::size_t i = 0; i < row.verdict.trigger_indices.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(row.verdict.trigger_indices[i]);
          }
        }
        if (row.verdict.violation) {
          out += ", violated at trigger " +
                 std::to_string(row.verdict.violation->trigger_index) +
                 " (step " +
                 std::to_string(row.verdict.violation->failing_step) + ": " +
                 row.verdict.violation->response_value_witness + ")";
        }
        out += row.agreement ? ", formulas agree" : ", FORMULA DISAGREEMENT";
      }
      out += "\n";
      for (const auto& w : row.warnings) out += "  - warning: " + w + "\n";
    }
  }
  out += "\n";
  for (const auto& child : entry.children)
    entry_section(child, depth + 1, out);
}

}  // namespace

std::string render_markdown(const ReportModel& model) {
  std::string out = "# Verification Report";
  if (!model.project.empty()) out += ": " + model.project;
  out += "\n\n## Summary\n\n";
  out += "| satisfied | violated | vacuous | unchecked |\n";
  out += "|---|---|---|---|\n";
  out += "| " + std::to_string(model.summary.satisfied) + " | " +
         std::to_string(model.summary.violated) + " | " +
         std::to_string(model.summary.vacuous) + " | " +
         std::to_string(model.summary.unchecked) + " |\n\n";
  out += "## Traceability\n\n";
  out += "| requirement | parent | contract | verdict per trace |\n";
  out += "|---|---|---|---|\n";
  for (const auto& entry : model.roots) traceability_rows(entry, out);
  out += "\n## Requirements\n\n";
  for (const auto& entry : model.roots) entry_section(entry, 1, out);
  return out;
}

// ---------------------------------------------------------------------------
// JSON round-trip
// ---------------------------------------------------------------------------

namespace {

nlohmann::json row_to_json(const CheckRow& row) {
  nlohmann::json r;
  r["trace_id"] = row.trace_id;
  r["status"] = to_string(row.verdict.status);
  r["trigger_indices"] = row.verdict.trigger_indices;
  if (row.verdict.violation) {
    r["violation"] = {{"trigger_index", row.verdict.violation->trigger_index},
                      {"failing_step", row.verdict.violation->failing_step},
                      {"response_value_witness",
                       row.verdict.violation->response_value_witness}};
  } else {
    r["violation"] = nullptr;
  }
  r["agreement"] = row.agreement;
  r["warnings"] = row.warnings;
  r["error"] = row.error ? nlohmann::json(*row.error) : nlohmann::json(nullptr);
  return r;
}

nlohmann::json entry_to_json(const ReportEntry& entry) {
  nlohmann::json e;
  e["id"] = entry.id;
  e["parent"] = entry.parent ? nlohmann::json(*entry.parent) : nlohmann::json(nullptr);
  e["source_text"] = entry.source_text;
  e["rationale"] = entry.rationale;
  e["fretish"] = entry.fretish;
  e["past_formula"] = entry.past_formula;
  e["future_formula"] = entry.future_formula;
  e["contract_name"] = entry.contract_name;
  e["results"] = nlohmann::json::array();
  for (const auto& row : entry.results) e["results"].push_back(row_to_json(row));
  e["children"] = nlohmann::json::array();
  for (const auto& child : entry.children)
    e["children"].push_back(entry_to_json(child));
  return e;
}

CheckRow row_from_json(const nlohmann::json& r, const std::string& req_id) {
  CheckRow row;
  row.req_id = req_id;
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
  row.agreement = r.at("agreement").get<bool>();
  for (const auto& w : r.at("warnings")) row.warnings.push_back(w.get<std::string>());
  if (!r.at("error").is_null()) row.error = r.at("error").get<std::string>();
  return row;
}

ReportEntry entry_from_json(const nlohmann::json& e) {
  ReportEntry entry;
  entry.id = e.at("id").get<std::string>();
  if (!e.at("parent").is_null())
    entry.parent = e.at("parent").get<std::string>();
  entry.source_text = e.at("source_text").get<std::string>();
  entry.rationale = e.at("rationale").get<std::string>();
  entry.fretish = e.at("fretish").get<std::string>();
  entry.past_formula = e.at("past_formula").get<std::string>();
  entry.future_formula = e.at("future_formula").get<std::string>();
  entry.contract_name = e.at("contract_name").get<std::string>();
  for (const auto& r : e.at("results"))
    entry.results.push_back(row_from_json(r, entry.id));
  for (const auto& c : e.at("children"))
    entry.children.push_back(entry_from_json(c));
  return entry;
}

}  // namespace

std::string render_json(const ReportModel& model) {
  nlohmann::json j;
  j["project"] = model.project;
  j["summary"] = {{"satisfied", model.summary.satisfied},
                  {"violated", model.summary.violated},
                  {"vacuous", model.summary.vacuous},
                  {"unchecked", model.summary.unchecked}};
  j["requirements"] = nlohmann::json::array();
  for (const auto& entry : model.roots)
    j["requirements"].push_back(entry_to_json(entry));
  return j.dump(2) + "\n";
}

ReportModel report_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ReportError(e.what());
  }
  ReportModel model;
  model.project = j.at("project").get<std::string>();
  model.summary.satisfied = j.at("summary").at("satisfied").get<int>();
  model.summary.violated = j.at("summary").at("violated").get<int>();
  model.summary.vacuous = j.at("summary").at("vacuous").get<int>();
  model.summary.unchecked = j.at("summary").at("unchecked").get<int>();
  for (const auto& e : j.at("requirements"))
    model.roots.push_back(entry_from_json(e));
  return model;
}

bool structurally_equal(const ReportModel& a, const ReportModel& b) {
  return render_json(a) == render_json(b);
}

}  // namespace reqcheck
