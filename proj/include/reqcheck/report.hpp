#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "reqcheck/ast.hpp"
#include "reqcheck/monitor.hpp"

namespace reqcheck {

class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ReportEntry {
  std::string id;
  std::optional<std::string> parent;
  std::string source_text;
  std::string rationale;
  std::string fretish;        // normalized pretty-printed sentence
  std::string past_formula;   // ptltl rendering
  std::string future_formula; // ltl rendering
  std::string contract_name;
  std::vector<CheckRow> results;
  std::vector<ReportEntry> children;
};

struct ReportSummary {
  int satisfied = 0;
  int violated = 0;
  int vacuous = 0;
  int unchecked = 0;  // requirements with no result rows
};

struct ReportModel {
  std::string project;
  ReportSummary summary;
  std::vector<ReportEntry> roots;  // parent/child tree, ordered by id
};

/// Assembles the traceability model. Every requirement appears exactly
/// once; result rows referencing unknown requirement ids fail with
/// diagnostics.
ReportModel build_report(const std::vector<Requirement>& reqs,
                         const std::vector<CheckRow>& results);

std::string render_markdown(const ReportModel& model);
std::string render_json(const ReportModel& model);
ReportModel report_from_json(const std::string& text);

bool structurally_equal(const ReportModel& a, const ReportModel& b);

}  // namespace reqcheck
