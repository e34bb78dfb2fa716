// reqcheck: structured requirements -> temporal logic -> trace verification.
//
// Subcommands mirror the workflow phases: lint (formalization checks),
// compile (contract/property emission), sim (trace production),
// check (monitoring), report (traceability).
//
// Exit codes: 0 success; 1 lint findings or violated/disagreeing
// requirements; 2 tool failure (bad inputs, I/O errors).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "reqcheck/compile.hpp"
#include "reqcheck/emit.hpp"
#include "reqcheck/monitor.hpp"
#include "reqcheck/parser.hpp"
#include "reqcheck/print.hpp"
#include "reqcheck/report.hpp"
#include "reqcheck/sim.hpp"
#include "reqcheck/trace.hpp"

namespace {

namespace fs = std::filesystem;
using namespace reqcheck;

constexpr int kExitOk = 0;
constexpr int kExitFindings = 1;
constexpr int kExitToolError = 2;

bool verbose() {
  const char* env = std::getenv("REQCHECK_LOG");
  return env && std::string(env) != "quiet" && std::string(env) != "";
}

void log_info(const std::string& msg) {
  if (verbose()) std::cerr << "reqcheck: " << msg << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Output files appear atomically: write a temp sibling, then rename.
void write_file_atomic(const std::string& path, const std::string& content) {
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

std::vector<Requirement> parse_requirements_file(const std::string& path,
                                                 bool& had_errors,
                                                 bool print_diags) {
  ProjectParseResult parsed = parse_project(read_file(path), path);
  if (print_diags)
    for (const auto& d : parsed.diagnostics) std::cerr << render(d) << "\n";
  had_errors = has_errors(parsed.diagnostics);
  return std::move(parsed.requirements);
}

// ------------------------------------------------------------------- lint

int run_lint(const std::string& reqs_path, const std::string& map_path) {
  ProjectParseResult parsed = parse_project(read_file(reqs_path), reqs_path);
  std::vector<Diagnostic> diags = std::move(parsed.diagnostics);

  LintInputs inputs;
  if (!map_path.empty()) {
    SignalMapFile mf = load_signal_map(read_file(map_path), map_path);
    inputs.params = mf.params;
    inputs.components = mf.map.components;
    // The mapped requirement-level names double as the declared signals;
    // kinds come from the optional "kinds" section when present.
    SignalTable table;
    nlohmann::json j = nlohmann::json::parse(read_file(map_path));
    if (j.contains("kinds")) {
      for (const auto& [name, kind] : j.at("kinds").items())
        table[name] = kind.get<std::string>() == "bool" ? SignalKind::Bool
                                                        : SignalKind::Numeric;
      inputs.signals = std::move(table);
    }
  }
  for (auto d : lint(parsed.requirements, inputs)) diags.push_back(std::move(d));

  for (const auto& d : diags) std::cerr << render(d) << "\n";
  log_info("lint: " + std::to_string(diags.size()) + " finding(s)");
  return diags.empty() ? kExitOk : kExitFindings;
}

// ---------------------------------------------------------------- compile

int run_compile(const std::string& reqs_path, const std::string& emit,
                const std::string& out_dir) {
  bool had_errors = false;
  std::vector<Requirement> reqs =
      parse_requirements_file(reqs_path, had_errors, true);
  if (had_errors) return kExitToolError;

  for (const auto& req : reqs) {
    CompiledRequirement creq = compile_requirement(req);
    std::string content, ext;
    if (emit == "cocospec") {
      content = emit_cocospec(creq) + "\n";
      ext = ".cocospec";
    } else if (emit == "smv") {
      content = emit_smv(creq);
      ext = ".smv";
    } else if (emit == "ptltl") {
      content = emit_ptltl(creq);
      ext = ".ptltl";
    } else {
      content = emit_ltl(creq);
      ext = ".ltl";
    }
    fs::path out = fs::path(out_dir) / (req.id + ext);
    write_file_atomic(out.string(), content);
    log_info("wrote " + out.string());
  }
  return kExitOk;
}

// -------------------------------------------------------------------- sim

int run_sim(const std::string& scenario_path, const std::string& out_path,
            const std::string& metrics_path) {
  Scenario scn = scenario_from_json(read_file(scenario_path), scenario_path);
  SimOutput sim = simulate(scn);
  bool json = out_path.size() >= 5 &&
              out_path.substr(out_path.size() - 5) == ".json";
  write_file_atomic(out_path,
                    json ? write_trace_json(sim.trace) : write_trace_csv(sim.trace));
  log_info("wrote " + out_path + " (" + std::to_string(sim.trace.length()) +
           " steps)");
  if (!metrics_path.empty())
    write_file_atomic(metrics_path, metrics_to_json(sim.metrics));
  return kExitOk;
}

// ------------------------------------------------------------------ check

int run_check(const std::string& reqs_path,
              const std::vector<std::string>& trace_paths,
              const std::string& map_path, const std::string& out_path) {
  bool had_errors = false;
  std::vector<Requirement> reqs =
      parse_requirements_file(reqs_path, had_errors, true);
  if (had_errors) return kExitToolError;

  SignalMapFile mf;
  if (!map_path.empty()) mf = load_signal_map(read_file(map_path), map_path);

  std::vector<std::pair<std::string, Trace>> traces;
  for (const auto& path : trace_paths)
    traces.emplace_back(fs::path(path).stem().string(), load_trace_file(path));

  std::vector<CheckRow> rows = check_project(reqs, traces, mf.map, mf.params);
  if (!out_path.empty()) write_file_atomic(out_path, check_rows_to_json(rows));

  bool any_error = false, any_failed = false;
  for (const auto& row : rows) {
    std::string line = row.req_id + " x " + row.trace_id + ": ";
    if (row.error) {
      line += "error (" + *row.error + ")";
      any_error = true;
    } else {
      line += to_string(row.verdict.status);
      if (!row.agreement) line += " [ORACLE/FORMULA DISAGREEMENT]";
      if (!row.verdict.ok() || !row.agreement) any_failed = true;
    }
    std::cout << line << "\n";
  }
  if (any_error) return kExitToolError;
  return any_failed ? kExitFindings : kExitOk;
}

// ----------------------------------------------------------------- report

int run_report(const std::string& reqs_path, const std::string& results_path,
               const std::string& format, const std::string& out_path) {
  bool had_errors = false;
  std::vector<Requirement> reqs =
      parse_requirements_file(reqs_path, had_errors, true);
  if (had_errors) return kExitToolError;

  std::vector<CheckRow> rows;
  if (!results_path.empty())
    rows = check_rows_from_json(read_file(results_path));

  ReportModel model = build_report(reqs, rows);
  std::string content =
      format == "json" ? render_json(model) : render_markdown(model);
  if (out_path.empty())
    std::cout << content;
  else
    write_file_atomic(out_path, content);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reqcheck: requirements-to-verification toolkit"};
  app.require_subcommand(1);

  std::string reqs_path, map_path, out_path, emit, scenario_path, metrics_path;
  std::string results_path, format = "md";
  std::vector<std::string> trace_paths;

  auto* lint_cmd = app.add_subcommand("lint", "check a requirements file");
  lint_cmd->add_option("reqs", reqs_path, "requirements file")->required();
  lint_cmd->add_option("--signals", map_path, "signal map / parameters JSON");

  auto* compile_cmd =
      app.add_subcommand("compile", "emit verification artifacts");
  compile_cmd->add_option("reqs", reqs_path, "requirements file")->required();
  compile_cmd->add_option("--emit", emit, "ptltl|ltl|cocospec|smv")
      ->required()
      ->check(CLI::IsMember({"ptltl", "ltl", "cocospec", "smv"}));
  compile_cmd->add_option("-o,--out", out_path, "output directory")->required();

  auto* sim_cmd = app.add_subcommand("sim", "run the engine-controller simulator");
  sim_cmd->add_option("scenario", scenario_path, "scenario JSON")->required();
  sim_cmd->add_option("-o,--out", out_path, "trace output (.csv or .json)")
      ->required();
  sim_cmd->add_option("--metrics", metrics_path, "metrics JSON sidecar");

  auto* check_cmd =
      app.add_subcommand("check", "verify requirements against traces");
  check_cmd->add_option("reqs", reqs_path, "requirements file")->required();
  check_cmd->add_option("--trace", trace_paths, "trace file (repeatable)")
      ->required();
  check_cmd->add_option("--map", map_path, "signal map / parameters JSON");
  check_cmd->add_option("-o,--out", out_path, "results JSON");

  auto* report_cmd = app.add_subcommand("report", "build the traceability report");
  report_cmd->add_option("reqs", reqs_path, "requirements file")->required();
  report_cmd->add_option("--results", results_path, "results JSON from check");
  report_cmd->add_option("--format", format, "md|json")
      ->check(CLI::IsMember({"md", "json"}));
  report_cmd->add_option("-o,--out", out_path, "output file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (lint_cmd->parsed()) return run_lint(reqs_path, map_path);
    if (compile_cmd->parsed()) return run_compile(reqs_path, emit, out_path);
    if (sim_cmd->parsed()) return run_sim(scenario_path, out_path, metrics_path);
    if (check_cmd->parsed())
      return run_check(reqs_path, trace_paths, map_path, out_path);
    if (report_cmd->parsed())
      return run_report(reqs_path, results_path, format, out_path);
  } catch (const std::exception& e) {
    std::cerr << "reqcheck: error: " << e.what() << "\n";
    return kExitToolError;
  }
  return kExitToolError;
}
