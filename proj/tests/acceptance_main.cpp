// Acceptance suite: one pass/fail line per criterion, each run at its
// stated tolerance and runtime budget.
//
// Usage: acceptance <path-to-reqcheck-cli> <project-source-dir>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "reqcheck/compile.hpp"
#include "reqcheck/emit.hpp"
#include "reqcheck/monitor.hpp"
#include "reqcheck/parser.hpp"
#include "reqcheck/sim.hpp"
#include "reqcheck/trace.hpp"

namespace fs = std::filesystem;
using namespace reqcheck;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;
std::string g_cli;
fs::path g_source_dir;
fs::path g_work_dir;

struct Criterion {
  std::string name;
  double budget_seconds;
  Clock::time_point started = Clock::now();
  std::vector<std::string> problems;

  Criterion(std::string n, double budget)
      : name(std::move(n)), budget_seconds(budget) {}

  void expect(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }

  void finish() {
    double elapsed =
        std::chrono::duration<double>(Clock::now() - started).count();
    if (elapsed > budget_seconds)
      problems.push_back("runtime " + std::to_string(elapsed) +
                         " s exceeds the " + std::to_string(budget_seconds) +
                         " s budget");
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    if (problems.empty()) {
      line << "[PASS] " << name << " (" << elapsed << " s)";
    } else {
      ++g_failures;
      line << "[FAIL] " << name << " (" << elapsed << " s)";
      for (const auto& p : problems) line << "\n       - " << p;
    }
    std::cout << line.str() << "\n";
  }
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_cli(const std::string& args) {
  std::string cmd = g_cli + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WEXITSTATUS(status);
}

std::string normalize_ws(const std::string& s) {
  std::string out;
  bool in_space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      in_space = true;
      continue;
    }
    if (in_space && !out.empty()) out += ' ';
    in_space = false;
    out += c;
  }
  return out;
}

Trace synthetic_trace(const std::vector<uint8_t>& c,
                      const std::vector<uint8_t>& r,
                      const std::vector<uint8_t>& stop) {
  Trace tr;
  tr.timestep = 1.0;
  tr.add_bool_column("c", c);
  tr.add_bool_column("r", r);
  tr.add_bool_column("stop", stop);
  return tr;
}

// ---------------------------------------------------------------------------
// 1. Contract reproduction
// ---------------------------------------------------------------------------

void criterion_contract_reproduction() {
  Criterion crit("criterion 1: contract reproduction (cocospec)", 1.0);
  fs::path out_dir = g_work_dir / "cocospec";
  int exit_code =
      run_cli("compile " + (g_source_dir / "corpus/engine_controller.reqs").string() +
              " --emit cocospec -o " + out_dir.string());
  crit.expect(exit_code == 0, "compile exited with " + std::to_string(exit_code));

  const std::string expected =
      "guarantee \"UC5_R_1\" ((H(not(((sensorfaults) and "
      "(trackingPilotCommands))))) or (not(SI(((((sensorfaults) and "
      "(trackingPilotCommands))) and ((pre(not(((sensorfaults) and "
      "(trackingPilotCommands))))) or FTP)), (not((controlObjectives)))))));";
  try {
    std::string got = read_file(out_dir / "UC5_R_1.cocospec");
    crit.expect(normalize_ws(got) == normalize_ws(expected),
                "guarantee text differs from the published contract:\n  got:  " +
                    normalize_ws(got) + "\n  want: " + normalize_ws(expected));
  } catch (const std::exception& e) {
    crit.expect(false, e.what());
  }
  crit.finish();
}

// ---------------------------------------------------------------------------
// 2. Corpus parsing
// ---------------------------------------------------------------------------

void criterion_corpus_parsing() {
  Criterion crit("criterion 2: corpus parsing and lint", 10.0);
  try {
    auto parsed = parse_project(
        read_file(g_source_dir / "corpus/engine_controller.reqs"),
        "engine_controller.reqs");
    crit.expect(parsed.ok(), "corpus has parse diagnostics:\n" +
                                 render_all(parsed.diagnostics));
    crit.expect(parsed.requirements.size() == 3,
                "expected the 3 published requirements");
    for (const auto& req : parsed.requirements) {
      std::string name = req.id;
      for (char& ch : name)
        if (ch == '.') ch = '_';
      std::string golden =
          read_file(g_source_dir / "tests/golden" / (name + ".ast"));
      crit.expect(dump(req) == golden,
                  "golden AST mismatch for " + req.id);
    }

    auto analogues = parse_project(
        read_file(g_source_dir / "corpus/analogues.reqs"), "analogues.reqs");
    crit.expect(analogues.ok(), "analogue corpus has parse diagnostics");
    crit.expect(analogues.requirements.size() >= 10,
                "analogue set must hold at least 10 requirements");
    std::set<TimingKind> kinds;
    for (const auto& req : analogues.requirements)
      kinds.insert(req.timing.kind);
    crit.expect(kinds.size() == 7,
                "analogue set must exercise every timing kind (found " +
                    std::to_string(kinds.size()) + ")");

    int lint_exit =
        run_cli("lint " + (g_source_dir / "corpus/analogues.reqs").string() +
                " --signals " + (g_source_dir / "corpus/engine_map.json").string());
    crit.expect(lint_exit == 0,
                "analogue lint exited with " + std::to_string(lint_exit));
    int lint_exit2 =
        run_cli("lint " + (g_source_dir / "corpus/engine_controller.reqs").string());
    crit.expect(lint_exit2 == 0, "structural lint of the published corpus failed");
  } catch (const std::exception& e) {
    crit.expect(false, e.what());
  }
  crit.finish();
}

// ---------------------------------------------------------------------------
// 3. Triangle equivalence
// ---------------------------------------------------------------------------

void criterion_triangle() {
  Criterion crit("criterion 3: oracle/past/future triangle equivalence", 60.0);
  const std::vector<std::string> templates = {
      "if (c) Ctrl shall satisfy (r)",
      "if (c) Ctrl shall eventually satisfy (r)",
      "if (c) Ctrl shall always satisfy (r)",
      "if (c) Ctrl shall never satisfy (r)",
      "if (c) Ctrl shall until (stop) satisfy (r)",
      "if (c) Ctrl shall within 1 ticks satisfy (r)",
      "if (c) Ctrl shall within 2 ticks satisfy (r)",
      "if (c) Ctrl shall within 3 ticks satisfy (r)",
      "if (c) Ctrl shall for 1 ticks satisfy (r)",
      "if (c) Ctrl shall for 2 ticks satisfy (r)",
      "if (c) Ctrl shall for 3 ticks satisfy (r)",
  };

  long long disagreements = 0;
  long long checked = 0;
  std::string first_failure;

  auto check_trace = [&](const Requirement& req,
                         const CompiledRequirement& creq, const Trace& tr) {
    Verdict oracle = oracle_check(req, tr, {}, {});
    FormulaVerdicts fv = formula_check(creq, tr, {}, {});
    bool ok = oracle.status != VerdictStatus::Violated;
    ++checked;
    if (ok != fv.past_verdict || fv.past_verdict != fv.future_verdict) {
      ++disagreements;
      if (first_failure.empty())
        first_failure = req.source_text + " on c=" + [&] {
          std::string s;
          for (std::size_t t = 0; t < tr.length(); ++t)
            s += tr.bool_at("c", t) ? '1' : '0';
          s += " r=";
          for (std::size_t t = 0; t < tr.length(); ++t)
            s += tr.bool_at("r", t) ? '1' : '0';
          s += " stop=";
          for (std::size_t t = 0; t < tr.length(); ++t)
            s += tr.bool_at("stop", t) ? '1' : '0';
          return s;
        }();
    }
  };

  for (const auto& sentence : templates) {
    auto parsed = parse_requirement(sentence);
    if (!parsed.ok()) {
      crit.expect(false, "template failed to parse: " + sentence);
      continue;
    }
    Requirement req = *parsed.requirement;
    req.id = "T";
    CompiledRequirement creq = compile_requirement(req);

    // Exhaustive over all {c, r, stop} traces of length <= 5.
    for (std::size_t len = 1; len <= 5; ++len) {
      unsigned long long total = 1ull << (3 * len);
      for (unsigned long long idx = 0; idx < total; ++idx) {
        std::vector<uint8_t> c(len), r(len), stop(len);
        for (std::size_t t = 0; t < len; ++t) {
          c[t] = (idx >> t) & 1ull;
          r[t] = (idx >> (len + t)) & 1ull;
          stop[t] = (idx >> (2 * len + t)) & 1ull;
        }
        check_trace(req, creq, synthetic_trace(c, r, stop));
      }
    }

    // 10,000 random traces of length <= 50 per template.
    std::mt19937 rng(0xC0FFEE ^ std::hash<std::string>{}(sentence));
    for (int round = 0; round < 10000; ++round) {
      std::size_t len = 1 + rng() % 50;
      std::vector<uint8_t> c(len), r(len), stop(len);
      for (std::size_t t = 0; t < len; ++t) {
        c[t] = rng() & 1;
        r[t] = rng() & 1;
        stop[t] = rng() & 1;
      }
      check_trace(req, creq, synthetic_trace(c, r, stop));
    }
  }

  crit.expect(disagreements == 0,
              std::to_string(disagreements) + " disagreement(s) out of " +
                  std::to_string(checked) + "; first: " + first_failure);
  crit.finish();
}

// ---------------------------------------------------------------------------
// 4. pLTL recursion laws
// ---------------------------------------------------------------------------

void criterion_recursion_laws() {
  Criterion crit("criterion 4: SI and S recursion laws", 10.0);
  FormulaPtr a = f_atom(bool_atom("a"));
  FormulaPtr b = f_atom(bool_atom("b"));
  FormulaPtr si = f_since_inclusive(a, b);
  FormulaPtr si_unrolled = f_and(b, f_or(a, f_prev(si)));
  FormulaPtr s = f_since(a, b);
  FormulaPtr s_unrolled = f_or(a, f_and(b, f_prev(s)));

  long long mismatches = 0;
  for (std::size_t len = 1; len <= 6; ++len) {
    unsigned long long total = 1ull << (2 * len);
    for (unsigned long long idx = 0; idx < total; ++idx) {
      std::vector<uint8_t> av(len), bv(len);
      for (std::size_t t = 0; t < len; ++t) {
        av[t] = (idx >> t) & 1ull;
        bv[t] = (idx >> (len + t)) & 1ull;
      }
      BoolTrace tr = make_bool_trace({{"a", av}, {"b", bv}});
      for (std::size_t t = 0; t < len; ++t) {
        if (eval_past(si, tr, t) != eval_past(si_unrolled, tr, t)) ++mismatches;
        if (eval_past(s, tr, t) != eval_past(s_unrolled, tr, t)) ++mismatches;
      }
    }
  }
  crit.expect(mismatches == 0,
              std::to_string(mismatches) + " pointwise mismatches");
  crit.finish();
}

// ---------------------------------------------------------------------------
// 5. Simulator oracle
// ---------------------------------------------------------------------------

void criterion_simulator_oracle() {
  Criterion crit("criterion 5: first-order simulator oracle", 1.0);
  try {
    Scenario scn = scenario_from_json(
        read_file(g_source_dir / "corpus/scenarios/settle_test.json"));
    SimOutput out = simulate(scn);
    crit.expect(out.metrics.size() == 1, "expected a single setpoint window");
    const WindowMetrics& m = out.metrics.front();
    crit.expect(m.complete, "settle window did not complete");
    double closed_form = 0.5 * std::log(50.0);  // tau * ln(50) = 1.956 s
    if (m.settling_time) {
      double err = std::fabs(*m.settling_time - closed_form);
      crit.expect(err <= 0.02, "settling time " + std::to_string(*m.settling_time) +
                                   " not within 0.02 s of " +
                                   std::to_string(closed_form));
    }
    crit.expect(m.overshoot == 0.0, "monotone response must have overshoot 0");

    Scenario half = scn;
    half.timestep_seconds = 0.005;
    SimOutput fine = simulate(half);
    crit.expect(fine.metrics.front().complete, "half-step window incomplete");
    double shift = std::fabs(*fine.metrics.front().settling_time -
                             *m.settling_time);
    crit.expect(shift < 0.02, "halving dt shifted the settle time by " +
                                  std::to_string(shift) + " s");
  } catch (const std::exception& e) {
    crit.expect(false, e.what());
  }
  crit.finish();
}

// ---------------------------------------------------------------------------
// 6. End-to-end scenario discrimination
// ---------------------------------------------------------------------------

const CheckRow* find_row(const std::vector<CheckRow>& rows,
                         const std::string& req_id) {
  for (const auto& row : rows)
    if (row.req_id == req_id) return &row;
  return nullptr;
}

void criterion_end_to_end() {
  Criterion crit("criterion 6: end-to-end scenario discrimination", 5.0);
  fs::path corpus = g_source_dir / "corpus";
  fs::path reqs = corpus / "engine_controller.reqs";
  fs::path map = corpus / "engine_map.json";
  try {
    // Nominal: one bias fault makes UC5_R_1 non-vacuously satisfied.
    fs::path nominal_csv = g_work_dir / "nominal.csv";
    crit.expect(run_cli("sim " + (corpus / "scenarios/nominal.json").string() +
                        " -o " + nominal_csv.string()) == 0,
                "nominal sim failed");
    fs::path nominal_results = g_work_dir / "nominal_results.json";
    int nominal_exit =
        run_cli("check " + reqs.string() + " --trace " + nominal_csv.string() +
                " --map " + map.string() + " -o " + nominal_results.string());
    crit.expect(nominal_exit == 0,
                "nominal check exited with " + std::to_string(nominal_exit));
    auto rows = check_rows_from_json(read_file(nominal_results));
    const CheckRow* r1 = find_row(rows, "UC5_R_1");
    const CheckRow* r11 = find_row(rows, "UC5_R_1.1");
    crit.expect(r1 && r1->verdict.status == VerdictStatus::Satisfied,
                "UC5_R_1 must be satisfied on the nominal trace");
    crit.expect(r1 && !r1->verdict.trigger_indices.empty(),
                "UC5_R_1 must be non-vacuous (the fixture injects a fault)");
    crit.expect(r11 && r11->verdict.status == VerdictStatus::Satisfied,
                "UC5_R_1.1 must be satisfied on the nominal trace");
    for (const auto& row : rows)
      crit.expect(row.agreement, row.req_id + ": oracle/formula disagreement");

    // Degraded gains: the settling-time child requirement must break.
    fs::path degraded_csv = g_work_dir / "degraded.csv";
    crit.expect(run_cli("sim " + (corpus / "scenarios/degraded.json").string() +
                        " -o " + degraded_csv.string()) == 0,
                "degraded sim failed");
    fs::path degraded_results = g_work_dir / "degraded_results.json";
    int degraded_exit = run_cli(
        "check " + reqs.string() + " --trace " + degraded_csv.string() +
        " --map " + map.string() + " -o " + degraded_results.string());
    crit.expect(degraded_exit == 1,
                "degraded check must exit 1 (violations), got " +
                    std::to_string(degraded_exit));
    auto degraded_rows = check_rows_from_json(read_file(degraded_results));
    const CheckRow* d11 = find_row(degraded_rows, "UC5_R_1.1");
    crit.expect(d11 && d11->verdict.status == VerdictStatus::Violated,
                "UC5_R_1.1 must be violated on the degraded trace");
    crit.expect(d11 && d11->verdict.violation.has_value(),
                "the violation must carry a trigger index and witness step");
    if (d11 && d11->verdict.violation) {
      crit.expect(!d11->verdict.trigger_indices.empty(),
                  "violated verdicts report their trigger indices");
      crit.expect(d11->verdict.violation->failing_step >=
                      d11->verdict.violation->trigger_index,
                  "the witness step cannot precede its trigger");
    }

    // Dropout: sensorfaults must hold exactly on the injected step range.
    fs::path dropout_csv = g_work_dir / "dropout.csv";
    crit.expect(run_cli("sim " + (corpus / "scenarios/dropout.json").string() +
                        " -o " + dropout_csv.string()) == 0,
                "dropout sim failed");
    Trace dropout = load_trace_file(dropout_csv.string());
    bool range_exact = true;
    for (std::size_t t = 0; t < dropout.length(); ++t) {
      bool expected = t >= 100 && t <= 120;
      if (dropout.bool_at("sensorfaults", t) != expected) range_exact = false;
    }
    crit.expect(range_exact,
                "sensorfaults must hold exactly on steps 100..120");

    // Exit-code contract: a dangling parent makes lint exit 1.
    fs::path bad = g_work_dir / "dangling.reqs";
    std::ofstream(bad) << "# id: R1\n# parent: UC5_R_9\nC shall satisfy (x)\n";
    crit.expect(run_cli("lint " + bad.string()) == 1,
                "lint must exit 1 on a dangling parent");
    crit.expect(run_cli("check " + reqs.string() + " --trace " +
                        (g_work_dir / "missing.csv").string()) == 2,
                "check must exit 2 on unreadable inputs");

    // Idempotence: identical inputs give byte-identical outputs.
    fs::path nominal_csv2 = g_work_dir / "nominal2.csv";
    run_cli("sim " + (corpus / "scenarios/nominal.json").string() + " -o " +
            nominal_csv2.string());
    crit.expect(read_file(nominal_csv) == read_file(nominal_csv2),
                "sim output must be byte-identical across runs");
    fs::path nominal_results2 = g_work_dir / "nominal_results2.json";
    run_cli("check " + reqs.string() + " --trace " + nominal_csv.string() +
            " --map " + map.string() + " -o " + nominal_results2.string());
    crit.expect(read_file(nominal_results) == read_file(nominal_results2),
                "check output must be byte-identical across runs");
  } catch (const std::exception& e) {
    crit.expect(false, e.what());
  }
  crit.finish();
}

// ---------------------------------------------------------------------------
// 7. Robustness
// ---------------------------------------------------------------------------

void criterion_robustness() {
  Criterion crit("criterion 7: parser fuzz and trace round-trip", 120.0);

  std::mt19937 rng(0xF00D);
  long long no_diagnostic = 0;
  for (int i = 0; i < 100000; ++i) {
    std::size_t len = rng() % 120;
    std::string s(len, '\0');
    for (auto& ch : s) ch = static_cast<char>(rng() % 256);
    ParseResult r = parse_requirement(s);
    if (!r.ok() && r.diagnostics.empty()) ++no_diagnostic;
    for (const auto& d : r.diagnostics)
      if (d.span.begin > s.size() || d.span.end > s.size()) ++no_diagnostic;
  }
  // Structured fuzz: keyword soup reaches deeper parser states.
  const std::vector<std::string> words = {
      "if",    "when",  "shall", "satisfy", "until", "within", "(", ")",
      "&",     "|",     "!",     "=>",      "=",     "null",   "diff", ",",
      "ticks", "mode",  "in",    "always",  "never", "x",      "3.5",  ">"};
  for (int i = 0; i < 30000; ++i) {
    std::string s;
    std::size_t n = rng() % 24;
    for (std::size_t k = 0; k < n; ++k) {
      s += words[rng() % words.size()];
      s += ' ';
    }
    ParseResult r = parse_requirement(s);
    if (!r.ok() && r.diagnostics.empty()) ++no_diagnostic;
  }
  crit.expect(no_diagnostic == 0,
              std::to_string(no_diagnostic) +
                  " inputs produced no/out-of-bounds diagnostics");

  // Trace round-trip: 1000 random traces per format.
  long long failures = 0;
  for (int i = 0; i < 1000; ++i) {
    Trace tr;
    tr.timestep = 0.001 + (rng() % 1000) / 100.0;
    tr.start_time = (rng() % 100) / 10.0;
    std::size_t n = 2 + rng() % 30;
    int cols = 1 + rng() % 4;
    for (int c = 0; c < cols; ++c) {
      if (rng() % 3 == 0) {
        std::vector<uint8_t> vals(n);
        for (auto& b : vals) b = rng() & 1;
        tr.add_bool_column("b" + std::to_string(c), std::move(vals));
      } else {
        std::vector<std::optional<double>> vals(n);
        for (auto& v : vals)
          if (rng() % 6 != 0)
            v = (static_cast<double>(rng()) - rng()) / 977.0;
        tr.add_numeric_column("n" + std::to_string(c), std::move(vals));
      }
    }
    for (int fmt = 0; fmt < 2; ++fmt) {
      Trace back = fmt == 0 ? load_trace_csv(write_trace_csv(tr))
                            : load_trace_json(write_trace_json(tr));
      if (back.length() != tr.length() ||
          back.column_count() != tr.column_count()) {
        ++failures;
        continue;
      }
      for (std::size_t c = 0; c < tr.columns().size(); ++c) {
        const auto& [name_a, col_a] = tr.columns()[c];
        const auto& [name_b, col_b] = back.columns()[c];
        if (name_a != name_b || col_a.kind != col_b.kind) {
          ++failures;
          continue;
        }
        for (std::size_t t = 0; t < tr.length(); ++t) {
          if (col_a.kind == ColumnKind::Bool) {
            if (col_a.bools[t] != col_b.bools[t]) ++failures;
          } else if (col_a.nums[t].has_value() != col_b.nums[t].has_value()) {
            ++failures;
          } else if (col_a.nums[t] &&
                     std::fabs(*col_a.nums[t] - *col_b.nums[t]) >
                         1e-12 * std::max(1.0, std::fabs(*col_a.nums[t]))) {
            ++failures;
          }
        }
      }
    }
  }
  crit.expect(failures == 0,
              std::to_string(failures) + " round-trip mismatches");
  crit.finish();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <reqcheck-cli> <source-dir>\n";
    return 2;
  }
  g_cli = argv[1];
  g_source_dir = argv[2];
  g_work_dir = fs::temp_directory_path() /
               ("reqcheck_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(g_work_dir);

  criterion_contract_reproduction();
  criterion_corpus_parsing();
  criterion_triangle();
  criterion_recursion_laws();
  criterion_simulator_oracle();
  criterion_end_to_end();
  criterion_robustness();

  fs::remove_all(g_work_dir);
  if (g_failures == 0) {
    std::cout << "all acceptance criteria passed\n";
    return 0;
  }
  std::cout << g_failures << " acceptance criterion(s) failed\n";
  return 1;
}
