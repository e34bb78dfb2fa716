#include <doctest.h>

#include <random>

#include "reqcheck/parser.hpp"

using namespace reqcheck;

TEST_CASE("parses the sensor-fault tracking requirement") {
  auto r = parse_requirement(
      "if ((sensorfaults) & (trackingPilotCommands)) Controller shall "
      "satisfy (controlObjectives)");
  REQUIRE(r.ok());
  const Requirement& req = *r.requirement;
  CHECK(!req.scope);
  REQUIRE(req.conditions.size() == 1);
  CHECK(req.conditions[0].keyword == ConditionKeyword::If);
  CHECK(structurally_equal(
      req.conditions[0].expr,
      bool_paren(bool_and(bool_paren(bool_atom("sensorfaults")),
                          bool_paren(bool_atom("trackingPilotCommands"))))));
  CHECK(req.component == "Controller");
  CHECK(req.timing.kind == TimingKind::Default);
  CHECK(structurally_equal(req.response,
                           bool_paren(bool_atom("controlObjectives"))));
  CHECK(req.source_text.find("sensorfaults") != std::string::npos);
}

TEST_CASE("parses the negated-tracking variant") {
  auto r = parse_requirement(
      "if (sensorfaults) & (!trackingPilotCommands) Controller shall "
      "satisfy (controlObjectives)");
  REQUIRE(r.ok());
  CHECK(structurally_equal(
      r.requirement->conditions[0].expr,
      bool_and(bool_paren(bool_atom("sensorfaults")),
               bool_paren(bool_not(bool_atom("trackingPilotCommands"))))));
}

TEST_CASE("parses the settling-time child requirement") {
  auto r = parse_requirement(
      "when (diff(r(i),y(i)) > E) if ((sensorValue(S) > nominalValue + R) | "
      "(sensorValue(S) < nominalValue - R) | (sensorValue(S) = null) & "
      "(pilotInput => setThrust = V2) & (observedThrust = V1)) Controller "
      "shall until (diff(r(i),y(i)) < e) satisfy ((settlingTime >= 0) & "
      "(settlingTime <= settlingTimeMax) & (observedThrust = V2))");
  REQUIRE(r.ok());
  const Requirement& req = *r.requirement;
  REQUIRE(req.conditions.size() == 2);
  CHECK(req.conditions[0].keyword == ConditionKeyword::When);
  CHECK(req.conditions[1].keyword == ConditionKeyword::If);
  CHECK(req.timing.kind == TimingKind::Until);
  REQUIRE(req.timing.stop_expr);
  // E and e are distinct case-sensitive thresholds.
  CHECK(print_fretish(req.conditions[0].expr) == "(diff(r(i),y(i)) > E)");
  CHECK(print_fretish(req.timing.stop_expr) == "(diff(r(i),y(i)) < e)");
}

TEST_CASE("parses the minimal requirement") {
  auto r = parse_requirement("Controller shall satisfy (true)");
  REQUIRE(r.ok());
  CHECK(!r.requirement->scope);
  CHECK(r.requirement->conditions.empty());
  CHECK(r.requirement->timing.kind == TimingKind::Default);
  CHECK(structurally_equal(r.requirement->response,
                           bool_paren(bool_const(true))));
}

TEST_CASE("parses scope and tick timings") {
  auto r = parse_requirement("in TAKEOFF mode Ctrl shall within 3 ticks satisfy (ok)");
  REQUIRE(r.ok());
  REQUIRE(r.requirement->scope);
  CHECK(r.requirement->scope->mode == "TAKEOFF");
  CHECK(r.requirement->timing.kind == TimingKind::Within);
  CHECK(r.requirement->timing.ticks == 3);

  auto f = parse_requirement("Ctrl shall for 0 ticks satisfy (ok)");
  REQUIRE(f.ok());
  CHECK(f.requirement->timing.kind == TimingKind::For);
  CHECK(f.requirement->timing.ticks == 0);
}

TEST_CASE("rejects malformed sentences with spans inside the input") {
  auto check_error = [](const std::string& src, const std::string& fragment) {
    auto r = parse_requirement(src);
    REQUIRE(!r.ok());
    REQUIRE(!r.diagnostics.empty());
    bool found = false;
    for (const auto& d : r.diagnostics) {
      CHECK(d.span.begin <= src.size());
      CHECK(d.span.end <= src.size());
      if (d.message.find(fragment) != std::string::npos) found = true;
    }
    CHECK_MESSAGE(found, "no diagnostic mentioning '", fragment, "' for: ", src,
                  "\n", render_all(r.diagnostics));
  };

  check_error("if ((a & (b)) C shall satisfy (x)", "parenthes");
  check_error("if (a) C satisfy (x)", "shall");
  check_error("if (a) C shall", "response");
  check_error("if (a) C shall satisfy", "response");
  check_error("if (a) C shall sometime satisfy (x)", "unknown timing keyword");
  check_error("if (a) C shall upon (x) satisfy (y)", "unsupported FRETISH feature");
  check_error("if (a) C shall within x ticks satisfy (y)", "tick count");
  check_error("if (a) C shall satisfy (x) trailing", "trailing");
  check_error("shall shall shall", "component");
}

TEST_CASE("deep nesting yields a diagnostic, not a crash") {
  std::string src = "if ";
  for (int i = 0; i < 600; ++i) src += '(';
  src += 'a';
  for (int i = 0; i < 600; ++i) src += ')';
  src += " C shall satisfy (x)";
  auto r = parse_requirement(src);
  CHECK(!r.ok());
}

TEST_CASE("project files parse with parent links and order preserved") {
  std::string text =
      "## corpus header comment\n"
      "\n"
      "# id: UC5_R_1\n"
      "# project: demo\n"
      "# rationale: top-level\n"
      "if (a) C shall satisfy (x)\n"
      "\n"
      "# id: UC5_R_1.1\n"
      "# parent: UC5_R_1\n"
      "# project: demo\n"
      "when (y > 1)\n"
      "C shall satisfy (x)\n";
  auto result = parse_project(text, "demo.reqs");
  REQUIRE(result.ok());
  REQUIRE(result.requirements.size() == 2);
  CHECK(result.requirements[0].id == "UC5_R_1");
  CHECK(!result.requirements[0].parent_id);
  CHECK(result.requirements[1].id == "UC5_R_1.1");
  CHECK(result.requirements[1].parent_id == "UC5_R_1");
  CHECK(result.requirements[1].source_text == "when (y > 1) C shall satisfy (x)");
}

TEST_CASE("empty project file parses to an empty list") {
  auto result = parse_project("\n\n  \n", "empty.reqs");
  CHECK(result.ok());
  CHECK(result.requirements.empty());
}

TEST_CASE("duplicate ids are diagnosed") {
  std::string text =
      "# id: R1\nC shall satisfy (x)\n\n# id: R1\nC shall satisfy (y)\n";
  auto result = parse_project(text, "dup.reqs");
  CHECK(!result.ok());
  REQUIRE(result.requirements.size() == 1);
  bool found = false;
  for (const auto& d : result.diagnostics)
    if (d.message.find("duplicate") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("malformed headers are diagnosed") {
  auto result = parse_project("# id R1\nC shall satisfy (x)\n", "bad.reqs");
  CHECK(!result.ok());
  auto result2 = parse_project("# id: R1\n# owner: me\nC shall satisfy (x)\n", "bad2.reqs");
  CHECK(!result2.ok());
  auto result3 = parse_project("# rationale: no id\nC shall satisfy (x)\n", "bad3.reqs");
  CHECK(!result3.ok());
  // headers may not follow the sentence within a block
  auto result4 = parse_project(
      "# id: R1\nC shall satisfy (x)\n# rationale: too late\n", "bad4.reqs");
  CHECK(!result4.ok());
}

// ---------------------------------------------------------------------------
// Round-trip property over generated sentences
// ---------------------------------------------------------------------------

namespace {

std::string random_ident(std::mt19937& rng) {
  static const char* names[] = {"a", "b2", "fault", "trackingPilotCommands",
                                "y", "r", "E", "e_band", "V_2"};
  return names[rng() % (sizeof(names) / sizeof(names[0]))];
}

std::string random_num(std::mt19937& rng, int depth);

std::string random_bool(std::mt19937& rng, int depth) {
  if (depth <= 0) {
    switch (rng() % 3) {
      case 0: return random_ident(rng);
      case 1: return "true";
      default: return random_num(rng, 0) + " > " + random_num(rng, 0);
    }
  }
  switch (rng() % 8) {
    case 0: return "(" + random_bool(rng, depth - 1) + ")";
    case 1: return "!" + random_bool(rng, 0);
    case 2:
      return random_bool(rng, depth - 1) + " & " + random_bool(rng, depth - 1);
    case 3:
      return random_bool(rng, depth - 1) + " | " + random_bool(rng, depth - 1);
    case 4:
      return "(" + random_bool(rng, depth - 1) + " => " +
             random_bool(rng, depth - 1) + ")";
    case 5:
      return random_num(rng, depth - 1) + " <= " + random_num(rng, depth - 1);
    case 6: return "sensorValue(S) = null";
    default:
      return "diff(" + random_num(rng, 0) + "," + random_num(rng, 0) + ") < " +
             random_ident(rng);
  }
}

std::string random_num(std::mt19937& rng, int depth) {
  if (depth <= 0) {
    switch (rng() % 4) {
      case 0: return random_ident(rng);
      case 1: return random_ident(rng) + "(i)";
      case 2: return std::to_string(static_cast<int>(rng() % 100));
      default: return "3.5";
    }
  }
  switch (rng() % 3) {
    case 0: return "(" + random_num(rng, depth - 1) + ")";
    case 1:
      return random_num(rng, depth - 1) + " + " + random_num(rng, depth - 1);
    default:
      return random_num(rng, depth - 1) + " * " + random_num(rng, 0);
  }
}

std::string random_sentence(std::mt19937& rng) {
  std::string s;
  if (rng() % 4 == 0) s += "in MODE_" + std::to_string(rng() % 3) + " mode ";
  int clauses = static_cast<int>(rng() % 3);
  for (int i = 0; i < clauses; ++i) {
    s += (rng() % 2 ? "when (" : "if (") + random_bool(rng, 2) + ") ";
  }
  s += "Component shall";
  switch (rng() % 7) {
    case 0: break;
    case 1: s += " always"; break;
    case 2: s += " never"; break;
    case 3: s += " eventually"; break;
    case 4: s += " until (" + random_bool(rng, 2) + ")"; break;
    case 5: s += " within " + std::to_string(rng() % 5) + " ticks"; break;
    default: s += " for " + std::to_string(rng() % 5) + " ticks"; break;
  }
  s += " satisfy (" + random_bool(rng, 2) + ")";
  return s;
}

}  // namespace

TEST_CASE("pretty-printed requirements re-parse to structurally equal ASTs") {
  std::mt19937 rng(20260808);
  int checked = 0;
  for (int i = 0; i < 500; ++i) {
    std::string sentence = random_sentence(rng);
    auto first = parse_requirement(sentence);
    if (!first.ok()) continue;  // generator may hit precedence re-grouping
    ++checked;
    std::string printed = pretty_print_requirement(*first.requirement);
    auto second = parse_requirement(printed);
    REQUIRE_MESSAGE(second.ok(), "failed to re-parse: ", printed);
    CHECK_MESSAGE(structurally_equal(*first.requirement, *second.requirement),
                  "round-trip mismatch:\n  in:  ", sentence, "\n  out: ",
                  printed);
  }
  CHECK(checked > 300);
}

TEST_CASE("parser returns diagnostics on arbitrary bytes (smoke)") {
  std::mt19937 rng(7);
  for (int i = 0; i < 5000; ++i) {
    std::string s(rng() % 80, '\0');
    for (auto& c : s) c = static_cast<char>(rng() % 256);
    auto r = parse_requirement(s);
    if (!r.ok()) CHECK(!r.diagnostics.empty());
    for (const auto& d : r.diagnostics) {
      CHECK(d.span.begin <= s.size());
      CHECK(d.span.end <= s.size());
    }
  }
}

// ---------------------------------------------------------------------------
// Lint
// ---------------------------------------------------------------------------

namespace {

std::vector<Requirement> small_project() {
  auto a = parse_requirement("if (fault) C shall satisfy (ok)");
  auto b = parse_requirement("if (fault) C shall satisfy (level > settlingTimeMax)");
  REQUIRE(a.ok());
  REQUIRE(b.ok());
  Requirement r1 = *a.requirement;
  r1.id = "R1";
  Requirement r2 = *b.requirement;
  r2.id = "R2";
  r2.parent_id = "R1";
  return {r1, r2};
}

}  // namespace

TEST_CASE("lint flags dangling parents") {
  auto project = small_project();
  project[1].parent_id = "UC5_R_9";
  auto diags = lint(project);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].message.find("dangling parent") != std::string::npos);
}

TEST_CASE("lint flags an unbound parameter") {
  auto project = small_project();
  LintInputs inputs;
  inputs.signals = SignalTable{{"fault", SignalKind::Bool},
                               {"ok", SignalKind::Bool},
                               {"level", SignalKind::Numeric}};
  inputs.params = ParameterSet{};  // settlingTimeMax missing
  auto diags = lint(project, inputs);
  REQUIRE(!diags.empty());
  bool found = false;
  for (const auto& d : diags)
    if (d.message.find("settlingTimeMax") != std::string::npos &&
        d.message.find("unbound") != std::string::npos)
      found = true;
  CHECK(found);
}

TEST_CASE("fully bound project lints clean") {
  auto project = small_project();
  LintInputs inputs;
  inputs.signals = SignalTable{{"fault", SignalKind::Bool},
                               {"ok", SignalKind::Bool},
                               {"level", SignalKind::Numeric}};
  ParameterSet params;
  params.set("settlingTimeMax", 3.0);
  inputs.params = params;
  inputs.components = std::map<std::string, std::string>{{"C", "subsystem"}};
  CHECK(lint(project, inputs).empty());
}

TEST_CASE("lint warns about unreferenced parameters and unmapped components") {
  auto project = small_project();
  LintInputs inputs;
  ParameterSet params;
  params.set("settlingTimeMax", 3.0);
  params.set("spare", 1.0);
  inputs.params = params;
  inputs.components = std::map<std::string, std::string>{};
  auto diags = lint(project, inputs);
  bool unreferenced = false, unmapped = false;
  for (const auto& d : diags) {
    if (d.message.find("spare") != std::string::npos) unreferenced = true;
    if (d.message.find("not mapped") != std::string::npos) unmapped = true;
    CHECK(d.severity == Severity::Warning);
  }
  CHECK(unreferenced);
  CHECK(unmapped);
}
