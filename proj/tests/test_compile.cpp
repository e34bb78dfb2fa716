#include <doctest.h>

#include <random>

#include "reqcheck/compile.hpp"
#include "reqcheck/emit.hpp"
#include "reqcheck/monitor.hpp"
#include "reqcheck/parser.hpp"
#include "reqcheck/print.hpp"
#include "test_support.hpp"

using namespace reqcheck;

namespace {

Requirement parse_req(const std::string& sentence, const std::string& id = "R") {
  auto r = parse_requirement(sentence);
  REQUIRE_MESSAGE(r.ok(), "parse failed: ", sentence, "\n",
                  render_all(r.diagnostics));
  Requirement req = *r.requirement;
  req.id = id;
  return req;
}

/// Synthetic trace-store trace from boolean step columns.
Trace synthetic_trace(
    const std::vector<std::pair<std::string, std::vector<uint8_t>>>& cols) {
  Trace tr;
  tr.timestep = 1.0;
  for (const auto& [name, values] : cols) tr.add_bool_column(name, values);
  return tr;
}

BoolTrace to_bool_trace(
    const std::vector<std::pair<std::string, std::vector<uint8_t>>>& cols) {
  return make_bool_trace(cols);
}

std::vector<uint8_t> decode(unsigned long long idx, std::size_t len, int lane) {
  std::vector<uint8_t> out(len);
  for (std::size_t t = 0; t < len; ++t)
    out[t] = (idx >> (lane * len + t)) & 1ull;
  return out;
}

}  // namespace

TEST_CASE("trigger fires on rising edges and at a true first step") {
  Requirement req = parse_req("if (c) Ctrl shall satisfy (r)");
  FormulaPtr trig = trigger_of(req);

  auto check_steps = [&](std::vector<uint8_t> c,
                         std::vector<std::size_t> expected) {
    BoolTrace tr = to_bool_trace({{"(c)", c}, {"c", c}});
    std::vector<std::size_t> got;
    for (std::size_t t = 0; t < tr.length(); ++t)
      if (eval_past(trig, tr, t)) got.push_back(t);
    CHECK(got == expected);
  };
  check_steps({0, 1, 1, 0, 1}, {1, 4});
  check_steps({1, 1, 0}, {0});  // first time point counts as an edge
  check_steps({0, 0, 0}, {});
}

TEST_CASE("trigger_of rejects unconditioned requirements") {
  Requirement req = parse_req("Ctrl shall satisfy (r)");
  CHECK_THROWS_AS(trigger_of(req), NoConditionTrigger);
}

TEST_CASE("unconditioned always compiles to plain historically") {
  Requirement req = parse_req("Ctrl shall always satisfy (r)");
  FormulaPtr past = compile_past(req);
  CHECK(pretty_print(past, Dialect::Ptltl) == "H(r)");
  CHECK(emit_cocospec(compile_requirement(req)) == "guarantee \"R\" (H(r));");
}

TEST_CASE("internally invalid timing specs raise CompileError") {
  Requirement req = parse_req("if (c) Ctrl shall satisfy (r)");
  req.timing.kind = TimingKind::Until;  // stop_expr missing
  CHECK_THROWS_AS(compile_past(req), CompileError);
  req.timing.kind = TimingKind::Within;  // ticks missing
  CHECK_THROWS_AS(compile_future(req), CompileError);
}

TEST_CASE("until template releases at the stop point") {
  // c=[F,T,F,F], r=[F,T,T,F], stop=[F,F,F,T]: the response is sustained
  // from the edge at 1 up to the stop at 3 (exclusive), so the compiled
  // formulas and the oracle agree on satisfaction at the trace end.
  Requirement req = parse_req("if (c) Ctrl shall until (stop) satisfy (r)");
  CompiledRequirement creq = compile_requirement(req);
  Trace tr = synthetic_trace({{"c", {0, 1, 0, 0}},
                              {"r", {0, 1, 1, 0}},
                              {"stop", {0, 0, 0, 1}}});
  Verdict v = oracle_check(req, tr, {}, {});
  CHECK(v.status == VerdictStatus::Satisfied);
  FormulaVerdicts fv = formula_check(creq, tr, {}, {});
  CHECK(fv.past_verdict);
  CHECK(fv.future_verdict);
}

TEST_CASE("within template counts ticks from the trigger step") {
  Requirement req = parse_req("if (c) Ctrl shall within 2 ticks satisfy (r)");
  CompiledRequirement creq = compile_requirement(req);

  Trace ok = synthetic_trace({{"c", {1, 0, 0, 0}}, {"r", {0, 0, 1, 0}}});
  CHECK(oracle_check(req, ok, {}, {}).status == VerdictStatus::Satisfied);
  CHECK(formula_check(creq, ok, {}, {}).past_verdict);
  CHECK(formula_check(creq, ok, {}, {}).future_verdict);

  Trace late = synthetic_trace({{"c", {1, 0, 0, 0}}, {"r", {0, 0, 0, 1}}});
  CHECK(oracle_check(req, late, {}, {}).status == VerdictStatus::Violated);
  CHECK(!formula_check(creq, late, {}, {}).past_verdict);
  CHECK(!formula_check(creq, late, {}, {}).future_verdict);
}

TEST_CASE("never timing with an untriggered condition is vacuous") {
  Requirement req = parse_req("if (c) Ctrl shall never satisfy (r)");
  Trace tr = synthetic_trace({{"c", {0, 0, 0}}, {"r", {1, 0, 1}}});
  Verdict v = oracle_check(req, tr, {}, {});
  CHECK(v.status == VerdictStatus::Vacuous);
  CompiledRequirement creq = compile_requirement(req);
  FormulaVerdicts fv = formula_check(creq, tr, {}, {});
  CHECK(fv.past_verdict);
  CHECK(fv.future_verdict);
}

TEST_CASE("compilation is deterministic") {
  Requirement req = parse_req(
      "when (c) if (d) Ctrl shall until (stop) satisfy (r)", "DET");
  CompiledRequirement a = compile_requirement(req);
  CompiledRequirement b = compile_requirement(req);
  CHECK(pretty_print(a.past_formula, Dialect::Ptltl) ==
        pretty_print(b.past_formula, Dialect::Ptltl));
  CHECK(pretty_print(a.future_formula, Dialect::Ltl) ==
        pretty_print(b.future_formula, Dialect::Ltl));
  CHECK(emit_cocospec(a) == emit_cocospec(b));
}

// ---------------------------------------------------------------------------
// Triangle equivalence at desk scale (the acceptance suite runs the full
// exhaustive version; this covers every template on short traces).
// ---------------------------------------------------------------------------

namespace {

void triangle_exhaustive(const std::string& sentence, std::size_t max_len) {
  Requirement req = parse_req(sentence, "T");
  CompiledRequirement creq = compile_requirement(req);
  for (std::size_t len = 1; len <= max_len; ++len) {
    unsigned long long total = 1ull << (3 * len);
    for (unsigned long long idx = 0; idx < total; ++idx) {
      Trace tr = synthetic_trace({{"c", decode(idx, len, 0)},
                                  {"r", decode(idx, len, 1)},
                                  {"stop", decode(idx, len, 2)}});
      Verdict oracle = oracle_check(req, tr, {}, {});
      FormulaVerdicts fv = formula_check(creq, tr, {}, {});
      bool ok = oracle.status != VerdictStatus::Violated;
      bool triangle = ok == fv.past_verdict && fv.past_verdict == fv.future_verdict;
      REQUIRE_MESSAGE(triangle, sentence, "  len=", len, " idx=", idx,
                      " oracle=", ok, " past=", fv.past_verdict, " future=",
                      fv.future_verdict);
    }
  }
}

}  // namespace

TEST_CASE("oracle and both formulas agree on all short traces") {
  triangle_exhaustive("if (c) Ctrl shall satisfy (r)", 4);
  triangle_exhaustive("if (c) Ctrl shall eventually satisfy (r)", 4);
  triangle_exhaustive("if (c) Ctrl shall always satisfy (r)", 4);
  triangle_exhaustive("if (c) Ctrl shall never satisfy (r)", 4);
  triangle_exhaustive("if (c) Ctrl shall until (stop) satisfy (r)", 4);
  triangle_exhaustive("if (c) Ctrl shall within 0 ticks satisfy (r)", 4);
  triangle_exhaustive("if (c) Ctrl shall within 2 ticks satisfy (r)", 4);
  triangle_exhaustive("if (c) Ctrl shall for 2 ticks satisfy (r)", 4);
  // unconditioned forms
  triangle_exhaustive("Ctrl shall satisfy (r)", 4);
  triangle_exhaustive("Ctrl shall always satisfy (r)", 4);
  triangle_exhaustive("Ctrl shall never satisfy (r)", 4);
  triangle_exhaustive("Ctrl shall until (stop) satisfy (r)", 4);
  triangle_exhaustive("Ctrl shall within 1 ticks satisfy (r)", 4);
  triangle_exhaustive("Ctrl shall for 1 ticks satisfy (r)", 4);
  // multiple clauses
  triangle_exhaustive("when (c) if (stop) Ctrl shall satisfy (r)", 4);
}

TEST_CASE("mode-scoped templates agree with the oracle exhaustively") {
  // Four atoms (c, r, stop, m) over traces of length <= 4; m grounds the
  // scope predicate through a numeric mode column.
  const std::vector<std::string> sentences = {
      "in M mode if (c) Ctrl shall satisfy (r)",
      "in M mode if (c) Ctrl shall eventually satisfy (r)",
      "in M mode if (c) Ctrl shall always satisfy (r)",
      "in M mode if (c) Ctrl shall never satisfy (r)",
      "in M mode if (c) Ctrl shall until (stop) satisfy (r)",
      "in M mode if (c) Ctrl shall within 1 ticks satisfy (r)",
      "in M mode if (c) Ctrl shall within 2 ticks satisfy (r)",
      "in M mode if (c) Ctrl shall for 2 ticks satisfy (r)",
      "in M mode Ctrl shall satisfy (r)",
      "in M mode Ctrl shall always satisfy (r)",
      "in M mode Ctrl shall within 1 ticks satisfy (r)",
  };
  ParameterSet params;
  params.set("M", 1.0);

  for (const auto& sentence : sentences) {
    Requirement req = parse_req(sentence, "SCOPED");
    CompiledRequirement creq = compile_requirement(req);
    for (std::size_t len = 1; len <= 4; ++len) {
      unsigned long long total = 1ull << (4 * len);
      for (unsigned long long idx = 0; idx < total; ++idx) {
        Trace tr = synthetic_trace({{"c", decode(idx, len, 0)},
                                    {"r", decode(idx, len, 1)},
                                    {"stop", decode(idx, len, 2)}});
        std::vector<std::optional<double>> mode(len);
        for (std::size_t t = 0; t < len; ++t)
          mode[t] = ((idx >> (3 * len + t)) & 1ull) ? 1.0 : 0.0;
        tr.add_numeric_column("mode", mode);

        Verdict oracle = oracle_check(req, tr, {}, params);
        FormulaVerdicts fv = formula_check(creq, tr, {}, params);
        bool ok = oracle.status != VerdictStatus::Violated;
        bool triangle =
            ok == fv.past_verdict && fv.past_verdict == fv.future_verdict;
        REQUIRE_MESSAGE(triangle, sentence, "  len=", len, " idx=", idx,
                        " oracle=", ok, " past=", fv.past_verdict, " future=",
                        fv.future_verdict);
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

TEST_CASE("cocospec contract for the fault-tracking requirement") {
  Requirement req = parse_req(
      "if ((sensorfaults) & (trackingPilotCommands)) Controller shall "
      "satisfy (controlObjectives)",
      "UC5_R_1");
  std::string got = emit_cocospec(compile_requirement(req));
  CHECK(got ==
        "guarantee \"UC5_R_1\" ((H(not(((sensorfaults) and "
        "(trackingPilotCommands))))) or (not(SI(((((sensorfaults) and "
        "(trackingPilotCommands))) and ((pre(not(((sensorfaults) and "
        "(trackingPilotCommands))))) or FTP)), (not((controlObjectives))))))"
        ");");
}

TEST_CASE("cocospec contract for the negated variant has the same shape") {
  Requirement req = parse_req(
      "if (sensorfaults) & (!trackingPilotCommands) Controller shall "
      "satisfy (controlObjectives)",
      "UC5_R_2");
  std::string got = emit_cocospec(compile_requirement(req));
  CHECK(got.find("guarantee \"UC5_R_2\" ((H(not(") == 0);
  CHECK(got.find("not(trackingPilotCommands)") != std::string::npos);
  CHECK(got.find("or (not(SI(") != std::string::npos);
  CHECK(got.find("or FTP)), (not((controlObjectives))") != std::string::npos);
}

TEST_CASE("smv emission defines the edge and re-parses equivalently") {
  using reqcheck::testing::LtlReparser;
  Requirement req = parse_req("if (c) Ctrl shall satisfy (r)", "R1");
  CompiledRequirement creq = compile_requirement(req);
  std::string smv = emit_smv(creq);
  CHECK(smv.find("DEFINE edge_R1 := cond_R1 & !cond_R1_prev;") != std::string::npos);
  CHECK(smv.find("LTLSPEC G (edge_R1 -> F (r))") != std::string::npos);

  Requirement always = parse_req("Ctrl shall always satisfy (r)", "R2");
  std::string smv2 = emit_smv(compile_requirement(always));
  CHECK(smv2 == "LTLSPEC G r\n");

  // Bounded timing expands into nested X disjunctions; the printed
  // obligation must evaluate like the metric original.
  Requirement within = parse_req("Ctrl shall within 2 ticks satisfy (r)", "R3");
  CompiledRequirement cw = compile_requirement(within);
  std::string obligation = pretty_print(cw.future_obligation, Dialect::Smv);
  CHECK(obligation == "r | X (r | X r)");
  FormulaPtr reparsed = LtlReparser(obligation).parse();
  std::mt19937 rng(9);
  for (int probe = 0; probe < 50; ++probe) {
    BoolTrace tr = reqcheck::testing::random_trace(rng, {"r"}, 5);
    for (std::size_t t = 0; t < tr.length(); ++t)
      CHECK(eval_future(cw.future_obligation, tr, t) ==
            eval_future(reparsed, tr, t));
  }
}

TEST_CASE("ptltl and ltl artifacts carry the formula text") {
  Requirement req = parse_req("if (c) Ctrl shall satisfy (r)", "R1");
  CompiledRequirement creq = compile_requirement(req);
  CHECK(emit_ptltl(creq).find(pretty_print(creq.past_formula, Dialect::Ptltl)) !=
        std::string::npos);
  CHECK(emit_ltl(creq).find(pretty_print(creq.future_formula, Dialect::Ltl)) !=
        std::string::npos);
}
