#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reqcheck/ast.hpp"
#include "reqcheck/diagnostics.hpp"
#include "reqcheck/params.hpp"
#include "reqcheck/typecheck.hpp"

namespace reqcheck {

struct ParseResult {
  std::optional<Requirement> requirement;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return requirement.has_value(); }
};

/// Parses one FRETISH sentence:
///
///   [in <mode> mode] [when|if <boolexpr>]* <component> shall
///   [always | never | eventually | until <boolexpr> |
///    within <n> ticks | for <n> ticks] satisfy <boolexpr>
///
/// Condition, stop, and response expressions must start with '('. Timing
/// omitted means Default. Never throws; malformed input yields diagnostics
/// with spans inside the source text.
ParseResult parse_requirement(std::string_view source);

struct ProjectParseResult {
  std::vector<Requirement> requirements;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return !has_errors(diagnostics); }
};

/// Parses a requirements file: blocks separated by blank lines, each block
/// made of `# key: value` header lines (id, parent, project, rationale)
/// followed by one FRETISH sentence (may wrap across lines). Lines starting
/// with `##` are comments. Requirement order is preserved.
ProjectParseResult parse_project(std::string_view text,
                                 const std::string& filename = "");

/// Renders a Requirement back to a FRETISH sentence. Re-parsing the output
/// yields a structurally equal AST.
std::string pretty_print_requirement(const Requirement& req);

/// Expression renderers used by pretty_print_requirement; exposed for tests.
std::string print_fretish(const BoolExprPtr& e);
std::string print_fretish(const NumExprPtr& e);

struct LintInputs {
  std::optional<SignalTable> signals;
  std::optional<ParameterSet> params;
  // component name -> subsystem label (documentation-only mapping)
  std::optional<std::map<std::string, std::string>> components;
};

/// Project-level integrity checks: dangling parent ids, duplicate ids,
/// unbound atoms/parameters (when tables are provided), unreferenced
/// parameters, and components that were never mapped.
std::vector<Diagnostic> lint(const std::vector<Requirement>& project,
                             const LintInputs& inputs = {});

}  // namespace reqcheck
