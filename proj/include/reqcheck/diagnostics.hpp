#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace reqcheck {

/// Half-open byte range [begin, end) into the parsed text, plus the
/// 1-based line/column of `begin` for human-readable rendering.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  int line = 1;
  int col = 1;
};

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  Span span;
  std::string message;
  std::string file;  // empty when the source is an in-memory string
};

/// Renders as `file:line:col: severity: message`.
std::string render(const Diagnostic& d);

std::string render_all(const std::vector<Diagnostic>& ds);

inline bool has_errors(const std::vector<Diagnostic>& ds) {
  for (const auto& d : ds)
    if (d.severity == Severity::Error) return true;
  return false;
}

}  // namespace reqcheck
