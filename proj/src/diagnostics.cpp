#include "reqcheck/diagnostics.hpp"

#include <sstream>

namespace reqcheck {

std::string render(const Diagnostic& d) {
  std::ostringstream out;
  out << (d.file.empty() ? "<input>" : d.file) << ':' << d.span.line << ':'
      << d.span.col << ": "
      << (d.severity == Severity::Error ? "error" : "warning") << ": "
      << d.message;
  return out.str();
}

std::string render_all(const std::vector<Diagnostic>& ds) {
  std::string out;
  for (const auto& d : ds) {
    out += render(d);
    out += '\n';
  }
  return out;
}

}  // namespace reqcheck
