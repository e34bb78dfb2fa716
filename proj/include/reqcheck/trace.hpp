#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "reqcheck/params.hpp"

namespace reqcheck {

class TraceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ColumnKind { Bool, Numeric };

struct Column {
  ColumnKind kind = ColumnKind::Numeric;
  std::vector<uint8_t> bools;                // kind == Bool
  std::vector<std::optional<double>> nums;   // kind == Numeric; nullopt = unavailable
};

/// Finite, fixed-step, time-indexed table of named boolean/numeric signals.
/// Numeric cells may be unavailable; boolean cells are always defined.
class Trace {
 public:
  double timestep = 1.0;
  double start_time = 0.0;

  std::size_t length() const { return length_; }
  std::size_t column_count() const { return columns_.size(); }

  void add_bool_column(const std::string& name, std::vector<uint8_t> values);
  void add_numeric_column(const std::string& name,
                          std::vector<std::optional<double>> values);

  bool has_column(const std::string& name) const {
    return index_.count(name) > 0;
  }
  const Column& column(const std::string& name) const;
  const std::vector<std::pair<std::string, Column>>& columns() const {
    return columns_;
  }

  bool bool_at(const std::string& name, std::size_t t) const;
  std::optional<double> num_at(const std::string& name, std::size_t t) const;

 private:
  void check_length(std::size_t incoming, const std::string& name);

  std::size_t length_ = 0;
  bool has_columns_ = false;
  std::vector<std::pair<std::string, Column>> columns_;
  std::map<std::string, std::size_t> index_;
};

/// CSV: mandatory header, first column `time` (strictly increasing, uniform
/// step within 1e-9 relative tolerance), `true`/`false` literals for bools,
/// empty numeric cell = unavailable.
Trace load_trace_csv(const std::string& text, const std::string& filename = "");

/// JSON: {"timestep": s, "start_time": s0?, "columns": [{"name", "kind",
/// "values"}]}, `null` = unavailable.
Trace load_trace_json(const std::string& text, const std::string& filename = "");

/// Dispatches on the `.csv` / `.json` extension and reads the file.
Trace load_trace_file(const std::string& path);

std::string write_trace_csv(const Trace& trace);
std::string write_trace_json(const Trace& trace);

/// Binding of requirement-level names to trace columns. Unmapped names fall
/// back to the identical column name. Function applications are bound by
/// their printed form, e.g. "sensorValue(S)".
struct SignalMap {
  std::map<std::string, std::string> bindings;
  std::map<std::string, std::string> components;  // component -> subsystem label

  std::string resolve(const std::string& name) const {
    auto it = bindings.find(name);
    return it == bindings.end() ? name : it->second;
  }
};

struct SignalMapFile {
  SignalMap map;
  ParameterSet params;
};

/// Parses `{"map": {...}, "params": {...}, "components": {...}}`.
SignalMapFile load_signal_map(const std::string& text,
                              const std::string& filename = "");

}  // namespace reqcheck
