#include "reqcheck/trace.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace reqcheck {

namespace {

std::string format_double(double v) {
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace

void Trace::check_length(std::size_t incoming, const std::string& name) {
  if (!has_columns_) {
    if (incoming == 0) throw TraceError("trace must have at least one step");
    length_ = incoming;
    has_columns_ = true;
    return;
  }
  if (incoming != length_)
    throw TraceError("column '" + name + "' has " + std::to_string(incoming) +
                     " steps, expected " + std::to_string(length_));
}

void Trace::add_bool_column(const std::string& name,
                            std::vector<uint8_t> values) {
  check_length(values.size(), name);
  if (index_.count(name)) throw TraceError("duplicate column '" + name + "'");
  Column col;
  col.kind = ColumnKind::Bool;
  col.bools = std::move(values);
  index_.emplace(name, columns_.size());
  columns_.emplace_back(name, std::move(col));
}

void Trace::add_numeric_column(const std::string& name,
                               std::vector<std::optional<double>> values) {
  check_length(values.size(), name);
  if (index_.count(name)) throw TraceError("duplicate column '" + name + "'");
  Column col;
  col.kind = ColumnKind::Numeric;
  col.nums = std::move(values);
  index_.emplace(name, columns_.size());
  columns_.emplace_back(name, std::move(col));
}

const Column& Trace::column(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw TraceError("no column named '" + name + "'");
  return columns_[it->second].second;
}

bool Trace::bool_at(const std::string& name, std::size_t t) const {
  const Column& col = column(name);
  if (col.kind != ColumnKind::Bool)
    throw TraceError("column '" + name + "' is not boolean");
  return col.bools.at(t) != 0;
}

std::optional<double> Trace::num_at(const std::string& name,
                                    std::size_t t) const {
  const Column& col = column(name);
  if (col.kind != ColumnKind::Numeric)
    throw TraceError("column '" + name + "' is not numeric");
  return col.nums.at(t);
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (c != '\r') {
      cell += c;
    }
  }
  cells.push_back(cell);
  for (auto& s : cells) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    s = s.substr(b, e - b);
  }
  return cells;
}

bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && std::isfinite(out);
}

}  // namespace

Trace load_trace_csv(const std::string& text, const std::string& filename) {
  const std::string where = filename.empty() ? "<csv>" : filename;
  std::istringstream stream(text);
  std::string line;
  if (!std::getline(stream, line))
    throw TraceError(where + ": empty trace file");
  std::vector<std::string> header = split_csv_line(line);
  if (header.empty() || header[0] != "time")
    throw TraceError(where + ": first CSV column must be 'time'");

  std::vector<std::vector<std::string>> cells(header.size());
  std::size_t rows = 0;
  int lineno = 1;
  while (std::getline(stream, line)) {
    ++lineno;
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (blank) continue;
    std::vector<std::string> row = split_csv_line(line);
    if (row.size() != header.size())
      throw TraceError(where + ":" + std::to_string(lineno) +
                       ": ragged row: has " + std::to_string(row.size()) +
                       " cells, expected " + std::to_string(header.size()));
    for (std::size_t i = 0; i < row.size(); ++i)
      cells[i].push_back(std::move(row[i]));
    ++rows;
  }
  if (rows == 0) throw TraceError(where + ": trace has no data rows");
  if (rows == 1)
    throw TraceError(where + ": cannot infer the timestep from a single row");

  // time column
  std::vector<double> times(rows);
  for (std::size_t t = 0; t < rows; ++t) {
    if (!parse_number(cells[0][t], times[t]))
      throw TraceError(where + ": unknown token '" + cells[0][t] +
                       "' in the time column");
    if (t > 0 && times[t] <= times[t - 1])
      throw TraceError(where + ": time column must be strictly increasing");
  }
  double dt = times[1] - times[0];
  for (std::size_t t = 1; t < rows; ++t) {
    double gap = times[t] - times[t - 1];
    if (std::fabs(gap - dt) > 1e-9 * std::max(std::fabs(dt), 1e-300))
      throw TraceError(where + ": non-uniform timestep between rows " +
                       std::to_string(t) + " and " + std::to_string(t + 1));
  }

  Trace trace;
  trace.timestep = dt;
  trace.start_time = times[0];

  for (std::size_t i = 1; i < header.size(); ++i) {
    bool saw_bool = false, saw_num = false, saw_empty = false;
    for (const std::string& s : cells[i]) {
      double ignored;
      if (s.empty())
        saw_empty = true;
      else if (s == "true" || s == "false")
        saw_bool = true;
      else if (parse_number(s, ignored))
        saw_num = true;
      else
        throw TraceError(where + ": unknown token '" + s + "' in column '" +
                         header[i] + "'");
    }
    if (saw_bool && (saw_num || saw_empty))
      throw TraceError(where + ": column '" + header[i] +
                       "' mixes booleans with numbers or empty cells "
                       "(unavailable booleans are not permitted)");
    if (saw_bool) {
      std::vector<uint8_t> values(rows);
      for (std::size_t t = 0; t < rows; ++t) values[t] = cells[i][t] == "true";
      trace.add_bool_column(header[i], std::move(values));
    } else {
      std::vector<std::optional<double>> values(rows);
      for (std::size_t t = 0; t < rows; ++t) {
        if (cells[i][t].empty()) continue;
        double v;
        parse_number(cells[i][t], v);
        values[t] = v;
      }
      trace.add_numeric_column(header[i], std::move(values));
    }
  }
  return trace;
}

std::string write_trace_csv(const Trace& trace) {
  std::string out = "time";
  for (const auto& [name, col] : trace.columns()) {
    (void)col;
    out += ',';
    out += name;
  }
  out += '\n';
  for (std::size_t t = 0; t < trace.length(); ++t) {
    out += format_double(trace.start_time + static_cast<double>(t) * trace.timestep);
    for (const auto& [name, col] : trace.columns()) {
      (void)name;
      out += ',';
      if (col.kind == ColumnKind::Bool) {
        out += col.bools[t] ? "true" : "false";
      } else if (col.nums[t]) {
        out += format_double(*col.nums[t]);
      }
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

Trace load_trace_json(const std::string& text, const std::string& filename) {
  const std::string where = filename.empty() ? "<json>" : filename;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw TraceError(where + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("timestep") || !j.contains("columns"))
    throw TraceError(where + ": trace JSON needs 'timestep' and 'columns'");

  Trace trace;
  trace.timestep = j.at("timestep").get<double>();
  if (!(trace.timestep > 0)) throw TraceError(where + ": timestep must be positive");
  trace.start_time = j.value("start_time", 0.0);

  for (const auto& col : j.at("columns")) {
    std::string name = col.at("name").get<std::string>();
    std::string kind = col.at("kind").get<std::string>();
    const auto& values = col.at("values");
    if (kind == "bool") {
      std::vector<uint8_t> bools;
      bools.reserve(values.size());
      for (const auto& v : values) {
        if (!v.is_boolean())
          throw TraceError(where + ": boolean column '" + name +
                           "' has a non-boolean cell "
                           "(unavailable booleans are not permitted)");
        bools.push_back(v.get<bool>() ? 1 : 0);
      }
      trace.add_bool_column(name, std::move(bools));
    } else if (kind == "numeric") {
      std::vector<std::optional<double>> nums;
      nums.reserve(values.size());
      for (const auto& v : values) {
        if (v.is_null())
          nums.push_back(std::nullopt);
        else if (v.is_number())
          nums.push_back(v.get<double>());
        else
          throw TraceError(where + ": numeric column '" + name +
                           "' has a non-numeric cell");
      }
      trace.add_numeric_column(name, std::move(nums));
    } else {
      throw TraceError(where + ": unknown column kind '" + kind + "'");
    }
  }
  if (trace.column_count() == 0)
    throw TraceError(where + ": trace has no columns");
  return trace;
}

std::string write_trace_json(const Trace& trace) {
  nlohmann::json j;
  j["timestep"] = trace.timestep;
  j["start_time"] = trace.start_time;
  j["columns"] = nlohmann::json::array();
  for (const auto& [name, col] : trace.columns()) {
    nlohmann::json c;
    c["name"] = name;
    if (col.kind == ColumnKind::Bool) {
      c["kind"] = "bool";
      nlohmann::json values = nlohmann::json::array();
      for (uint8_t b : col.bools) values.push_back(b != 0);
      c["values"] = std::move(values);
    } else {
      c["kind"] = "numeric";
      nlohmann::json values = nlohmann::json::array();
      for (const auto& v : col.nums) {
        if (v)
          values.push_back(*v);
        else
          values.push_back(nullptr);
      }
      c["values"] = std::move(values);
    }
    j["columns"].push_back(std::move(c));
  }
  return j.dump(2) + "\n";
}

Trace load_trace_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TraceError("cannot open trace file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
    return load_trace_json(buf.str(), path);
  return load_trace_csv(buf.str(), path);
}

// ---------------------------------------------------------------------------
// Signal map
// ---------------------------------------------------------------------------

SignalMapFile load_signal_map(const std::string& text,
                              const std::string& filename) {
  const std::string where = filename.empty() ? "<map>" : filename;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw TraceError(where + ": " + e.what());
  }
  SignalMapFile out;
  if (j.contains("map"))
    for (const auto& [key, value] : j.at("map").items())
      out.map.bindings[key] = value.get<std::string>();
  if (j.contains("components"))
    for (const auto& [key, value] : j.at("components").items())
      out.map.components[key] = value.get<std::string>();
  if (j.contains("params"))
    for (const auto& [key, value] : j.at("params").items())
      out.params.set(key, value.get<double>());
  if (out.params.eq_tol() <= 0)
    throw TraceError(where + ": eq_tol must be positive");
  return out;
}

}  // namespace reqcheck
