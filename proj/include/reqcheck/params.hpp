#pragma once

#include <map>
#include <optional>
#include <string>

namespace reqcheck {

/// Scenario constants referenced by requirements (E, e, R, V1, V2, ...).
/// `eq_tol` is the tolerance of numeric equality: a = b iff |a - b| <= eq_tol.
/// Sampled physical signals are never compared exactly.
class ParameterSet {
 public:
  static constexpr double kDefaultEqTol = 1e-6;

  ParameterSet() = default;

  void set(const std::string& name, double value) { values_[name] = value; }
  bool contains(const std::string& name) const { return values_.count(name) > 0; }

  std::optional<double> get(const std::string& name) const {
    auto it = values_.find(name);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

  double eq_tol() const {
    auto it = values_.find("eq_tol");
    return it == values_.end() ? kDefaultEqTol : it->second;
  }

  const std::map<std::string, double>& entries() const { return values_; }

 private:
  std::map<std::string, double> values_;
};

}  // namespace reqcheck
