#include "reqcheck/sim.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace reqcheck {

namespace {

constexpr double kTimeEps = 1e-9;

}  // namespace

Scenario scenario_from_json(const std::string& text,
                            const std::string& filename) {
  const std::string where = filename.empty() ? "<scenario>" : filename;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ScenarioError(where + ": " + e.what());
  }

  Scenario scn;
  try {
    scn.timestep_seconds = j.value("timestep_seconds", scn.timestep_seconds);
    scn.duration_seconds = j.value("duration_seconds", scn.duration_seconds);
    if (j.contains("plant")) {
      const auto& p = j.at("plant");
      scn.tau = p.value("tau", scn.tau);
      if (p.contains("initial_output"))
        scn.initial_output = p.at("initial_output").get<double>();
    }
    if (j.contains("controller")) {
      const auto& c = j.at("controller");
      std::string kind = c.value("kind", "pi");
      if (kind == "pi")
        scn.controller = Scenario::ControllerKind::Pi;
      else if (kind == "direct")
        scn.controller = Scenario::ControllerKind::Direct;
      else
        throw ScenarioError(where + ": unknown controller kind '" + kind + "'");
      scn.kp = c.value("kp", scn.kp);
      scn.ki = c.value("ki", scn.ki);
    }
    if (j.contains("pilot_schedule")) {
      for (const auto& e : j.at("pilot_schedule"))
        scn.pilot_schedule.push_back(
            {e.at("time").get<double>(), e.at("thrust").get<double>()});
    }
    if (j.contains("sensor")) {
      const auto& s = j.at("sensor");
      scn.sensor_nominal = s.value("nominal_value", scn.sensor_nominal);
      scn.sensor_deviation_fraction =
          s.value("deviation_fraction", scn.sensor_deviation_fraction);
      if (s.contains("faults")) {
        for (const auto& f : s.at("faults")) {
          FaultInjection inj;
          std::string kind = f.at("kind").get<std::string>();
          if (kind == "bias")
            inj.kind = FaultInjection::Kind::Bias;
          else if (kind == "dropout")
            inj.kind = FaultInjection::Kind::Dropout;
          else
            throw ScenarioError(where + ": unknown fault kind '" + kind + "'");
          inj.start = f.at("start").get<double>();
          inj.end = f.at("end").get<double>();
          inj.bias = f.value("bias", 0.0);
          scn.faults.push_back(inj);
        }
      }
    }
    if (j.contains("mode_schedule")) {
      for (const auto& e : j.at("mode_schedule"))
        scn.mode_schedule.push_back(
            {e.at("time").get<double>(), e.at("mode").get<double>()});
    }
    if (j.contains("shaft")) {
      scn.shaft_gain = j.at("shaft").value("gain", scn.shaft_gain);
      scn.shaft_limit = j.at("shaft").value("limit", scn.shaft_limit);
    }
    if (j.contains("objectives")) {
      const auto& o = j.at("objectives");
      scn.settle_band_fraction =
          o.value("settle_band_fraction", scn.settle_band_fraction);
      scn.outer_threshold = o.value("outer_threshold", scn.outer_threshold);
      scn.settling_time_max = o.value("settling_time_max", scn.settling_time_max);
      scn.overshoot_max = o.value("overshoot_max", scn.overshoot_max);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ScenarioError(where + ": " + e.what());
  }
  return scn;
}

namespace {

void validate(const Scenario& scn) {
  if (!(scn.tau > 0)) throw ScenarioError("plant tau must be positive");
  if (!(scn.timestep_seconds > 0))
    throw ScenarioError("timestep must be positive");
  if (scn.duration_seconds < scn.timestep_seconds)
    throw ScenarioError("duration must be at least one timestep");
  if (!(scn.settle_band_fraction > 0 &&
        scn.settle_band_fraction < scn.outer_threshold))
    throw ScenarioError("objective bands must satisfy 0 < e < E");
  if (scn.controller == Scenario::ControllerKind::Pi && !(scn.ki > 0))
    throw ScenarioError("PI controller needs ki > 0");
  for (const auto& entry : scn.pilot_schedule)
    if (entry.time < 0 || entry.time > scn.duration_seconds + kTimeEps)
      throw ScenarioError("pilot schedule time outside the duration");
  for (const auto& entry : scn.mode_schedule)
    if (entry.time < 0 || entry.time > scn.duration_seconds + kTimeEps)
      throw ScenarioError("mode schedule time outside the duration");
  for (const auto& f : scn.faults) {
    if (f.end < f.start) throw ScenarioError("fault injection ends before it starts");
    for (const auto& g : scn.faults) {
      if (&f == &g) continue;
      if (f.start <= g.end && g.start <= f.end)
        throw ScenarioError("fault injections overlap");
    }
  }
  if (scn.pilot_schedule.empty() && !scn.initial_output)
    throw ScenarioError(
        "an empty pilot schedule needs plant.initial_output");
}

template <typename Entry>
std::vector<Entry> sorted_by_time(std::vector<Entry> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.time < b.time; });
  return entries;
}

}  // namespace

WindowMetrics window_metrics(std::span<const double> y,
                             std::span<const double> r, double previous_level,
                             double timestep, double settle_band_fraction) {
  if (y.empty() || y.size() != r.size())
    throw ScenarioError("metrics need equal non-empty series");

  WindowMetrics m;
  m.target = r[0];
  const double step = m.target - previous_level;
  const double band = std::max(settle_band_fraction * std::fabs(step),
                               1e-9 * std::max(1.0, std::fabs(m.target)));

  // Last step outside the band; settled permanently from the next one.
  std::ptrdiff_t last_outside = -1;
  for (std::size_t t = 0; t < y.size(); ++t)
    if (std::fabs(y[t] - r[t]) > band) last_outside = static_cast<std::ptrdiff_t>(t);

  if (last_outside + 1 < static_cast<std::ptrdiff_t>(y.size())) {
    m.complete = true;
    m.settling_time = static_cast<double>(last_outside + 1) * timestep;
  }

  if (step != 0.0) {
    double peak = 0.0;
    const double sign = step > 0 ? 1.0 : -1.0;
    for (std::size_t t = 0; t < y.size(); ++t)
      peak = std::max(peak, (y[t] - m.target) * sign);
    m.overshoot = peak / std::fabs(step);
  }
  m.steady_state_error = std::fabs(y.back() - r.back());
  return m;
}

WindowMetrics metrics(std::span<const double> y, std::span<const double> r,
                      std::size_t step_index, double timestep,
                      double settle_band_fraction) {
  if (step_index >= y.size()) throw ScenarioError("step index out of range");
  double previous_level = step_index > 0 ? r[step_index - 1] : y[step_index];
  WindowMetrics m =
      window_metrics(y.subspan(step_index), r.subspan(step_index),
                     previous_level, timestep, settle_band_fraction);
  m.start_step = step_index;
  return m;
}

SimOutput simulate(const Scenario& scn) {
  validate(scn);
  const double dt = scn.timestep_seconds;
  const std::size_t n =
      static_cast<std::size_t>(scn.duration_seconds / dt + kTimeEps) + 1;

  auto pilots = sorted_by_time(scn.pilot_schedule);
  auto modes = sorted_by_time(scn.mode_schedule);

  std::vector<double> r(n), y(n), u(n), mode(n), shaft(n), y_ctrl(n);
  std::vector<std::optional<double>> y_meas(n);
  std::vector<uint8_t> pilot_input(n, 0), sensorfaults(n, 0);

  auto pilot_at = [&](double t) {
    if (pilots.empty()) return *scn.initial_output;
    double value = pilots.front().thrust;
    for (const auto& e : pilots)
      if (e.time <= t + kTimeEps) value = e.thrust;
    return value;
  };
  auto mode_at = [&](double t) {
    if (modes.empty()) return 0.0;
    double value = modes.front().mode;
    for (const auto& e : modes)
      if (e.time <= t + kTimeEps) value = e.mode;
    return value;
  };

  const double y0 = scn.initial_output.value_or(pilot_at(0.0));
  double state = y0;
  double integral =
      scn.controller == Scenario::ControllerKind::Pi ? y0 / scn.ki : 0.0;
  double held = y0;

  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * dt;
    r[k] = pilot_at(t);
    mode[k] = mode_at(t);
    y[k] = state;
    pilot_input[k] = k > 0 && r[k] != r[k - 1];

    // Sensor with fault injection; intervals are closed [start, end].
    const FaultInjection* active = nullptr;
    for (const auto& f : scn.faults)
      if (t >= f.start - kTimeEps && t <= f.end + kTimeEps) active = &f;
    if (active && active->kind == FaultInjection::Kind::Dropout) {
      y_meas[k] = std::nullopt;
    } else if (active) {
      y_meas[k] = y[k] * (1.0 + active->bias);
    } else {
      y_meas[k] = y[k];
    }
    if (y_meas[k]) held = *y_meas[k];
    y_ctrl[k] = held;

    const bool deviating =
        y_meas[k] && std::fabs(*y_meas[k] - y[k]) /
                             std::max(std::fabs(y[k]), 1e-9) >
                         scn.sensor_deviation_fraction;
    sensorfaults[k] = !y_meas[k] || deviating;

    // Fault accommodation: the controller sees the held measurement.
    if (scn.controller == Scenario::ControllerKind::Pi) {
      const double error = r[k] - y_ctrl[k];
      integral += error * dt;
      u[k] = scn.kp * error + scn.ki * integral;
    } else {
      u[k] = r[k];
    }
    shaft[k] = std::min(scn.shaft_gain * y[k], scn.shaft_limit);

    state += dt * (u[k] - state) / scn.tau;
  }

  // Setpoint windows: [0, first change), then between consecutive changes.
  std::vector<std::size_t> window_starts{0};
  for (std::size_t k = 1; k < n; ++k)
    if (pilot_input[k]) window_starts.push_back(k);

  std::vector<WindowMetrics> windows;
  std::vector<std::optional<double>> settling_col(n);
  std::vector<uint8_t> tracking(n, 0), objectives(n, 0);

  for (std::size_t w = 0; w < window_starts.size(); ++w) {
    const std::size_t s = window_starts[w];
    const std::size_t e = w + 1 < window_starts.size() ? window_starts[w + 1] : n;
    const double previous_level = s > 0 ? r[s - 1] : y[0];

    WindowMetrics m = window_metrics(
        std::span<const double>(y).subspan(s, e - s),
        std::span<const double>(r).subspan(s, e - s), previous_level, dt,
        scn.settle_band_fraction);
    m.start_step = s;
    windows.push_back(m);

    const bool settled_ok =
        m.complete && *m.settling_time <= scn.settling_time_max + kTimeEps;
    std::size_t settle_steps =
        m.complete ? static_cast<std::size_t>(*m.settling_time / dt + 0.5)
                   : e - s;
    for (std::size_t k = s; k < e; ++k) {
      settling_col[k] = m.settling_time
                            ? std::optional<double>(*m.settling_time)
                            : std::nullopt;
      if (s > 0) tracking[k] = k - s < settle_steps;
      objectives[k] = settled_ok && m.overshoot <= scn.overshoot_max &&
                      std::fabs(y[k] - r[k]) <= scn.outer_threshold;
    }
  }

  SimOutput out;
  out.trace.timestep = dt;
  out.trace.start_time = 0.0;
  auto to_opt = [](const std::vector<double>& v) {
    std::vector<std::optional<double>> o(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) o[i] = v[i];
    return o;
  };
  out.trace.add_numeric_column("r", to_opt(r));
  out.trace.add_numeric_column("y", to_opt(y));
  out.trace.add_numeric_column("y_meas", y_meas);
  out.trace.add_numeric_column("u", to_opt(u));
  out.trace.add_numeric_column("mode", to_opt(mode));
  out.trace.add_numeric_column("shaftSpeed", to_opt(shaft));
  out.trace.add_numeric_column("settlingTime", settling_col);
  out.trace.add_bool_column("pilotInput", pilot_input);
  out.trace.add_bool_column("sensorfaults", sensorfaults);
  out.trace.add_bool_column("trackingPilotCommands", tracking);
  out.trace.add_bool_column("controlObjectives", objectives);
  out.metrics = std::move(windows);
  return out;
}

std::string metrics_to_json(const std::vector<WindowMetrics>& windows) {
  nlohmann::json j;
  j["windows"] = nlohmann::json::array();
  for (const auto& m : windows) {
    nlohmann::json w;
    w["start_step"] = m.start_step;
    w["target"] = m.target;
    if (m.settling_time)
      w["settling_time"] = *m.settling_time;
    else
      w["settling_time"] = nullptr;
    w["overshoot"] = m.overshoot;
    w["steady_state_error"] = m.steady_state_error;
    w["complete"] = m.complete;
    j["windows"].push_back(std::move(w));
  }
  return j.dump(2) + "\n";
}

}  // namespace reqcheck
