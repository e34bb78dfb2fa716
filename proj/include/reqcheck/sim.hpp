#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "reqcheck/trace.hpp"

namespace reqcheck {

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FaultInjection {
  enum class Kind { Bias, Dropout };
  Kind kind = Kind::Bias;
  double start = 0.0;  // seconds, inclusive
  double end = 0.0;    // seconds, inclusive
  double bias = 0.0;   // relative (Bias only): y_meas = y * (1 + bias)
};

struct PilotEntry {
  double time = 0.0;
  double thrust = 0.0;
};

struct ModeEntry {
  double time = 0.0;
  double mode = 0.0;
};

/// Closed-loop thrust scenario: first-order plant driven by a PI controller
/// (or direct setpoint feed in `Direct` test mode), with sensor-fault
/// injection, a scheduled mode signal, and control-objective parameters.
struct Scenario {
  double timestep_seconds = 0.01;
  double duration_seconds = 5.0;

  double tau = 0.5;  // plant time constant, seconds
  std::optional<double> initial_output;

  enum class ControllerKind { Pi, Direct };
  ControllerKind controller = ControllerKind::Pi;
  double kp = 2.0;
  double ki = 1.0;

  std::vector<PilotEntry> pilot_schedule;

  double sensor_nominal = 0.0;
  double sensor_deviation_fraction = 0.03;  // R: relative fault threshold
  std::vector<FaultInjection> faults;

  std::vector<ModeEntry> mode_schedule;

  double shaft_gain = 50.0;
  double shaft_limit = 1e12;

  double settle_band_fraction = 0.02;  // e, fraction of the step size
  double outer_threshold = 1.0;        // E, absolute tracking-error bound
  double settling_time_max = 3.0;      // seconds
  double overshoot_max = 0.1;          // fraction of the step size
};

Scenario scenario_from_json(const std::string& text,
                            const std::string& filename = "");

struct WindowMetrics {
  std::size_t start_step = 0;
  double target = 0.0;
  std::optional<double> settling_time;  // seconds; absent while incomplete
  double overshoot = 0.0;               // fraction of the step size
  double steady_state_error = 0.0;
  bool complete = false;
};

struct SimOutput {
  Trace trace;
  std::vector<WindowMetrics> metrics;
};

/// Runs the scenario with forward-Euler integration. Trace columns:
/// time (implicit), r, y, y_meas, u, mode, shaftSpeed, settlingTime,
/// and booleans pilotInput, sensorfaults, trackingPilotCommands,
/// controlObjectives. Deterministic: identical scenarios produce
/// bit-identical output.
SimOutput simulate(const Scenario& scn);

/// Step-response metrics over one setpoint window. The series run from the
/// step to the end of the window; `previous_level` is the output level the
/// step started from. The settle band is e * |step|, floored at
/// 1e-9 * max(1, |target|) so exactly-tracking signals settle immediately.
WindowMetrics window_metrics(std::span<const double> y,
                             std::span<const double> r, double previous_level,
                             double timestep, double settle_band_fraction);

/// Convenience overload: metrics for the setpoint step at `step_index`,
/// window running to the end of the series.
WindowMetrics metrics(std::span<const double> y, std::span<const double> r,
                      std::size_t step_index, double timestep,
                      double settle_band_fraction);

std::string metrics_to_json(const std::vector<WindowMetrics>& windows);

}  // namespace reqcheck
