#pragma once

#include <string>
#include <vector>

#include "memnn/profile.hpp"
#include "memnn/signal.hpp"

namespace memnn {

enum class DeviceModel { LinearDrift, NonlinearDrift, Team };
enum class WindowKind { None, Joglekar, Biolek, Prodromakis, Piecewise, TeamExp };
enum class TeamResistance { Linear, Exponential };

/* Boundary window applied to the state derivative. All windows are
 * evaluated on the normalized state x in [0, 1]. */
struct WindowSpec {
  WindowKind kind = WindowKind::Joglekar;
  int p = 1;        // steepness exponent (Joglekar, Biolek, Prodromakis)
  double j = 1.0;   // Prodromakis peak scale
  // Piecewise window: flat-top half-width a and edge exponent b inside
  // [x0, 1 - x0], boundary parabola gain k outside. The default k makes
  // the two pieces meet continuously at x0 for the default a, b, x0.
  double a = 0.5;
  double b = 2.0;
  double k = 7.8824568041367222;
  double x0 = 0.1;
  double w_c = 0.05;  // TeamExp decay width, in normalized state units
};

/* Window value f(x); bounded by [0, 1] for every kind except
 * Prodromakis, whose peak scales with j. drive_sign is the sign of the
 * drive pushing the state (used by the direction-dependent kinds). */
double window_value(double x, double drive_sign, const WindowSpec& spec);

struct LinearDriftParams {
  double d = 10e-9;     // film thickness, m
  double mu_v = 1e-14;  // ion mobility, m^2/(V*s)
};

/* Voltage-controlled model: dx/dt = alpha * v^m * f(x). beta, gamma,
 * chi and n are i-v fit constants carried for reporting; the simulated
 * branch current is always drive voltage over memristance. m should be
 * odd so bipolar drives keep their polarity. */
struct NonlinearDriftParams {
  double alpha = 20.0;
  double beta = 9e-5;
  double gamma = 4.0;
  double chi = 1e-8;
  int n = 14;
  int m = 5;
};

/* Threshold-current model: the state (in meters, within [x_on, x_off])
 * moves only when the current magnitude exceeds i_off (positive
 * direction) or |i_on| (negative direction). */
struct TeamParams {
  double k_on = -3.5e-6;   // m/s, negative
  double k_off = 3.5e-6;   // m/s, positive
  double alpha_on = 3.0;
  double alpha_off = 3.0;
  double i_on = -115e-6;   // A, i_on < 0 < i_off
  double i_off = 115e-6;   // A
  double x_on = 0.0;       // m
  double x_off = 3e-9;     // m
  TeamResistance resistance = TeamResistance::Linear;
  double lambda = 4.394449154672439;  // Exponential variant: ln(r_off/r_on)
};

struct DeviceParams {
  DeviceModel model = DeviceModel::LinearDrift;
  double r_on = 1e3;    // ohms
  double r_off = 81e3;  // ohms
  WindowSpec window;
  LinearDriftParams linear;
  NonlinearDriftParams nonlinear;
  TeamParams team;
};

/* Throws std::invalid_argument on inconsistent parameters (r_off <=
 * r_on, thresholds on the wrong side of zero, an Exponential lambda
 * that would push memristance past r_off, ...). */
void validate(const DeviceParams& params);

/* Legal state range: [0, 1] normalized, or [x_on, x_off] meters for
 * the threshold-current model. */
double state_lower_bound(const DeviceParams& params);
double state_upper_bound(const DeviceParams& params);

struct MemristorState {
  double x = 0.5;
  int polarity = +1;  // terminal orientation; -1 sees the drive reversed
};

/* Instantaneous resistance. Throws std::out_of_range when x is outside
 * the legal state range. */
double memristance(const MemristorState& state, const DeviceParams& params);

/* dx/dt, window already applied. The drive variable is the current for
 * the current-controlled models and the voltage for the
 * voltage-controlled one. */
double state_derivative(const MemristorState& state, double v, double i,
                        const DeviceParams& params);

/* One classical fixed-step RK4 step under a constant drive voltage; the
 * branch current is recomputed from the evolving memristance at every
 * stage. The state is clamped to its legal range afterwards. Throws
 * std::runtime_error when an intermediate value is non-finite. */
MemristorState step_state(const MemristorState& state, double v_drive, double dt,
                          const DeviceParams& params);

struct SimSample {
  double t;
  double v;
  double i;
  double x;
  double memristance;
};

struct SimTrace {
  std::vector<SimSample> samples;
};

inline constexpr double default_time_step = 10e-6;  // s

/* Integrates the state under a piecewise-linear voltage drive, sampling
 * every dt from the drive start to its end. The drive is evaluated at
 * the RK4 stage times, so drives whose breakpoints align with the step
 * grid integrate at full fourth order. */
SimTrace simulate_drive(const DeviceParams& params, double initial_x,
                        const SignalTrace& drive, double dt = default_time_step);

/* Profile parsing: "model = linear|nonlinear|team" selects the model;
 * the remaining keys mirror the parameter structs. Unknown keys throw,
 * except for the tool-level keys the command-line front end shares
 * (programming_amplitude). */
DeviceParams device_from_profile(const ParameterProfile& profile);

/* Built-in named parameter sets: "linear", "nonlinear", "team",
 * "team-exp". The files under profiles/ mirror them. */
DeviceParams builtin_device_profile(const std::string& name);

}  // namespace memnn
