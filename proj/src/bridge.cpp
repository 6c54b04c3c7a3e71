#include "memnn/bridge.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace memnn {

BridgeSynapse make_balanced_bridge(const DeviceParams& device, double programming_amplitude) {
  validate(device);
  if (device.model == DeviceModel::Team)
    throw std::invalid_argument("bridge arms use the normalized-state models");
  if (!(programming_amplitude > 0.0))
    throw std::invalid_argument("programming amplitude must be positive");
  BridgeSynapse s;
  s.device = device;
  s.programming_amplitude = programming_amplitude;
  return s;
}

double max_bridge_weight(const DeviceParams& device) {
  return (device.r_off - device.r_on) / (device.r_off + device.r_on);
}

double bridge_weight(const BridgeSynapse& s) {
  const double m1 = memristance(s.m1, s.device);
  const double m2 = memristance(s.m2, s.device);
  const double m3 = memristance(s.m3, s.device);
  const double m4 = memristance(s.m4, s.device);
  return m2 / (m1 + m2) - m3 / (m3 + m4);
}

double bridge_apply(const BridgeSynapse& s, double v_in) { return bridge_weight(s) * v_in; }

namespace {

struct ArmStates {
  std::array<double, 4> x;
};

/* Derivatives of the four arm states under a pulse voltage. Partners
 * within a branch share the branch current; their opposite mounting
 * (polarity) makes their states move in opposite directions. */
std::array<double, 4> arm_derivatives(const BridgeSynapse& s, const ArmStates& st,
                                      double amplitude) {
  const MemristorState a1{st.x[0], s.m1.polarity};
  const MemristorState a2{st.x[1], s.m2.polarity};
  const MemristorState a3{st.x[2], s.m3.polarity};
  const MemristorState a4{st.x[3], s.m4.polarity};
  const double r1 = memristance(a1, s.device);
  const double r2 = memristance(a2, s.device);
  const double r3 = memristance(a3, s.device);
  const double r4 = memristance(a4, s.device);
  const double i_a = amplitude / (r1 + r2);
  const double i_b = amplitude / (r3 + r4);
  return {
      state_derivative(a1, i_a * r1, i_a, s.device),
      state_derivative(a2, i_a * r2, i_a, s.device),
      state_derivative(a3, i_b * r3, i_b, s.device),
      state_derivative(a4, i_b * r4, i_b, s.device),
  };
}

ArmStates clamped(const ArmStates& st, const DeviceParams& params) {
  ArmStates out = st;
  const double lo = state_lower_bound(params);
  const double hi = state_upper_bound(params);
  for (double& x : out.x) x = x < lo ? lo : (x > hi ? hi : x);
  return out;
}

}  // namespace

void program_bridge(BridgeSynapse& s, double pulse_width, double amplitude, double dt) {
  if (pulse_width < 0.0) throw std::invalid_argument("pulse width must be non-negative");
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  if (pulse_width == 0.0) return;

  const long n_steps = std::max(1L, static_cast<long>(std::llround(pulse_width / dt)));
  const double h = pulse_width / static_cast<double>(n_steps);

  ArmStates st{{s.m1.x, s.m2.x, s.m3.x, s.m4.x}};
  for (long step = 0; step < n_steps; ++step) {
    const auto k1 = arm_derivatives(s, st, amplitude);
    ArmStates p2, p3, p4;
    for (int j = 0; j < 4; ++j) p2.x[j] = st.x[j] + 0.5 * h * k1[j];
    const auto k2 = arm_derivatives(s, clamped(p2, s.device), amplitude);
    for (int j = 0; j < 4; ++j) p3.x[j] = st.x[j] + 0.5 * h * k2[j];
    const auto k3 = arm_derivatives(s, clamped(p3, s.device), amplitude);
    for (int j = 0; j < 4; ++j) p4.x[j] = st.x[j] + h * k3[j];
    const auto k4 = arm_derivatives(s, clamped(p4, s.device), amplitude);
    for (int j = 0; j < 4; ++j) {
      st.x[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
      if (!std::isfinite(st.x[j])) throw std::runtime_error("bridge integration diverged");
    }
    st = clamped(st, s.device);
  }
  s.m1.x = st.x[0];
  s.m2.x = st.x[1];
  s.m3.x = st.x[2];
  s.m4.x = st.x[3];
}

namespace {

/* Probe step: shrinks with the width so short pulses stay accurate and
 * long ones stay bounded in cost. */
double probe_dt(double width) { return std::min(1e-4, std::max(width / 16384.0, 1e-9)); }

/* Weight after one pulse, leaving the synapse untouched. */
double weight_after(const BridgeSynapse& s, double width, double amplitude) {
  BridgeSynapse copy = s;
  program_bridge(copy, width, amplitude, probe_dt(width));
  return bridge_weight(copy);
}

}  // namespace

double program_to_weight(BridgeSynapse& s, double target_w, double amplitude) {
  if (!(std::abs(amplitude) > 0.0)) throw std::invalid_argument("amplitude must be non-zero");
  const double w_max = max_bridge_weight(s.device);
  if (std::abs(target_w) > w_max + 1e-12)
    throw std::range_error("target weight outside the realizable range");

  const double w0 = bridge_weight(s);
  if (std::abs(target_w - w0) <= 1e-12) return 0.0;

  const double direction = target_w > w0 ? 1.0 : -1.0;
  const double level = direction * std::abs(amplitude);

  // Bracket: grow the width until the weight passes the target (the
  // width-to-weight map is monotone for a fixed drive polarity).
  double hi = 16e-3;
  double w_hi = weight_after(s, hi, level);
  const double max_width = 4096.0;
  while (direction * (w_hi - target_w) < 0.0 && hi < max_width) {
    hi *= 2.0;
    w_hi = weight_after(s, hi, level);
  }

  // Bisect down to the width resolution. The tolerance is a guarantee,
  // not the stopping point: quantized weights land as close to the
  // request as the integrator resolves, so downstream quantization
  // error stays far below the tolerance.
  double lo = 0.0;
  double width = hi;
  double w_width = w_hi;
  for (int it = 0; it < bridge_bisection_limit; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double w_mid = weight_after(s, mid, level);
    if (std::abs(w_mid - target_w) < std::abs(w_width - target_w)) {
      width = mid;
      w_width = w_mid;
    }
    if (direction * (w_mid - target_w) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  if (std::abs(w_width - target_w) > bridge_weight_tolerance)
    throw std::runtime_error("bridge programming did not converge to the target weight");

  program_bridge(s, width, level, probe_dt(width));
  return direction * width;
}

}  // namespace memnn
