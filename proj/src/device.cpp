#include "memnn/device.hpp"

#include <cmath>
#include <stdexcept>

namespace memnn {

namespace {

double ipow(double base, int exp) {
  double r = 1.0;
  for (int k = 0; k < exp; ++k) r *= base;
  return r;
}

/* step(s) = 1 for s >= 0, else 0. */
double unit_step(double s) { return s >= 0.0 ? 1.0 : 0.0; }

}  // namespace

double window_value(double x, double drive_sign, const WindowSpec& spec) {
  switch (spec.kind) {
    case WindowKind::None:
      return 1.0;
    case WindowKind::Joglekar:
      return 1.0 - ipow(2.0 * x - 1.0, 2 * spec.p);
    case WindowKind::Biolek:
      // The boundary being suppressed follows the drive direction:
      // positive drive grows x, so the window vanishes at x = 1 only.
      return 1.0 - ipow(x - unit_step(-drive_sign), 2 * spec.p);
    case WindowKind::Prodromakis: {
      const double u = x - 0.5;
      return spec.j * (1.0 - std::pow(u * u + 0.75, spec.p));
    }
    case WindowKind::Piecewise: {
      if (x >= spec.x0 && x <= 1.0 - spec.x0) {
        const double r = (x - 0.5) / spec.a;
        return 1.0 / (1.0 + std::pow(r * r, spec.b));
      }
      return spec.k * x * (1.0 - x);
    }
    case WindowKind::TeamExp: {
      // One-sided exponential shoulder at the boundary the drive is
      // pushing toward; value 1/e at the boundary itself.
      const double offset = drive_sign >= 0.0 ? x - 1.0 : -x;
      return std::exp(-std::exp(offset / spec.w_c));
    }
  }
  throw std::invalid_argument("unknown window kind");
}

void validate(const DeviceParams& params) {
  if (!(params.r_on > 0.0) || !(params.r_off > params.r_on))
    throw std::invalid_argument("need 0 < r_on < r_off");
  const WindowSpec& w = params.window;
  if (w.p < 1) throw std::invalid_argument("window exponent p must be >= 1");
  if (!(w.j > 0.0)) throw std::invalid_argument("window scale j must be positive");
  if (!(w.a > 0.0) || !(w.b > 0.0) || !(w.k > 0.0) || !(w.x0 > 0.0) || !(w.x0 < 0.5))
    throw std::invalid_argument("piecewise window needs a, b, k > 0 and 0 < x0 < 0.5");
  if (!(w.w_c > 0.0)) throw std::invalid_argument("window decay width w_c must be positive");
  switch (params.model) {
    case DeviceModel::LinearDrift:
      if (!(params.linear.d > 0.0) || !(params.linear.mu_v > 0.0))
        throw std::invalid_argument("linear-drift model needs d > 0 and mu_v > 0");
      break;
    case DeviceModel::NonlinearDrift:
      if (params.nonlinear.m < 1 || params.nonlinear.n < 1)
        throw std::invalid_argument("nonlinear-drift exponents must be >= 1");
      break;
    case DeviceModel::Team: {
      const TeamParams& t = params.team;
      if (!(t.i_on < 0.0) || !(t.i_off > 0.0))
        throw std::invalid_argument("need i_on < 0 < i_off");
      if (!(t.x_on < t.x_off)) throw std::invalid_argument("need x_on < x_off");
      if (!(t.k_off > 0.0) || !(t.k_on < 0.0))
        throw std::invalid_argument("need k_on < 0 < k_off");
      if (!(t.alpha_on > 0.0) || !(t.alpha_off > 0.0))
        throw std::invalid_argument("TEAM exponents must be positive");
      if (t.resistance == TeamResistance::Exponential) {
        const double limit = std::log(params.r_off / params.r_on);
        if (!(t.lambda > 0.0) || t.lambda > limit * (1.0 + 1e-9))
          throw std::invalid_argument(
              "exponential-resistance lambda must lie in (0, ln(r_off/r_on)]");
      }
      break;
    }
  }
}

double state_lower_bound(const DeviceParams& params) {
  return params.model == DeviceModel::Team ? params.team.x_on : 0.0;
}

double state_upper_bound(const DeviceParams& params) {
  return params.model == DeviceModel::Team ? params.team.x_off : 1.0;
}

namespace {

void check_state(const MemristorState& state, const DeviceParams& params) {
  if (state.x < state_lower_bound(params) || state.x > state_upper_bound(params))
    throw std::out_of_range("memristor state outside its legal range");
  if (state.polarity != 1 && state.polarity != -1)
    throw std::invalid_argument("polarity must be +1 or -1");
}

double normalized_state(const MemristorState& state, const DeviceParams& params) {
  if (params.model != DeviceModel::Team) return state.x;
  const TeamParams& t = params.team;
  return (state.x - t.x_on) / (t.x_off - t.x_on);
}

}  // namespace

double memristance(const MemristorState& state, const DeviceParams& params) {
  check_state(state, params);
  if (params.model == DeviceModel::Team) {
    const double xn = normalized_state(state, params);
    if (params.team.resistance == TeamResistance::Exponential)
      return params.r_on * std::exp(params.team.lambda * xn);
    return params.r_on + (params.r_off - params.r_on) * xn;
  }
  // Doped fraction x shorts toward r_on; the rest of the film stays r_off.
  return params.r_on * state.x + params.r_off * (1.0 - state.x);
}

double state_derivative(const MemristorState& state, double v, double i,
                        const DeviceParams& params) {
  check_state(state, params);
  // A reversed device sees both drive variables negated.
  const double vd = state.polarity * v;
  const double id = state.polarity * i;
  switch (params.model) {
    case DeviceModel::LinearDrift: {
      const LinearDriftParams& p = params.linear;
      const double rate = p.mu_v * params.r_on / (p.d * p.d) * id;
      return rate * window_value(state.x, id >= 0.0 ? 1.0 : -1.0, params.window);
    }
    case DeviceModel::NonlinearDrift: {
      const NonlinearDriftParams& p = params.nonlinear;
      const double rate = p.alpha * ipow(vd, p.m);
      return rate * window_value(state.x, rate >= 0.0 ? 1.0 : -1.0, params.window);
    }
    case DeviceModel::Team: {
      const TeamParams& t = params.team;
      double rate = 0.0;
      double sign = 1.0;
      if (id > t.i_off) {
        rate = t.k_off * std::pow(id / t.i_off - 1.0, t.alpha_off);
        sign = 1.0;
      } else if (id < t.i_on) {
        rate = t.k_on * std::pow(id / t.i_on - 1.0, t.alpha_on);
        sign = -1.0;
      } else {
        return 0.0;  // between the thresholds the state holds
      }
      const double xn = normalized_state(state, params);
      return rate * window_value(xn, sign, params.window);
    }
  }
  throw std::invalid_argument("unknown device model");
}

namespace {

double clamp_state(double x, const DeviceParams& params) {
  const double lo = state_lower_bound(params);
  const double hi = state_upper_bound(params);
  return x < lo ? lo : (x > hi ? hi : x);
}

/* One RK4 step with per-stage drive voltages (begin, midpoint, end).
 * The branch current at each stage comes from the stage's memristance. */
double rk4_step(double x, int polarity, double v0, double vm, double v1, double dt,
                const DeviceParams& params) {
  const auto f = [&](double xs, double vs) {
    MemristorState s{clamp_state(xs, params), polarity};
    const double i = vs / memristance(s, params);
    return state_derivative(s, vs, i, params);
  };
  const double k1 = f(x, v0);
  const double k2 = f(x + 0.5 * dt * k1, vm);
  const double k3 = f(x + 0.5 * dt * k2, vm);
  const double k4 = f(x + dt * k3, v1);
  const double next = x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!std::isfinite(next)) throw std::runtime_error("state integration diverged");
  return clamp_state(next, params);
}

}  // namespace

MemristorState step_state(const MemristorState& state, double v_drive, double dt,
                          const DeviceParams& params) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  check_state(state, params);
  MemristorState next = state;
  next.x = rk4_step(state.x, state.polarity, v_drive, v_drive, v_drive, dt, params);
  return next;
}

SimTrace simulate_drive(const DeviceParams& params, double initial_x,
                        const SignalTrace& drive, double dt) {
  validate(params);
  validate(drive);
  if (drive.points.size() < 2) throw std::invalid_argument("drive needs at least two breakpoints");
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  if (initial_x < state_lower_bound(params) || initial_x > state_upper_bound(params))
    throw std::out_of_range("initial state outside its legal range");

  const double t0 = drive.points.front().t;
  const double t_end = drive.points.back().t;
  const long n = static_cast<long>(std::floor((t_end - t0) / dt * (1.0 + 1e-12))) + 1;

  SimTrace out;
  out.samples.reserve(static_cast<std::size_t>(n));
  // Rounding in k*dt may push the last grid time a hair past the drive
  // span, so grid times are clamped to the final breakpoint.
  const auto grid_time = [&](long k) { return std::min(t0 + k * dt, t_end); };
  double x = initial_x;
  for (long k = 0; k < n; ++k) {
    const double t = grid_time(k);
    const double v = sample_at(drive, t);
    MemristorState s{x, +1};
    const double m = memristance(s, params);
    out.samples.push_back({t, v, v / m, x, m});
    if (k + 1 < n) {
      const double t_next = grid_time(k + 1);
      const double vm = sample_at(drive, 0.5 * (t + t_next));
      const double v1 = sample_at(drive, t_next);
      x = rk4_step(x, +1, v, vm, v1, t_next - t, params);
    }
  }
  return out;
}

namespace {

WindowKind window_kind_from_token(const std::string& token) {
  if (token == "none") return WindowKind::None;
  if (token == "joglekar") return WindowKind::Joglekar;
  if (token == "biolek") return WindowKind::Biolek;
  if (token == "prodromakis") return WindowKind::Prodromakis;
  if (token == "piecewise") return WindowKind::Piecewise;
  if (token == "team_exp") return WindowKind::TeamExp;
  throw std::invalid_argument("unknown window '" + token + "'");
}

const char* known_keys[] = {
    "model",      "r_on",     "r_off",    "d",          "mu_v",
    "alpha",      "beta",     "gamma",    "chi",        "n",
    "m",          "k_on",     "k_off",    "alpha_on",   "alpha_off",
    "i_on",       "i_off",    "x_on",     "x_off",      "team_resistance",
    "lambda",     "window",   "window_p", "window_j",   "window_a",
    "window_b",   "window_k", "window_x0", "w_c",
    // tool-level keys the CLI reads from the same file
    "programming_amplitude",
};

}  // namespace

DeviceParams device_from_profile(const ParameterProfile& profile) {
  for (const auto& e : profile.entries) {
    bool known = false;
    for (const char* k : known_keys)
      if (e.key == k) {
        known = true;
        break;
      }
    if (!known) throw std::invalid_argument("unknown device parameter '" + e.key + "'");
  }

  DeviceParams p;
  const std::string model = profile.token_or("model", "linear");
  if (model == "linear")
    p.model = DeviceModel::LinearDrift;
  else if (model == "nonlinear")
    p.model = DeviceModel::NonlinearDrift;
  else if (model == "team")
    p.model = DeviceModel::Team;
  else
    throw std::invalid_argument("unknown device model '" + model + "'");

  p.r_on = profile.number_or("r_on", p.r_on);
  p.r_off = profile.number_or("r_off", p.r_off);

  p.linear.d = profile.number_or("d", p.linear.d);
  p.linear.mu_v = profile.number_or("mu_v", p.linear.mu_v);

  p.nonlinear.alpha = profile.number_or("alpha", p.nonlinear.alpha);
  p.nonlinear.beta = profile.number_or("beta", p.nonlinear.beta);
  p.nonlinear.gamma = profile.number_or("gamma", p.nonlinear.gamma);
  p.nonlinear.chi = profile.number_or("chi", p.nonlinear.chi);
  p.nonlinear.n = static_cast<int>(profile.number_or("n", p.nonlinear.n));
  p.nonlinear.m = static_cast<int>(profile.number_or("m", p.nonlinear.m));

  p.team.k_on = profile.number_or("k_on", p.team.k_on);
  p.team.k_off = profile.number_or("k_off", p.team.k_off);
  p.team.alpha_on = profile.number_or("alpha_on", p.team.alpha_on);
  p.team.alpha_off = profile.number_or("alpha_off", p.team.alpha_off);
  p.team.i_on = profile.number_or("i_on", p.team.i_on);
  p.team.i_off = profile.number_or("i_off", p.team.i_off);
  p.team.x_on = profile.number_or("x_on", p.team.x_on);
  p.team.x_off = profile.number_or("x_off", p.team.x_off);
  const std::string variant = profile.token_or("team_resistance", "linear");
  if (variant == "linear")
    p.team.resistance = TeamResistance::Linear;
  else if (variant == "exponential")
    p.team.resistance = TeamResistance::Exponential;
  else
    throw std::invalid_argument("unknown team_resistance '" + variant + "'");
  p.team.lambda = profile.number_or("lambda", std::log(p.r_off / p.r_on));

  if (profile.contains("window")) p.window.kind = window_kind_from_token(profile.token("window"));
  p.window.p = static_cast<int>(profile.number_or("window_p", p.window.p));
  p.window.j = profile.number_or("window_j", p.window.j);
  p.window.a = profile.number_or("window_a", p.window.a);
  p.window.b = profile.number_or("window_b", p.window.b);
  p.window.k = profile.number_or("window_k", p.window.k);
  p.window.x0 = profile.number_or("window_x0", p.window.x0);
  p.window.w_c = profile.number_or("w_c", p.window.w_c);

  validate(p);
  return p;
}

DeviceParams builtin_device_profile(const std::string& name) {
  DeviceParams p;
  if (name == "linear") {
    // defaults already describe the linear-drift device
  } else if (name == "nonlinear") {
    p.model = DeviceModel::NonlinearDrift;
    p.window.kind = WindowKind::Piecewise;
  } else if (name == "team" || name == "team-exp") {
    p.model = DeviceModel::Team;
    p.r_on = 50.0;
    p.r_off = 1000.0;
    p.window.kind = WindowKind::TeamExp;
    p.team.lambda = std::log(p.r_off / p.r_on);
    if (name == "team-exp") p.team.resistance = TeamResistance::Exponential;
  } else {
    throw std::invalid_argument("unknown built-in profile '" + name + "'");
  }
  validate(p);
  return p;
}

}  // namespace memnn
