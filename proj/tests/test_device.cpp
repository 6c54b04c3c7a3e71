#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "memnn/device.hpp"

using namespace memnn;

namespace {

DeviceParams linear_device() { return builtin_device_profile("linear"); }

DeviceParams team_device() { return builtin_device_profile("team"); }

SignalTrace sine_drive(double amplitude, double frequency, int breakpoints_per_cycle,
                       int cycles) {
  SignalTrace drive;
  drive.unit = "V";
  const double period = 1.0 / frequency;
  const int total = breakpoints_per_cycle * cycles;
  for (int k = 0; k <= total; ++k) {
    const double t = k * period / breakpoints_per_cycle;
    drive.points.push_back({t, amplitude * std::sin(2.0 * M_PI * frequency * t)});
  }
  return drive;
}

}  // namespace

TEST_CASE("window shapes at their defining points") {
  WindowSpec joglekar;  // defaults to the parabolic kind
  joglekar.kind = WindowKind::Joglekar;
  joglekar.p = 1;
  CHECK(window_value(0.5, +1.0, joglekar) == 1.0);
  CHECK(window_value(0.0, +1.0, joglekar) == 0.0);
  CHECK(window_value(1.0, +1.0, joglekar) == 0.0);
  CHECK(window_value(0.25, +1.0, joglekar) == 0.75);

  WindowSpec biolek;
  biolek.kind = WindowKind::Biolek;
  biolek.p = 1;
  // The suppressed boundary follows the drive direction.
  CHECK(window_value(1.0, +1.0, biolek) == 0.0);
  CHECK(window_value(1.0, -1.0, biolek) == 1.0);
  CHECK(window_value(0.0, -1.0, biolek) == 0.0);
  CHECK(window_value(0.0, +1.0, biolek) == 1.0);

  WindowSpec prodromakis;
  prodromakis.kind = WindowKind::Prodromakis;
  prodromakis.p = 1;
  prodromakis.j = 1.0;
  CHECK(window_value(0.5, +1.0, prodromakis) == doctest::Approx(0.25).epsilon(1e-15));
  prodromakis.j = 2.0;
  CHECK(window_value(0.5, +1.0, prodromakis) == doctest::Approx(0.5).epsilon(1e-15));

  WindowSpec team_exp;
  team_exp.kind = WindowKind::TeamExp;
  CHECK(window_value(1.0, +1.0, team_exp) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(window_value(0.0, -1.0, team_exp) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(window_value(0.5, +1.0, team_exp) > 0.9999);
  // Only the boundary being pushed toward is suppressed.
  CHECK(window_value(0.999, +1.0, team_exp) < 0.5);
  CHECK(window_value(0.95, +1.0, team_exp) < window_value(0.9, +1.0, team_exp));
  CHECK(window_value(0.95, -1.0, team_exp) > 0.99);
}

TEST_CASE("flat-top window is continuous at its seams") {
  WindowSpec w;
  w.kind = WindowKind::Piecewise;
  const double eps = 1e-12;
  for (double seam : {w.x0, 1.0 - w.x0}) {
    const double inside = window_value(seam, +1.0, w);
    const double below = window_value(seam - eps, +1.0, w);
    const double above = window_value(seam + eps, +1.0, w);
    CHECK(std::abs(inside - below) < 1e-9);
    CHECK(std::abs(inside - above) < 1e-9);
  }
  CHECK(window_value(0.5, +1.0, w) == 1.0);
  CHECK(window_value(0.0, +1.0, w) == 0.0);
  CHECK(window_value(1.0, +1.0, w) == 0.0);
}

TEST_CASE("window symmetry holds for the symmetric kinds only") {
  std::mt19937 rng(31u);
  std::uniform_real_distribution<double> dx(0.0, 1.0);
  WindowSpec joglekar;
  joglekar.kind = WindowKind::Joglekar;
  joglekar.p = 3;
  WindowSpec prodromakis;
  prodromakis.kind = WindowKind::Prodromakis;
  prodromakis.p = 2;
  for (int k = 0; k < 200; ++k) {
    const double x = dx(rng);
    // 1 - x rounds before the polynomial sees it, so equality is only
    // up to that rounding.
    CHECK(window_value(x, +1.0, joglekar) ==
          doctest::Approx(window_value(1.0 - x, +1.0, joglekar)).epsilon(1e-12));
    CHECK(window_value(x, +1.0, prodromakis) ==
          doctest::Approx(window_value(1.0 - x, +1.0, prodromakis)).epsilon(1e-12));
  }
  WindowSpec biolek;
  biolek.kind = WindowKind::Biolek;
  biolek.p = 1;
  CHECK(window_value(0.25, +1.0, biolek) != window_value(0.75, +1.0, biolek));
}

TEST_CASE("memristance endpoints and midpoint") {
  const DeviceParams d = linear_device();
  CHECK(memristance({1.0, +1}, d) == 1000.0);
  CHECK(memristance({0.0, +1}, d) == 81000.0);
  CHECK(memristance({0.5, +1}, d) == 41000.0);
  CHECK(memristance({0.5, -1}, d) == 41000.0);  // orientation is drive-side only
  CHECK_THROWS_AS(memristance({1.5, +1}, d), std::out_of_range);
  CHECK_THROWS_AS(memristance({-0.1, +1}, d), std::out_of_range);
}

TEST_CASE("threshold-model memristance in both variants") {
  DeviceParams d = team_device();
  const double mid = 1.5e-9;
  CHECK(memristance({d.team.x_on, +1}, d) == 50.0);
  CHECK(memristance({d.team.x_off, +1}, d) == 1000.0);
  CHECK(memristance({mid, +1}, d) == doctest::Approx(525.0).epsilon(1e-12));

  DeviceParams e = builtin_device_profile("team-exp");
  CHECK(memristance({e.team.x_on, +1}, e) == 50.0);
  CHECK(memristance({e.team.x_off, +1}, e) == doctest::Approx(1000.0).epsilon(1e-12));
  CHECK(memristance({mid, +1}, e) ==
        doctest::Approx(50.0 * std::exp(e.team.lambda * 0.5)).epsilon(1e-12));
}

TEST_CASE("state motion scales as mobility times current for the drift model") {
  DeviceParams d = linear_device();
  d.window.kind = WindowKind::None;
  const MemristorState s{0.5, +1};
  // 1 mA through a 10 nm film with mu_v = 1e-14 moves the normalized
  // state at 100 per second.
  const double v = 1e-3 * memristance(s, d);
  CHECK(state_derivative(s, v, 1e-3, d) == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(state_derivative(s, -v, -1e-3, d) == doctest::Approx(-100.0).epsilon(1e-12));
}

TEST_CASE("voltage-controlled model follows an odd power of the drive") {
  DeviceParams d = builtin_device_profile("nonlinear");
  d.window.kind = WindowKind::None;
  const MemristorState s{0.5, +1};
  CHECK(state_derivative(s, 0.5, 0.0, d) ==
        doctest::Approx(20.0 * std::pow(0.5, 5)).epsilon(1e-12));
  CHECK(state_derivative(s, -0.5, 0.0, d) ==
        doctest::Approx(-20.0 * std::pow(0.5, 5)).epsilon(1e-12));
}

TEST_CASE("threshold model is dead between its current thresholds") {
  const DeviceParams d = team_device();
  const MemristorState s{1.5e-9, +1};
  CHECK(state_derivative(s, 0.0, 0.0, d) == 0.0);
  CHECK(state_derivative(s, 0.05, 0.05 / 525.0, d) == 0.0);     // ~95 uA < 115 uA
  CHECK(state_derivative(s, -0.05, -0.05 / 525.0, d) == 0.0);
  CHECK(state_derivative(s, 0.1, 0.1 / 525.0, d) > 0.0);        // ~190 uA
  CHECK(state_derivative(s, -0.1, -0.1 / 525.0, d) < 0.0);
}

TEST_CASE("boundary lock: outward drift at a closed boundary is zero") {
  const DeviceParams d = linear_device();
  const MemristorState top{1.0, +1};
  const double v = 1e-3 * memristance(top, d);
  CHECK(state_derivative(top, v, 1e-3, d) == 0.0);
  const MemristorState bottom{0.0, +1};
  CHECK(state_derivative(bottom, -v, -1e-3, d) == 0.0);
}

TEST_CASE("zero drive leaves the state exactly in place") {
  const DeviceParams d = linear_device();
  const MemristorState s{0.37, +1};
  const MemristorState after = step_state(s, 0.0, 1e-3, d);
  CHECK(after.x == s.x);

  const DeviceParams t = team_device();
  const MemristorState ts{1.5e-9, +1};
  // Sub-threshold current for the whole step: no motion at all.
  CHECK(step_state(ts, 0.05, 1e-3, t).x == ts.x);
}

TEST_CASE("integration error falls off as the fourth power of the step") {
  DeviceParams d = linear_device();
  d.window.kind = WindowKind::None;
  SignalTrace ramp;
  ramp.points = {{0.0, 0.0}, {0.2, 0.5}};
  const auto final_x = [&](double dt) {
    return simulate_drive(d, 0.4, ramp, dt).samples.back().x;
  };
  const double reference = final_x(3.125e-5);
  const double e1 = std::abs(final_x(1e-3) - reference);
  const double e2 = std::abs(final_x(5e-4) - reference);
  const double e3 = std::abs(final_x(2.5e-4) - reference);
  CHECK(e2 < e1);
  CHECK(e3 < e2);
  const double order = std::log2(e1 / e3) / 2.0;
  CHECK(order > 3.0);
  CHECK(order < 5.0);
}

TEST_CASE("halving the step barely moves a sine integration") {
  // Modest amplitude: the trajectory stays away from the state bounds,
  // where the window makes the final state exquisitely step-sensitive.
  const DeviceParams d = linear_device();
  const SignalTrace drive = sine_drive(0.3, 1.0, 2000, 1);
  const double coarse = simulate_drive(d, 0.5, drive, 1e-4).samples.back().x;
  const double fine = simulate_drive(d, 0.5, drive, 5e-5).samples.back().x;
  CHECK(std::abs(coarse - fine) / std::abs(fine) < 1e-6);
}

TEST_CASE("constant zero drive gives a flat memristance trace") {
  const DeviceParams d = linear_device();
  SignalTrace drive;
  drive.points = {{0.0, 0.0}, {0.01, 0.0}};
  const SimTrace trace = simulate_drive(d, 0.3, drive, 1e-4);
  REQUIRE(trace.samples.size() > 10);
  for (const SimSample& s : trace.samples) {
    CHECK(s.v == 0.0);
    CHECK(s.i == 0.0);
    CHECK(s.memristance == trace.samples.front().memristance);
  }
}

TEST_CASE("positive pulses walk the memristance toward its low end") {
  const DeviceParams d = linear_device();
  SignalTrace drive;
  // Three 20 ms pulses of 1 V with 5 ms gaps; edges land on the step grid.
  drive.points.push_back({0.0, 0.0});
  for (int k = 0; k < 3; ++k) {
    const double t0 = 5e-3 + k * 25e-3;
    drive.points.push_back({t0, 0.0});
    drive.points.push_back({t0 + 1e-4, 1.0});
    drive.points.push_back({t0 + 20e-3 - 1e-4, 1.0});
    drive.points.push_back({t0 + 20e-3, 0.0});
  }
  drive.points.push_back({80e-3, 0.0});
  const SimTrace trace = simulate_drive(d, 0.1, drive, 1e-4);
  for (std::size_t k = 1; k < trace.samples.size(); ++k)
    CHECK(trace.samples[k].memristance <= trace.samples[k - 1].memristance + 1e-9);
  CHECK(trace.samples.back().memristance < trace.samples.front().memristance - 1000.0);
}

TEST_CASE("trace bookkeeping: ordered time, bounded memristance, confined state") {
  const DeviceParams d = linear_device();
  const SignalTrace drive = sine_drive(2.0, 5.0, 400, 3);
  const SimTrace trace = simulate_drive(d, 0.9, drive, 1e-4);
  for (std::size_t k = 0; k < trace.samples.size(); ++k) {
    const SimSample& s = trace.samples[k];
    if (k) CHECK(s.t > trace.samples[k - 1].t);
    CHECK(s.x >= 0.0);
    CHECK(s.x <= 1.0);
    CHECK(s.memristance >= d.r_on);
    CHECK(s.memristance <= d.r_off);
    CHECK(std::abs(s.i) <= std::abs(s.v) / d.r_on + 1e-18);
  }
}

TEST_CASE("current vanishes exactly where the drive does") {
  const DeviceParams d = linear_device();
  SignalTrace triangle;
  triangle.points = {{0.0, 0.0}, {0.25, 1.0}, {0.5, 0.0}, {0.75, -1.0}, {1.0, 0.0}};
  const SimTrace trace = simulate_drive(d, 0.5, triangle, 1e-3);
  int zeros = 0;
  for (const SimSample& s : trace.samples) {
    if (s.v == 0.0) {
      CHECK(s.i == 0.0);
      ++zeros;
    }
  }
  CHECK(zeros >= 3);
}

TEST_CASE("empty drive is rejected") {
  CHECK_THROWS_AS(simulate_drive(linear_device(), 0.5, SignalTrace{}, 1e-4),
                  std::invalid_argument);
}

TEST_CASE("device validation rejects inconsistent parameter sets") {
  DeviceParams upside_down = linear_device();
  upside_down.r_off = 500.0;
  CHECK_THROWS_AS(validate(upside_down), std::invalid_argument);

  DeviceParams flat = linear_device();
  flat.linear.d = 0.0;
  CHECK_THROWS_AS(validate(flat), std::invalid_argument);

  DeviceParams thresholds = team_device();
  thresholds.team.i_on = 1e-6;  // must be negative
  CHECK_THROWS_AS(validate(thresholds), std::invalid_argument);

  DeviceParams bounds = team_device();
  bounds.team.x_off = bounds.team.x_on;
  CHECK_THROWS_AS(validate(bounds), std::invalid_argument);

  DeviceParams hot = builtin_device_profile("team-exp");
  hot.team.lambda = std::log(hot.r_off / hot.r_on) + 0.5;  // would exceed r_off
  CHECK_THROWS_AS(validate(hot), std::invalid_argument);

  DeviceParams window = linear_device();
  window.window.p = 0;
  CHECK_THROWS_AS(validate(window), std::invalid_argument);
}

TEST_CASE("state range bounds follow the model") {
  const DeviceParams lin = linear_device();
  CHECK(state_lower_bound(lin) == 0.0);
  CHECK(state_upper_bound(lin) == 1.0);
  const DeviceParams t = team_device();
  CHECK(state_lower_bound(t) == t.team.x_on);
  CHECK(state_upper_bound(t) == t.team.x_off);
}
