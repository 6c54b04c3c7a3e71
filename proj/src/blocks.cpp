#include "memnn/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace memnn {

double summing(const std::vector<double>& i_plus, const std::vector<double>& i_minus) {
  double acc = 0.0;
  for (double v : i_plus) acc += v;
  for (double v : i_minus) acc -= v;
  return acc;
}

double relu(double x, std::optional<double> ceiling) {
  if (ceiling && !(*ceiling >= 0.0))
    throw std::invalid_argument("relu ceiling must be non-negative");
  const double y = x > 0.0 ? x : 0.0;
  return ceiling ? std::min(y, *ceiling) : y;
}

namespace {

void check_i_ref(double i_ref) {
  if (!(i_ref > 0.0)) throw std::invalid_argument("reference current must be positive");
}

}  // namespace

double squarer(double x, double i_ref, const BlockNonideality& nonideality) {
  check_i_ref(i_ref);
  if (x < 0.0) throw std::invalid_argument("squarer input must be non-negative");
  if (nonideality.mode == BlockMode::Nonideal && x < nonideality.squarer_min_input) return 0.0;
  return x * x / (4.0 * i_ref);
}

double divider(double x, double i_ref, const BlockNonideality& nonideality) {
  check_i_ref(i_ref);
  if (!(x > 0.0)) throw std::invalid_argument("divider input must be positive");
  if (nonideality.mode == BlockMode::Nonideal && x > nonideality.divider_max_input)
    throw std::range_error("divider input above its operating region");
  return i_ref * i_ref / (4.0 * x);
}

double multiplier(double i1, double i2, double i_ref, const BlockNonideality& nonideality) {
  check_i_ref(i_ref);
  if (i1 < 0.0 || i2 < 0.0) throw std::invalid_argument("multiplier inputs must be non-negative");
  const double s_sum = squarer(i1 + i2, i_ref, nonideality);
  const double s_diff = squarer(std::abs(i1 - i2), i_ref, nonideality);
  return s_sum - s_diff;
}

double gain_mirror(double x, double ratio) {
  if (!(ratio > 0.0)) throw std::invalid_argument("mirror ratio must be positive");
  return x * ratio;
}

double tanh_block(double x, double m, double c) {
  if (!(m > 0.0) || !(c > 0.0)) throw std::invalid_argument("tanh constants must be positive");
  return m * x / (x * x + c);
}

double tanh_block_structural(double x, double m, double c, double i_ref,
                             const BlockNonideality& nonideality) {
  if (!(m > 0.0) || !(c > 0.0)) throw std::invalid_argument("tanh constants must be positive");
  check_i_ref(i_ref);
  const double mag = std::abs(x);
  // x^2 and the additive constant c, both carried as currents scaled by
  // 1/(4*i_ref); the divider then produces i_ref^3/(x^2+c).
  const double num = squarer(mag, i_ref, nonideality);
  const double den = num + c / (4.0 * i_ref);
  const double inv = divider(den, i_ref, nonideality);
  const double prod = multiplier(mag, inv, i_ref, nonideality);
  const double y = gain_mirror(prod, m / (i_ref * i_ref));
  return x < 0.0 ? -y : y;
}

double tanh_fit_max_error(double m, double c, double unit_current, int grid_points) {
  if (!(unit_current > 0.0)) throw std::invalid_argument("unit current must be positive");
  if (grid_points < 2) throw std::invalid_argument("need at least two grid points");
  // Both curves are odd, so the positive half-range carries the whole error.
  double worst = 0.0;
  const double span = 2.0 * unit_current;
  for (int k = 0; k < grid_points; ++k) {
    const double x = span * k / (grid_points - 1);
    const double err = std::abs(tanh_block(x, m, c) - std::tanh(x / unit_current));
    worst = std::max(worst, err);
  }
  return worst;
}

TanhCalibration calibrate_tanh(double unit_current) {
  if (!(unit_current > 0.0)) throw std::invalid_argument("unit current must be positive");
  // Optimize in normalized units (unit = 1) and scale the result:
  // m scales linearly with the unit, c with its square.
  const auto err_at = [](double m, double c) { return tanh_fit_max_error(m, c, 1.0); };

  double best_m = 3.0, best_c = 3.0;  // dimensional-analysis seed
  double best = err_at(best_m, best_c);
  double center_m = 3.0, center_c = 3.0;
  double step = 0.05;
  const double half_span = 0.6;

  for (int round = 0; round < 4; ++round) {
    const double span = round == 0 ? half_span : 2.0 * step;
    const double fine = round == 0 ? step : step / 5.0;
    const int n = static_cast<int>(std::round(2.0 * span / fine));
    for (int im = 0; im <= n; ++im) {
      const double m = center_m - span + im * fine;
      if (!(m > 0.0)) continue;
      for (int ic = 0; ic <= n; ++ic) {
        const double c = center_c - span + ic * fine;
        if (!(c > 0.0)) continue;
        const double e = err_at(m, c);
        if (e < best) {
          best = e;
          best_m = m;
          best_c = c;
        }
      }
    }
    center_m = best_m;
    center_c = best_c;
    step = fine;
  }
  return {best_m * unit_current, best_c * unit_current * unit_current};
}

double max_pool_block(const std::vector<double>& v_inputs, double diode_threshold) {
  if (v_inputs.empty()) throw std::invalid_argument("max pool needs at least one input");
  if (!(diode_threshold >= 0.0))
    throw std::invalid_argument("diode threshold must be non-negative");
  double peak = diode_threshold;
  for (double v : v_inputs) peak = std::max(peak, v);
  return peak;
}

}  // namespace memnn
