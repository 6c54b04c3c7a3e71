#include "memnn/adaline.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace memnn {

int adaline_eval(const AdalineSpec& spec, int x1, int x2) {
  if ((x1 != 0 && x1 != 1) || (x2 != 0 && x2 != 1))
    throw std::invalid_argument("input bits must be 0 or 1");
  if (!(spec.r1 > 0.0) || !(spec.r2 > 0.0) || !(spec.r0 > 0.0) || !(spec.r_reference > 0.0))
    throw std::invalid_argument("path resistances must be positive");
  if (!(spec.logic_swing > 0.0)) throw std::invalid_argument("logic swing must be positive");

  const double u = 1.0 / spec.r_reference;
  const double s1 = x1 ? spec.logic_swing : -spec.logic_swing;
  const double s2 = x2 ? spec.logic_swing : -spec.logic_swing;
  const double node = s1 * (u - 1.0 / spec.r1) + s2 * (u - 1.0 / spec.r2) +
                      spec.logic_swing * (u - 1.0 / spec.r0);
  return node >= 0.0 ? 1 : 0;
}

int tlu_eval(const std::array<double, 3>& w, int x1, int x2) {
  if ((x1 != 0 && x1 != 1) || (x2 != 0 && x2 != 1))
    throw std::invalid_argument("input bits must be 0 or 1");
  const double s1 = 2.0 * x1 - 1.0;
  const double s2 = 2.0 * x2 - 1.0;
  return w[0] * s1 + w[1] * s2 + w[2] >= 0.0 ? 1 : 0;
}

namespace {

int error_count(const std::array<double, 3>& w, const std::array<int, 4>& table) {
  int errors = 0;
  for (int pattern = 0; pattern < 4; ++pattern) {
    const int x1 = pattern >> 1;
    const int x2 = pattern & 1;
    if (tlu_eval(w, x1, x2) != table[static_cast<std::size_t>(2 * x1 + x2)]) ++errors;
  }
  return errors;
}

}  // namespace

Mr2Result mr2_train(const std::array<double, 3>& initial_weights,
                    const std::array<int, 4>& truth_table, unsigned seed,
                    const Mr2Options& options) {
  for (int bit : truth_table)
    if (bit != 0 && bit != 1) throw std::invalid_argument("truth table entries must be 0 or 1");
  if (options.max_iterations < 1 || !(options.initial_magnitude > 0.0) ||
      !(options.growth_factor > 1.0) || options.stall_threshold < 1)
    throw std::invalid_argument("bad training options");

  std::mt19937 rng(seed);
  const auto unit = [&rng]() {
    // uniform in [-1, 1), fixed layout across platforms
    return 2.0 * (static_cast<double>(rng()) / 4294967296.0) - 1.0;
  };

  Mr2Result result;
  result.weights = initial_weights;
  int best_errors = error_count(result.weights, truth_table);
  double magnitude = options.initial_magnitude;
  int stalled = 0;

  for (int it = 0; it < options.max_iterations; ++it) {
    if (best_errors == 0) {
      result.iterations = it;
      return result;
    }
    std::array<double, 3> trial = result.weights;
    for (double& v : trial) v += magnitude * unit();
    const int trial_errors = error_count(trial, truth_table);
    if (trial_errors < best_errors) {
      result.weights = trial;
      best_errors = trial_errors;
      stalled = 0;
    } else {
      if (++stalled >= options.stall_threshold) {
        magnitude *= options.growth_factor;
        stalled = 0;
      }
    }
    result.error_history.push_back(best_errors);
  }
  if (best_errors == 0) {
    result.iterations = options.max_iterations;
    return result;
  }
  throw std::runtime_error("perturbation training did not reach the truth table");
}

std::pair<double, double> weights_to_resistances(double g_high, double g_low, double r_m_high,
                                                 double r_m_low) {
  if (!(r_m_low > 0.0) || !(r_m_high > r_m_low))
    throw std::invalid_argument("need 0 < r_m_low < r_m_high");
  if (!(g_high > g_low)) throw std::invalid_argument("weight window is degenerate");

  const double spread = g_high * r_m_high - g_low * r_m_low;
  if (!(spread > 0.0)) throw std::range_error("weight window maps to a non-positive resistance");
  const double r_n = (g_high - g_low) * r_m_low * r_m_high / spread;
  const double r_f = r_n * spread / (r_m_high - r_m_low);
  if (!(r_n > 0.0) || !(r_f > 0.0))
    throw std::range_error("weight window maps to a non-positive resistance");
  return {r_n, r_f};
}

}  // namespace memnn
