#pragma once

#include <array>
#include <utility>
#include <vector>

namespace memnn {

/* Threshold logic unit realized around an inverting summing node held
 * at a virtual ground. Each input path contributes conductance 1/r
 * offset against a shared reference path, so its effective weight is
 * proportional to (1/r_reference - 1/r); paths with r above the
 * reference resistance carry positive weight, below it negative. Logic
 * levels sit logic_swing volts above (bit 1) and below (bit 0) the
 * virtual ground, the bias path input is tied to logic high, and the
 * comparator hard-limits at the virtual ground. */
struct AdalineSpec {
  double r1 = 0.0;  // first input path, ohms
  double r2 = 0.0;  // second input path, ohms
  double r0 = 0.0;  // bias path, ohms
  double r_reference = 2000.0;
  double virtual_ground = 2.5;  // volts
  double logic_swing = 0.1;     // volts
};

/* Evaluates the gate for input bits in {0, 1}; returns the output bit. */
int adaline_eval(const AdalineSpec& spec, int x1, int x2);

/* Sign model the trainer works in: y = [w1*s1 + w2*s2 + w3 >= 0] with
 * s = 2*bit - 1. */
int tlu_eval(const std::array<double, 3>& weights, int x1, int x2);

struct Mr2Options {
  int max_iterations = 1000;
  double initial_magnitude = 0.1;
  double growth_factor = 1.5;
  int stall_threshold = 50;  // stalled trials before the magnitude grows
};

struct Mr2Result {
  std::array<double, 3> weights{};
  int iterations = 0;
  std::vector<int> error_history;  // misclassified count after each trial; never increases
};

/* Minimum-disturbance trial-and-revert search: a random perturbation of
 * the node weights is kept only when it strictly lowers the number of
 * misclassified patterns. truth_table holds the wanted outputs for
 * inputs (0,0), (0,1), (1,0), (1,1). Throws convergence failure
 * (std::runtime_error) when the table is not reached within
 * max_iterations trials. */
Mr2Result mr2_train(const std::array<double, 3>& initial_weights,
                    const std::array<int, 4>& truth_table, unsigned seed,
                    const Mr2Options& options = {});

/* Maps a trained weight window [g_low, g_high] onto a memristance
 * window [r_m_low, r_m_high] through the realization
 * w(M) = r_f * (1/r_n - 1/M), returning (r_n, r_f). Throws
 * std::invalid_argument on a degenerate window and std::range_error
 * when a resistance comes out non-positive. */
std::pair<double, double> weights_to_resistances(double g_high, double g_low,
                                                 double r_m_high, double r_m_low);

}  // namespace memnn
