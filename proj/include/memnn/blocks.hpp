#pragma once

#include <optional>
#include <vector>

namespace memnn {

/* Current-mode computational blocks. Values are currents in amperes
 * unless a block is used in a normalized setting. Ideal mode evaluates
 * the design equations; Nonideal mode adds the measured operating
 * limits of the transistor realizations. */
enum class BlockMode { Ideal, Nonideal };

struct BlockNonideality {
  BlockMode mode = BlockMode::Ideal;
  double squarer_min_input = 360e-6;  // below this the squarer output dies to 0
  double divider_max_input = 300e-6;  // above this the divider leaves its operating region
};

inline constexpr double default_reference_current = 250e-6;  // A

/* Kirchhoff node: sum of the plus inputs minus the sum of the minus
 * inputs. */
double summing(const std::vector<double>& i_plus, const std::vector<double>& i_minus);

/* max(0, x), optionally clipped at a non-negative ceiling. */
double relu(double x, std::optional<double> ceiling = std::nullopt);

/* x^2 / (4 * i_ref) for x >= 0. Nonideal: output dies to 0 below
 * squarer_min_input. */
double squarer(double x, double i_ref = default_reference_current,
               const BlockNonideality& nonideality = {});

/* i_ref^2 / (4 * x) for x > 0. Nonideal: throws std::range_error above
 * divider_max_input. */
double divider(double x, double i_ref = default_reference_current,
               const BlockNonideality& nonideality = {});

/* Sum/difference squarer pair: ((i1+i2)^2 - (i1-i2)^2) / (4 * i_ref),
 * i.e. i1*i2/i_ref when ideal. Inputs must be non-negative. */
double multiplier(double i1, double i2, double i_ref = default_reference_current,
                  const BlockNonideality& nonideality = {});

/* x * ratio, ratio > 0. */
double gain_mirror(double x, double ratio);

/* Rational sigmoid m*x / (x^2 + c), the closed form of the tanh stage. */
double tanh_block(double x, double m, double c);

/* Same function composed from squarer, divider, multiplier and
 * gain_mirror (single-quadrant chain with odd extension). In Ideal mode
 * this matches tanh_block to floating-point accuracy. */
double tanh_block_structural(double x, double m, double c,
                             double i_ref = default_reference_current,
                             const BlockNonideality& nonideality = {});

struct TanhCalibration {
  double m = 0.0;
  double c = 0.0;
};

/* Max absolute error of the normalized stage output m*x/(x^2+c)
 * against tanh(x/unit) over |x| <= 2*unit, on a uniform grid. With the
 * conventional scaling m ~ unit, c ~ unit^2 the error is
 * unit-invariant. */
double tanh_fit_max_error(double m, double c, double unit_current, int grid_points = 2001);

/* Picks (m, c) minimizing tanh_fit_max_error by a deterministic coarse
 * grid around the dimensional-analysis seed (3*unit, 3*unit^2) followed
 * by shrinking refinement. */
TanhCalibration calibrate_tanh(double unit_current);

/* Diode-OR stage: max of the inputs, floored at the diode threshold. */
double max_pool_block(const std::vector<double>& v_inputs, double diode_threshold);

}  // namespace memnn
