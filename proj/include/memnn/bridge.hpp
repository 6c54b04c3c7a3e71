#pragma once

#include "memnn/device.hpp"

namespace memnn {

/* Wheatstone-style synapse: two parallel branches of two series
 * memristors each (m1-m2 and m3-m4). The branch partners are mounted
 * anti-serially, so a programming pulse raises one partner's resistance
 * exactly as fast as it lowers the other's and each branch's total
 * resistance stays put. The synaptic weight read out across the branch
 * midpoints is m2/(m1+m2) - m3/(m3+m4). */
struct BridgeSynapse {
  DeviceParams device;  // shared by all four arms
  MemristorState m1{0.5, +1};
  MemristorState m2{0.5, -1};
  MemristorState m3{0.5, +1};
  MemristorState m4{0.5, -1};
  double programming_amplitude = 1.0;  // volts
};

/* All four arms at the state midpoint: weight exactly zero. */
BridgeSynapse make_balanced_bridge(const DeviceParams& device,
                                   double programming_amplitude = 1.0);

/* Largest reachable |weight|: (r_off - r_on)/(r_off + r_on). */
double max_bridge_weight(const DeviceParams& device);

double bridge_weight(const BridgeSynapse& synapse);

/* Signal path: the synapse scales the input voltage by its weight. */
double bridge_apply(const BridgeSynapse& synapse, double v_in);

/* Applies one programming pulse of the given width and signed amplitude
 * across both branches, integrating the four coupled arm states with
 * fixed-step RK4. Positive amplitude moves the weight up. */
void program_bridge(BridgeSynapse& synapse, double pulse_width, double amplitude,
                    double dt = 1e-4);

inline constexpr double bridge_weight_tolerance = 0.01;
inline constexpr int bridge_bisection_limit = 60;

/* Programs the synapse to the target weight with a single pulse whose
 * width is found by bisection (|achieved - target| <=
 * bridge_weight_tolerance). Returns the pulse width in seconds, signed
 * by the drive polarity that was needed (the magnitude of `amplitude`
 * sets the pulse level). Throws std::range_error when the target lies
 * outside the realizable weight range. */
double program_to_weight(BridgeSynapse& synapse, double target_w, double amplitude);

}  // namespace memnn
