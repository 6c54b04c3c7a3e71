#pragma once

#include <array>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "memnn/device.hpp"
#include "memnn/image.hpp"
#include "memnn/signal.hpp"

namespace memnn {

enum class KernelRealization { Ideal, BridgeQuantized };

/* 3x3 convolution weights. In the BridgeQuantized realization every tap
 * must fit the synapse weight range of the device in use. */
struct KernelSpec {
  Eigen::Matrix3d weights = Eigen::Matrix3d::Zero();
  KernelRealization realization = KernelRealization::Ideal;
};

/* "blur" (all taps 0.1), "edge" (-0.1 ring around 0.8), "identity". */
KernelSpec named_kernel(const std::string& name);

/* Linear pixel-to-voltage mapping: value 255 drives v_full volts. */
struct PixelVoltageMap {
  double v_full = 1.5;
};

/* Trace spacing between consecutive sliding-window positions. */
inline constexpr double default_pixel_interval = 1e-3;

/* One voltage trace per kernel tap; tap i covers window offset
 * (i / 3, i % 3). Breakpoints follow output positions row-major. */
struct TapSignals {
  std::array<SignalTrace, 9> taps;
  int out_width = 0;
  int out_height = 0;
};

/* Valid 3x3 sliding-window extraction; output is (H-2) x (W-2). */
TapSignals image_to_signals(const ImageGrid& img, const PixelVoltageMap& map = {},
                            double dt_pixel = default_pixel_interval);

/* Weighted sum of the nine taps at each breakpoint. The load resistor
 * cancels against the summing transconductance, so values stay
 * volt-equivalent. BridgeQuantized realization first replaces each tap
 * weight with the value a freshly programmed synapse settles at. */
SignalTrace conv_forward(const KernelSpec& kernel, const TapSignals& signals,
                         double r_load = 1000.0, const DeviceParams& device = {});

/* Min-max normalization onto 0..255 with round-half-up, reshaped
 * row-major. A constant trace maps to an all-zero image. */
ImageGrid signals_to_image(const SignalTrace& trace, int out_width, int out_height);

/* image_to_signals -> conv_forward -> signals_to_image. */
ImageGrid run_kernel(const ImageGrid& img, const KernelSpec& kernel,
                     const PixelVoltageMap& map = {}, const DeviceParams& device = {});

enum class PoolKind { Max, Avg };

/* Max: per-window maximum; a diode threshold (volts) clips the result
 * from below after pixels pass through `map`. Avg with window 3 runs
 * the uniform-1/9 kernel pipeline and subsamples it, sharing that
 * pipeline's normalization; other window sizes take the plain rounded
 * mean. Output dims are floor((dim - window)/stride) + 1. */
ImageGrid pool_image(const ImageGrid& img, int window, int stride, PoolKind kind,
                     std::optional<double> diode_threshold = std::nullopt,
                     const PixelVoltageMap& map = {});

}  // namespace memnn
