#include "memnn/vision.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "memnn/blocks.hpp"
#include "memnn/bridge.hpp"

namespace memnn {

KernelSpec named_kernel(const std::string& name) {
  KernelSpec k;
  if (name == "blur") {
    k.weights.setConstant(0.1);
  } else if (name == "edge") {
    k.weights.setConstant(-0.1);
    k.weights(1, 1) = 0.8;
  } else if (name == "identity") {
    k.weights(1, 1) = 1.0;
  } else {
    throw std::invalid_argument("unknown kernel name: " + name);
  }
  return k;
}

TapSignals image_to_signals(const ImageGrid& img, const PixelVoltageMap& map,
                            double dt_pixel) {
  if (img.width < 3 || img.height < 3)
    throw std::invalid_argument("image must be at least 3x3 for a 3x3 kernel");
  if (img.count() != static_cast<int>(img.pixels.size()))
    throw std::invalid_argument("image pixel buffer does not match its dimensions");
  if (!(map.v_full > 0.0)) throw std::invalid_argument("v_full must be positive");
  if (!(dt_pixel > 0.0)) throw std::invalid_argument("dt_pixel must be positive");

  TapSignals out;
  out.out_width = img.width - 2;
  out.out_height = img.height - 2;
  const std::size_t n =
      static_cast<std::size_t>(out.out_width) * static_cast<std::size_t>(out.out_height);
  for (auto& trace : out.taps) {
    trace.unit = "V";
    trace.points.reserve(n);
  }
  std::size_t k = 0;
  for (int r = 0; r < out.out_height; ++r)
    for (int c = 0; c < out.out_width; ++c, ++k) {
      const double t = static_cast<double>(k) * dt_pixel;
      for (int dr = 0; dr < 3; ++dr)
        for (int dc = 0; dc < 3; ++dc)
          out.taps[static_cast<std::size_t>(3 * dr + dc)].points.push_back(
              {t, img.at(r + dr, c + dc) / 255.0 * map.v_full});
    }
  return out;
}

SignalTrace conv_forward(const KernelSpec& kernel, const TapSignals& signals,
                         double r_load, const DeviceParams& device) {
  if (!(r_load > 0.0)) throw std::invalid_argument("load resistance must be positive");
  if (!kernel.weights.allFinite())
    throw std::invalid_argument("kernel weights must be finite");
  const std::size_t n = signals.taps[0].points.size();
  for (const auto& trace : signals.taps) {
    if (trace.points.size() != n)
      throw std::invalid_argument("tap traces must share their breakpoints");
    for (std::size_t i = 0; i < n; ++i)
      if (trace.points[i].t != signals.taps[0].points[i].t)
        throw std::invalid_argument("tap traces must share their breakpoints");
  }
  if (n == 0) throw std::invalid_argument("tap traces are empty");

  std::array<double, 9> taps{};
  for (int dr = 0; dr < 3; ++dr)
    for (int dc = 0; dc < 3; ++dc)
      taps[static_cast<std::size_t>(3 * dr + dc)] = kernel.weights(dr, dc);
  if (kernel.realization == KernelRealization::BridgeQuantized) {
    validate(device);
    for (double& w : taps) {
      BridgeSynapse synapse = make_balanced_bridge(device);
      program_to_weight(synapse, w, synapse.programming_amplitude);
      w = bridge_weight(synapse);
    }
  }

  SignalTrace out;
  out.unit = "V";
  out.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t tap = 0; tap < 9; ++tap)
      acc += taps[tap] * signals.taps[tap].points[i].value;
    out.points.push_back({signals.taps[0].points[i].t, acc});
  }
  return out;
}

ImageGrid signals_to_image(const SignalTrace& trace, int out_width, int out_height) {
  if (out_width < 1 || out_height < 1)
    throw std::invalid_argument("output dimensions must be positive");
  validate(trace);
  if (trace.points.size() !=
      static_cast<std::size_t>(out_width) * static_cast<std::size_t>(out_height))
    throw std::invalid_argument("trace length does not match the output dimensions");

  double lo = trace.points[0].value;
  double hi = lo;
  for (const auto& p : trace.points) {
    lo = std::min(lo, p.value);
    hi = std::max(hi, p.value);
  }

  ImageGrid img = make_image(out_width, out_height);
  if (hi == lo) return img;  // degenerate span: all zeros by convention

  const double scale = 255.0 / (hi - lo);
  for (std::size_t i = 0; i < trace.points.size(); ++i)
    img.pixels[i] =
        static_cast<std::uint8_t>(std::floor((trace.points[i].value - lo) * scale + 0.5));
  return img;
}

ImageGrid run_kernel(const ImageGrid& img, const KernelSpec& kernel,
                     const PixelVoltageMap& map, const DeviceParams& device) {
  const TapSignals taps = image_to_signals(img, map);
  const SignalTrace trace = conv_forward(kernel, taps, 1000.0, device);
  return signals_to_image(trace, taps.out_width, taps.out_height);
}

namespace {

std::uint8_t round_to_gray(double v) {
  const double r = std::floor(v + 0.5);
  return static_cast<std::uint8_t>(std::clamp(r, 0.0, 255.0));
}

}  // namespace

ImageGrid pool_image(const ImageGrid& img, int window, int stride, PoolKind kind,
                     std::optional<double> diode_threshold, const PixelVoltageMap& map) {
  if (window < 1 || stride < 1)
    throw std::invalid_argument("window and stride must be at least 1");
  if (window > img.width || window > img.height)
    throw std::invalid_argument("pooling window larger than the image");
  if (diode_threshold && kind != PoolKind::Max)
    throw std::invalid_argument("diode threshold applies to max pooling only");
  if (!(map.v_full > 0.0)) throw std::invalid_argument("v_full must be positive");

  const int out_w = (img.width - window) / stride + 1;
  const int out_h = (img.height - window) / stride + 1;

  if (kind == PoolKind::Avg && window == 3) {
    // Hardware path: uniform kernel sweep, then subsample at the stride.
    KernelSpec uniform;
    uniform.weights.setConstant(1.0 / 9.0);
    const ImageGrid swept = run_kernel(img, uniform, map);
    ImageGrid out = make_image(out_w, out_h);
    for (int r = 0; r < out_h; ++r)
      for (int c = 0; c < out_w; ++c)
        out.at(r, c) = swept.at(r * stride, c * stride);
    return out;
  }

  ImageGrid out = make_image(out_w, out_h);
  for (int r = 0; r < out_h; ++r)
    for (int c = 0; c < out_w; ++c) {
      if (kind == PoolKind::Avg) {
        double sum = 0.0;
        for (int dr = 0; dr < window; ++dr)
          for (int dc = 0; dc < window; ++dc)
            sum += img.at(r * stride + dr, c * stride + dc);
        out.at(r, c) = round_to_gray(sum / (static_cast<double>(window) * window));
      } else if (diode_threshold) {
        std::vector<double> volts;
        volts.reserve(static_cast<std::size_t>(window) * static_cast<std::size_t>(window));
        for (int dr = 0; dr < window; ++dr)
          for (int dc = 0; dc < window; ++dc)
            volts.push_back(img.at(r * stride + dr, c * stride + dc) / 255.0 * map.v_full);
        const double v = max_pool_block(volts, *diode_threshold);
        out.at(r, c) = round_to_gray(v / map.v_full * 255.0);
      } else {
        std::uint8_t best = 0;
        for (int dr = 0; dr < window; ++dr)
          for (int dc = 0; dc < window; ++dc)
            best = std::max(best, img.at(r * stride + dr, c * stride + dc));
        out.at(r, c) = best;
      }
    }
  return out;
}

}  // namespace memnn
