#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "memnn/vision.hpp"

using namespace memnn;

namespace {

ImageGrid random_image(std::mt19937& rng, int w, int h) {
  ImageGrid img = make_image(w, h);
  for (auto& p : img.pixels) p = std::uint8_t(rng() & 0xff);
  return img;
}

// Independent software path: direct sliding-window dot product in pixel
// space followed by the same min-max byte mapping.
ImageGrid conv_oracle(const ImageGrid& img, const Eigen::Matrix3d& w, double v_full) {
  const int out_w = img.width - 2;
  const int out_h = img.height - 2;
  std::vector<double> values;
  values.reserve(std::size_t(out_w) * std::size_t(out_h));
  for (int r = 0; r < out_h; ++r)
    for (int c = 0; c < out_w; ++c) {
      double acc = 0.0;
      for (int dr = 0; dr < 3; ++dr)
        for (int dc = 0; dc < 3; ++dc)
          acc += w(dr, dc) * (img.at(r + dr, c + dc) / 255.0 * v_full);
      values.push_back(acc);
    }
  double lo = values[0], hi = values[0];
  for (double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  ImageGrid out = make_image(out_w, out_h);
  if (hi > lo) {
    const double scale = 255.0 / (hi - lo);
    for (std::size_t k = 0; k < values.size(); ++k)
      out.pixels[k] = std::uint8_t(std::floor((values[k] - lo) * scale + 0.5));
  }
  return out;
}

}  // namespace

TEST_CASE("named kernels carry their published taps") {
  const KernelSpec blur = named_kernel("blur");
  CHECK(blur.weights.minCoeff() == 0.1);
  CHECK(blur.weights.maxCoeff() == 0.1);
  const KernelSpec edge = named_kernel("edge");
  CHECK(edge.weights(1, 1) == 0.8);
  CHECK(edge.weights(0, 0) == -0.1);
  CHECK(edge.weights.sum() == doctest::Approx(0.0).epsilon(1e-12));
  const KernelSpec identity = named_kernel("identity");
  CHECK(identity.weights(1, 1) == 1.0);
  CHECK(identity.weights.cwiseAbs().sum() == 1.0);
  CHECK_THROWS_AS(named_kernel("sharpen"), std::invalid_argument);
}

TEST_CASE("a 3x3 image yields one breakpoint per tap") {
  ImageGrid img = make_image(3, 3);
  for (int k = 0; k < 9; ++k) img.pixels[std::size_t(k)] = std::uint8_t(k * 20);
  const TapSignals sig = image_to_signals(img);
  CHECK(sig.out_width == 1);
  CHECK(sig.out_height == 1);
  for (int tap = 0; tap < 9; ++tap) {
    REQUIRE(sig.taps[std::size_t(tap)].points.size() == 1);
    const double expected = img.pixels[std::size_t(tap)] / 255.0 * 1.5;
    CHECK(sig.taps[std::size_t(tap)].points[0].value == expected);
  }
}

TEST_CASE("constant white maps every tap to the full-scale voltage") {
  const ImageGrid img = make_image(5, 4, 255);
  const TapSignals sig = image_to_signals(img);
  CHECK(sig.out_width == 3);
  CHECK(sig.out_height == 2);
  for (const SignalTrace& tap : sig.taps) {
    REQUIRE(tap.points.size() == 6);
    for (const Breakpoint& bp : tap.points) CHECK(bp.value == 1.5);
  }
}

TEST_CASE("tap traces follow a brute-force window extraction") {
  std::mt19937 rng(83u);
  const ImageGrid img = random_image(rng, 4, 4);
  const double dt = 1e-3;
  const TapSignals sig = image_to_signals(img, {}, dt);
  REQUIRE(sig.out_width == 2);
  REQUIRE(sig.out_height == 2);
  for (int tap = 0; tap < 9; ++tap) {
    const int dr = tap / 3;
    const int dc = tap % 3;
    int position = 0;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c, ++position) {
        const Breakpoint& bp = sig.taps[std::size_t(tap)].points[std::size_t(position)];
        CHECK(bp.t == position * dt);
        CHECK(bp.value == img.at(r + dr, c + dc) / 255.0 * 1.5);
      }
  }
}

TEST_CASE("undersized images are rejected") {
  CHECK_THROWS_AS(image_to_signals(make_image(2, 5)), std::invalid_argument);
  CHECK_THROWS_AS(image_to_signals(make_image(5, 2)), std::invalid_argument);
  CHECK_THROWS_AS(run_kernel(make_image(2, 2), named_kernel("blur")), std::invalid_argument);
}

TEST_CASE("an all-zero kernel gives an identically zero trace") {
  std::mt19937 rng(89u);
  const TapSignals sig = image_to_signals(random_image(rng, 6, 6));
  KernelSpec zero;
  const SignalTrace out = conv_forward(zero, sig);
  for (const Breakpoint& bp : out.points) CHECK(bp.value == 0.0);
}

TEST_CASE("uniform taps on a constant input sum to nine tenths") {
  const ImageGrid img = make_image(6, 6, 255);
  const TapSignals sig = image_to_signals(img);
  const SignalTrace out = conv_forward(named_kernel("blur"), sig);
  for (const Breakpoint& bp : out.points)
    CHECK(bp.value == doctest::Approx(0.9 * 1.5).epsilon(1e-12));
}

TEST_CASE("the summed trace equals a per-window dot product") {
  std::mt19937 rng(97u);
  const ImageGrid img = random_image(rng, 8, 8);
  const TapSignals sig = image_to_signals(img);
  const KernelSpec edge = named_kernel("edge");
  const SignalTrace out = conv_forward(edge, sig);
  REQUIRE(out.points.size() == 36);
  int position = 0;
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c, ++position) {
      double acc = 0.0;
      for (int dr = 0; dr < 3; ++dr)
        for (int dc = 0; dc < 3; ++dc)
          acc += edge.weights(dr, dc) * (img.at(r + dr, c + dc) / 255.0 * 1.5);
      CHECK(out.points[std::size_t(position)].value ==
            doctest::Approx(acc).epsilon(1e-12));
    }
}

TEST_CASE("summed trace is linear in the kernel") {
  std::mt19937 rng(101u);
  const TapSignals sig = image_to_signals(random_image(rng, 6, 5));
  KernelSpec a = named_kernel("edge");
  KernelSpec b = named_kernel("blur");
  KernelSpec scaled;
  scaled.weights = 3.0 * a.weights;
  KernelSpec summed;
  summed.weights = a.weights + b.weights;
  const SignalTrace ta = conv_forward(a, sig);
  const SignalTrace tb = conv_forward(b, sig);
  const SignalTrace ts = conv_forward(scaled, sig);
  const SignalTrace tsum = conv_forward(summed, sig);
  for (std::size_t k = 0; k < ta.points.size(); ++k) {
    CHECK(ts.points[k].value == doctest::Approx(3.0 * ta.points[k].value).epsilon(1e-12));
    CHECK(tsum.points[k].value ==
          doctest::Approx(ta.points[k].value + tb.points[k].value).epsilon(1e-12));
  }
}

TEST_CASE("taps of different shapes are rejected") {
  std::mt19937 rng(103u);
  TapSignals sig = image_to_signals(random_image(rng, 5, 5));
  sig.taps[4].points.pop_back();
  CHECK_THROWS_AS(conv_forward(named_kernel("blur"), sig), std::invalid_argument);
  TapSignals shifted = image_to_signals(random_image(rng, 5, 5));
  shifted.taps[2].points[1].t += 1e-7;
  CHECK_THROWS_AS(conv_forward(named_kernel("blur"), shifted), std::invalid_argument);
  CHECK_THROWS_AS(conv_forward(named_kernel("blur"), image_to_signals(random_image(rng, 5, 5)),
                               0.0),
                  std::invalid_argument);
}

TEST_CASE("byte mapping normalizes, rounds half up and reshapes") {
  SignalTrace trace;
  trace.unit = "V";
  trace.points = {{0.0, 0.0}, {1e-3, 0.75}, {2e-3, 1.5}};
  const ImageGrid img = signals_to_image(trace, 3, 1);
  CHECK(img.at(0, 0) == 0);
  CHECK(img.at(0, 1) == 128);  // exact half rounds away from zero
  CHECK(img.at(0, 2) == 255);

  SignalTrace affine;
  affine.points = {{0.0, 1.0}, {1e-3, 2.5}, {2e-3, 4.0}};  // 2*x + 1
  const ImageGrid same = signals_to_image(affine, 3, 1);
  CHECK(same.pixels == img.pixels);

  SignalTrace flat;
  flat.points = {{0.0, 0.4}, {1e-3, 0.4}};
  const ImageGrid zeros = signals_to_image(flat, 2, 1);
  CHECK(zeros.pixels == std::vector<std::uint8_t>{0, 0});

  CHECK_THROWS_AS(signals_to_image(trace, 2, 2), std::invalid_argument);
}

TEST_CASE("identity kernel reproduces the interior crop") {
  // Interior spans the full 0..255 range, so min-max rescaling is the
  // identity on the cropped bytes.
  ImageGrid img = make_image(6, 6);
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) img.at(r, c) = std::uint8_t((r * 6 + c) * 255 / 35);
  img.at(1, 1) = 0;
  img.at(4, 4) = 255;
  const ImageGrid out = run_kernel(img, named_kernel("identity"));
  REQUIRE(out.width == 4);
  REQUIRE(out.height == 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) CHECK(out.at(r, c) == img.at(r + 1, c + 1));
}

TEST_CASE("edge response of a flat image degenerates to black") {
  const ImageGrid img = make_image(8, 5, 77);
  const ImageGrid out = run_kernel(img, named_kernel("edge"));
  for (auto p : out.pixels) CHECK(p == 0);
}

TEST_CASE("ideal pipeline equals the software convolution pipeline") {
  std::mt19937 rng(107u);
  for (const char* name : {"blur", "edge", "identity"}) {
    CAPTURE(name);
    const ImageGrid img = random_image(rng, 12, 9);
    const KernelSpec kernel = named_kernel(name);
    const ImageGrid hardware = run_kernel(img, kernel);
    const ImageGrid software = conv_oracle(img, kernel.weights, 1.5);
    REQUIRE(hardware.width == software.width);
    REQUIRE(hardware.height == software.height);
    CHECK(hardware.pixels == software.pixels);
  }
}

TEST_CASE("synapse-realized taps stay within a gray level of ideal") {
  std::mt19937 rng(109u);
  const ImageGrid img = random_image(rng, 8, 8);
  KernelSpec bridge = named_kernel("blur");
  bridge.realization = KernelRealization::BridgeQuantized;
  const ImageGrid quantized = run_kernel(img, bridge, {}, builtin_device_profile("linear"));
  const ImageGrid ideal = run_kernel(img, named_kernel("blur"));
  REQUIRE(quantized.pixels.size() == ideal.pixels.size());
  for (std::size_t k = 0; k < ideal.pixels.size(); ++k)
    CHECK(std::abs(int(quantized.pixels[k]) - int(ideal.pixels[k])) <= 1);
}

TEST_CASE("a synapse-realized kernel must fit the weight range") {
  KernelSpec big = named_kernel("identity");  // center tap 1.0 > 80/82
  big.realization = KernelRealization::BridgeQuantized;
  std::mt19937 rng(113u);
  const ImageGrid img = random_image(rng, 5, 5);
  CHECK_THROWS_AS(run_kernel(img, big, {}, builtin_device_profile("linear")),
                  std::range_error);
}

TEST_CASE("max pooling picks the window maximum") {
  ImageGrid img = make_image(2, 2);
  img.pixels = {1, 3, 2, 4};
  const ImageGrid out = pool_image(img, 2, 2, PoolKind::Max);
  REQUIRE(out.width == 1);
  REQUIRE(out.height == 1);
  CHECK(out.at(0, 0) == 4);

  std::mt19937 rng(127u);
  const ImageGrid big = random_image(rng, 4, 4);
  const ImageGrid halved = pool_image(big, 2, 2, PoolKind::Max);
  CHECK(halved.width == 2);
  CHECK(halved.height == 2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      int expected = 0;
      for (int dr = 0; dr < 2; ++dr)
        for (int dc = 0; dc < 2; ++dc)
          expected = std::max(expected, int(big.at(2 * r + dr, 2 * c + dc)));
      CHECK(int(halved.at(r, c)) == expected);
    }
}

TEST_CASE("pooling geometry follows the window and stride") {
  std::mt19937 rng(131u);
  for (int trial = 0; trial < 20; ++trial) {
    const int w = 3 + int(rng() % 12);
    const int h = 3 + int(rng() % 12);
    const int window = 1 + int(rng() % 3);
    const int stride = 1 + int(rng() % 3);
    const ImageGrid img = random_image(rng, w, h);
    const ImageGrid out = pool_image(img, window, stride, PoolKind::Max);
    CHECK(out.width == (w - window) / stride + 1);
    CHECK(out.height == (h - window) / stride + 1);
  }
  CHECK_THROWS_AS(pool_image(make_image(2, 2), 3, 1, PoolKind::Max), std::invalid_argument);
  CHECK_THROWS_AS(pool_image(make_image(4, 4), 2, 0, PoolKind::Max), std::invalid_argument);
}

TEST_CASE("small-window averaging is a rounded mean") {
  ImageGrid img = make_image(2, 2);
  img.pixels = {1, 3, 2, 4};
  const ImageGrid out = pool_image(img, 2, 2, PoolKind::Avg);
  CHECK(out.at(0, 0) == 3);  // mean 2.5 rounds half up
}

TEST_CASE("three-wide averaging rides the uniform-kernel pipeline") {
  std::mt19937 rng(137u);
  const ImageGrid img = random_image(rng, 9, 7);
  const ImageGrid pooled = pool_image(img, 3, 2, PoolKind::Avg);
  KernelSpec uniform;
  uniform.weights = Eigen::Matrix3d::Constant(1.0 / 9.0);
  const ImageGrid swept = run_kernel(img, uniform);
  CHECK(pooled.width == (img.width - 3) / 2 + 1);
  CHECK(pooled.height == (img.height - 3) / 2 + 1);
  for (int r = 0; r < pooled.height; ++r)
    for (int c = 0; c < pooled.width; ++c)
      CHECK(pooled.at(r, c) == swept.at(r * 2, c * 2));
}

TEST_CASE("diode-backed max pooling floors windows at the threshold") {
  // 0.7 V maps back to byte 119 under the 1.5 V full scale.
  ImageGrid img = make_image(4, 2);
  img.pixels = {10, 50, 200, 240, 30, 20, 220, 255};
  const ImageGrid out = pool_image(img, 2, 2, PoolKind::Max, 0.7);
  REQUIRE(out.width == 2);
  REQUIRE(out.height == 1);
  CHECK(out.at(0, 0) == 119);  // all pixels below the diode floor
  CHECK(out.at(0, 1) == 255);  // the loudest pixel wins unchanged
  CHECK_THROWS_AS(pool_image(img, 2, 2, PoolKind::Avg, 0.7), std::invalid_argument);
}
