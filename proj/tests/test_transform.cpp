#include "gwc/transform.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "gwc/error.hpp"
#include "oracles.hpp"

namespace gwc {
namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double energy(const std::vector<double>& x) {
  double e = 0.0;
  for (double v : x) e += v * v;
  return e;
}

TEST(SineWindow, PrincenBradleyCondition) {
  const auto w = sine_window(320);
  ASSERT_EQ(w.size(), 640u);
  for (std::size_t n = 0; n < 320; ++n) EXPECT_NEAR(w[n] * w[n] + w[n + 320] * w[n + 320], 1.0, 1e-15);
  for (std::size_t n = 0; n < 640; ++n) EXPECT_NEAR(w[n], w[639 - n], 1e-15);
}

TEST(Mdct, BlockMatchesDirectSum) {
  const Mdct mdct;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto block = oracle::gaussian_noise(640, 100 + seed);
    std::vector<double> out(320);
    mdct.forward_block(block, out);
    EXPECT_LT(max_abs_diff(out, oracle::mdct_block(block)), 1e-10);
  }
}

TEST(Mdct, FramesMatchDirectSum) {
  const auto x = oracle::gaussian_noise(960, 7, 0.3);
  const auto frames = mdct_forward(x);
  const auto expect = oracle::mdct_frames(x, 320);
  ASSERT_EQ(frames.size(), 4u);
  ASSERT_EQ(expect.size(), 4u);
  for (std::size_t f = 0; f < frames.size(); ++f) {
    EXPECT_EQ(frames[f].frame_index, f);
    EXPECT_LT(max_abs_diff(frames[f].coefficients, expect[f]), 1e-10);
  }
}

TEST(Mdct, InverseBlockMatchesDirectSynthesis) {
  const Mdct mdct;
  const auto c = oracle::gaussian_noise(320, 3);
  std::vector<double> out(640);
  mdct.inverse_block(c, out);
  EXPECT_LT(max_abs_diff(out, oracle::imdct_block(c)), 1e-10);
}

TEST(Mdct, SmallStrideMatchesDirectSum) {
  const Mdct mdct(FrameConfig{16000, 8});
  const auto block = oracle::gaussian_noise(16, 11);
  std::vector<double> out(8);
  mdct.forward_block(block, out);
  EXPECT_LT(max_abs_diff(out, oracle::mdct_block(block)), 1e-13);
}

TEST(Mdct, RoundTripIsPerfect) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t frames = 1 + seed % 7;
    const auto x = oracle::gaussian_noise(frames * 320, 1000 + seed);
    const auto y = mdct_inverse(mdct_forward(x));
    ASSERT_EQ(y.size(), x.size());
    double err = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) err += (x[i] - y[i]) * (x[i] - y[i]);
    EXPECT_LT(std::sqrt(err / energy(x)), 1e-9) << "seed " << seed;
  }
}

TEST(Mdct, FrameCount) {
  EXPECT_EQ(mdct_forward(std::vector<double>(320, 0.0)).size(), 2u);
  EXPECT_EQ(mdct_forward(std::vector<double>(3200, 0.0)).size(), 11u);
}

TEST(Mdct, EnergyIsPreserved) {
  const auto x = oracle::gaussian_noise(32 * 320, 5);
  double ec = 0.0;
  for (const auto& f : mdct_forward(x)) ec += energy(f.coefficients);
  EXPECT_NEAR(ec / energy(x), 1.0, 1e-10);
}

TEST(Mdct, Linearity) {
  const auto a = oracle::gaussian_noise(1280, 21);
  const auto b = oracle::gaussian_noise(1280, 22);
  std::vector<double> mix(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) mix[i] = 2.5 * a[i] - 0.75 * b[i];
  const auto fa = mdct_forward(a);
  const auto fb = mdct_forward(b);
  const auto fm = mdct_forward(mix);
  for (std::size_t f = 0; f < fm.size(); ++f) {
    for (std::size_t k = 0; k < 320; ++k) {
      EXPECT_NEAR(fm[f].coefficients[k], 2.5 * fa[f].coefficients[k] - 0.75 * fb[f].coefficients[k], 1e-12);
    }
  }
}

TEST(Mdct, SingleCoefficientSynthesizesWindowedCosine) {
  std::vector<SpectralFrame> frames(3, SpectralFrame{std::vector<double>(320, 0.0), 0});
  frames[1].coefficients[10] = 1.0;
  const auto y = mdct_inverse(frames);
  ASSERT_EQ(y.size(), 640u);
  // Frame 1 covers padded samples [320, 960), i.e. output samples [0, 640).
  const auto expect = oracle::imdct_block(frames[1].coefficients);
  EXPECT_LT(max_abs_diff(y, expect), 1e-12);
}

TEST(Mdct, RejectsBadInput) {
  EXPECT_THROW(mdct_forward(std::vector<double>{}), InvalidInput);
  EXPECT_THROW(mdct_forward(std::vector<double>(321, 0.0)), InvalidInput);
  std::vector<double> x(320, 0.0);
  x[5] = std::nan("");
  EXPECT_THROW(mdct_forward(x), InvalidInput);
  EXPECT_THROW(Mdct(FrameConfig{16000, 0}), InvalidInput);
  EXPECT_THROW(Mdct(FrameConfig{16000, 7}), InvalidInput);
}

}  // namespace
}  // namespace gwc
