#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gwc {

/// Framing parameters of the analysis/synthesis front end.
struct FrameConfig {
  int sample_rate = 16000;
  std::size_t stride = 320;

  std::size_t window_length() const { return 2 * stride; }
  /// Throws InvalidInput unless stride is positive and even and sample_rate is positive.
  void validate() const;
};

/// One frame of MDCT coefficients, lowest frequency first.
struct SpectralFrame {
  std::vector<double> coefficients;
  std::size_t frame_index = 0;
};

/// Sine window w[n] = sin(pi (n + 0.5) / (2 stride)); satisfies w[n]^2 + w[n + stride]^2 = 1.
std::vector<double> sine_window(std::size_t stride);

/// Orthonormal MDCT with a fixed stride. Analysis folds each windowed 2N block
/// into N samples and runs a DCT-IV through a precomputed kernel; synthesis is
/// the transpose followed by overlap-add.
class Mdct {
 public:
  explicit Mdct(const FrameConfig& cfg = {});

  const FrameConfig& config() const { return cfg_; }
  const std::vector<double>& window() const { return window_; }

  /// Transforms one 2N-sample block (already positioned, not yet windowed).
  void forward_block(std::span<const double> block, std::span<double> out) const;
  /// Windowed 2N-sample contribution of N coefficients, to be overlap-added.
  void inverse_block(std::span<const double> coeffs, std::span<double> out) const;

  /// Zero-pads one stride at both ends and returns one frame per hop:
  /// signal.size() / stride + 1 frames. Length must be a positive multiple of stride.
  std::vector<SpectralFrame> forward(std::span<const double> signal) const;
  /// Overlap-adds the frames and trims the padding; returns (frames - 1) * stride samples.
  std::vector<double> inverse(std::span<const SpectralFrame> frames) const;

 private:
  void dct_iv(std::span<const double> in, std::span<double> out) const;

  FrameConfig cfg_;
  std::vector<double> window_;
  std::vector<double> kernel_;  // N x N DCT-IV matrix, row major, orthonormal scale
};

std::vector<SpectralFrame> mdct_forward(std::span<const double> signal, const FrameConfig& cfg = {});
std::vector<double> mdct_inverse(std::span<const SpectralFrame> frames, const FrameConfig& cfg = {});

}  // namespace gwc
