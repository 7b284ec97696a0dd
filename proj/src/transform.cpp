#include "gwc/transform.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gwc/error.hpp"

namespace gwc {

void FrameConfig::validate() const {
  if (stride == 0) throw InvalidInput("frame stride must be positive");
  if (stride % 2 != 0) throw InvalidInput("frame stride must be even");
  if (sample_rate <= 0) throw InvalidInput("sample rate must be positive");
}

std::vector<double> sine_window(std::size_t stride) {
  const std::size_t length = 2 * stride;
  std::vector<double> w(length);
  for (std::size_t n = 0; n < length; ++n) {
    w[n] = std::sin(std::numbers::pi * (static_cast<double>(n) + 0.5) / static_cast<double>(length));
  }
  return w;
}

Mdct::Mdct(const FrameConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  const std::size_t n = cfg_.stride;
  window_ = sine_window(n);
  kernel_.resize(n * n);
  const double scale = std::sqrt(2.0 / static_cast<double>(n));
  const double nd = static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      // Reduce the phase argument modulo 4N before scaling to keep cos() accurate.
      const std::size_t phase = ((2 * i + 1) * (2 * k + 1)) % (8 * n);
      kernel_[k * n + i] = scale * std::cos(std::numbers::pi * static_cast<double>(phase) / (4.0 * nd));
    }
  }
}

void Mdct::dct_iv(std::span<const double> in, std::span<double> out) const {
  const std::size_t n = cfg_.stride;
  for (std::size_t k = 0; k < n; ++k) {
    const double* row = kernel_.data() + k * n;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += row[i] * in[i];
    out[k] = acc;
  }
}

void Mdct::forward_block(std::span<const double> block, std::span<double> out) const {
  const std::size_t n = cfg_.stride;
  const std::size_t h = n / 2;
  if (block.size() != 2 * n || out.size() != n) throw InvalidInput("mdct block size mismatch");
  std::vector<double> u(2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i) u[i] = window_[i] * block[i];

  // Fold [a b c d] into (-c_r - d, a - b_r).
  std::vector<double> v(n);
  for (std::size_t i = 0; i < h; ++i) v[i] = -u[n + h - 1 - i] - u[n + h + i];
  for (std::size_t i = h; i < n; ++i) v[i] = u[i - h] - u[n + h - 1 - i];
  dct_iv(v, out);
}

void Mdct::inverse_block(std::span<const double> coeffs, std::span<double> out) const {
  const std::size_t n = cfg_.stride;
  const std::size_t h = n / 2;
  if (coeffs.size() != n || out.size() != 2 * n) throw InvalidInput("imdct block size mismatch");
  std::vector<double> v(n);
  dct_iv(coeffs, v);
  for (std::size_t i = 0; i < h; ++i) {
    out[n + h - 1 - i] = -v[i];
    out[n + h + i] = -v[i];
  }
  for (std::size_t i = h; i < n; ++i) {
    out[i - h] = v[i];
    out[n + h - 1 - i] = -v[i];
  }
  for (std::size_t i = 0; i < 2 * n; ++i) out[i] *= window_[i];
}

std::vector<SpectralFrame> Mdct::forward(std::span<const double> signal) const {
  const std::size_t n = cfg_.stride;
  if (signal.empty()) throw InvalidInput("cannot transform an empty signal");
  if (signal.size() % n != 0) {
    throw InvalidInput("signal length " + std::to_string(signal.size()) + " is not a multiple of the stride");
  }
  for (double s : signal) {
    if (!std::isfinite(s)) throw InvalidInput("signal contains non-finite samples");
  }
  std::vector<double> padded(signal.size() + 2 * n, 0.0);
  std::copy(signal.begin(), signal.end(), padded.begin() + static_cast<std::ptrdiff_t>(n));

  const std::size_t count = signal.size() / n + 1;
  std::vector<SpectralFrame> frames(count);
  for (std::size_t f = 0; f < count; ++f) {
    frames[f].frame_index = f;
    frames[f].coefficients.resize(n);
    forward_block(std::span<const double>(padded).subspan(f * n, 2 * n), frames[f].coefficients);
  }
  return frames;
}

std::vector<double> Mdct::inverse(std::span<const SpectralFrame> frames) const {
  const std::size_t n = cfg_.stride;
  if (frames.empty()) throw InvalidInput("cannot synthesize from zero frames");
  std::vector<double> padded((frames.size() + 1) * n, 0.0);
  std::vector<double> block(2 * n);
  for (std::size_t f = 0; f < frames.size(); ++f) {
    if (frames[f].coefficients.size() != n) {
      throw InvalidInput("frame " + std::to_string(f) + " has " + std::to_string(frames[f].coefficients.size()) +
                         " coefficients, expected " + std::to_string(n));
    }
    inverse_block(frames[f].coefficients, block);
    for (std::size_t i = 0; i < 2 * n; ++i) padded[f * n + i] += block[i];
  }
  return {padded.begin() + static_cast<std::ptrdiff_t>(n), padded.end() - static_cast<std::ptrdiff_t>(n)};
}

std::vector<SpectralFrame> mdct_forward(std::span<const double> signal, const FrameConfig& cfg) {
  return Mdct(cfg).forward(signal);
}

std::vector<double> mdct_inverse(std::span<const SpectralFrame> frames, const FrameConfig& cfg) {
  return Mdct(cfg).inverse(frames);
}

}  // namespace gwc
