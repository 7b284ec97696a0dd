#include "gwc/rate_control.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gwc/error.hpp"

namespace gwc {

std::size_t minimum_frame_bits(const BandLayout& layout) {
  const Envelope flat{std::vector<int>(layout.num_bands(), 0)};
  return envelope_bits(flat, envelope_diff_table()) + kOffsetBits;
}

std::size_t frame_budget(std::uint32_t bitrate, const FrameConfig& cfg) {
  cfg.validate();
  if (bitrate == 0) throw InvalidConfig("bitrate must be positive");
  const std::uint64_t bits = std::uint64_t{bitrate} * cfg.stride / static_cast<std::uint64_t>(cfg.sample_rate);
  if (bits < minimum_frame_bits()) {
    throw InvalidConfig("bitrate " + std::to_string(bitrate) + " leaves " + std::to_string(bits) +
                        " bits per frame, below the minimum frame of " + std::to_string(minimum_frame_bits()));
  }
  return static_cast<std::size_t>(bits);
}

std::vector<int> quantizer_indices(const Envelope& env, int offset, int max_index) {
  std::vector<int> m(env.indices.size());
  for (std::size_t n = 0; n < m.size(); ++n) m[n] = std::clamp(env.indices[n] - offset, 0, max_index);
  return m;
}

std::size_t coefficient_bits(const Envelope& env, const FlattenedFrame& flat, const BandLayout& layout,
                             const QuantizerLadder& ladder, int offset) {
  const auto m = quantizer_indices(env, offset, ladder.max_index());
  const std::span<const double> coeffs(flat.coefficients);
  std::size_t bits = 0;
  for (std::size_t b = 0; b < layout.num_bands(); ++b) {
    if (m[b] == 0) continue;
    const auto symbols = quantize_values(coeffs.subspan(layout.begin(b), layout.width(b)), m[b], ladder);
    bits += symbol_bits(symbols, m[b], ladder);
  }
  return bits;
}

int lowest_offset(const Envelope& env, const QuantizerLadder& ladder) {
  return *std::min_element(env.indices.begin(), env.indices.end()) - ladder.max_index();
}

int highest_offset(const Envelope& env) { return *std::max_element(env.indices.begin(), env.indices.end()); }

Allocation allocate(const Envelope& env, const FlattenedFrame& flat, const BandLayout& layout,
                    const QuantizerLadder& ladder, std::size_t budget) {
  if (env.indices.size() != layout.num_bands()) throw InvalidInput("envelope does not match the band layout");
  // Invariant: bits(hi) <= budget. The highest offset zeroes every band.
  int lo = lowest_offset(env, ladder);
  int hi = highest_offset(env);
  if (coefficient_bits(env, flat, layout, ladder, lo) <= budget) {
    hi = lo;
  } else {
    while (hi - lo > 1) {
      const int mid = lo + (hi - lo) / 2;
      if (coefficient_bits(env, flat, layout, ladder, mid) <= budget) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
  }
  Allocation a;
  a.offset = hi;
  a.quantizers = quantizer_indices(env, hi, ladder.max_index());
  a.bits_used = coefficient_bits(env, flat, layout, ladder, hi);
  a.budget = budget;
  return a;
}

double predicted_snr_db(int m, const QuantizerLadder& ladder) {
  if (m == 0) return 0.0;
  return 20.0 * std::log10(std::sqrt(12.0) / ladder.step(m));
}

std::vector<double> predicted_band_snr(const Allocation& alloc, const QuantizerLadder& ladder) {
  std::vector<double> out;
  out.reserve(alloc.quantizers.size());
  for (int m : alloc.quantizers) out.push_back(predicted_snr_db(m, ladder));
  return out;
}

}  // namespace gwc
