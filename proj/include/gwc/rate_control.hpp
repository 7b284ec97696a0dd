#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gwc/coeff_quant.hpp"
#include "gwc/envelope.hpp"
#include "gwc/transform.hpp"

namespace gwc {

/// Width of the per-frame i_offset field (two's complement).
inline constexpr int kOffsetBits = 8;

/// Per-frame rate allocation: m_n = clamp(i_env(n) - i_offset, 0, M).
struct Allocation {
  int offset = 0;
  std::vector<int> quantizers;
  std::size_t bits_used = 0;  // coefficient bits only
  std::size_t budget = 0;     // coefficient bits available
};

/// floor(bitrate * stride / sample_rate). Throws InvalidConfig for a zero rate
/// or a budget that cannot hold the smallest possible frame header.
std::size_t frame_budget(std::uint32_t bitrate, const FrameConfig& cfg = {});
/// Smallest frame that can carry a flat envelope and the offset field.
std::size_t minimum_frame_bits(const BandLayout& layout = default_band_layout());

std::vector<int> quantizer_indices(const Envelope& env, int offset, int max_index);

/// Exact entropy-coded size of all bands at the given offset.
std::size_t coefficient_bits(const Envelope& env, const FlattenedFrame& flat, const BandLayout& layout,
                             const QuantizerLadder& ladder, int offset);

/// Offsets worth searching: [min(i_env) - M, max(i_env)].
int lowest_offset(const Envelope& env, const QuantizerLadder& ladder);
int highest_offset(const Envelope& env);

/// Smallest offset whose coefficient bits fit `budget`, found by binary search.
/// Relies on the bit count being non-increasing in the offset, which the
/// coefficient tables guarantee.
Allocation allocate(const Envelope& env, const FlattenedFrame& flat, const BandLayout& layout,
                    const QuantizerLadder& ladder, std::size_t budget);

/// SNR a quantizer is expected to give on a unit-variance band, 20 log10(sqrt(12) / step);
/// 0 dB for the zero-rate quantizer. Successive quantizers differ by ~1.505 dB.
double predicted_snr_db(int m, const QuantizerLadder& ladder);
std::vector<double> predicted_band_snr(const Allocation& alloc, const QuantizerLadder& ladder);

}  // namespace gwc
