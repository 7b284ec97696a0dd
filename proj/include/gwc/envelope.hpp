#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "gwc/bitio.hpp"
#include "gwc/huffman.hpp"
#include "gwc/transform.hpp"

namespace gwc {

inline constexpr int kEnvelopeMin = -60;
inline constexpr int kEnvelopeMax = 60;
/// Envelope step in dB of band variance.
inline constexpr double kEnvelopeStepDb = 3.0;
inline constexpr double kBandVarianceFloor = 1e-10;
/// Largest envelope difference coded through the Huffman table; larger jumps escape.
inline constexpr int kEnvelopeDiffLimit = 15;
inline constexpr int kEnvelopeRawBits = 7;
inline constexpr int kEnvelopeRawOffset = 64;

/// Non-uniform partition of the coefficient axis into contiguous bands.
class BandLayout {
 public:
  /// Validates: edges start at 0, strictly increase and widths never shrink with frequency.
  explicit BandLayout(std::vector<std::size_t> edges);

  std::size_t num_bands() const { return edges_.size() - 1; }
  std::size_t num_bins() const { return edges_.back(); }
  std::size_t begin(std::size_t band) const { return edges_.at(band); }
  std::size_t end(std::size_t band) const { return edges_.at(band + 1); }
  std::size_t width(std::size_t band) const { return end(band) - begin(band); }
  std::size_t band_of(std::size_t bin) const;
  const std::vector<std::size_t>& edges() const { return edges_; }

 private:
  std::vector<std::size_t> edges_;
};

/// The 20-band layout over 320 bins used by stream version 1 (layout id 0).
const BandLayout& default_band_layout();

/// Quantized per-band log variance, one index per band, 3 dB per step.
struct Envelope {
  std::vector<int> indices;

  friend bool operator==(const Envelope&, const Envelope&) = default;
};

/// Round half away from zero; the single tie rule used throughout the codec.
inline double round_away(double v) { return std::round(v); }

Envelope compute_envelope(std::span<const double> coefficients, const BandLayout& layout);

/// Amplitude gain 10^(3 i / 20) of envelope index i. Throws InvalidInput outside [-60, 60].
double envelope_gain(int index);

/// Fixed table for envelope differences in [-15, 15] plus escape.
const HuffmanTable& envelope_diff_table();
/// Rebuilds the envelope table from its geometric model (ratio 0.6 per step).
HuffmanTable build_envelope_diff_table();

/// First index as a 7-bit offset code, then frequency differences. A difference
/// beyond +-15 is sent as ESC followed by the band's own 7-bit offset code.
void encode_envelope(const Envelope& env, const HuffmanTable& table, BitWriter& out);
std::size_t envelope_bits(const Envelope& env, const HuffmanTable& table);
Envelope decode_envelope(BitReader& in, const HuffmanTable& table, std::size_t num_bands);

/// Raises the envelope floor (max(i, floor)) just enough for the coded
/// envelope to fit in `max_bits`. Returns the envelope unchanged when it already fits.
Envelope limit_envelope_bits(const Envelope& env, const HuffmanTable& table, std::size_t max_bits);

}  // namespace gwc
