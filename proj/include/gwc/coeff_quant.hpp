#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gwc/bitio.hpp"
#include "gwc/envelope.hpp"
#include "gwc/huffman.hpp"

namespace gwc {

inline constexpr int kDefaultMaxQuantizer = 24;
inline constexpr double kDefaultBaseStep = 0.5;

/// Ordered scalar quantizers m = 0..M. Quantizer 0 codes nothing and
/// reconstructs zero; quantizer m >= 1 has step base_step * 2^(-(m-1)/4), so
/// each step up buys about 1.5 dB of SNR. Every quantizer m >= 1 owns a
/// Huffman table over [-31, 31] plus escape.
class QuantizerLadder {
 public:
  /// The default ladder (M = 24, base step 0.5) uses the embedded tables.
  QuantizerLadder();
  /// Any other configuration rebuilds its tables from the Laplacian model.
  QuantizerLadder(int max_index, double base_step);

  int max_index() const { return max_index_; }
  double base_step() const { return base_step_; }
  /// Step of quantizer m >= 1.
  double step(int m) const;
  const HuffmanTable& table(int m) const;

 private:
  int max_index_;
  double base_step_;
  std::vector<double> steps_;         // index m - 1
  std::vector<HuffmanTable> tables_;  // index m - 1
};

const QuantizerLadder& default_ladder();

/// Coefficients divided band-wise by the envelope gain.
struct FlattenedFrame {
  std::vector<double> coefficients;
};

FlattenedFrame flatten(std::span<const double> coefficients, const Envelope& env, const BandLayout& layout);
std::vector<double> unflatten(const FlattenedFrame& frame, const Envelope& env, const BandLayout& layout);

/// Midpoint symbols s = round(v / step), ties away from zero, saturated to int16.
std::vector<std::int32_t> quantize_values(std::span<const double> values, int m, const QuantizerLadder& ladder);
/// Bits needed to code `symbols` with quantizer m (0 for m = 0).
std::size_t symbol_bits(std::span<const std::int32_t> symbols, int m, const QuantizerLadder& ladder);
void encode_symbols(std::span<const std::int32_t> symbols, int m, const QuantizerLadder& ladder, BitWriter& out);
std::vector<std::int32_t> decode_symbols(BitReader& in, std::size_t count, int m, const QuantizerLadder& ladder);

struct QuantizedBand {
  std::vector<std::int32_t> symbols;
  BitWriter bits;
};

QuantizedBand quantize_band(std::span<const double> values, int m, const QuantizerLadder& ladder);
std::vector<double> dequantize_band(std::span<const std::int32_t> symbols, int m, const QuantizerLadder& ladder);

}  // namespace gwc
