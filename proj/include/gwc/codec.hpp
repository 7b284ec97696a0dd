#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gwc/coeff_quant.hpp"
#include "gwc/envelope.hpp"
#include "gwc/rate_control.hpp"
#include "gwc/transform.hpp"

namespace gwc {

inline constexpr std::array<std::uint8_t, 4> kStreamMagic{'G', 'W', 'C', '1'};
inline constexpr std::uint8_t kStreamVersion = 1;
inline constexpr std::size_t kHeaderBytes = 22;

/// Fixed 22-byte stream header; multi-byte fields are little-endian.
///
///   0  magic "GWC1"     4  version (1)      5  sample_rate u32
///   9  bitrate u32     13  num_frames u32  17  num_samples u32
///  21  band_layout_id
struct StreamHeader {
  std::uint8_t version = kStreamVersion;
  std::uint32_t sample_rate = 16000;
  std::uint32_t bitrate = 16000;
  std::uint32_t num_frames = 0;
  std::uint32_t num_samples = 0;
  std::uint8_t band_layout_id = 0;

  friend bool operator==(const StreamHeader&, const StreamHeader&) = default;
};

std::array<std::uint8_t, kHeaderBytes> serialize_header(const StreamHeader& h);
/// Throws UnsupportedStream on a foreign magic, version, rate or layout, and
/// CorruptStream when fewer than kHeaderBytes are available.
StreamHeader parse_header(std::span<const std::uint8_t> bytes);

struct EncoderConfig {
  std::uint32_t bitrate = 16000;
  FrameConfig frame;
};

/// Side information the encoder decided for one frame.
struct FrameRecord {
  Envelope envelope;
  Allocation allocation;
  std::size_t envelope_bits = 0;
};

struct EncodedStream {
  StreamHeader header;
  std::vector<std::uint8_t> bytes;
  std::vector<FrameRecord> frames;
};

/// Codes one frame of MDCT coefficients into exactly `budget` bits.
FrameRecord encode_frame(std::span<const double> coefficients, std::size_t budget, BitWriter& out,
                         const BandLayout& layout = default_band_layout(),
                         const QuantizerLadder& ladder = default_ladder());
/// Reconstructs MDCT coefficients from a frame window of `budget` bits.
std::vector<double> decode_frame(BitReader& in, const BandLayout& layout = default_band_layout(),
                                 const QuantizerLadder& ladder = default_ladder());

/// Mono signal in [-1, 1) at 16 kHz; any length >= 1. The tail is zero-padded to
/// a whole stride and trimmed again on decoding.
EncodedStream encode(std::span<const double> signal, const EncoderConfig& cfg = {});
std::vector<std::uint8_t> encode_stream(std::span<const double> signal, const EncoderConfig& cfg = {});

/// Decoded samples, exactly header.num_samples of them.
std::vector<double> decode_stream(std::span<const std::uint8_t> bytes, StreamHeader* header_out = nullptr);

}  // namespace gwc
