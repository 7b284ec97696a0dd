#include "gwc/codec.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gwc/error.hpp"

namespace gwc {
namespace {

void put_u32(std::uint8_t* p, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) p[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

std::size_t stream_bytes(std::size_t frames, std::size_t budget) { return kHeaderBytes + (frames * budget + 7) / 8; }

}  // namespace

std::array<std::uint8_t, kHeaderBytes> serialize_header(const StreamHeader& h) {
  std::array<std::uint8_t, kHeaderBytes> out{};
  std::copy(kStreamMagic.begin(), kStreamMagic.end(), out.begin());
  out[4] = h.version;
  put_u32(&out[5], h.sample_rate);
  put_u32(&out[9], h.bitrate);
  put_u32(&out[13], h.num_frames);
  put_u32(&out[17], h.num_samples);
  out[21] = h.band_layout_id;
  return out;
}

StreamHeader parse_header(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderBytes) throw CorruptStream("stream shorter than its header");
  if (!std::equal(kStreamMagic.begin(), kStreamMagic.end(), bytes.begin())) {
    throw UnsupportedStream("not a GWC stream (bad magic)");
  }
  StreamHeader h;
  h.version = bytes[4];
  h.sample_rate = get_u32(&bytes[5]);
  h.bitrate = get_u32(&bytes[9]);
  h.num_frames = get_u32(&bytes[13]);
  h.num_samples = get_u32(&bytes[17]);
  h.band_layout_id = bytes[21];
  if (h.version != kStreamVersion) throw UnsupportedStream("unsupported stream version " + std::to_string(h.version));
  if (h.sample_rate != 16000) throw UnsupportedStream("version 1 streams are 16 kHz only");
  if (h.band_layout_id != 0) throw UnsupportedStream("unknown band layout id");
  return h;
}

FrameRecord encode_frame(std::span<const double> coefficients, std::size_t budget, BitWriter& out,
                         const BandLayout& layout, const QuantizerLadder& ladder) {
  const std::size_t start = out.bit_count();
  const HuffmanTable& env_table = envelope_diff_table();
  if (budget < minimum_frame_bits(layout)) throw InvalidConfig("frame budget below the minimum frame size");

  FrameRecord rec;
  rec.envelope = limit_envelope_bits(compute_envelope(coefficients, layout), env_table, budget - kOffsetBits);
  rec.envelope_bits = envelope_bits(rec.envelope, env_table);

  const FlattenedFrame flat = flatten(coefficients, rec.envelope, layout);
  rec.allocation = allocate(rec.envelope, flat, layout, ladder, budget - rec.envelope_bits - kOffsetBits);

  encode_envelope(rec.envelope, env_table, out);
  out.write_signed(rec.allocation.offset, kOffsetBits);
  const std::span<const double> values(flat.coefficients);
  for (std::size_t b = 0; b < layout.num_bands(); ++b) {
    const int m = rec.allocation.quantizers[b];
    const auto symbols = quantize_values(values.subspan(layout.begin(b), layout.width(b)), m, ladder);
    encode_symbols(symbols, m, ladder, out);
  }
  out.pad_to(start + budget);
  return rec;
}

std::vector<double> decode_frame(BitReader& in, const BandLayout& layout, const QuantizerLadder& ladder) {
  const Envelope env = decode_envelope(in, envelope_diff_table(), layout.num_bands());
  const int offset = in.read_signed(kOffsetBits);
  const auto m = quantizer_indices(env, offset, ladder.max_index());
  FlattenedFrame flat{std::vector<double>(layout.num_bins(), 0.0)};
  for (std::size_t b = 0; b < layout.num_bands(); ++b) {
    const auto symbols = decode_symbols(in, layout.width(b), m[b], ladder);
    const auto values = dequantize_band(symbols, m[b], ladder);
    std::copy(values.begin(), values.end(), flat.coefficients.begin() + static_cast<std::ptrdiff_t>(layout.begin(b)));
  }
  return unflatten(flat, env, layout);
}

EncodedStream encode(std::span<const double> signal, const EncoderConfig& cfg) {
  if (cfg.frame.sample_rate != 16000 || cfg.frame.stride != 320) {
    throw InvalidConfig("stream version 1 codes 16 kHz audio with a 320-sample stride");
  }
  if (signal.empty()) throw InvalidInput("cannot encode an empty signal");
  if (signal.size() > 0xFFFFFFF0u) throw InvalidInput("signal too long for the stream header");
  const std::size_t budget = frame_budget(cfg.bitrate, cfg.frame);
  const std::size_t stride = cfg.frame.stride;

  std::vector<double> padded(signal.begin(), signal.end());
  padded.resize((signal.size() + stride - 1) / stride * stride, 0.0);
  const Mdct mdct(cfg.frame);
  const auto spectra = mdct.forward(padded);

  EncodedStream s;
  s.header.bitrate = cfg.bitrate;
  s.header.sample_rate = static_cast<std::uint32_t>(cfg.frame.sample_rate);
  s.header.num_frames = static_cast<std::uint32_t>(spectra.size());
  s.header.num_samples = static_cast<std::uint32_t>(signal.size());

  BitWriter body;
  for (const auto& frame : spectra) s.frames.push_back(encode_frame(frame.coefficients, budget, body));

  const auto header = serialize_header(s.header);
  s.bytes.assign(header.begin(), header.end());
  s.bytes.insert(s.bytes.end(), body.bytes().begin(), body.bytes().end());
  return s;
}

std::vector<std::uint8_t> encode_stream(std::span<const double> signal, const EncoderConfig& cfg) {
  return encode(signal, cfg).bytes;
}

std::vector<double> decode_stream(std::span<const std::uint8_t> bytes, StreamHeader* header_out) {
  const StreamHeader h = parse_header(bytes);
  FrameConfig frame;
  std::size_t budget = 0;
  try {
    budget = frame_budget(h.bitrate, frame);
  } catch (const InvalidConfig&) {
    throw CorruptStream("stream declares an unusable bitrate");
  }
  const std::size_t expected_frames = (std::size_t{h.num_samples} + frame.stride - 1) / frame.stride + 1;
  if (h.num_samples == 0 || h.num_frames != expected_frames) {
    throw CorruptStream("frame count does not match the sample count");
  }
  if (bytes.size() < stream_bytes(h.num_frames, budget)) throw CorruptStream("stream truncated");

  const auto body = bytes.subspan(kHeaderBytes);
  std::vector<SpectralFrame> spectra(h.num_frames);
  for (std::size_t f = 0; f < h.num_frames; ++f) {
    BitReader in(body, f * budget, budget);
    spectra[f].frame_index = f;
    spectra[f].coefficients = decode_frame(in);
  }
  std::vector<double> out = Mdct(frame).inverse(spectra);
  out.resize(h.num_samples);
  if (header_out != nullptr) *header_out = h;
  return out;
}

}  // namespace gwc
