#include "gwc/envelope.hpp"

#include <algorithm>
#include <string>

#include "gwc/error.hpp"
#include "gwc/table_models.hpp"

namespace gwc {

BandLayout::BandLayout(std::vector<std::size_t> edges) : edges_(std::move(edges)) {
  if (edges_.size() < 2) throw InvalidInput("band layout needs at least one band");
  if (edges_.front() != 0) throw InvalidInput("band layout must start at bin 0");
  for (std::size_t b = 0; b + 1 < edges_.size(); ++b) {
    if (edges_[b + 1] <= edges_[b]) throw InvalidInput("band edges must strictly increase");
    if (b > 0 && width(b) < width(b - 1)) throw InvalidInput("band widths must not shrink with frequency");
  }
}

std::size_t BandLayout::band_of(std::size_t bin) const {
  if (bin >= num_bins()) throw InvalidInput("bin " + std::to_string(bin) + " outside the band layout");
  const auto it = std::upper_bound(edges_.begin(), edges_.end(), bin);
  return static_cast<std::size_t>(it - edges_.begin()) - 1;
}

const BandLayout& default_band_layout() {
  static const BandLayout layout = [] {
    constexpr std::size_t widths[] = {4, 4, 4, 4, 8, 8, 8, 8, 12, 12, 16, 16, 20, 20, 24, 24, 28, 32, 32, 36};
    std::vector<std::size_t> edges{0};
    for (std::size_t w : widths) edges.push_back(edges.back() + w);
    return BandLayout(std::move(edges));
  }();
  return layout;
}

Envelope compute_envelope(std::span<const double> coefficients, const BandLayout& layout) {
  if (coefficients.size() != layout.num_bins()) throw InvalidInput("frame length does not match the band layout");
  Envelope env;
  env.indices.reserve(layout.num_bands());
  for (std::size_t b = 0; b < layout.num_bands(); ++b) {
    double energy = 0.0;
    for (std::size_t k = layout.begin(b); k < layout.end(b); ++k) energy += coefficients[k] * coefficients[k];
    const double variance = std::max(energy / static_cast<double>(layout.width(b)), kBandVarianceFloor);
    const double steps = round_away(10.0 * std::log10(variance) / kEnvelopeStepDb);
    env.indices.push_back(static_cast<int>(std::clamp(steps, double{kEnvelopeMin}, double{kEnvelopeMax})));
  }
  return env;
}

double envelope_gain(int index) {
  if (index < kEnvelopeMin || index > kEnvelopeMax) {
    throw InvalidInput("envelope index " + std::to_string(index) + " out of range");
  }
  return std::pow(10.0, kEnvelopeStepDb * index / 20.0);
}

HuffmanTable build_envelope_diff_table() {
  return HuffmanTable::from_lengths(-kEnvelopeDiffLimit, kEnvelopeDiffLimit, tables::envelope_diff_lengths());
}

namespace {

void check_index(int i) {
  if (i < kEnvelopeMin || i > kEnvelopeMax) throw InvalidInput("envelope index out of range");
}

void write_raw(int index, BitWriter& out) {
  out.write(static_cast<std::uint32_t>(index + kEnvelopeRawOffset), kEnvelopeRawBits);
}

int read_raw(BitReader& in) {
  const int index = static_cast<int>(in.read(kEnvelopeRawBits)) - kEnvelopeRawOffset;
  if (index < kEnvelopeMin || index > kEnvelopeMax) throw CorruptStream("envelope index out of range");
  return index;
}

}  // namespace

void encode_envelope(const Envelope& env, const HuffmanTable& table, BitWriter& out) {
  if (env.indices.empty()) throw InvalidInput("empty envelope");
  for (int i : env.indices) check_index(i);
  write_raw(env.indices.front(), out);
  for (std::size_t n = 1; n < env.indices.size(); ++n) {
    const int d = env.indices[n] - env.indices[n - 1];
    if (table.in_range(d) && table.length(table.index_of(d)) > 0) {
      table.encode(table.index_of(d), out);
    } else {
      table.encode(table.escape_index(), out);
      write_raw(env.indices[n], out);
    }
  }
}

std::size_t envelope_bits(const Envelope& env, const HuffmanTable& table) {
  BitWriter w;
  encode_envelope(env, table, w);
  return w.bit_count();
}

Envelope decode_envelope(BitReader& in, const HuffmanTable& table, std::size_t num_bands) {
  Envelope env;
  if (num_bands == 0) return env;
  env.indices.reserve(num_bands);
  env.indices.push_back(read_raw(in));
  while (env.indices.size() < num_bands) {
    const std::size_t sym = table.decode(in);
    if (sym == table.escape_index()) {
      env.indices.push_back(read_raw(in));
    } else {
      const int next = env.indices.back() + table.min_value() + static_cast<int>(sym);
      if (next < kEnvelopeMin || next > kEnvelopeMax) throw CorruptStream("envelope difference leaves the index range");
      env.indices.push_back(next);
    }
  }
  return env;
}

Envelope limit_envelope_bits(const Envelope& env, const HuffmanTable& table, std::size_t max_bits) {
  if (envelope_bits(env, table) <= max_bits) return env;
  const auto [lo, hi] = std::minmax_element(env.indices.begin(), env.indices.end());
  for (int floor = *lo + 1; floor <= *hi; ++floor) {
    Envelope raised = env;
    for (int& i : raised.indices) i = std::max(i, floor);
    if (envelope_bits(raised, table) <= max_bits) return raised;
  }
  throw InvalidConfig("frame budget cannot hold even a flat envelope");
}

}  // namespace gwc
