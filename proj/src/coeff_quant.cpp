#include "gwc/coeff_quant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "embedded_tables.hpp"
#include "gwc/error.hpp"
#include "gwc/table_models.hpp"

namespace gwc {

namespace {

std::vector<double> ladder_steps(int max_index, double base_step) {
  std::vector<double> steps;
  for (int m = 1; m <= max_index; ++m) steps.push_back(base_step * std::exp2(-(m - 1) / 4.0));
  return steps;
}

constexpr std::int32_t kRawMin = std::numeric_limits<std::int16_t>::min();
constexpr std::int32_t kRawMax = std::numeric_limits<std::int16_t>::max();

}  // namespace

QuantizerLadder::QuantizerLadder()
    : max_index_(kDefaultMaxQuantizer),
      base_step_(kDefaultBaseStep),
      steps_(ladder_steps(kDefaultMaxQuantizer, kDefaultBaseStep)),
      tables_(embedded_coefficient_tables()) {}

QuantizerLadder::QuantizerLadder(int max_index, double base_step)
    : max_index_(max_index), base_step_(base_step) {
  if (max_index < 1) throw InvalidConfig("quantizer ladder needs at least one non-zero quantizer");
  if (!(base_step > 0.0) || !std::isfinite(base_step)) throw InvalidConfig("quantizer base step must be positive");
  steps_ = ladder_steps(max_index, base_step);
  for (const auto& lengths : tables::coefficient_lengths(steps_)) {
    tables_.push_back(
        HuffmanTable::from_lengths(-tables::kCoefficientSymbolLimit, tables::kCoefficientSymbolLimit, lengths));
  }
}

double QuantizerLadder::step(int m) const {
  if (m < 1 || m > max_index_) throw InvalidInput("quantizer index " + std::to_string(m) + " has no step");
  return steps_[static_cast<std::size_t>(m - 1)];
}

const HuffmanTable& QuantizerLadder::table(int m) const {
  if (m < 1 || m > max_index_) throw InvalidInput("quantizer index " + std::to_string(m) + " has no table");
  return tables_[static_cast<std::size_t>(m - 1)];
}

const QuantizerLadder& default_ladder() {
  static const QuantizerLadder ladder;
  return ladder;
}

FlattenedFrame flatten(std::span<const double> coefficients, const Envelope& env, const BandLayout& layout) {
  if (coefficients.size() != layout.num_bins() || env.indices.size() != layout.num_bands()) {
    throw InvalidInput("flatten: frame, envelope and layout sizes disagree");
  }
  FlattenedFrame out{std::vector<double>(coefficients.begin(), coefficients.end())};
  for (std::size_t b = 0; b < layout.num_bands(); ++b) {
    const double gain = envelope_gain(env.indices[b]);
    for (std::size_t k = layout.begin(b); k < layout.end(b); ++k) out.coefficients[k] /= gain;
  }
  return out;
}

std::vector<double> unflatten(const FlattenedFrame& frame, const Envelope& env, const BandLayout& layout) {
  if (frame.coefficients.size() != layout.num_bins() || env.indices.size() != layout.num_bands()) {
    throw InvalidInput("unflatten: frame, envelope and layout sizes disagree");
  }
  std::vector<double> out = frame.coefficients;
  for (std::size_t b = 0; b < layout.num_bands(); ++b) {
    const double gain = envelope_gain(env.indices[b]);
    for (std::size_t k = layout.begin(b); k < layout.end(b); ++k) out[k] *= gain;
  }
  return out;
}

std::vector<std::int32_t> quantize_values(std::span<const double> values, int m, const QuantizerLadder& ladder) {
  if (m < 0 || m > ladder.max_index()) throw InvalidInput("quantizer index out of range");
  std::vector<std::int32_t> symbols(values.size(), 0);
  if (m == 0) return symbols;
  const double step = ladder.step(m);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double s = std::clamp(round_away(values[i] / step), double{kRawMin}, double{kRawMax});
    symbols[i] = static_cast<std::int32_t>(s);
  }
  return symbols;
}

std::size_t symbol_bits(std::span<const std::int32_t> symbols, int m, const QuantizerLadder& ladder) {
  if (m == 0) return 0;
  const HuffmanTable& table = ladder.table(m);
  const std::size_t escape_cost =
      static_cast<std::size_t>(table.length(table.escape_index())) + tables::kCoefficientRawBits;
  std::size_t bits = 0;
  for (std::int32_t s : symbols) {
    bits += table.in_range(s) ? static_cast<std::size_t>(table.length(table.index_of(s))) : escape_cost;
  }
  return bits;
}

void encode_symbols(std::span<const std::int32_t> symbols, int m, const QuantizerLadder& ladder, BitWriter& out) {
  if (m == 0) return;
  const HuffmanTable& table = ladder.table(m);
  for (std::int32_t s : symbols) {
    if (table.in_range(s)) {
      table.encode(table.index_of(s), out);
    } else {
      table.encode(table.escape_index(), out);
      out.write_signed(s, tables::kCoefficientRawBits);
    }
  }
}

std::vector<std::int32_t> decode_symbols(BitReader& in, std::size_t count, int m, const QuantizerLadder& ladder) {
  std::vector<std::int32_t> symbols(count, 0);
  if (m == 0) return symbols;
  const HuffmanTable& table = ladder.table(m);
  for (auto& s : symbols) {
    const std::size_t sym = table.decode(in);
    if (sym == table.escape_index()) {
      s = in.read_signed(tables::kCoefficientRawBits);
      if (table.in_range(s)) throw CorruptStream("escaped coefficient inside the table range");
    } else {
      s = table.min_value() + static_cast<std::int32_t>(sym);
    }
  }
  return symbols;
}

QuantizedBand quantize_band(std::span<const double> values, int m, const QuantizerLadder& ladder) {
  QuantizedBand out;
  out.symbols = quantize_values(values, m, ladder);
  encode_symbols(out.symbols, m, ladder, out.bits);
  return out;
}

std::vector<double> dequantize_band(std::span<const std::int32_t> symbols, int m, const QuantizerLadder& ladder) {
  if (m < 0 || m > ladder.max_index()) throw InvalidInput("quantizer index out of range");
  std::vector<double> out(symbols.size(), 0.0);
  if (m == 0) return out;
  const double step = ladder.step(m);
  for (std::size_t i = 0; i < symbols.size(); ++i) out[i] = symbols[i] * step;
  return out;
}

}  // namespace gwc
