#include <vector>

#include "embedded_tables.hpp"
#include "gwc/coeff_quant.hpp"
#include "gwc/envelope.hpp"
#include "gwc/table_models.hpp"

namespace gwc {
namespace {
#include "table_data.inc"
}  // namespace

const HuffmanTable& envelope_diff_table() {
  static const HuffmanTable table = HuffmanTable::from_lengths(
      -kEnvelopeDiffLimit, kEnvelopeDiffLimit,
      std::vector<int>(std::begin(kEnvelopeDiffLengths), std::end(kEnvelopeDiffLengths)));
  return table;
}

std::vector<HuffmanTable> embedded_coefficient_tables() {
  std::vector<HuffmanTable> out;
  for (const auto& row : kCoefficientLengths) {
    out.push_back(HuffmanTable::from_lengths(-tables::kCoefficientSymbolLimit, tables::kCoefficientSymbolLimit,
                                             std::vector<int>(std::begin(row), std::end(row))));
  }
  return out;
}

}  // namespace gwc
