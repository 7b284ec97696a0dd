#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gwc/bitio.hpp"

namespace gwc {

/// Canonical prefix code over the integer alphabet [min_value, max_value] plus
/// one escape symbol. Symbol indices run 0..size()-1 with the escape last.
///
/// Canonical form: codewords are assigned in order of increasing length, ties
/// broken by increasing symbol index, each code being the previous one plus one
/// (shifted left when the length grows). The table is therefore fully defined by
/// its code lengths.
class HuffmanTable {
 public:
  HuffmanTable() = default;

  /// Builds the canonical code for the given lengths (0 = symbol unused).
  /// Throws InvalidInput when the lengths violate the Kraft inequality.
  static HuffmanTable from_lengths(int min_value, int max_value, std::vector<int> lengths);

  /// Parses the text resource form: one `symbol bitstring` line per used
  /// symbol, `#` comments allowed, the escape spelled `ESC`. The codewords must
  /// be the canonical ones for their lengths.
  static HuffmanTable parse(std::string_view text);

  /// Huffman code lengths for the given weights. Ties merge the node created
  /// first, so the result depends only on the weight values.
  static std::vector<int> huffman_lengths(std::span<const double> weights);

  int min_value() const { return min_value_; }
  int max_value() const { return max_value_; }
  std::size_t size() const { return lengths_.size(); }
  std::size_t escape_index() const { return lengths_.size() - 1; }
  bool in_range(int value) const { return value >= min_value_ && value <= max_value_; }
  std::size_t index_of(int value) const { return static_cast<std::size_t>(value - min_value_); }

  int length(std::size_t symbol) const { return lengths_.at(symbol); }
  const std::vector<int>& lengths() const { return lengths_; }
  std::string codeword(std::size_t symbol) const;
  double kraft_sum() const;

  void encode(std::size_t symbol, BitWriter& out) const;
  /// Throws CorruptStream on truncation or a codeword not in the table.
  std::size_t decode(BitReader& in) const;

  std::string to_text(std::string_view title = {}) const;

  friend bool operator==(const HuffmanTable&, const HuffmanTable&) = default;

 private:
  int min_value_ = 0;
  int max_value_ = -1;
  std::vector<int> lengths_;
  std::vector<std::uint32_t> codes_;
  // Canonical decoding tables, indexed by code length.
  std::vector<std::uint32_t> first_code_;
  std::vector<std::uint32_t> first_slot_;
  std::vector<std::uint32_t> count_;
  std::vector<std::uint32_t> sorted_symbols_;
};

}  // namespace gwc
