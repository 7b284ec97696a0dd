#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace gwc {

/// MSB-first bit packer. Bits accumulate into whole bytes; the trailing partial
/// byte is zero-filled.
class BitWriter {
 public:
  /// Appends the low `width` bits of `value`, most significant first. width in [1, 32].
  void write(std::uint32_t value, int width);
  void write_bit(bool bit);
  /// Two's complement field of `width` bits; value must fit.
  void write_signed(std::int32_t value, int width);
  /// Appends zero bits until the total reaches `bit_count`.
  void pad_to(std::size_t bit_count);
  void append(const BitWriter& other);

  std::size_t bit_count() const { return bits_; }
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t bits_ = 0;
};

/// MSB-first reader over a bit window of a byte buffer. Reading past the window
/// raises CorruptStream, so a frame decoder cannot stray into its neighbour.
class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> data);
  BitReader(std::span<const std::uint8_t> data, std::size_t bit_offset, std::size_t bit_length);

  std::uint32_t read(int width);
  bool read_bit();
  std::int32_t read_signed(int width);

  std::size_t position() const { return pos_ - begin_; }
  std::size_t remaining() const { return end_ - pos_; }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t begin_ = 0;
  std::size_t pos_ = 0;
  std::size_t end_ = 0;
};

}  // namespace gwc
