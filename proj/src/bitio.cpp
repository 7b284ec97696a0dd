#include "gwc/bitio.hpp"

#include <string>

#include "gwc/error.hpp"

namespace gwc {

void BitWriter::write_bit(bool bit) {
  if (bits_ % 8 == 0) bytes_.push_back(0);
  if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (bits_ % 8));
  ++bits_;
}

void BitWriter::write(std::uint32_t value, int width) {
  if (width < 1 || width > 32) throw InvalidInput("bit width must be in [1, 32]");
  if (width < 32 && (value >> width) != 0) {
    throw InvalidInput("value " + std::to_string(value) + " does not fit in " + std::to_string(width) + " bits");
  }
  for (int i = width - 1; i >= 0; --i) write_bit(((value >> i) & 1u) != 0);
}

void BitWriter::write_signed(std::int32_t value, int width) {
  if (width < 1 || width > 32) throw InvalidInput("bit width must be in [1, 32]");
  if (width < 32) {
    const std::int64_t lo = -(std::int64_t{1} << (width - 1));
    const std::int64_t hi = (std::int64_t{1} << (width - 1)) - 1;
    if (value < lo || value > hi) {
      throw InvalidInput("signed value " + std::to_string(value) + " does not fit in " + std::to_string(width) + " bits");
    }
  }
  const auto raw = static_cast<std::uint32_t>(value);
  write(width == 32 ? raw : raw & ((1u << width) - 1u), width);
}

void BitWriter::pad_to(std::size_t bit_count) {
  if (bit_count < bits_) throw InvalidInput("cannot pad below the current bit count");
  while (bits_ < bit_count) write_bit(false);
}

void BitWriter::append(const BitWriter& other) {
  for (std::size_t i = 0; i < other.bits_; ++i) {
    write_bit(((other.bytes_[i / 8] >> (7 - i % 8)) & 1u) != 0);
  }
}

BitReader::BitReader(std::span<const std::uint8_t> data) : data_(data), end_(data.size() * 8) {}

BitReader::BitReader(std::span<const std::uint8_t> data, std::size_t bit_offset, std::size_t bit_length)
    : data_(data), begin_(bit_offset), pos_(bit_offset), end_(bit_offset + bit_length) {
  if (end_ > data.size() * 8) throw CorruptStream("bit window extends past the end of the buffer");
}

bool BitReader::read_bit() {
  if (pos_ >= end_) throw CorruptStream("read past end of bit window");
  const bool bit = ((data_[pos_ / 8] >> (7 - pos_ % 8)) & 1u) != 0;
  ++pos_;
  return bit;
}

std::uint32_t BitReader::read(int width) {
  if (width < 1 || width > 32) throw InvalidInput("bit width must be in [1, 32]");
  if (remaining() < static_cast<std::size_t>(width)) throw CorruptStream("read past end of bit window");
  std::uint32_t value = 0;
  for (int i = 0; i < width; ++i) value = (value << 1) | (read_bit() ? 1u : 0u);
  return value;
}

std::int32_t BitReader::read_signed(int width) {
  const std::uint32_t raw = read(width);
  if (width == 32) return static_cast<std::int32_t>(raw);
  const std::uint32_t sign = 1u << (width - 1);
  return static_cast<std::int32_t>(raw ^ sign) - static_cast<std::int32_t>(sign);
}

}  // namespace gwc
