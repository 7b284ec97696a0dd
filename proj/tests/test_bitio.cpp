#include "gwc/bitio.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "gwc/error.hpp"

namespace gwc {
namespace {

TEST(BitWriter, PacksMsbFirst) {
  BitWriter w;
  w.write(0b101, 3);
  w.write(0b1, 1);
  w.write(0xF, 4);
  w.write(0b01, 2);
  EXPECT_EQ(w.bit_count(), 10u);
  ASSERT_EQ(w.bytes().size(), 2u);
  EXPECT_EQ(w.bytes()[0], 0b10111111);
  EXPECT_EQ(w.bytes()[1], 0b01000000);
}

TEST(BitWriter, SignedFieldIsTwosComplement) {
  BitWriter w;
  w.write_signed(-1, 8);
  w.write_signed(-128, 8);
  w.write_signed(127, 8);
  EXPECT_EQ(w.bytes(), (std::vector<std::uint8_t>{0xFF, 0x80, 0x7F}));
  EXPECT_THROW(w.write_signed(128, 8), InvalidInput);
}

TEST(BitIo, RandomFieldsRoundTrip) {
  std::mt19937_64 rng(42);
  for (int rep = 0; rep < 200; ++rep) {
    BitWriter w;
    std::vector<std::pair<std::uint32_t, int>> fields;
    for (int i = 0; i < 100; ++i) {
      const int width = 1 + static_cast<int>(rng() % 32);
      const std::uint32_t v = static_cast<std::uint32_t>(rng()) & (width == 32 ? 0xFFFFFFFFu : ((1u << width) - 1));
      fields.emplace_back(v, width);
      w.write(v, width);
    }
    BitReader r(w.bytes());
    for (const auto& [v, width] : fields) ASSERT_EQ(r.read(width), v);
    EXPECT_LT(r.remaining(), 8u);
  }
}

TEST(BitIo, AppendAndPad) {
  BitWriter a;
  a.write(0b11, 2);
  BitWriter b;
  b.write(0b101, 3);
  a.append(b);
  a.pad_to(12);
  EXPECT_EQ(a.bit_count(), 12u);
  BitReader r(a.bytes());
  EXPECT_EQ(r.read(5), 0b11101u);
  EXPECT_EQ(r.read(7), 0u);
}

TEST(BitReader, WindowIsEnforced) {
  const std::vector<std::uint8_t> data{0xAB, 0xCD, 0xEF};
  BitReader r(data, 4, 8);
  EXPECT_EQ(r.read(8), 0xBCu);
  EXPECT_EQ(r.remaining(), 0u);
  EXPECT_THROW(r.read_bit(), CorruptStream);
  EXPECT_THROW(BitReader(data, 20, 8), CorruptStream);
}

TEST(BitReader, SignedRead) {
  const std::vector<std::uint8_t> data{0xF6};
  BitReader r(data);
  EXPECT_EQ(r.read_signed(4), -1);
  EXPECT_EQ(r.read_signed(4), 6);
}

}  // namespace
}  // namespace gwc
