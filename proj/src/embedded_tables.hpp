#pragma once

#include <vector>

#include "gwc/huffman.hpp"

namespace gwc {

/// Coefficient tables of the default ladder, quantizers 1..24, from the generated data.
std::vector<HuffmanTable> embedded_coefficient_tables();

}  // namespace gwc
