// Regenerates the embedded entropy-coding tables and their text resources.
//
//   gwc_tables <resource-dir> <inc-file>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <iostream>
#include <string>

#include "gwc/huffman.hpp"
#include "gwc/table_models.hpp"

namespace {

constexpr int kMaxQuantizer = 24;
constexpr double kBaseStep = 0.5;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i != 0) s += ", ";
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: gwc_tables <resource-dir> <inc-file>\n";
    return 2;
  }
  const std::string dir = argv[1];
  using namespace gwc;

  const auto env_lengths = tables::envelope_diff_lengths();
  const auto env_table = HuffmanTable::from_lengths(-15, 15, env_lengths);
  write_file(dir + "/envelope_diff.txt", env_table.to_text("envelope frequency differences, geometric model ratio 0.6"));

  std::vector<double> steps;
  for (int m = 1; m <= kMaxQuantizer; ++m) steps.push_back(kBaseStep * std::exp2(-(m - 1) / 4.0));
  const auto coeff_lengths = tables::coefficient_lengths(steps);

  std::string inc = "// Generated by gwc_tables. Do not edit.\n\n";
  inc += "constexpr int kEnvelopeDiffLengths[] = {" + join(env_lengths) + "};\n\n";
  inc += "constexpr int kCoefficientLengths[][64] = {\n";
  for (int m = 1; m <= kMaxQuantizer; ++m) {
    const auto& len = coeff_lengths[static_cast<std::size_t>(m - 1)];
    inc += "    {" + join(len) + "},\n";
    const auto table = HuffmanTable::from_lengths(-tables::kCoefficientSymbolLimit, tables::kCoefficientSymbolLimit, len);
    char name[32];
    std::snprintf(name, sizeof name, "/coeff_m%02d.txt", m);
    write_file(dir + name, table.to_text("quantizer " + std::to_string(m) + ", Laplacian model"));
  }
  inc += "};\n";
  write_file(argv[2], inc);
  return 0;
}
