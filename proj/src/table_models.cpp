#include "gwc/table_models.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

#include "gwc/huffman.hpp"

namespace gwc::tables {
namespace {

constexpr double kEnvelopeRatio = 0.6;
constexpr int kEnvelopeDiffLimit = 15;
constexpr int kEnvelopeDiffRange = 120;

double laplacian_cdf(double v) {
  const double b = 1.0 / std::numbers::sqrt2;
  return v < 0.0 ? 0.5 * std::exp(v / b) : 1.0 - 0.5 * std::exp(-v / b);
}

}  // namespace

std::vector<double> envelope_diff_weights() {
  std::vector<double> w;
  for (int d = -kEnvelopeDiffLimit; d <= kEnvelopeDiffLimit; ++d) w.push_back(std::pow(kEnvelopeRatio, std::abs(d)));
  double tail = 0.0;
  for (int d = kEnvelopeDiffLimit + 1; d <= kEnvelopeDiffRange; ++d) tail += 2.0 * std::pow(kEnvelopeRatio, d);
  w.push_back(tail);
  return w;
}

std::vector<int> envelope_diff_lengths() { return HuffmanTable::huffman_lengths(envelope_diff_weights()); }

std::vector<double> laplacian_symbol_weights(double step) {
  std::vector<double> w;
  for (int s = -kCoefficientSymbolLimit; s <= kCoefficientSymbolLimit; ++s) {
    const double mass = laplacian_cdf((s + 0.5) * step) - laplacian_cdf((s - 0.5) * step);
    w.push_back(std::max(mass, kProbabilityFloor));
  }
  const double tail = 2.0 * (1.0 - laplacian_cdf((kCoefficientSymbolLimit + 0.5) * step));
  w.push_back(std::max(tail, kProbabilityFloor));
  return w;
}

int finer_symbol_lower_bound(int symbol, double coarse_step, double fine_step) {
  if (symbol == 0) return 0;
  const int magnitude = std::abs(symbol);
  // Values in the cell of `symbol` start at (|s| - 1/2) coarse steps; the first
  // fine symbol whose cell reaches past that point is the bound. The small
  // slack keeps a tie on the boundary on the conservative side.
  const double edge = (magnitude - 0.5) * coarse_step / fine_step;
  const int bound = static_cast<int>(std::ceil(edge - 0.5 - 1e-9));
  return symbol > 0 ? bound : -bound;
}

std::vector<std::vector<int>> coefficient_lengths(const std::vector<double>& steps) {
  const int limit = kCoefficientSymbolLimit;
  const auto escape = static_cast<std::size_t>(2 * limit + 1);
  auto idx = [limit](int s) { return static_cast<std::size_t>(s + limit); };
  auto make_monotone = [&](std::vector<int>& len) {
    for (int s = 1; s <= limit; ++s) {
      len[idx(s)] = std::max(len[idx(s)], len[idx(s - 1)]);
      len[idx(-s)] = std::max(len[idx(-s)], len[idx(-s + 1)]);
    }
  };

  std::vector<std::vector<int>> out;
  for (std::size_t m = 0; m < steps.size(); ++m) {
    if (m > 0 && !(steps[m] < steps[m - 1])) throw std::invalid_argument("quantizer steps must decrease");
    std::vector<double> w = laplacian_symbol_weights(steps[m]);
    // Reserve room for a fixed-length escape: give it at least 2^-E of the mass
    // and grow that share until the Huffman code is no longer than E.
    std::vector<int> len;
    for (double share = std::ldexp(1.0, -kCoefficientEscapeLength);; share *= 2.0) {
      std::vector<double> adjusted = w;
      adjusted[escape] = std::max(w[escape], share);
      len = HuffmanTable::huffman_lengths(adjusted);
      if (len[escape] <= kCoefficientEscapeLength) break;
    }
    len[escape] = kCoefficientEscapeLength;
    make_monotone(len);

    if (m > 0) {
      const auto& coarse = out.back();
      for (int s = -limit; s <= limit; ++s) {
        const int t = finer_symbol_lower_bound(s, steps[m - 1], steps[m]);
        if (std::abs(t) <= limit) len[idx(t)] = std::max(len[idx(t)], coarse[idx(s)]);
      }
      make_monotone(len);
    }
    for (int s = -limit; s <= limit; ++s) {
      if (len[idx(s)] > kCoefficientEscapeLength + kCoefficientRawBits) {
        throw std::logic_error("coefficient code length exceeds the escape cost");
      }
    }
    out.push_back(std::move(len));
  }
  return out;
}

}  // namespace gwc::tables
