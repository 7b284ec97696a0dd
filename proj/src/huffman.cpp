#include "gwc/huffman.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>

#include "gwc/error.hpp"

namespace gwc {
namespace {

constexpr int kMaxCodeLength = 32;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

HuffmanTable HuffmanTable::from_lengths(int min_value, int max_value, std::vector<int> lengths) {
  if (max_value < min_value) throw InvalidInput("empty huffman alphabet");
  const auto expected = static_cast<std::size_t>(max_value - min_value) + 2;
  if (lengths.size() != expected) throw InvalidInput("huffman length table does not match the alphabet");

  HuffmanTable t;
  t.min_value_ = min_value;
  t.max_value_ = max_value;
  t.lengths_ = std::move(lengths);
  t.codes_.assign(t.lengths_.size(), 0);
  t.count_.assign(kMaxCodeLength + 1, 0);
  t.first_code_.assign(kMaxCodeLength + 1, 0);
  t.first_slot_.assign(kMaxCodeLength + 1, 0);

  double kraft = 0.0;
  for (int len : t.lengths_) {
    if (len < 0 || len > kMaxCodeLength) throw InvalidInput("huffman code length out of range");
    if (len > 0) {
      ++t.count_[static_cast<std::size_t>(len)];
      kraft += std::ldexp(1.0, -len);
    }
  }
  if (kraft > 1.0) throw InvalidInput("huffman code lengths violate the Kraft inequality");

  std::vector<std::uint32_t> order(t.lengths_.size());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return t.lengths_[a] < t.lengths_[b]; });
  for (std::uint32_t s : order) {
    if (t.lengths_[s] > 0) t.sorted_symbols_.push_back(s);
  }

  std::uint64_t code = 0;
  std::uint32_t slot = 0;
  for (int len = 1; len <= kMaxCodeLength; ++len) {
    const auto l = static_cast<std::size_t>(len);
    t.first_code_[l] = static_cast<std::uint32_t>(code);
    t.first_slot_[l] = slot;
    for (std::uint32_t i = 0; i < t.count_[l]; ++i) t.codes_[t.sorted_symbols_[slot + i]] = static_cast<std::uint32_t>(code + i);
    code = (code + t.count_[l]) << 1;
    slot += t.count_[l];
  }
  return t;
}

std::vector<int> HuffmanTable::huffman_lengths(std::span<const double> weights) {
  if (weights.empty()) throw InvalidInput("no symbols to build a huffman code for");
  const std::size_t n = weights.size();
  if (n == 1) return {1};

  struct Node {
    double weight;
    std::size_t id;
  };
  auto heavier = [](const Node& a, const Node& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.id > b.id;
  };
  std::priority_queue<Node, std::vector<Node>, decltype(heavier)> queue(heavier);
  std::vector<std::size_t> parent(2 * n - 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(weights[i] > 0.0)) throw InvalidInput("huffman weights must be positive");
    queue.push({weights[i], i});
  }
  std::size_t next = n;
  while (queue.size() > 1) {
    const Node a = queue.top();
    queue.pop();
    const Node b = queue.top();
    queue.pop();
    parent[a.id] = next;
    parent[b.id] = next;
    queue.push({a.weight + b.weight, next});
    ++next;
  }
  const std::size_t root = next - 1;
  std::vector<int> lengths(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    int depth = 0;
    for (std::size_t v = i; v != root; v = parent[v]) ++depth;
    lengths[i] = depth;
  }
  return lengths;
}

std::string HuffmanTable::codeword(std::size_t symbol) const {
  const int len = lengths_.at(symbol);
  std::string out;
  for (int i = len - 1; i >= 0; --i) out.push_back(((codes_[symbol] >> i) & 1u) ? '1' : '0');
  return out;
}

double HuffmanTable::kraft_sum() const {
  double sum = 0.0;
  for (int len : lengths_) {
    if (len > 0) sum += std::ldexp(1.0, -len);
  }
  return sum;
}

void HuffmanTable::encode(std::size_t symbol, BitWriter& out) const {
  const int len = lengths_.at(symbol);
  if (len == 0) throw InvalidInput("symbol has no codeword in this table");
  out.write(codes_[symbol], len);
}

std::size_t HuffmanTable::decode(BitReader& in) const {
  std::uint32_t code = 0;
  for (int len = 1; len <= kMaxCodeLength; ++len) {
    code = (code << 1) | (in.read_bit() ? 1u : 0u);
    const auto l = static_cast<std::size_t>(len);
    if (count_[l] != 0 && code >= first_code_[l] && code - first_code_[l] < count_[l]) {
      return sorted_symbols_[first_slot_[l] + (code - first_code_[l])];
    }
  }
  throw CorruptStream("invalid huffman codeword");
}

std::string HuffmanTable::to_text(std::string_view title) const {
  std::ostringstream os;
  if (!title.empty()) os << "# " << title << '\n';
  os << "# canonical prefix code: symbol bitstring\n";
  for (std::size_t s = 0; s < lengths_.size(); ++s) {
    if (lengths_[s] == 0) continue;
    if (s == escape_index()) {
      os << "ESC";
    } else {
      os << (min_value_ + static_cast<int>(s));
    }
    os << ' ' << codeword(s) << '\n';
  }
  return os.str();
}

HuffmanTable HuffmanTable::parse(std::string_view text) {
  struct Entry {
    bool escape;
    int value;
    std::string bits;
  };
  std::vector<Entry> entries;
  int lo = 0;
  int hi = 0;
  bool any_value = false;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = trim(text.substr(0, eol));
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (line.empty() || line.front() == '#') continue;
    const auto space = line.find_first_of(" \t");
    if (space == std::string_view::npos) throw InvalidInput("malformed huffman table line");
    const std::string_view sym = trim(line.substr(0, space));
    const std::string_view bits = trim(line.substr(space));
    if (bits.empty() || bits.find_first_not_of("01") != std::string_view::npos) {
      throw InvalidInput("malformed huffman codeword");
    }
    Entry e{sym == "ESC", 0, std::string(bits)};
    if (!e.escape) {
      const auto [ptr, ec] = std::from_chars(sym.data(), sym.data() + sym.size(), e.value);
      if (ec != std::errc() || ptr != sym.data() + sym.size()) throw InvalidInput("malformed huffman symbol");
      lo = any_value ? std::min(lo, e.value) : e.value;
      hi = any_value ? std::max(hi, e.value) : e.value;
      any_value = true;
    }
    entries.push_back(std::move(e));
  }
  if (!any_value) throw InvalidInput("huffman table has no value symbols");

  std::vector<int> lengths(static_cast<std::size_t>(hi - lo) + 2, 0);
  for (const auto& e : entries) {
    const std::size_t idx = e.escape ? lengths.size() - 1 : static_cast<std::size_t>(e.value - lo);
    if (lengths[idx] != 0) throw InvalidInput("duplicate huffman symbol");
    lengths[idx] = static_cast<int>(e.bits.size());
  }
  HuffmanTable table = from_lengths(lo, hi, std::move(lengths));
  for (const auto& e : entries) {
    const std::size_t idx = e.escape ? table.escape_index() : table.index_of(e.value);
    if (table.codeword(idx) != e.bits) throw InvalidInput("huffman table is not in canonical form");
  }
  return table;
}

}  // namespace gwc
