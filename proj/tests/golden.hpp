#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace gwc::golden {

/// One second of low-passed noise on the int16 grid: s[n] + s[n-1] with 14-bit
/// uniform s from mt19937 seed 2024. Every sample is exactly representable in
/// a 16-bit WAV, so the file and the in-memory signal agree.
inline std::vector<double> noise_input() {
  std::mt19937 rng(2024);
  std::vector<double> x(16000);
  int prev = 0;
  for (auto& v : x) {
    const int s = static_cast<int>(rng() >> 18) - 8192;
    v = static_cast<double>(s + prev) / 32768.0;
    prev = s;
  }
  return x;
}

inline constexpr const char* kInputWav = "golden_noise_16k.wav";
inline constexpr const char* kStream = "golden_noise_16k.gwc";
inline constexpr const char* kDecodedWav = "golden_noise_16k_decoded.wav";

}  // namespace gwc::golden
