#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace gwc {

/// Canonical RIFF/WAVE PCM audio. Samples are scaled to [-1, 1) (int16 / 32768).
struct WavAudio {
  std::uint32_t sample_rate = 16000;
  std::uint16_t channels = 1;
  std::uint16_t bits_per_sample = 16;
  std::vector<double> samples;  // channel-interleaved
};

/// Parses any PCM WAV; unknown chunks are skipped. Throws InvalidInput for a
/// malformed or non-PCM file.
WavAudio parse_wav(std::span<const std::uint8_t> bytes);
/// Like parse_wav, then insists on 16-bit PCM, mono, 16 kHz.
WavAudio read_codec_wav(const std::filesystem::path& path);

/// 16-bit PCM; samples are rounded half away from zero and clipped to int16.
std::vector<std::uint8_t> serialize_wav(const WavAudio& audio);
void write_wav(const std::filesystem::path& path, const WavAudio& audio);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace gwc
