#include "gwc/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "gwc/error.hpp"

namespace gwc {
namespace {

std::uint32_t le32(const std::uint8_t* p) {
  return std::uint32_t{p[0]} | std::uint32_t{p[1]} << 8 | std::uint32_t{p[2]} << 16 | std::uint32_t{p[3]} << 24;
}
std::uint16_t le16(const std::uint8_t* p) { return static_cast<std::uint16_t>(p[0] | p[1] << 8); }

void put32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void put16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

}  // namespace

WavAudio parse_wav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 || std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw InvalidInput("not a RIFF/WAVE file");
  }
  WavAudio audio;
  bool have_fmt = false;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* chunk = bytes.data() + pos;
    const std::uint32_t size = le32(chunk + 4);
    const std::size_t body = pos + 8;
    if (size > bytes.size() - body) throw InvalidInput("WAV chunk runs past the end of the file");
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16) throw InvalidInput("WAV fmt chunk too short");
      const std::uint16_t format = le16(bytes.data() + body);
      audio.channels = le16(bytes.data() + body + 2);
      audio.sample_rate = le32(bytes.data() + body + 4);
      audio.bits_per_sample = le16(bytes.data() + body + 14);
      if (format != 1) throw InvalidInput("only PCM WAV files are supported");
      if (audio.channels == 0) throw InvalidInput("WAV file declares zero channels");
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (!have_fmt) throw InvalidInput("WAV data chunk precedes the fmt chunk");
      if (audio.bits_per_sample != 16) throw InvalidInput("only 16-bit PCM WAV files are supported");
      const std::size_t count = size / 2;
      audio.samples.resize(count);
      for (std::size_t i = 0; i < count; ++i) {
        audio.samples[i] = static_cast<std::int16_t>(le16(bytes.data() + body + 2 * i)) / 32768.0;
      }
      return audio;
    }
    pos = body + size + (size & 1u);
  }
  throw InvalidInput("WAV file has no data chunk");
}

WavAudio read_codec_wav(const std::filesystem::path& path) {
  WavAudio audio = parse_wav(read_file(path));
  if (audio.channels != 1) throw InvalidInput("expected mono audio, got " + std::to_string(audio.channels) + " channels");
  if (audio.sample_rate != 16000) {
    throw InvalidInput("expected 16000 Hz audio, got " + std::to_string(audio.sample_rate) + " Hz");
  }
  return audio;
}

std::vector<std::uint8_t> serialize_wav(const WavAudio& audio) {
  const auto data_bytes = static_cast<std::uint32_t>(audio.samples.size() * 2);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  put32(out, 36 + data_bytes);
  out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  put32(out, 16);
  put16(out, 1);
  put16(out, audio.channels);
  put32(out, audio.sample_rate);
  put32(out, audio.sample_rate * audio.channels * 2u);
  put16(out, static_cast<std::uint16_t>(audio.channels * 2u));
  put16(out, 16);
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  put32(out, data_bytes);
  for (double s : audio.samples) {
    const double v = std::clamp(std::round(s * 32768.0), -32768.0, 32767.0);
    put16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
  }
  return out;
}

void write_wav(const std::filesystem::path& path, const WavAudio& audio) { write_file(path, serialize_wav(audio)); }

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("failed reading " + path.string());
  return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace gwc
