#include "cli.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <sstream>

#include "gwc/analysis.hpp"
#include "gwc/codec.hpp"
#include "gwc/error.hpp"
#include "gwc/toy_theory.hpp"
#include "gwc/wav.hpp"

namespace gwc::cli {
namespace {

struct Options {
  std::string input;
  std::string output;
  std::string reference;
  std::string test;
  std::string baseline;
  std::string mode = "snr";
  std::uint32_t bitrate = 16000;
  double delta = 0.5;
  int dim = 10;
  long long trials = 10000;
  long long k_avg = 10;
  std::uint64_t seed = 1;
  std::string grid = "midrise";
  bool decomposition = true;
};

int cmd_encode(const Options& o, std::ostream& out) {
  const WavAudio audio = read_codec_wav(o.input);
  if (audio.samples.empty()) throw InvalidInput("input has no samples");
  EncoderConfig cfg;
  cfg.bitrate = o.bitrate;
  const EncodedStream s = encode(audio.samples, cfg);
  write_file(o.output, s.bytes);
  const double seconds = static_cast<double>(audio.samples.size()) / 16000.0;
  const std::size_t budget = frame_budget(cfg.bitrate);
  out << "frames=" << s.header.num_frames << " bits_per_frame=" << budget << " bytes=" << s.bytes.size()
      << " rate_bps=" << std::fixed << std::setprecision(1)
      << static_cast<double>((s.bytes.size() - kHeaderBytes) * 8) / seconds << '\n';
  return kOk;
}

int cmd_decode(const Options& o, std::ostream& out) {
  const auto bytes = read_file(o.input);
  StreamHeader header;
  WavAudio audio;
  audio.samples = decode_stream(bytes, &header);
  write_wav(o.output, audio);
  out << "frames=" << header.num_frames << " samples=" << header.num_samples << '\n';
  return kOk;
}

int cmd_toy(const Options& o, std::ostream& out) {
  if (o.trials < 1) throw InvalidInput("--trials must be at least 1");
  if (o.k_avg < 1) throw InvalidInput("--k-avg must be at least 1");
  if (o.dim < 1) throw InvalidInput("--dim must be at least 1");
  if (!(o.delta > 0.0)) throw InvalidInput("--delta must be positive");
  toy::ToyConfig cfg;
  cfg.delta = o.delta;
  cfg.dim = o.dim;
  cfg.trials = static_cast<std::size_t>(o.trials);
  cfg.k_avg = static_cast<std::size_t>(o.k_avg);
  cfg.seed = o.seed;
  cfg.grid = o.grid == "midtread" ? toy::CellGrid::kMidTread : toy::CellGrid::kMidRise;

  out << "method,delta,trials,mse,stderr\n";
  out << std::setprecision(6);
  auto row = [&](const toy::TrialStats& s) {
    out << s.method << ',' << s.delta << ',' << s.trials << ',' << s.mse << ',' << s.std_error << '\n';
  };
  const auto r = toy::run_toy_experiment(cfg);
  row(r.midpoint);
  row(r.sampling);
  row(r.mean_of_k);
  if (o.decomposition) {
    const auto d = toy::decomposition_check(cfg);
    row(d.lower_bound);
    row(d.sampling_term);
  }
  return kOk;
}

int cmd_analyze(const Options& o, std::ostream& out) {
  const WavAudio ref = read_codec_wav(o.reference);
  const WavAudio test = read_codec_wav(o.test);
  if (ref.samples.size() != test.samples.size()) throw InvalidInput("reference and test lengths differ");
  if (o.mode == "snr") {
    write_band_snr_csv(out, band_snr(ref.samples, test.samples));
  } else if (o.mode == "spectrum") {
    write_spectrum_csv(out, error_spectrum(ref.samples, test.samples));
  } else {
    if (o.baseline.empty()) throw InvalidInput("histogram mode needs --baseline");
    const WavAudio base = read_codec_wav(o.baseline);
    if (base.samples.size() != ref.samples.size()) throw InvalidInput("baseline length differs");
    const auto a = band_snr_per_frame(ref.samples, test.samples);
    const auto b = band_snr_per_frame(ref.samples, base.samples);
    write_histogram_csv(out, snr_improvement_histogram(a, b));
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transform-domain waveform codec and conditional-sampling toolkit", "gwc"};
  app.require_subcommand(1);
  Options o;

  auto* enc = app.add_subcommand("encode", "Encode a 16 kHz mono 16-bit WAV file");
  enc->add_option("input", o.input, "input WAV")->required();
  enc->add_option("output", o.output, "output .gwc stream")->required();
  enc->add_option("--bitrate", o.bitrate, "bits per second")->check(CLI::Range(8000u, 64000u));

  auto* dec = app.add_subcommand("decode", "Decode a .gwc stream to WAV");
  dec->add_option("input", o.input, "input .gwc stream")->required();
  dec->add_option("output", o.output, "output WAV")->required();

  auto* toy_cmd = app.add_subcommand("toy", "Random-sine conditional sampling experiment, CSV to stdout");
  toy_cmd->add_option("--delta", o.delta, "quantizer step");
  toy_cmd->add_option("--dim", o.dim, "vector dimension");
  toy_cmd->add_option("--trials", o.trials, "Monte Carlo trials");
  toy_cmd->add_option("--k-avg", o.k_avg, "samples averaged by the mean-of-k decoder");
  toy_cmd->add_option("--seed", o.seed, "random seed");
  toy_cmd->add_option("--grid", o.grid, "cell grid")->check(CLI::IsMember({"midrise", "midtread"}));
  toy_cmd->add_flag("!--no-decomposition", o.decomposition, "skip the conditional-mean rows");

  auto* ana = app.add_subcommand("analyze", "Band SNR, error spectrum or SNR-improvement histogram as CSV");
  ana->add_option("reference", o.reference, "reference WAV")->required();
  ana->add_option("test", o.test, "test WAV")->required();
  ana->add_option("--mode", o.mode, "snr | spectrum | histogram")
      ->check(CLI::IsMember({"snr", "spectrum", "histogram"}));
  ana->add_option("--baseline", o.baseline, "second reconstruction for histogram mode");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "gwc: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (enc->parsed()) return cmd_encode(o, out);
    if (dec->parsed()) return cmd_decode(o, out);
    if (toy_cmd->parsed()) return cmd_toy(o, out);
    return cmd_analyze(o, out);
  } catch (const IoError& e) {
    err << "gwc: " << e.what() << '\n';
    return kIo;
  } catch (const CorruptStream& e) {
    err << "gwc: corrupt stream: " << e.what() << '\n';
    return kCorrupt;
  } catch (const UnsupportedStream& e) {
    err << "gwc: unsupported stream: " << e.what() << '\n';
    return kCorrupt;
  } catch (const Error& e) {
    err << "gwc: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace gwc::cli
