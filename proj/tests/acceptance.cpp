// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gwc/analysis.hpp"
#include "gwc/codec.hpp"
#include "gwc/envelope.hpp"
#include "gwc/rate_control.hpp"
#include "gwc/toy_theory.hpp"
#include "gwc/transform.hpp"
#include "gwc/wav.hpp"
#include "golden.hpp"
#include "oracles.hpp"

namespace {

using namespace gwc;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

bool within_rel(double value, double target, double rel) { return std::abs(value - target) <= rel * target; }

// Toy runs shared between criteria.
struct ToyResults {
  toy::ToyExperimentResult table_half;
  toy::ToyExperimentResult table_one;
  toy::DecompositionReport decomp_quarter;
  toy::DecompositionReport decomp_half;
  toy::DecompositionReport decomp_one;
  toy::KsReport ks_one;
  toy::ToyRun run_half;
};

toy::ToyConfig toy_config(double delta) {
  toy::ToyConfig cfg;
  cfg.delta = delta;
  cfg.dim = 10;
  cfg.trials = 10000;
  cfg.k_avg = 10;
  cfg.seed = 1;
  return cfg;
}

Outcome table_reproduction(const ToyResults& t) {
  Outcome o;
  o.detail.precision(4);
  struct Row {
    const toy::ToyExperimentResult* r;
    double mid, samp, mean;
  };
  for (const Row& row : {Row{&t.table_half, 0.026, 0.011, 0.0056}, Row{&t.table_one, 0.11, 0.068, 0.038}}) {
    const auto& r = *row.r;
    o.detail << " delta=" << r.midpoint.delta << ": " << r.midpoint.mse << "/" << r.sampling.mse << "/"
             << r.mean_of_k.mse;
    o.check(within_rel(r.midpoint.mse, row.mid, 0.10), "midpoint");
    o.check(within_rel(r.sampling.mse, row.samp, 0.15), "sampling");
    o.check(within_rel(r.mean_of_k.mse, row.mean, 0.15), "mean-of-10");
  }
  return o;
}

Outcome loss_factor(const ToyResults& t) {
  Outcome o;
  const auto& r = t.decomp_half.loss_ratio;
  o.detail << " ratio=" << r.value << " +- " << r.std_error << " (delta=0.5, 10000 trials)";
  o.check(r.value >= 1.85 && r.value <= 2.15, "ratio outside [1.85, 2.15]");
  return o;
}

Outcome additivity(const ToyResults& t) {
  Outcome o;
  for (const auto* d : {&t.decomp_quarter, &t.decomp_half, &t.decomp_one}) {
    o.detail << " delta=" << d->delta << ": residual=" << d->additivity_residual;
    o.check(d->additivity_residual < 0.05, "residual at delta " + std::to_string(d->delta));
  }
  return o;
}

Outcome nll_bound() {
  Outcome o;
  const std::vector<double> marginal{0.1, 0.2, 0.3, 0.4};
  const auto src = toy::make_pair_source(marginal);
  const auto eq = toy::nll_bound_check(src, toy::true_conditional(src));
  o.detail << " equality gap=" << eq.gap;
  o.check(std::abs(eq.gap) <= 1e-12, "equality at the true conditional");

  std::mt19937_64 rng(2718);
  std::gamma_distribution<double> g(0.5, 1.0);
  double min_gap = std::numeric_limits<double>::infinity();
  for (int rep = 0; rep < 100; ++rep) {
    toy::ConditionalModel theta(src.num_cells, std::vector<double>(src.probability.size()));
    for (auto& row : theta) {
      double sum = 0.0;
      for (double& p : row) sum += (p = g(rng) + 1e-300);
      for (double& p : row) p /= sum;
    }
    min_gap = std::min(min_gap, toy::nll_bound_check(src, theta).gap);
  }
  o.detail << " min gap over 100 random models=" << min_gap;
  o.check(min_gap >= 0.0, "bound violated");
  return o;
}

Outcome mean_of_k(const ToyResults& t) {
  Outcome o;
  o.detail.precision(4);
  for (const auto& law : t.decomp_half.mean_of_k) {
    o.detail << " k=" << law.k << ": " << law.ratio.value << " +- " << law.ratio.std_error << " (expect "
             << law.expected << ")";
    o.check(std::abs(law.ratio.value - law.expected) <= 3.0 * law.ratio.std_error, "k=" + std::to_string(law.k));
  }

  // Single-sample vs conditional-mean reconstruction, SNR difference per group of 100 trials.
  const auto& run = t.run_half;
  const double correction = 1.0 + 1.0 / static_cast<double>(run.config.mean_samples);
  const std::size_t group = 100;
  const std::size_t groups = run.err_sample.size() / group;
  // Any common reference energy cancels in the difference; one unit per trial is used.
  std::vector<double> ref(groups, static_cast<double>(group)), e_sample(groups, 0.0), e_mean(groups, 0.0);
  for (std::size_t i = 0; i < groups * group; ++i) {
    e_sample[i / group] += run.err_sample[i];
    e_mean[i / group] += run.err_x_mu[i] / correction;
  }
  const std::vector<BandSnrReport> a{snr_from_energies(ref, e_sample)};
  const std::vector<BandSnrReport> b{snr_from_energies(ref, e_mean)};
  const Histogram h = snr_improvement_histogram(a, b, 0.25);
  o.detail << " histogram centre=" << h.mean << " dB over " << h.total << " groups";
  o.check(std::abs(h.mean + 3.0) <= 0.5, "histogram centre");
  return o;
}

Outcome distribution(const ToyResults& t) {
  Outcome o;
  const auto& k = t.ks_one;
  o.detail << " critical=" << k.critical << " sampler=" << k.sampler << " midpoint=" << k.midpoint
           << " mean-of-10=" << k.mean_of_k;
  o.check(k.sampler < k.critical, "sampler rejected");
  o.check(k.midpoint > k.critical, "midpoint accepted");
  o.check(k.mean_of_k > k.critical, "mean-of-10 accepted");
  return o;
}

Outcome perfect_reconstruction() {
  Outcome o;
  double worst_rt = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto x = oracle::gaussian_noise((1 + seed % 10) * 320, 5000 + seed);
    const auto y = mdct_inverse(mdct_forward(x));
    double e = 0.0, s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      e += (x[i] - y[i]) * (x[i] - y[i]);
      s += x[i] * x[i];
    }
    worst_rt = std::max(worst_rt, std::sqrt(e / s));
  }
  const auto x = oracle::gaussian_noise(3200, 77);
  const auto fast = mdct_forward(x);
  const auto slow = oracle::mdct_frames(x, 320);
  double err = 0.0, peak = 0.0;
  for (std::size_t f = 0; f < fast.size(); ++f) {
    for (std::size_t k = 0; k < 320; ++k) {
      err = std::max(err, std::abs(fast[f].coefficients[k] - slow[f][k]));
      peak = std::max(peak, std::abs(slow[f][k]));
    }
  }
  o.detail << " worst round-trip rel RMS=" << worst_rt << " oracle rel err=" << err / peak;
  o.check(worst_rt < 1e-9, "round trip");
  o.check(err / peak < 1e-10, "oracle");
  return o;
}

Outcome entropy_round_trips() {
  Outcome o;
  std::mt19937_64 rng(8080);
  std::normal_distribution<double> n(0.0, 1.0);
  const auto& layout = default_band_layout();
  const auto& ladder = default_ladder();
  std::size_t env_fail = 0, coeff_fail = 0, frame_fail = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    std::vector<double> c(320);
    const double scale = std::pow(10.0, std::uniform_real_distribution<double>(-5.0, 1.0)(rng));
    const double tilt = std::uniform_real_distribution<double>(-0.04, 0.0)(rng);
    for (std::size_t k = 0; k < 320; ++k) c[k] = scale * std::exp(tilt * k) * n(rng);

    Envelope env = compute_envelope(c, layout);
    if (rep % 4 == 0) env.indices[rng() % 20] = static_cast<int>(rng() % 121) - 60;
    BitWriter we;
    encode_envelope(env, envelope_diff_table(), we);
    BitReader re(we.bytes(), 0, we.bit_count());
    if (!(decode_envelope(re, envelope_diff_table(), 20) == env) || re.remaining() != 0) ++env_fail;

    const int m = 1 + static_cast<int>(rng() % 24);
    std::vector<double> v(32);
    for (auto& x : v) x = n(rng) * (rep % 10 == 0 ? 100.0 : 1.0);
    const auto q = quantize_band(v, m, ladder);
    BitReader rq(q.bits.bytes(), 0, q.bits.bit_count());
    if (decode_symbols(rq, v.size(), m, ladder) != q.symbols || rq.remaining() != 0) ++coeff_fail;

    const std::size_t budget = 60 + rng() % 1200;
    BitWriter wf;
    const auto rec = encode_frame(c, budget, wf);
    const auto flat = flatten(c, rec.envelope, layout);
    FlattenedFrame expect{std::vector<double>(320, 0.0)};
    for (std::size_t b = 0; b < 20; ++b) {
      const int mb = rec.allocation.quantizers[b];
      const auto s = quantize_values(std::span(flat.coefficients).subspan(layout.begin(b), layout.width(b)), mb, ladder);
      const auto r = dequantize_band(s, mb, ladder);
      std::copy(r.begin(), r.end(), expect.coefficients.begin() + static_cast<std::ptrdiff_t>(layout.begin(b)));
    }
    BitReader rf(wf.bytes(), 0, budget);
    if (wf.bit_count() != budget || decode_frame(rf) != unflatten(expect, rec.envelope, layout)) ++frame_fail;
  }
  o.detail << " failures envelope=" << env_fail << " coefficients=" << coeff_fail << " frames=" << frame_fail;
  o.check(env_fail == 0 && coeff_fail == 0 && frame_fail == 0, "round trip");

  const auto golden_bytes = encode_stream(golden::noise_input());
  const std::filesystem::path data = GWC_TEST_DATA;
  const bool stream_ok = golden_bytes == read_file(data / golden::kStream);
  const bool wav_ok = serialize_wav(WavAudio{16000, 1, 16, decode_stream(golden_bytes)}) ==
                      read_file(data / golden::kDecodedWav);
  o.detail << " golden stream " << (stream_ok ? "identical" : "differs") << ", golden WAV "
           << (wav_ok ? "identical" : "differs");
  o.check(stream_ok && wav_ok, "golden files");
  return o;
}

Outcome rate_control() {
  Outcome o;
  std::mt19937_64 rng(4242);
  std::normal_distribution<double> n(0.0, 1.0);
  const auto& layout = default_band_layout();
  const auto& ladder = default_ladder();
  std::size_t mismatch = 0, over = 0, not_maximal = 0, non_monotone = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    std::vector<double> c(320);
    const double tilt = std::uniform_real_distribution<double>(-0.05, 0.01)(rng);
    const double scale = std::pow(10.0, std::uniform_real_distribution<double>(-4.0, 1.0)(rng));
    for (std::size_t k = 0; k < 320; ++k) c[k] = scale * std::exp(tilt * k) * n(rng);
    const Envelope env = compute_envelope(c, layout);
    const FlattenedFrame flat = flatten(c, env, layout);
    const std::size_t budget = rng() % 1500;

    int scan = std::numeric_limits<int>::max();
    for (int off = lowest_offset(env, ladder); off <= highest_offset(env); ++off) {
      if (coefficient_bits(env, flat, layout, ladder, off) <= budget) {
        scan = off;
        break;
      }
    }
    const auto a = allocate(env, flat, layout, ladder, budget);
    if (a.offset != scan) ++mismatch;
    if (a.bits_used > budget) ++over;
    if (a.offset > lowest_offset(env, ladder) &&
        coefficient_bits(env, flat, layout, ladder, a.offset - 1) <= budget) {
      ++not_maximal;
    }
    const auto more = allocate(env, flat, layout, ladder, budget + 1 + rng() % 500);
    if (more.offset > a.offset) ++non_monotone;
  }
  o.detail << " mismatches=" << mismatch << " over-budget=" << over << " offset-1 feasible=" << not_maximal
           << " budget non-monotone=" << non_monotone << " (1000 frames)";
  o.check(mismatch == 0 && over == 0 && not_maximal == 0 && non_monotone == 0, "rate control");
  return o;
}

// Regression of measured band SNR on envelope level, demeaned within each frame.
double noise_shaping_slope(std::uint32_t bitrate) {
  const auto x = oracle::colored_noise(500 * 320, 99, 0.95);
  EncoderConfig cfg;
  cfg.bitrate = bitrate;
  const auto stream = encode(x, cfg);
  const auto ref = mdct_forward(x);
  const std::size_t budget = frame_budget(bitrate);
  const auto& layout = default_band_layout();
  std::vector<double> env_db, snr;
  for (std::size_t f = 0; f < stream.frames.size(); ++f) {
    BitReader r(stream.bytes, kHeaderBytes * 8 + f * budget, budget);
    const auto dec = decode_frame(r);
    const auto& rec = stream.frames[f];
    std::vector<double> fe, fs;
    for (std::size_t b = 0; b < 20; ++b) {
      const int m = rec.allocation.quantizers[b];
      if (m == 0 || m == default_ladder().max_index()) continue;
      double es = 0.0, en = 0.0;
      for (std::size_t k = layout.begin(b); k < layout.end(b); ++k) {
        const double e = ref[f].coefficients[k] - dec[k];
        es += ref[f].coefficients[k] * ref[f].coefficients[k];
        en += e * e;
      }
      fe.push_back(kEnvelopeStepDb * rec.envelope.indices[b]);
      fs.push_back(10.0 * std::log10(es / en));
    }
    if (fe.size() < 2) continue;
    double me = 0.0, ms = 0.0;
    for (std::size_t i = 0; i < fe.size(); ++i) {
      me += fe[i];
      ms += fs[i];
    }
    me /= fe.size();
    ms /= fs.size();
    for (std::size_t i = 0; i < fe.size(); ++i) {
      env_db.push_back(fe[i] - me);
      snr.push_back(fs[i] - ms);
    }
  }
  return oracle::slope(env_db, snr);
}

Outcome noise_shaping() {
  Outcome o;
  for (std::uint32_t rate : {16000u, 32000u}) {
    const double s = noise_shaping_slope(rate);
    o.detail << " slope@" << rate / 1000 << "k=" << s;
    o.check(std::abs(s - 0.5) <= 0.1, "slope at " + std::to_string(rate));
  }
  const auto v = oracle::gaussian_noise(100000, 31337);
  const auto& ladder = default_ladder();
  std::vector<double> ms, snr;
  for (int m = 1; m <= ladder.max_index(); ++m) {
    const auto r = dequantize_band(quantize_values(v, m, ladder), m, ladder);
    double es = 0.0, en = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      es += v[i] * v[i];
      en += (v[i] - r[i]) * (v[i] - r[i]);
    }
    ms.push_back(m);
    snr.push_back(10.0 * std::log10(es / en));
  }
  const double spacing = oracle::slope(ms, snr);
  o.detail << " ladder spacing=" << spacing << " dB/step";
  o.check(std::abs(spacing - 1.5) <= 0.3, "ladder spacing");
  return o;
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();

  ToyResults toy_results;
  toy_results.table_half = toy::run_toy_experiment(toy_config(0.5));
  toy_results.table_one = toy::run_toy_experiment(toy_config(1.0));
  const std::vector<std::size_t> ks{2, 5, 10};
  toy_results.decomp_half = toy::decomposition_check(toy_config(0.5), ks);
  toy_results.decomp_one = toy::decomposition_check(toy_config(1.0));
  toy_results.decomp_quarter = toy::decomposition_check(toy_config(0.25));
  toy_results.ks_one = toy::distribution_preservation_check(toy_config(1.0));
  toy_results.run_half = toy::simulate(toy_config(0.5), 1, true);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 toy distortion table", [&] { return table_reproduction(toy_results); }},
      {"2 factor-of-two loss", [&] { return loss_factor(toy_results); }},
      {"3 decomposition additivity", [&] { return additivity(toy_results); }},
      {"4 NLL bound", nll_bound},
      {"5 mean-of-k law", [&] { return mean_of_k(toy_results); }},
      {"6 distribution preservation", [&] { return distribution(toy_results); }},
      {"7 MDCT perfect reconstruction", perfect_reconstruction},
      {"8 entropy coding round trips", entropy_round_trips},
      {"9 rate control", rate_control},
      {"10 noise shaping", noise_shaping},
  };

  bool all = true;
  for (const auto& [name, fn] : criteria) {
    const Outcome o = fn();
    all = all && o.pass;
    std::printf("%s criterion %s:%s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.str().c_str());
  }
  std::printf(
      "NOTE criterion 11: listening-test scores and neural-decoder measurements are not reproducible here; "
      "their mathematical content is covered by criteria 2, 5 and 10.\n");
  const double secs = std::chrono::duration<double>(clock::now() - start).count();
  std::printf("%s (%.1f s)\n", all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL", secs);
  return all ? 0 : 1;
}
