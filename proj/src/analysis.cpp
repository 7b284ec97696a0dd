#include "gwc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "gwc/error.hpp"

namespace gwc {
namespace {

std::vector<double> pad_to_stride(std::span<const double> x, std::size_t stride) {
  std::vector<double> out(x.begin(), x.end());
  out.resize((x.size() + stride - 1) / stride * stride, 0.0);
  return out;
}

struct FramePair {
  std::vector<SpectralFrame> reference;
  std::vector<SpectralFrame> error;
};

FramePair analyze_pair(std::span<const double> reference, std::span<const double> test, const FrameConfig& cfg) {
  if (reference.size() != test.size()) throw InvalidInput("reference and test lengths differ");
  if (reference.empty()) throw InvalidInput("cannot analyze empty signals");
  std::vector<double> err(reference.size());
  for (std::size_t i = 0; i < err.size(); ++i) err[i] = test[i] - reference[i];
  const Mdct mdct(cfg);
  return {mdct.forward(pad_to_stride(reference, cfg.stride)), mdct.forward(pad_to_stride(err, cfg.stride))};
}

void accumulate_bands(const SpectralFrame& ref, const SpectralFrame& err, const BandLayout& layout,
                      std::vector<double>& ref_energy, std::vector<double>& err_energy) {
  if (ref.coefficients.size() != layout.num_bins()) throw InvalidInput("frame length does not match the band layout");
  for (std::size_t b = 0; b < layout.num_bands(); ++b) {
    for (std::size_t k = layout.begin(b); k < layout.end(b); ++k) {
      ref_energy[b] += ref.coefficients[k] * ref.coefficients[k];
      err_energy[b] += err.coefficients[k] * err.coefficients[k];
    }
  }
}

}  // namespace

double snr_db(double reference_energy, double error_energy) {
  if (error_energy <= 0.0) return kSnrCapDb;
  return std::min(kSnrCapDb, 10.0 * std::log10(reference_energy / error_energy));
}

BandSnrReport snr_from_energies(std::span<const double> reference_energy, std::span<const double> error_energy,
                                std::size_t frame_count) {
  if (reference_energy.size() != error_energy.size()) throw InvalidInput("energy vectors differ in length");
  BandSnrReport r;
  r.frame_count = frame_count;
  for (std::size_t b = 0; b < reference_energy.size(); ++b) {
    const bool ok = reference_energy[b] >= kBandEnergyFloor;
    r.valid.push_back(ok);
    r.band_energy.push_back(reference_energy[b]);
    r.snr_db.push_back(ok ? snr_db(reference_energy[b], error_energy[b]) : 0.0);
  }
  return r;
}

BandSnrReport band_snr(std::span<const double> reference, std::span<const double> test, const BandLayout& layout,
                       const FrameConfig& cfg) {
  const FramePair p = analyze_pair(reference, test, cfg);
  std::vector<double> ref_energy(layout.num_bands(), 0.0);
  std::vector<double> err_energy(layout.num_bands(), 0.0);
  for (std::size_t f = 0; f < p.reference.size(); ++f) {
    accumulate_bands(p.reference[f], p.error[f], layout, ref_energy, err_energy);
  }
  return snr_from_energies(ref_energy, err_energy, p.reference.size());
}

std::vector<BandSnrReport> band_snr_per_frame(std::span<const double> reference, std::span<const double> test,
                                              const BandLayout& layout, const FrameConfig& cfg) {
  const FramePair p = analyze_pair(reference, test, cfg);
  std::vector<BandSnrReport> out;
  for (std::size_t f = 0; f < p.reference.size(); ++f) {
    std::vector<double> ref_energy(layout.num_bands(), 0.0);
    std::vector<double> err_energy(layout.num_bands(), 0.0);
    accumulate_bands(p.reference[f], p.error[f], layout, ref_energy, err_energy);
    out.push_back(snr_from_energies(ref_energy, err_energy, 1));
  }
  return out;
}

Histogram snr_improvement_histogram(std::span<const BandSnrReport> a, std::span<const BandSnrReport> b,
                                    double bin_width) {
  if (a.size() != b.size()) throw InvalidInput("histogram inputs have different report counts");
  if (!(bin_width > 0.0)) throw InvalidInput("bin width must be positive");
  std::map<long long, std::size_t> bins;
  Histogram h;
  h.bin_width = bin_width;
  double sum = 0.0;
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (a[r].snr_db.size() != b[r].snr_db.size()) throw InvalidInput("histogram inputs have different band counts");
    for (std::size_t band = 0; band < a[r].snr_db.size(); ++band) {
      if (!a[r].valid[band] || !b[r].valid[band]) continue;
      const double diff = a[r].snr_db[band] - b[r].snr_db[band];
      ++bins[std::llround(diff / bin_width)];
      sum += diff;
      ++h.total;
    }
  }
  for (const auto& [bin, count] : bins) {
    h.bin_center.push_back(static_cast<double>(bin) * bin_width);
    h.count.push_back(count);
  }
  h.mean = h.total > 0 ? sum / static_cast<double>(h.total) : 0.0;
  return h;
}

SpectrumEstimate power_spectrum(std::span<const double> signal, const FrameConfig& cfg) {
  if (signal.size() < cfg.stride) throw InvalidInput("spectrum needs at least one frame of signal");
  const auto frames = Mdct(cfg).forward(pad_to_stride(signal, cfg.stride));
  SpectrumEstimate s;
  s.frame_count = frames.size();
  std::vector<double> power(cfg.stride, 0.0);
  for (const auto& f : frames) {
    for (std::size_t k = 0; k < cfg.stride; ++k) power[k] += f.coefficients[k] * f.coefficients[k];
  }
  for (std::size_t k = 0; k < cfg.stride; ++k) {
    const double p = power[k] / static_cast<double>(frames.size());
    s.freq_hz.push_back((static_cast<double>(k) + 0.5) * cfg.sample_rate / (2.0 * static_cast<double>(cfg.stride)));
    s.power_db.push_back(p > 0.0 ? std::max(kSpectrumFloorDb, 10.0 * std::log10(p)) : kSpectrumFloorDb);
  }
  return s;
}

SpectrumEstimate error_spectrum(std::span<const double> reference, std::span<const double> test,
                                const FrameConfig& cfg) {
  if (reference.size() != test.size()) throw InvalidInput("reference and test lengths differ");
  std::vector<double> err(reference.size());
  for (std::size_t i = 0; i < err.size(); ++i) err[i] = test[i] - reference[i];
  return power_spectrum(err, cfg);
}

WeightingForm WeightingForm::unit(const BandLayout& layout) {
  return {std::vector<double>(layout.num_bands(), 1.0)};
}

WeightingForm WeightingForm::inverse_envelope(const Envelope& env) {
  WeightingForm form;
  for (int i : env.indices) {
    const double g = envelope_gain(i);
    form.band_weights.push_back(1.0 / (g * g));
  }
  return form;
}

double weighted_mse(std::span<const SpectralFrame> reference, std::span<const SpectralFrame> test,
                    std::span<const WeightingForm> forms, const BandLayout& layout) {
  if (reference.size() != test.size()) throw InvalidInput("frame counts differ");
  if (reference.size() < 2) throw InvalidInput("weighted MSE needs at least two frames");
  if (forms.size() != 1 && forms.size() != reference.size()) throw InvalidInput("need one form, or one per frame");
  double acc = 0.0;
  for (std::size_t f = 0; f < reference.size(); ++f) {
    const WeightingForm& form = forms.size() == 1 ? forms[0] : forms[f];
    if (form.band_weights.size() != layout.num_bands()) throw InvalidInput("form does not match the band layout");
    const auto& x = reference[f].coefficients;
    const auto& y = test[f].coefficients;
    if (x.size() != layout.num_bins() || y.size() != layout.num_bins()) throw InvalidInput("frame length mismatch");
    for (std::size_t b = 0; b < layout.num_bands(); ++b) {
      const double w = form.band_weights[b];
      if (w < 0.0) throw InvalidInput("weights must be non-negative");
      for (std::size_t k = layout.begin(b); k < layout.end(b); ++k) acc += w * (x[k] - y[k]) * (x[k] - y[k]);
    }
  }
  return acc / static_cast<double>((reference.size() - 1) * layout.num_bins());
}

void write_band_snr_csv(std::ostream& os, const BandSnrReport& report) {
  os << "band,snr_db\n";
  for (std::size_t b = 0; b < report.snr_db.size(); ++b) {
    os << b << ',';
    if (report.valid[b]) {
      os << report.snr_db[b];
    } else {
      os << "nan";
    }
    os << '\n';
  }
}

void write_histogram_csv(std::ostream& os, const Histogram& h) {
  os << "bin_center_db,count\n";
  for (std::size_t i = 0; i < h.count.size(); ++i) os << h.bin_center[i] << ',' << h.count[i] << '\n';
}

void write_spectrum_csv(std::ostream& os, const SpectrumEstimate& s) {
  os << "freq_hz,power_db\n";
  for (std::size_t k = 0; k < s.freq_hz.size(); ++k) os << s.freq_hz[k] << ',' << s.power_db[k] << '\n';
}

}  // namespace gwc
