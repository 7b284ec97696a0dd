#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <vector>

#include "gwc/envelope.hpp"
#include "gwc/transform.hpp"

namespace gwc {

inline constexpr double kSnrCapDb = 99.0;
inline constexpr double kBandEnergyFloor = 1e-12;

/// Per-band SNR of a test signal against a reference. Bands whose reference
/// energy is below kBandEnergyFloor are marked invalid and carry no SNR.
struct BandSnrReport {
  std::vector<double> snr_db;
  std::vector<double> band_energy;  // reference energy per band
  std::vector<bool> valid;
  std::size_t frame_count = 0;
};

/// SNR from a reference energy and an error energy, capped at +99 dB.
double snr_db(double reference_energy, double error_energy);

/// Report from per-band energies; used for both codec bands and toy groups.
BandSnrReport snr_from_energies(std::span<const double> reference_energy, std::span<const double> error_energy,
                                std::size_t frame_count = 1);

/// SNR per band in the MDCT domain, energies summed over all frames. The error
/// term is test - reference; the reference alone normalizes, so swapping the
/// arguments changes the result.
BandSnrReport band_snr(std::span<const double> reference, std::span<const double> test,
                       const BandLayout& layout = default_band_layout(), const FrameConfig& cfg = {});
/// Same measurement, one report per frame.
std::vector<BandSnrReport> band_snr_per_frame(std::span<const double> reference, std::span<const double> test,
                                              const BandLayout& layout = default_band_layout(),
                                              const FrameConfig& cfg = {});

struct Histogram {
  double bin_width = 1.0;
  std::vector<double> bin_center;
  std::vector<std::size_t> count;
  std::size_t total = 0;
  double mean = 0.0;  // mean of the histogrammed values
};

/// Histogram of SNR(a) - SNR(b) over every band valid in both, report by report.
/// Bins are centred on integer multiples of bin_width.
Histogram snr_improvement_histogram(std::span<const BandSnrReport> a, std::span<const BandSnrReport> b,
                                    double bin_width = 0.5);

/// Mean squared MDCT coefficient per bin, averaged over frames, in dB.
struct SpectrumEstimate {
  std::vector<double> freq_hz;
  std::vector<double> power_db;
  std::size_t frame_count = 0;
};

inline constexpr double kSpectrumFloorDb = -200.0;

SpectrumEstimate power_spectrum(std::span<const double> signal, const FrameConfig& cfg = {});
SpectrumEstimate error_spectrum(std::span<const double> reference, std::span<const double> test,
                                const FrameConfig& cfg = {});

/// Diagonal positive semi-definite form on a spectral frame: one weight per band.
struct WeightingForm {
  std::vector<double> band_weights;

  static WeightingForm unit(const BandLayout& layout = default_band_layout());
  /// Inverse quantized band variance, 10^(-3 i / 10), from an envelope.
  static WeightingForm inverse_envelope(const Envelope& env);
};

/// sum_f sum_k w(band(k)) (X_f[k] - Y_f[k])^2 divided by the signal length
/// (frames - 1) * stride, so unit weights reproduce the time-domain MSE.
/// `forms` holds one form per frame, or a single form applied to all frames.
double weighted_mse(std::span<const SpectralFrame> reference, std::span<const SpectralFrame> test,
                    std::span<const WeightingForm> forms, const BandLayout& layout = default_band_layout());

void write_band_snr_csv(std::ostream& os, const BandSnrReport& report);
void write_histogram_csv(std::ostream& os, const Histogram& h);
void write_spectrum_csv(std::ostream& os, const SpectrumEstimate& s);

}  // namespace gwc
