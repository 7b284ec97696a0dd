#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace gwc::toy {

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit engine; unlike
/// std::uniform_real_distribution this is identical on every platform.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Mixes a seed with a stream label into an independent 64-bit seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t label);

/// Random unit-amplitude sines x[k] = cos(pi (z1 k + 2 z2)), k = 1..dim.
class SineSource {
 public:
  explicit SineSource(int dim = 10);

  int dim() const { return dim_; }
  /// Deterministic in (z1, z2); evaluated by a rotation recurrence.
  void evaluate(double z1, double z2, std::span<double> out) const;
  std::vector<double> evaluate(double z1, double z2) const;
  std::vector<double> draw(std::mt19937_64& rng) const;

 private:
  int dim_;
};

/// Per-component uniform scalar quantizer geometry.
///  - kMidTread: cells centred on multiples of delta, reconstruction delta * round(x / delta).
///  - kMidRise: cells [j delta, (j + 1) delta), reconstruction at the centre (j + 1/2) delta.
enum class CellGrid { kMidTread, kMidRise };

const char* to_string(CellGrid grid);

/// Voronoi cell of the quantizer: a hypercube of side delta.
struct CubicCell {
  std::vector<std::int32_t> index;
  double delta = 1.0;
  CellGrid grid = CellGrid::kMidTread;

  std::vector<double> center() const;
  /// True iff x quantizes to this cell, i.e. the quantized reconstructions agree.
  bool contains(std::span<const double> x) const;

  friend bool operator==(const CubicCell&, const CubicCell&) = default;
};

std::int32_t quantize_index(double x, double delta, CellGrid grid);
double reconstruct(std::int32_t index, double delta, CellGrid grid);

/// Throws InvalidInput for a non-positive or non-finite delta.
CubicCell midpoint_quantize(std::span<const double> x, double delta, CellGrid grid = CellGrid::kMidTread);

inline constexpr std::uint64_t kDefaultMaxProposals = 100'000'000;

/// Exact draw from p(x | y): fresh source draws until one lands in `cell`.
/// Throws SamplingTimeout after `max_proposals` misses.
std::vector<double> conditional_sample(const CubicCell& cell, const SineSource& source, std::uint64_t seed,
                                       std::uint64_t max_proposals = kDefaultMaxProposals);

struct TrialStats {
  std::string method;
  double delta = 0.0;
  std::size_t trials = 0;
  double mse = 0.0;        // per sample
  double std_error = 0.0;  // of mse
};

struct ToyConfig {
  double delta = 0.5;
  int dim = 10;
  std::size_t trials = 10000;
  std::size_t k_avg = 10;
  std::uint64_t seed = 1;
  CellGrid grid = CellGrid::kMidRise;
  /// Conditional samples per visited cell for the conditional-mean estimate.
  std::size_t mean_samples = 200;
  /// Proposal cap for one simulation run; exceeding it raises SamplingTimeout.
  std::uint64_t max_proposals = 2'000'000'000;
};

/// Per-trial squared errors (per sample) of one simulation run. Conditional
/// samples come from a single stream of fresh source draws: each draw is handed
/// to the oldest open request for the cell it lands in, which is exactly
/// rejection sampling for every request.
struct ToyRun {
  ToyConfig config;
  std::size_t samples_per_trial = 0;
  std::uint64_t proposals = 0;
  std::size_t distinct_cells = 0;

  std::vector<double> err_midpoint;            // |x - x_hat|^2 / d
  std::vector<double> err_sample;              // |x_tilde - x|^2 / d, first conditional sample
  std::vector<std::vector<double>> err_mean_k; // [k-1][trial]: mean of the first k samples vs x
  std::vector<double> err_x_mu;                // |x - mu_hat|^2 / d (empty when mean_samples = 0)
  std::vector<double> err_sample_mu;           // |x_tilde - mu_hat|^2 / d

  // One component per trial (index trial mod d) for marginal comparisons.
  std::vector<double> source_marginal;    // the trial's x
  std::vector<double> sample_marginal;    // first conditional sample
  std::vector<double> midpoint_marginal;  // midpoint reconstruction
  std::vector<double> mean_marginal;      // mean of k_avg samples
};

/// Runs the experiment with max(1, k_avg) conditional samples per trial (plus
/// mean_samples per visited cell when requested).
ToyRun simulate(const ToyConfig& cfg, std::size_t samples_per_trial, bool estimate_cell_means);

TrialStats summarize(std::string method, double delta, std::span<const double> per_trial);

struct ToyExperimentResult {
  TrialStats midpoint;
  TrialStats sampling;
  TrialStats mean_of_k;
};

/// Midpoint reconstruction, one conditional sample, and the mean of k_avg samples.
ToyExperimentResult run_toy_experiment(const ToyConfig& cfg);

struct RatioEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

struct MeanOfKLaw {
  std::size_t k = 0;
  double distortion = 0.0;
  RatioEstimate ratio;  // distortion / optimal
  double expected = 0.0;  // 1 + 1/k
};

struct DecompositionReport {
  double delta = 0.0;
  std::size_t trials = 0;
  std::size_t mean_samples = 0;
  TrialStats total;          // E|x_tilde - x|^2
  TrialStats lower_bound;    // E|x - mu|^2, corrected for the estimated mean
  TrialStats sampling_term;  // E|x_tilde - mu|^2, corrected likewise
  double additivity_residual = 0.0;  // |total - (lower_bound + sampling_term)| / total
  RatioEstimate loss_ratio;          // total / lower_bound, ideally 2
  std::vector<MeanOfKLaw> mean_of_k;
};

/// Checks E|X~ - X|^2 = E|X - mu|^2 + E|X~ - mu|^2 and the factor 2 between the
/// sampled and the conditional-mean reconstruction. mu is the mean of
/// cfg.mean_samples conditional samples per cell; since those samples are
/// independent of the trial, E|x - mu_hat|^2 = (1 + 1/M) E|x - mu|^2 and the
/// two mu terms are divided by that factor.
DecompositionReport decomposition_check(const ToyConfig& cfg, std::span<const std::size_t> ks = {});

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::vector<double> a, std::vector<double> b);
/// c(alpha) sqrt((n + m) / (n m)); c = 1.63 at the 1% level.
double ks_critical_value(std::size_t n, std::size_t m, double c_alpha = 1.63);

struct KsReport {
  double critical = 0.0;
  double sampler = 0.0;
  double midpoint = 0.0;
  double mean_of_k = 0.0;
};

/// Compares one marginal component of each reconstruction with an independent
/// set of source draws of the same size.
KsReport distribution_preservation_check(const ToyConfig& cfg);

/// Finite source of vectors with an enumerable codec partition.
struct DiscreteSource {
  std::vector<double> probability;  // p(x) per vector
  std::vector<std::size_t> cell;    // h(x): cell id per vector
  std::size_t num_cells = 0;
};

/// Pairs (a, b) of i.i.d. symbols with the given marginal; the codec keeps
/// floor(a / 2) and floor(b / 2). Vector index = a * size + b.
DiscreteSource make_pair_source(std::span<const double> marginal);

/// theta[y][x] = p_theta(x | y) over all vectors x, one row per cell.
using ConditionalModel = std::vector<std::vector<double>>;

/// The true conditional p(x | y).
ConditionalModel true_conditional(const DiscreteSource& source);

struct NllBound {
  double expected_nll = 0.0;        // E -log p_theta(X | h(X))
  double conditional_entropy = 0.0; // sum_y p_y E -log p(X | y)
  double gap = 0.0;
};

/// Both sides of the NLL bound by enumeration. Throws InvalidInput when a row of
/// theta is negative or does not sum to 1 within 1e-9.
NllBound nll_bound_check(const DiscreteSource& source, const ConditionalModel& theta);

}  // namespace gwc::toy
