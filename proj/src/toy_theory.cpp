#include "gwc/toy_theory.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <numeric>
#include <string>
#include <unordered_map>

#include "gwc/error.hpp"

namespace gwc::toy {
namespace {

void check_delta(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw InvalidInput("quantizer step must be positive and finite");
}

std::uint64_t hash_index(std::span<const std::int32_t> index) {
  std::uint64_t h = 1469598103934665603ull;
  for (std::int32_t v : index) {
    h ^= static_cast<std::uint32_t>(v);
    h *= 1099511628211ull;
  }
  return h;
}

// Cell bookkeeping inside one simulation run.
struct CellState {
  std::vector<std::int32_t> index;
  std::deque<std::size_t> waiting;  // trials still owed samples, oldest first
  std::size_t mean_count = 0;
  std::vector<double> mean_sum;
};

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t label) {
  // splitmix64 finalizer over the combined value.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (label + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

SineSource::SineSource(int dim) : dim_(dim) {
  if (dim < 1) throw InvalidInput("source dimension must be positive");
}

void SineSource::evaluate(double z1, double z2, std::span<double> out) const {
  if (out.size() != static_cast<std::size_t>(dim_)) throw InvalidInput("output size does not match the dimension");
  const double phase = std::numbers::pi * (z1 + 2.0 * z2);
  const double step = std::numbers::pi * z1;
  double c = std::cos(phase);
  double s = std::sin(phase);
  const double cw = std::cos(step);
  const double sw = std::sin(step);
  for (int k = 0; k < dim_; ++k) {
    out[static_cast<std::size_t>(k)] = c;
    const double next_c = c * cw - s * sw;
    s = s * cw + c * sw;
    c = next_c;
  }
}

std::vector<double> SineSource::evaluate(double z1, double z2) const {
  std::vector<double> x(static_cast<std::size_t>(dim_));
  evaluate(z1, z2, x);
  return x;
}

std::vector<double> SineSource::draw(std::mt19937_64& rng) const {
  const double z1 = uniform01(rng);
  const double z2 = uniform01(rng);
  return evaluate(z1, z2);
}

const char* to_string(CellGrid grid) { return grid == CellGrid::kMidTread ? "midtread" : "midrise"; }

std::int32_t quantize_index(double x, double delta, CellGrid grid) {
  const double q = x / delta;
  return static_cast<std::int32_t>(grid == CellGrid::kMidTread ? std::round(q) : std::floor(q));
}

double reconstruct(std::int32_t index, double delta, CellGrid grid) {
  return grid == CellGrid::kMidTread ? index * delta : (index + 0.5) * delta;
}

std::vector<double> CubicCell::center() const {
  std::vector<double> c(index.size());
  for (std::size_t k = 0; k < index.size(); ++k) c[k] = reconstruct(index[k], delta, grid);
  return c;
}

bool CubicCell::contains(std::span<const double> x) const {
  if (x.size() != index.size()) return false;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (quantize_index(x[k], delta, grid) != index[k]) return false;
  }
  return true;
}

CubicCell midpoint_quantize(std::span<const double> x, double delta, CellGrid grid) {
  check_delta(delta);
  CubicCell cell;
  cell.delta = delta;
  cell.grid = grid;
  cell.index.reserve(x.size());
  for (double v : x) cell.index.push_back(quantize_index(v, delta, grid));
  return cell;
}

std::vector<double> conditional_sample(const CubicCell& cell, const SineSource& source, std::uint64_t seed,
                                       std::uint64_t max_proposals) {
  check_delta(cell.delta);
  if (cell.index.size() != static_cast<std::size_t>(source.dim())) {
    throw InvalidInput("cell dimension does not match the source");
  }
  std::mt19937_64 rng(seed);
  std::vector<double> x(cell.index.size());
  for (std::uint64_t n = 0; n < max_proposals; ++n) {
    const double z1 = uniform01(rng);
    const double z2 = uniform01(rng);
    // Reject on the first component outside the cell before evaluating the rest.
    const double phase = std::numbers::pi * (z1 + 2.0 * z2);
    const double step = std::numbers::pi * z1;
    double c = std::cos(phase);
    double s = std::sin(phase);
    const double cw = std::cos(step);
    const double sw = std::sin(step);
    bool inside = true;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (quantize_index(c, cell.delta, cell.grid) != cell.index[k]) {
        inside = false;
        break;
      }
      x[k] = c;
      const double next_c = c * cw - s * sw;
      s = s * cw + c * sw;
      c = next_c;
    }
    if (inside) return x;
  }
  throw SamplingTimeout("no source draw landed in the cell within " + std::to_string(max_proposals) + " proposals");
}

ToyRun simulate(const ToyConfig& cfg, std::size_t samples_per_trial, bool estimate_cell_means) {
  check_delta(cfg.delta);
  if (cfg.trials == 0) throw InvalidInput("at least one trial is required");
  if (samples_per_trial == 0) throw InvalidInput("at least one conditional sample per trial is required");
  if (estimate_cell_means && cfg.mean_samples < 2) throw InvalidInput("cell means need at least two samples");

  const SineSource source(cfg.dim);
  const auto d = static_cast<std::size_t>(cfg.dim);
  const std::size_t n = cfg.trials;

  ToyRun run;
  run.config = cfg;
  run.samples_per_trial = samples_per_trial;

  // Trial draws and their cells.
  std::mt19937_64 trial_rng(derive_seed(cfg.seed, 1));
  std::vector<double> xs(n * d);
  std::vector<std::size_t> trial_cell(n);
  std::vector<CellState> cells;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> lookup;
  std::vector<std::int32_t> key(d);

  auto find_cell = [&](std::span<const std::int32_t> index) -> CellState* {
    const auto it = lookup.find(hash_index(index));
    if (it == lookup.end()) return nullptr;
    for (std::uint32_t id : it->second) {
      if (std::equal(index.begin(), index.end(), cells[id].index.begin())) return &cells[id];
    }
    return nullptr;
  };

  run.err_midpoint.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    const std::span<double> x(xs.data() + t * d, d);
    source.evaluate(uniform01(trial_rng), uniform01(trial_rng), x);
    double err = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      key[k] = quantize_index(x[k], cfg.delta, cfg.grid);
      const double e = x[k] - reconstruct(key[k], cfg.delta, cfg.grid);
      err += e * e;
    }
    run.err_midpoint[t] = err / static_cast<double>(d);

    CellState* state = find_cell(key);
    if (state == nullptr) {
      lookup[hash_index(key)].push_back(static_cast<std::uint32_t>(cells.size()));
      cells.push_back(CellState{key, {}, 0, std::vector<double>(estimate_cell_means ? d : 0, 0.0)});
      state = &cells.back();
    }
    trial_cell[t] = static_cast<std::size_t>(state - cells.data());
    for (std::size_t i = 0; i < samples_per_trial; ++i) state->waiting.push_back(t);
  }
  run.distinct_cells = cells.size();

  // One stream of source draws serves every open request.
  std::uint64_t outstanding = n * samples_per_trial + (estimate_cell_means ? cells.size() * cfg.mean_samples : 0);
  std::vector<double> samples(n * samples_per_trial * d);
  std::vector<std::size_t> filled(n, 0);
  std::mt19937_64 proposal_rng(derive_seed(cfg.seed, 2));
  std::vector<double> x(d);
  while (outstanding > 0) {
    if (run.proposals >= cfg.max_proposals) {
      throw SamplingTimeout("conditional sampling exceeded " + std::to_string(cfg.max_proposals) + " proposals");
    }
    ++run.proposals;
    source.evaluate(uniform01(proposal_rng), uniform01(proposal_rng), x);
    for (std::size_t k = 0; k < d; ++k) key[k] = quantize_index(x[k], cfg.delta, cfg.grid);
    CellState* state = find_cell(key);
    if (state == nullptr) continue;
    if (!state->waiting.empty()) {
      const std::size_t t = state->waiting.front();
      state->waiting.pop_front();
      std::copy(x.begin(), x.end(), samples.begin() + static_cast<std::ptrdiff_t>((t * samples_per_trial + filled[t]) * d));
      ++filled[t];
      --outstanding;
    } else if (estimate_cell_means && state->mean_count < cfg.mean_samples) {
      for (std::size_t k = 0; k < d; ++k) state->mean_sum[k] += x[k];
      ++state->mean_count;
      --outstanding;
    }
  }

  // Per-trial errors.
  const double dd = static_cast<double>(d);
  run.err_sample.resize(n);
  run.err_mean_k.assign(samples_per_trial, std::vector<double>(n));
  if (estimate_cell_means) {
    run.err_x_mu.resize(n);
    run.err_sample_mu.resize(n);
  }
  const std::size_t k_avg = std::clamp<std::size_t>(cfg.k_avg, 1, samples_per_trial);
  std::vector<double> running(d);
  std::vector<double> mu(d);
  for (std::size_t t = 0; t < n; ++t) {
    const double* xt = xs.data() + t * d;
    const double* first = samples.data() + t * samples_per_trial * d;
    std::fill(running.begin(), running.end(), 0.0);
    for (std::size_t i = 0; i < samples_per_trial; ++i) {
      const double* si = first + i * d;
      double err = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        running[k] += si[k];
        const double e = running[k] / static_cast<double>(i + 1) - xt[k];
        err += e * e;
      }
      run.err_mean_k[i][t] = err / dd;
      if (i + 1 == k_avg) run.mean_marginal.push_back(running[t % d] / static_cast<double>(k_avg));
    }
    run.err_sample[t] = run.err_mean_k[0][t];

    const std::size_t j = t % d;
    run.source_marginal.push_back(xt[j]);
    run.sample_marginal.push_back(first[j]);
    run.midpoint_marginal.push_back(reconstruct(quantize_index(xt[j], cfg.delta, cfg.grid), cfg.delta, cfg.grid));

    if (estimate_cell_means) {
      const CellState& cell = cells[trial_cell[t]];
      double ex = 0.0;
      double es = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        mu[k] = cell.mean_sum[k] / static_cast<double>(cell.mean_count);
        ex += (xt[k] - mu[k]) * (xt[k] - mu[k]);
        es += (first[k] - mu[k]) * (first[k] - mu[k]);
      }
      run.err_x_mu[t] = ex / dd;
      run.err_sample_mu[t] = es / dd;
    }
  }
  return run;
}

TrialStats summarize(std::string method, double delta, std::span<const double> per_trial) {
  if (per_trial.empty()) throw InvalidInput("no trials to summarize");
  TrialStats s;
  s.method = std::move(method);
  s.delta = delta;
  s.trials = per_trial.size();
  const double n = static_cast<double>(per_trial.size());
  s.mse = std::accumulate(per_trial.begin(), per_trial.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : per_trial) ss += (v - s.mse) * (v - s.mse);
  s.std_error = per_trial.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
  return s;
}

ToyExperimentResult run_toy_experiment(const ToyConfig& cfg) {
  const std::size_t k = std::max<std::size_t>(1, cfg.k_avg);
  const ToyRun run = simulate(cfg, k, false);
  ToyExperimentResult r;
  r.midpoint = summarize("midpoint", cfg.delta, run.err_midpoint);
  r.sampling = summarize("sampling", cfg.delta, run.err_sample);
  r.mean_of_k = summarize("mean_of_" + std::to_string(k), cfg.delta, run.err_mean_k[k - 1]);
  return r;
}

namespace {

// Ratio of means with a delta-method standard error over paired trials.
RatioEstimate paired_ratio(std::span<const double> a, std::span<const double> b) {
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  const double r = ma / mb;
  double ss = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double u = a[i] - r * b[i];
    ss += u * u;
  }
  return {r, std::sqrt(ss / (n - 1.0) / n) / mb};
}

}  // namespace

DecompositionReport decomposition_check(const ToyConfig& cfg, std::span<const std::size_t> ks) {
  std::size_t k_max = 1;
  for (std::size_t k : ks) {
    if (k == 0) throw InvalidInput("mean-of-k needs k >= 1");
    k_max = std::max(k_max, k);
  }
  const ToyRun run = simulate(cfg, k_max, true);
  const double correction = 1.0 + 1.0 / static_cast<double>(cfg.mean_samples);

  std::vector<double> lower(run.err_x_mu);
  std::vector<double> sampling(run.err_sample_mu);
  for (double& v : lower) v /= correction;
  for (double& v : sampling) v /= correction;

  DecompositionReport r;
  r.delta = cfg.delta;
  r.trials = cfg.trials;
  r.mean_samples = cfg.mean_samples;
  r.total = summarize("sampling", cfg.delta, run.err_sample);
  r.lower_bound = summarize("conditional_mean", cfg.delta, lower);
  r.sampling_term = summarize("sample_to_mean", cfg.delta, sampling);
  r.additivity_residual = std::abs(r.total.mse - (r.lower_bound.mse + r.sampling_term.mse)) / r.total.mse;
  r.loss_ratio = paired_ratio(run.err_sample, lower);
  for (std::size_t k : ks) {
    MeanOfKLaw law;
    law.k = k;
    law.distortion = summarize("mean_of_k", cfg.delta, run.err_mean_k[k - 1]).mse;
    law.ratio = paired_ratio(run.err_mean_k[k - 1], lower);
    law.expected = 1.0 + 1.0 / static_cast<double>(k);
    r.mean_of_k.push_back(law);
  }
  return r;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw InvalidInput("KS statistic needs two non-empty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double worst = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    worst = std::max(worst, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return worst;
}

double ks_critical_value(std::size_t n, std::size_t m, double c_alpha) {
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  return c_alpha * std::sqrt((nn + mm) / (nn * mm));
}

KsReport distribution_preservation_check(const ToyConfig& cfg) {
  const ToyRun run = simulate(cfg, std::max<std::size_t>(1, cfg.k_avg), false);
  const SineSource source(cfg.dim);
  std::mt19937_64 rng(derive_seed(cfg.seed, 3));
  std::vector<double> reference;
  reference.reserve(cfg.trials);
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    reference.push_back(source.draw(rng)[t % static_cast<std::size_t>(cfg.dim)]);
  }
  KsReport r;
  r.critical = ks_critical_value(reference.size(), run.sample_marginal.size());
  r.sampler = ks_statistic(reference, run.sample_marginal);
  r.midpoint = ks_statistic(reference, run.midpoint_marginal);
  r.mean_of_k = ks_statistic(reference, run.mean_marginal);
  return r;
}

DiscreteSource make_pair_source(std::span<const double> marginal) {
  const std::size_t q = marginal.size();
  if (q == 0 || q * q > 16) throw InvalidInput("pair source supports at most 16 vectors");
  double total = 0.0;
  for (double p : marginal) {
    if (!(p >= 0.0)) throw InvalidInput("marginal probabilities must be non-negative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidInput("marginal probabilities must sum to 1");
  const std::size_t half = (q + 1) / 2;
  DiscreteSource s;
  s.num_cells = half * half;
  for (std::size_t a = 0; a < q; ++a) {
    for (std::size_t b = 0; b < q; ++b) {
      s.probability.push_back(marginal[a] * marginal[b]);
      s.cell.push_back((a / 2) * half + b / 2);
    }
  }
  return s;
}

ConditionalModel true_conditional(const DiscreteSource& source) {
  std::vector<double> cell_mass(source.num_cells, 0.0);
  for (std::size_t x = 0; x < source.probability.size(); ++x) cell_mass[source.cell[x]] += source.probability[x];
  ConditionalModel theta(source.num_cells, std::vector<double>(source.probability.size(), 0.0));
  for (std::size_t x = 0; x < source.probability.size(); ++x) {
    const std::size_t y = source.cell[x];
    if (cell_mass[y] > 0.0) theta[y][x] = source.probability[x] / cell_mass[y];
  }
  return theta;
}

NllBound nll_bound_check(const DiscreteSource& source, const ConditionalModel& theta) {
  if (theta.size() != source.num_cells) throw InvalidInput("one conditional distribution per cell is required");
  for (const auto& row : theta) {
    if (row.size() != source.probability.size()) throw InvalidInput("conditional row size mismatch");
    double sum = 0.0;
    for (double p : row) {
      if (!(p >= 0.0)) throw InvalidInput("conditional probabilities must be non-negative");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw InvalidInput("conditional distribution is not normalized");
  }
  const ConditionalModel truth = true_conditional(source);
  NllBound r;
  for (std::size_t x = 0; x < source.probability.size(); ++x) {
    const double p = source.probability[x];
    if (p == 0.0) continue;
    const std::size_t y = source.cell[x];
    r.expected_nll += -p * std::log(theta[y][x]);
    r.conditional_entropy += -p * std::log(truth[y][x]);
  }
  r.gap = r.expected_nll - r.conditional_entropy;
  return r;
}

}  // namespace gwc::toy
