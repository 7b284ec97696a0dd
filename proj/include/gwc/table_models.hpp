#pragma once

#include <vector>

namespace gwc::tables {

/// Coefficient symbol alphabet; larger magnitudes escape to a 16-bit raw field.
inline constexpr int kCoefficientSymbolLimit = 31;
inline constexpr int kCoefficientRawBits = 16;
/// Probability floor applied to every modelled symbol, bounding code lengths.
inline constexpr double kProbabilityFloor = 1e-6;
/// Escape codeword length, identical in every coefficient table.
inline constexpr int kCoefficientEscapeLength = 6;

/// Weights over d in [-15, 15] followed by the escape: 0.6^|d|, escape gets the tail mass.
std::vector<double> envelope_diff_weights();
std::vector<int> envelope_diff_lengths();

/// Discretized unit-variance Laplacian at quantizer step `step`: cell masses for
/// s in [-31, 31] followed by the escape tail mass, each floored.
std::vector<double> laplacian_symbol_weights(double step);

/// Code lengths for quantizers 1..steps.size() (steps strictly decreasing).
///
/// Lengths are raised where needed so that the cost of coding any value never
/// drops when moving to the next finer quantizer:
///  - within a table, lengths never decrease with |s| on either side of zero;
///  - the escape codeword costs the same in every table, and together with its
///    raw field at least as much as any in-range symbol;
///  - if the smallest symbol that a value coded as s can become under the next
///    finer step is s', then length(s') in the finer table >= length(s).
/// As a result the coded size of a band is non-increasing in coarseness.
std::vector<std::vector<int>> coefficient_lengths(const std::vector<double>& steps);

/// Smallest-magnitude symbol (same sign) that a value quantized to `symbol` with
/// `coarse_step` can map to under `fine_step`.
int finer_symbol_lower_bound(int symbol, double coarse_step, double fine_step);

}  // namespace gwc::tables
