#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "trustbias/bias_functions.hpp"
#include "trustbias/trust_graph.hpp"

namespace trustbias {

struct RankReport {
  std::string metric;
  double value = 0.0;
  double parameter = 0.0;
  std::size_t sample_size = 0;
};

/// var(i) = mean over out-edges (W_ij - AA_j)^2; 0 without out-edges.
ScoreVector variance_ground_truth(const TrustGraph& graph);

/// Tie-corrected Kendall tau-b, O(n log n). Returns 0 if either input is
/// constant. Throws DimensionError on length mismatch or n < 2.
double kendall_tau_b(std::span<const double> x, std::span<const double> y);

/// Labels the ceil(fraction * n) nodes with the largest `truth` as positives
/// (ties broken by lower node id) and returns the Mann-Whitney AUC of
/// `predicted` with average ranks for ties. Throws UndefinedAucError when the
/// label set is all-positive or all-negative.
double auc_top_fraction(std::span<const double> predicted,
                        std::span<const double> truth, double fraction);

/// Number of positives `auc_top_fraction` uses for n items.
std::size_t top_fraction_count(std::size_t n, double fraction);

}  // namespace trustbias
