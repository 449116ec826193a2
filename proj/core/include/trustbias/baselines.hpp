#pragma once

#include <string_view>

#include "trustbias/bias_functions.hpp"
#include "trustbias/trust_graph.hpp"

namespace trustbias {

enum class Baseline { ArithmeticAverage, Hits, PageRank };

/// CLI spelling: aa, hits, pagerank.
std::string_view baseline_name(Baseline baseline);
Baseline parse_baseline(std::string_view name);

struct BaselineResult {
  ScoreVector scores;
  int iterations = 0;
  bool converged = true;
  /// No usable (non-negative, non-zero) edge remained.
  bool degenerate = false;
};

/// Mean incoming weight; 0 for nodes without in-edges.
ScoreVector arithmetic_average(const TrustGraph& graph);

struct HitsOptions {
  double tolerance = 1e-8;
  int max_iterations = 200;
  /// false treats every kept edge as weight 1.
  bool use_weights = true;
};

/// Authority vector (unit L2 norm). Negative edges are dropped first.
BaselineResult hits_authority(const TrustGraph& graph, const HitsOptions& options = {});

struct PageRankOptions {
  double damping = 0.85;
  double tolerance = 1e-10;
  int max_iterations = 200;
  bool use_weights = true;
};

/// Weighted PageRank with uniform dangling redistribution; sums to 1.
/// Negative edges are dropped first.
BaselineResult pagerank(const TrustGraph& graph, const PageRankOptions& options = {});

/// Scores of `baseline` with its default options.
ScoreVector baseline_scores(Baseline baseline, const TrustGraph& graph);

}  // namespace trustbias
