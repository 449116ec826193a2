#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "trustbias/baselines.hpp"
#include "trustbias/bias_functions.hpp"
#include "trustbias/solver.hpp"
#include "trustbias/trust_graph.hpp"

namespace trustbias {

struct GraphSummary {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  Signedness signedness = Signedness::Unsigned;
};

/// One metric value. Rows with metric "time_ms" are timings; everything else
/// is deterministic for fixed inputs and seeds.
struct ReportRow {
  std::string algorithm;  ///< "l1-avg", "mb", ...
  std::string target;     ///< "bias", "prestige" or "solve"
  std::string metric;     ///< "auc", "kendall_tau", "time_ms"
  std::string reference;  ///< "variance", "aa", "hits", "pagerank", "original"
  double parameter = std::numeric_limits<double>::quiet_NaN();
  double value = 0.0;
  std::size_t nodes = 0;
  std::size_t edges = 0;

  bool is_timing() const { return metric == "time_ms"; }
};

struct ExperimentReport {
  std::string kind;
  std::string parameter_name;  ///< meaning of ReportRow::parameter, if any
  GraphSummary graph;
  std::vector<std::uint64_t> seeds;
  std::vector<ReportRow> rows;
  std::vector<std::string> warnings;
};

struct ExperimentOptions {
  StoppingRule stop = StoppingRule::fixed(15);
  int threads = 1;
  double top_fraction = 0.05;
};

struct SpamInjection {
  TrustGraph graph;
  std::vector<NodeId> spammers;  ///< sorted ascending
  bool empty = false;            ///< ratio * n < 1, nothing was changed
};

/// Picks round(ratio * n) spammers among nodes with out-edges and rewrites
/// their ratings against the consensus: targets whose arithmetic-average
/// score is below the median get a high weight, the rest a low one.
/// Unsigned bands [0.8, 1] / [0, 0.2]; signed bands [0.6, 1] / [-1, -0.6].
SpamInjection inject_spam(const TrustGraph& graph, double ratio, std::uint64_t seed);

/// AUC (top fraction) and Kendall tau of each algorithm's bias ranking
/// against the variance ground truth. MB ranks by |raw bias|.
ExperimentReport bias_comparison(const TrustGraph& graph,
                                 const std::vector<BiasFunctionSpec>& algorithms,
                                 const ExperimentOptions& options = {});

/// Kendall tau between each algorithm's prestige and each baseline.
ExperimentReport prestige_comparison(const TrustGraph& graph,
                                     const std::vector<BiasFunctionSpec>& algorithms,
                                     const std::vector<Baseline>& baselines,
                                     const ExperimentOptions& options = {});

/// Kendall tau between rankings on the original and spammed graphs, averaged
/// over `seeds`, for both bias and prestige.
ExperimentReport robustness_experiment(const TrustGraph& graph,
                                       const std::vector<double>& ratios,
                                       const std::vector<std::uint64_t>& seeds,
                                       const std::vector<BiasFunctionSpec>& algorithms,
                                       const ExperimentOptions& options = {});

/// Solve time on nested random node subsets at each fraction (strictly
/// increasing, in (0, 1]). Minimum of `repetitions` wall-clock runs.
ExperimentReport scalability_experiment(const TrustGraph& graph,
                                        const std::vector<double>& fractions,
                                        std::uint64_t seed,
                                        const std::vector<BiasFunctionSpec>& algorithms,
                                        const ExperimentOptions& options = {},
                                        int repetitions = 3);

/// Node subsets used by `scalability_experiment`; each contains the previous.
std::vector<std::vector<NodeId>> nested_subsets(std::size_t node_count,
                                                const std::vector<double>& fractions,
                                                std::uint64_t seed);

/// Bias tau vs variance and prestige tau vs each baseline for every lambda.
ExperimentReport lambda_sweep(const TrustGraph& graph, const std::vector<double>& lambdas,
                              const std::vector<BiasFunctionSpec>& algorithms,
                              const std::vector<Baseline>& baselines,
                              const ExperimentOptions& options = {});

/// Display name used in report rows ("l2-avg" stays "l2-avg" on signed graphs).
std::string algorithm_label(const BiasFunctionSpec& spec);

std::string to_json(const ExperimentReport& report, bool include_timings = true);
std::string to_csv(const ExperimentReport& report);

}  // namespace trustbias
