#include "trustbias/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "trustbias/errors.hpp"
#include "trustbias/metrics.hpp"

namespace trustbias {
namespace {

GraphSummary summarize(const TrustGraph& graph) {
  return {graph.node_count(), graph.edge_count(), graph.signedness()};
}

void require_algorithms(const std::vector<BiasFunctionSpec>& algorithms) {
  if (algorithms.empty()) throw DomainError("no algorithms given");
}

double median(ScoreVector values) {
  const auto n = values.size();
  std::sort(values.begin(), values.end());
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

SolveOptions solve_options(const ExperimentOptions& options) {
  SolveOptions out;
  out.threads = options.threads;
  return out;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::string algorithm_label(const BiasFunctionSpec& spec) {
  return std::string(variant_name(spec.variant));
}

SpamInjection inject_spam(const TrustGraph& graph, double ratio, std::uint64_t seed) {
  if (!(ratio >= 0.0 && ratio < 1.0)) {
    throw DomainError("spam ratio must lie in [0, 1)");
  }
  const double wanted = ratio * static_cast<double>(graph.node_count());
  if (wanted < 1.0) {
    return SpamInjection{graph, {}, true};
  }

  std::vector<NodeId> eligible;
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    if (graph.out_degree(v) > 0) eligible.push_back(v);
  }
  const auto count = std::min<std::size_t>(
      static_cast<std::size_t>(std::llround(wanted)), eligible.size());

  std::mt19937_64 rng(seed);
  std::shuffle(eligible.begin(), eligible.end(), rng);
  std::vector<NodeId> spammers(eligible.begin(),
                               eligible.begin() + static_cast<std::ptrdiff_t>(count));
  std::sort(spammers.begin(), spammers.end());

  const auto consensus = arithmetic_average(graph);
  const double cut = median(consensus);
  const bool is_signed = graph.is_signed();
  std::uniform_real_distribution<double> high(is_signed ? 0.6 : 0.8, 1.0);
  std::uniform_real_distribution<double> low(is_signed ? -1.0 : 0.0,
                                             is_signed ? -0.6 : 0.2);

  std::vector<bool> is_spammer(graph.node_count(), false);
  for (NodeId s : spammers) is_spammer[s] = true;

  // Edges are ordered by (source, target), which fixes the draw order.
  std::vector<Edge> edges(graph.edges().begin(), graph.edges().end());
  for (auto& e : edges) {
    if (!is_spammer[e.source]) continue;
    e.weight = consensus[e.target] < cut ? high(rng) : low(rng);
  }
  std::vector<std::uint64_t> labels(graph.labels().begin(), graph.labels().end());
  return SpamInjection{TrustGraph::from_edges(graph.node_count(), std::move(edges),
                                              graph.signedness(), std::move(labels)),
                       std::move(spammers), false};
}

ExperimentReport bias_comparison(const TrustGraph& graph,
                                 const std::vector<BiasFunctionSpec>& algorithms,
                                 const ExperimentOptions& options) {
  require_algorithms(algorithms);
  ExperimentReport report;
  report.kind = "bias_comparison";
  report.parameter_name = "top_fraction";
  report.graph = summarize(graph);

  const auto truth = variance_ground_truth(graph);
  for (const auto& spec : algorithms) {
    const auto result = solve_algorithm(graph, spec, options.stop, solve_options(options));
    const auto ranking = result.ranking_bias();
    const auto label = algorithm_label(spec);
    report.rows.push_back({label, "bias", "auc", "variance", options.top_fraction,
                           auc_top_fraction(ranking, truth, options.top_fraction),
                           graph.node_count(), graph.edge_count()});
    report.rows.push_back({label, "bias", "kendall_tau", "variance",
                           std::numeric_limits<double>::quiet_NaN(),
                           kendall_tau_b(ranking, truth), graph.node_count(),
                           graph.edge_count()});
  }
  return report;
}

ExperimentReport prestige_comparison(const TrustGraph& graph,
                                     const std::vector<BiasFunctionSpec>& algorithms,
                                     const std::vector<Baseline>& baselines,
                                     const ExperimentOptions& options) {
  require_algorithms(algorithms);
  ExperimentReport report;
  report.kind = "prestige_comparison";
  report.graph = summarize(graph);

  std::vector<ScoreVector> reference;
  for (auto b : baselines) reference.push_back(baseline_scores(b, graph));
  for (const auto& spec : algorithms) {
    const auto result = solve_algorithm(graph, spec, options.stop, solve_options(options));
    for (std::size_t k = 0; k < baselines.size(); ++k) {
      report.rows.push_back({algorithm_label(spec), "prestige", "kendall_tau",
                             std::string(baseline_name(baselines[k])),
                             std::numeric_limits<double>::quiet_NaN(),
                             kendall_tau_b(result.prestige, reference[k]),
                             graph.node_count(), graph.edge_count()});
    }
  }
  return report;
}

ExperimentReport robustness_experiment(const TrustGraph& graph,
                                       const std::vector<double>& ratios,
                                       const std::vector<std::uint64_t>& seeds,
                                       const std::vector<BiasFunctionSpec>& algorithms,
                                       const ExperimentOptions& options) {
  require_algorithms(algorithms);
  if (seeds.empty()) throw DomainError("no seeds given");
  ExperimentReport report;
  report.kind = "robustness";
  report.parameter_name = "spam_ratio";
  report.graph = summarize(graph);
  report.seeds = seeds;

  std::vector<SolveResult> original;
  for (const auto& spec : algorithms) {
    original.push_back(solve_algorithm(graph, spec, options.stop, solve_options(options)));
  }

  for (double ratio : ratios) {
    std::vector<double> bias_tau(algorithms.size(), 0.0);
    std::vector<double> prestige_tau(algorithms.size(), 0.0);
    for (auto seed : seeds) {
      const auto spam = inject_spam(graph, ratio, seed);
      if (spam.empty) {
        report.warnings.push_back("ratio " + format_number(ratio) + ", seed " +
                                  std::to_string(seed) + ": no spammers injected");
      }
      for (std::size_t a = 0; a < algorithms.size(); ++a) {
        const auto noisy = solve_algorithm(spam.graph, algorithms[a], options.stop,
                                           solve_options(options));
        bias_tau[a] += kendall_tau_b(original[a].ranking_bias(), noisy.ranking_bias());
        prestige_tau[a] += kendall_tau_b(original[a].prestige, noisy.prestige);
      }
    }
    const auto reps = static_cast<double>(seeds.size());
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
      const auto label = algorithm_label(algorithms[a]);
      report.rows.push_back({label, "bias", "kendall_tau", "original", ratio,
                             bias_tau[a] / reps, graph.node_count(), graph.edge_count()});
      report.rows.push_back({label, "prestige", "kendall_tau", "original", ratio,
                             prestige_tau[a] / reps, graph.node_count(),
                             graph.edge_count()});
    }
  }
  return report;
}

std::vector<std::vector<NodeId>> nested_subsets(std::size_t node_count,
                                                const std::vector<double>& fractions,
                                                std::uint64_t seed) {
  if (fractions.empty()) throw DomainError("no subset fractions given");
  for (std::size_t k = 0; k < fractions.size(); ++k) {
    const double f = fractions[k];
    if (!(f > 0.0 && f <= 1.0)) throw DomainError("subset fraction must lie in (0, 1]");
    if (k > 0 && !(f > fractions[k - 1])) {
      throw DomainError("subset fractions must be strictly increasing");
    }
  }
  std::vector<NodeId> order(node_count);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<std::vector<NodeId>> subsets;
  for (double f : fractions) {
    auto size = static_cast<std::size_t>(std::llround(f * static_cast<double>(node_count)));
    size = std::clamp<std::size_t>(size, 1, node_count);
    std::vector<NodeId> subset(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(size));
    std::sort(subset.begin(), subset.end());
    subsets.push_back(std::move(subset));
  }
  return subsets;
}

ExperimentReport scalability_experiment(const TrustGraph& graph,
                                        const std::vector<double>& fractions,
                                        std::uint64_t seed,
                                        const std::vector<BiasFunctionSpec>& algorithms,
                                        const ExperimentOptions& options,
                                        int repetitions) {
  require_algorithms(algorithms);
  if (repetitions < 1) throw DomainError("repetitions must be >= 1");
  ExperimentReport report;
  report.kind = "scalability";
  report.parameter_name = "node_fraction";
  report.graph = summarize(graph);
  report.seeds = {seed};

  const auto subsets = nested_subsets(graph.node_count(), fractions, seed);
  for (std::size_t k = 0; k < subsets.size(); ++k) {
    const auto sub = induced_subgraph(graph, subsets[k]);
    for (const auto& spec : algorithms) {
      double best_ms = std::numeric_limits<double>::infinity();
      for (int rep = 0; rep < repetitions; ++rep) {
        const auto start = std::chrono::steady_clock::now();
        const auto result = solve_algorithm(sub, spec, options.stop, solve_options(options));
        const auto stop = std::chrono::steady_clock::now();
        best_ms = std::min(
            best_ms, std::chrono::duration<double, std::milli>(stop - start).count());
        if (result.prestige.size() != sub.node_count()) throw Error("solver output size");
      }
      report.rows.push_back({algorithm_label(spec), "solve", "time_ms", "", fractions[k],
                             best_ms, sub.node_count(), sub.edge_count()});
    }
  }
  return report;
}

ExperimentReport lambda_sweep(const TrustGraph& graph, const std::vector<double>& lambdas,
                              const std::vector<BiasFunctionSpec>& algorithms,
                              const std::vector<Baseline>& baselines,
                              const ExperimentOptions& options) {
  require_algorithms(algorithms);
  if (lambdas.empty()) throw DomainError("no lambda values given");
  ExperimentReport report;
  report.kind = "lambda_sweep";
  report.parameter_name = "lambda";
  report.graph = summarize(graph);

  // Fail before any work if a (variant, lambda) pair is inadmissible.
  for (double lambda : lambdas) {
    for (auto spec : algorithms) {
      spec.lambda = lambda;
      if (!(lambda >= 0.0 && lambda < 1.0)) {
        throw DomainError(algorithm_label(spec) + ": lambda must lie in [0, 1), got " +
                          format_number(lambda));
      }
      if (!(spec.variant == BiasVariant::MB && graph.is_signed())) {
        validate_spec(resolve_for_graph(spec, graph), graph);
      }
    }
  }

  const auto truth = variance_ground_truth(graph);
  std::vector<ScoreVector> reference;
  for (auto b : baselines) reference.push_back(baseline_scores(b, graph));

  for (double lambda : lambdas) {
    for (auto spec : algorithms) {
      spec.lambda = lambda;
      const auto result = solve_algorithm(graph, spec, options.stop, solve_options(options));
      const auto label = algorithm_label(spec);
      report.rows.push_back({label, "bias", "kendall_tau", "variance", lambda,
                             kendall_tau_b(result.ranking_bias(), truth),
                             graph.node_count(), graph.edge_count()});
      for (std::size_t k = 0; k < baselines.size(); ++k) {
        report.rows.push_back({label, "prestige", "kendall_tau",
                               std::string(baseline_name(baselines[k])), lambda,
                               kendall_tau_b(result.prestige, reference[k]),
                               graph.node_count(), graph.edge_count()});
      }
    }
  }
  return report;
}

std::string to_json(const ExperimentReport& report, bool include_timings) {
  nlohmann::ordered_json doc;
  doc["kind"] = report.kind;
  doc["parameter_name"] = report.parameter_name;
  doc["graph"] = {{"nodes", report.graph.nodes},
                  {"edges", report.graph.edges},
                  {"signed", report.graph.signedness == Signedness::Signed}};
  doc["seeds"] = report.seeds;
  doc["warnings"] = report.warnings;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    if (!include_timings && row.is_timing()) continue;
    nlohmann::ordered_json r;
    r["algorithm"] = row.algorithm;
    r["target"] = row.target;
    r["metric"] = row.metric;
    r["reference"] = row.reference;
    if (std::isnan(row.parameter)) {
      r["parameter"] = nullptr;
    } else {
      r["parameter"] = row.parameter;
    }
    r["value"] = row.value;
    r["nodes"] = row.nodes;
    r["edges"] = row.edges;
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string to_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "kind,algorithm,target,metric,reference,parameter,value,nodes,edges\n";
  for (const auto& row : report.rows) {
    out << report.kind << ',' << row.algorithm << ',' << row.target << ',' << row.metric
        << ',' << row.reference << ',' << format_number(row.parameter) << ','
        << format_number(row.value) << ',' << row.nodes << ',' << row.edges << '\n';
  }
  return out.str();
}

}  // namespace trustbias
