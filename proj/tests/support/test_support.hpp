#pragma once

// Shared fixtures and brute-force oracles for the unit and acceptance suites.
// Oracles here work from the raw edge list only, never from the library's
// adjacency structures or metric code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "trustbias/trustbias.hpp"

namespace trustbias::test_support {

/// Random graph with n nodes and edge probability p. Signed graphs draw
/// weights from U[-1, 1], unsigned from U[0, 1]. Some nodes end up with no
/// in- or out-edges, which exercises the dangling conventions.
inline TrustGraph random_graph(std::mt19937_64& rng, std::size_t n, double p,
                               bool is_signed) {
  std::bernoulli_distribution coin(p);
  std::uniform_real_distribution<double> w(is_signed ? -1.0 : 0.0, 1.0);
  std::vector<Edge> edges;
  for (NodeId s = 0; s < n; ++s) {
    for (NodeId t = 0; t < n; ++t) {
      if (s != t && coin(rng)) edges.push_back(Edge{s, t, w(rng)});
    }
  }
  return TrustGraph::from_edges(n, std::move(edges),
                                is_signed ? Signedness::Signed : Signedness::Unsigned);
}

inline ScoreVector random_vector(std::mt19937_64& rng, std::size_t n, double lo,
                                 double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  ScoreVector v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

inline double max_abs_diff(const ScoreVector& a, const ScoreVector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Mean incoming weight, summed straight off the edge list.
inline ScoreVector brute_average(const TrustGraph& g) {
  ScoreVector sum(g.node_count(), 0.0);
  std::vector<int> count(g.node_count(), 0);
  for (const auto& e : g.edges()) {
    sum[e.target] += e.weight;
    ++count[e.target];
  }
  for (std::size_t i = 0; i < sum.size(); ++i) {
    sum[i] = count[i] ? sum[i] / count[i] : 0.0;
  }
  return sum;
}

inline ScoreVector brute_variance(const TrustGraph& g) {
  const auto avg = brute_average(g);
  ScoreVector out(g.node_count(), 0.0);
  for (NodeId i = 0; i < g.node_count(); ++i) {
    double sum = 0.0;
    int count = 0;
    for (const auto& e : g.edges()) {
      if (e.source != i) continue;
      sum += (e.weight - avg[e.target]) * (e.weight - avg[e.target]);
      ++count;
    }
    out[i] = count ? sum / count : 0.0;
  }
  return out;
}

/// Tau-b by enumerating every pair.
inline double brute_kendall_tau_b(const std::vector<double>& x,
                                  const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::int64_t concordant = 0, discordant = 0, tx = 0, ty = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx == 0.0) ++tx;
      if (dy == 0.0) ++ty;
      if (dx * dy > 0) ++concordant;
      if (dx * dy < 0) ++discordant;
    }
  }
  const auto total = static_cast<std::int64_t>(n * (n - 1) / 2);
  const std::int64_t left = total - tx;
  const std::int64_t right = total - ty;
  if (left == 0 || right == 0) return 0.0;
  return static_cast<double>(concordant - discordant) /
         std::sqrt(static_cast<double>(left) * static_cast<double>(right));
}

/// AUC as the fraction of (positive, negative) pairs ordered correctly,
/// ties counting one half. Positives are given explicitly.
inline double brute_auc(const std::vector<double>& predicted,
                        const std::vector<bool>& positive) {
  double wins = 0.0;
  std::int64_t pairs = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (!positive[i]) continue;
    for (std::size_t j = 0; j < predicted.size(); ++j) {
      if (positive[j]) continue;
      ++pairs;
      if (predicted[i] > predicted[j]) wins += 1.0;
      if (predicted[i] == predicted[j]) wins += 0.5;
    }
  }
  return wins / static_cast<double>(pairs);
}

/// Top-k labels by selection: repeatedly take the largest remaining truth
/// value, lowest index first.
inline std::vector<bool> brute_top_labels(const std::vector<double>& truth,
                                          std::size_t k) {
  std::vector<bool> chosen(truth.size(), false);
  for (std::size_t round = 0; round < k; ++round) {
    std::size_t best = truth.size();
    for (std::size_t i = 0; i < truth.size(); ++i) {
      if (chosen[i]) continue;
      if (best == truth.size() || truth[i] > truth[best]) best = i;
    }
    chosen[best] = true;
  }
  return chosen;
}

/// Dense power iteration for weighted PageRank (negative edges removed).
inline ScoreVector dense_pagerank(const TrustGraph& g, double damping, int iterations) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  std::vector<double> row_sum(n, 0.0);
  for (const auto& e : g.edges()) {
    if (e.weight > 0) {
      m[e.source][e.target] = e.weight;
      row_sum[e.source] += e.weight;
    }
  }
  // Row-stochastic transition matrix; dangling rows are uniform.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m[i][j] = row_sum[i] > 0 ? m[i][j] / row_sum[i] : 1.0 / n;
    }
  }
  ScoreVector x(n, 1.0 / n);
  for (int it = 0; it < iterations; ++it) {
    ScoreVector y(n, (1.0 - damping) / n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) y[j] += damping * x[i] * m[i][j];
    }
    x = y;
  }
  return x;
}

/// The known edges of the small worked example: labels 1..5, node 5 rates
/// against the consensus on nodes 1 and 3.
inline std::vector<EdgeRecord> example_partial_records() {
  return {{5, 1, 0.1}, {2, 1, 0.8}, {3, 1, 0.8}, {5, 3, 0.9},
          {2, 3, 0.2}, {4, 3, 0.2}, {3, 2, 0.0}};
}

/// Cancellation gadget. Four consensus-high targets (0..3), four
/// consensus-low targets (4..7), five honest raters of the high group
/// (8..12), five honest raters of the low group (13..17), and one adversary
/// (18) that rates every high target 0.1 and every low target 0.9.
struct Gadget {
  TrustGraph graph;
  NodeId adversary;
  std::vector<NodeId> honest_raters;
};

inline Gadget cancellation_gadget() {
  std::vector<Edge> edges;
  const NodeId adversary = 18;
  std::vector<NodeId> honest;
  for (NodeId k = 0; k < 5; ++k) {
    const NodeId high_rater = 8 + k;
    const NodeId low_rater = 13 + k;
    honest.push_back(high_rater);
    honest.push_back(low_rater);
    for (NodeId t = 0; t < 4; ++t) {
      edges.push_back(Edge{high_rater, t, 0.8 + 0.05 * ((k + t) % 5)});
      edges.push_back(Edge{low_rater, static_cast<NodeId>(4 + t), 0.05 * ((k + t) % 5)});
    }
  }
  for (NodeId t = 0; t < 4; ++t) {
    edges.push_back(Edge{adversary, t, 0.1});
    edges.push_back(Edge{adversary, static_cast<NodeId>(4 + t), 0.9});
  }
  std::sort(honest.begin(), honest.end());
  return {TrustGraph::from_edges(19, std::move(edges)), adversary, honest};
}

inline const std::vector<BiasFunctionSpec>& framework_variants() {
  static const std::vector<BiasFunctionSpec> v{
      {BiasVariant::L1Avg, 0.5}, {BiasVariant::L1Max, 0.5},
      {BiasVariant::L2Avg, 0.5}, {BiasVariant::L2Max, 0.5}};
  return v;
}

inline const std::vector<BiasFunctionSpec>& all_cli_variants() {
  static const std::vector<BiasFunctionSpec> v{
      {BiasVariant::MB, 0.5},    {BiasVariant::L1Avg, 0.5}, {BiasVariant::L1Max, 0.5},
      {BiasVariant::L2Avg, 0.5}, {BiasVariant::L2Max, 0.5}};
  return v;
}

}  // namespace trustbias::test_support
