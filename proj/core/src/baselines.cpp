#include "trustbias/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "trustbias/errors.hpp"

namespace trustbias {
namespace {

double kept_weight(double w, bool use_weights) {
  if (w < 0.0) return 0.0;
  return use_weights ? w : 1.0;
}

double l2_normalize(ScoreVector& v) {
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (norm > 0.0) {
    for (double& x : v) x /= norm;
  }
  return norm;
}

}  // namespace

std::string_view baseline_name(Baseline baseline) {
  switch (baseline) {
    case Baseline::ArithmeticAverage: return "aa";
    case Baseline::Hits: return "hits";
    case Baseline::PageRank: return "pagerank";
  }
  return "?";
}

Baseline parse_baseline(std::string_view name) {
  for (auto b : {Baseline::ArithmeticAverage, Baseline::Hits, Baseline::PageRank}) {
    if (baseline_name(b) == name) return b;
  }
  throw DomainError("unknown baseline '" + std::string(name) + "'");
}

ScoreVector arithmetic_average(const TrustGraph& graph) {
  ScoreVector out(graph.node_count(), 0.0);
  for (NodeId i = 0; i < graph.node_count(); ++i) {
    const auto in = graph.in_neighbors(i);
    if (in.empty()) continue;
    double sum = 0.0;
    for (const auto& nb : in) sum += nb.weight;
    out[i] = sum / static_cast<double>(in.size());
  }
  return out;
}

BaselineResult hits_authority(const TrustGraph& graph, const HitsOptions& options) {
  const auto n = graph.node_count();
  BaselineResult result;
  const bool any_edge = std::any_of(graph.edges().begin(), graph.edges().end(),
                                    [&](const Edge& e) {
                                      return kept_weight(e.weight, options.use_weights) > 0.0;
                                    });
  if (!any_edge) {
    result.scores.assign(n, 0.0);
    result.degenerate = true;
    return result;
  }

  const double start = 1.0 / std::sqrt(static_cast<double>(n));
  ScoreVector authority(n, start);
  ScoreVector hub(n, start);
  ScoreVector next(n);
  result.converged = false;
  for (int it = 1; it <= options.max_iterations; ++it) {
    // a <- W^T h
    for (NodeId i = 0; i < n; ++i) {
      double sum = 0.0;
      for (const auto& nb : graph.in_neighbors(i)) {
        sum += kept_weight(nb.weight, options.use_weights) * hub[nb.node];
      }
      next[i] = sum;
    }
    l2_normalize(next);
    // h <- W a
    for (NodeId j = 0; j < n; ++j) {
      double sum = 0.0;
      for (const auto& nb : graph.out_neighbors(j)) {
        sum += kept_weight(nb.weight, options.use_weights) * next[nb.node];
      }
      hub[j] = sum;
    }
    l2_normalize(hub);

    double delta = 0.0;
    for (NodeId i = 0; i < n; ++i) delta = std::max(delta, std::abs(next[i] - authority[i]));
    authority.swap(next);
    result.iterations = it;
    if (delta < options.tolerance) {
      result.converged = true;
      break;
    }
  }
  result.scores = std::move(authority);
  return result;
}

BaselineResult pagerank(const TrustGraph& graph, const PageRankOptions& options) {
  if (!(options.damping > 0.0 && options.damping < 1.0)) {
    throw DomainError("damping must lie in (0, 1)");
  }
  const auto n = graph.node_count();
  const double d = options.damping;
  const double nd = static_cast<double>(n);

  ScoreVector out_sum(n, 0.0);
  for (NodeId j = 0; j < n; ++j) {
    for (const auto& nb : graph.out_neighbors(j)) {
      out_sum[j] += kept_weight(nb.weight, options.use_weights);
    }
  }

  BaselineResult result;
  result.degenerate = std::all_of(out_sum.begin(), out_sum.end(),
                                  [](double s) { return s == 0.0; });
  ScoreVector rank(n, 1.0 / nd);
  ScoreVector next(n);
  result.converged = false;
  for (int it = 1; it <= options.max_iterations; ++it) {
    double dangling = 0.0;
    for (NodeId j = 0; j < n; ++j) {
      if (out_sum[j] == 0.0) dangling += rank[j];
    }
    const double base = (1.0 - d) / nd + d * dangling / nd;
    for (NodeId i = 0; i < n; ++i) {
      double sum = 0.0;
      for (const auto& nb : graph.in_neighbors(i)) {
        const double w = kept_weight(nb.weight, options.use_weights);
        if (w > 0.0) sum += rank[nb.node] * w / out_sum[nb.node];
      }
      next[i] = base + d * sum;
    }
    double total = 0.0;
    for (double x : next) total += x;
    double delta = 0.0;
    for (NodeId i = 0; i < n; ++i) {
      next[i] /= total;
      delta += std::abs(next[i] - rank[i]);
    }
    rank.swap(next);
    result.iterations = it;
    if (delta < options.tolerance) {
      result.converged = true;
      break;
    }
  }
  result.scores = std::move(rank);
  return result;
}

ScoreVector baseline_scores(Baseline baseline, const TrustGraph& graph) {
  switch (baseline) {
    case Baseline::ArithmeticAverage:
      return arithmetic_average(graph);
    case Baseline::Hits:
      return hits_authority(graph).scores;
    case Baseline::PageRank:
      return pagerank(graph).scores;
  }
  return {};
}

}  // namespace trustbias
