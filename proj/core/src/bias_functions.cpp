#include "trustbias/bias_functions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "parallel.hpp"
#include "trustbias/errors.hpp"

namespace trustbias {
namespace {

void check_dimension(std::span<const double> prestige, const TrustGraph& graph) {
  if (prestige.size() != graph.node_count()) {
    throw DimensionError("prestige vector has " + std::to_string(prestige.size()) +
                         " entries, graph has " + std::to_string(graph.node_count()) +
                         " nodes");
  }
}

void require_signed(const TrustGraph& graph, BiasVariant variant) {
  if (!graph.is_signed()) {
    throw VariantMismatchError(std::string(variant_name(variant)) +
                               " requires a signed graph");
  }
}

// Per-node kernels. `out` neighbors are (target i, W_ji).

double mb_raw_node(std::span<const Neighbor> out, std::span<const double> r) {
  if (out.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& nb : out) sum += nb.weight - r[nb.node];
  return sum / (2.0 * static_cast<double>(out.size()));
}

double l1_avg_node(std::span<const Neighbor> out, std::span<const double> r,
                   double lambda) {
  if (out.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& nb : out) sum += std::abs(nb.weight - r[nb.node]);
  return lambda * sum / static_cast<double>(out.size());
}

double l1_max_node(std::span<const Neighbor> out, std::span<const double> r,
                   double lambda) {
  double worst = 0.0;
  for (const auto& nb : out) worst = std::max(worst, std::abs(nb.weight - r[nb.node]));
  return lambda * worst;
}

double sq_avg_node(std::span<const Neighbor> out, std::span<const double> r,
                   double lambda, double divisor) {
  if (out.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& nb : out) {
    const double d = nb.weight - r[nb.node];
    sum += d * d;
  }
  return lambda * sum / (divisor * static_cast<double>(out.size()));
}

double sq_max_node(std::span<const Neighbor> out, std::span<const double> r,
                   double lambda, double divisor) {
  double worst = 0.0;
  for (const auto& nb : out) {
    const double d = nb.weight - r[nb.node];
    worst = std::max(worst, d * d);
  }
  return lambda / divisor * worst;
}

template <class Kernel>
ScoreVector apply(std::span<const double> prestige, const TrustGraph& graph,
                  Kernel kernel) {
  check_dimension(prestige, graph);
  ScoreVector out(graph.node_count());
  for (NodeId j = 0; j < graph.node_count(); ++j) {
    out[j] = kernel(graph.out_neighbors(j), prestige);
  }
  return out;
}

}  // namespace

std::string_view variant_name(BiasVariant variant) {
  switch (variant) {
    case BiasVariant::MB: return "mb";
    case BiasVariant::L1Avg: return "l1-avg";
    case BiasVariant::L1Max: return "l1-max";
    case BiasVariant::L2Avg: return "l2-avg";
    case BiasVariant::L2Max: return "l2-max";
    case BiasVariant::L2AvgSigned: return "l2-avg*";
    case BiasVariant::L2MaxSigned: return "l2-max*";
  }
  return "?";
}

BiasVariant parse_variant(std::string_view name) {
  for (auto v : {BiasVariant::MB, BiasVariant::L1Avg, BiasVariant::L1Max,
                 BiasVariant::L2Avg, BiasVariant::L2Max, BiasVariant::L2AvgSigned,
                 BiasVariant::L2MaxSigned}) {
    if (variant_name(v) == name) return v;
  }
  throw DomainError("unknown bias function '" + std::string(name) + "'");
}

void validate_spec(const BiasFunctionSpec& spec, const TrustGraph& graph) {
  const auto name = std::string(variant_name(spec.variant));
  if (spec.variant != BiasVariant::MB &&
      !(spec.lambda >= 0.0 && spec.lambda < 1.0)) {
    throw DomainError(name + ": lambda must lie in [0, 1), got " +
                      std::to_string(spec.lambda));
  }
  switch (spec.variant) {
    case BiasVariant::MB:
      break;
    case BiasVariant::L1Avg:
    case BiasVariant::L1Max:
      if (graph.is_signed() && spec.lambda > 0.5) {
        throw DomainError(name + ": lambda must be <= 0.5 on a signed graph");
      }
      break;
    case BiasVariant::L2Avg:
    case BiasVariant::L2Max:
      if (graph.is_signed()) {
        throw VariantMismatchError(name + " is not contractive on a signed graph; use " +
                                   name + "*");
      }
      break;
    case BiasVariant::L2AvgSigned:
    case BiasVariant::L2MaxSigned:
      require_signed(graph, spec.variant);
      break;
  }
}

BiasFunctionSpec resolve_for_graph(BiasFunctionSpec spec, const TrustGraph& graph) {
  if (graph.is_signed()) {
    if (spec.variant == BiasVariant::L2Avg) spec.variant = BiasVariant::L2AvgSigned;
    if (spec.variant == BiasVariant::L2Max) spec.variant = BiasVariant::L2MaxSigned;
  }
  return spec;
}

ScoreVector mb_bias(std::span<const double> prestige, const TrustGraph& graph) {
  return apply(prestige, graph, [](auto out, auto r) {
    return std::max(0.0, mb_raw_node(out, r));
  });
}

ScoreVector mb_raw_bias(std::span<const double> prestige, const TrustGraph& graph) {
  return apply(prestige, graph, [](auto out, auto r) { return mb_raw_node(out, r); });
}

ScoreVector l1_avg_bias(std::span<const double> prestige, const TrustGraph& graph,
                        double lambda) {
  return apply(prestige, graph,
               [lambda](auto out, auto r) { return l1_avg_node(out, r, lambda); });
}

ScoreVector l1_max_bias(std::span<const double> prestige, const TrustGraph& graph,
                        double lambda) {
  return apply(prestige, graph,
               [lambda](auto out, auto r) { return l1_max_node(out, r, lambda); });
}

ScoreVector l2_avg_bias(std::span<const double> prestige, const TrustGraph& graph,
                        double lambda) {
  return apply(prestige, graph,
               [lambda](auto out, auto r) { return sq_avg_node(out, r, lambda, 2.0); });
}

ScoreVector l2_max_bias(std::span<const double> prestige, const TrustGraph& graph,
                        double lambda) {
  return apply(prestige, graph,
               [lambda](auto out, auto r) { return sq_max_node(out, r, lambda, 2.0); });
}

ScoreVector l2_avg_signed_bias(std::span<const double> prestige,
                               const TrustGraph& graph, double lambda) {
  require_signed(graph, BiasVariant::L2AvgSigned);
  return apply(prestige, graph,
               [lambda](auto out, auto r) { return sq_avg_node(out, r, lambda, 4.0); });
}

ScoreVector l2_max_signed_bias(std::span<const double> prestige,
                               const TrustGraph& graph, double lambda) {
  require_signed(graph, BiasVariant::L2MaxSigned);
  return apply(prestige, graph,
               [lambda](auto out, auto r) { return sq_max_node(out, r, lambda, 4.0); });
}

ScoreVector evaluate_bias(const BiasFunctionSpec& spec,
                          std::span<const double> prestige, const TrustGraph& graph) {
  check_dimension(prestige, graph);
  ScoreVector out(graph.node_count());
  evaluate_bias_into(spec, prestige, graph, out);
  return out;
}

void evaluate_bias_into(const BiasFunctionSpec& spec,
                        std::span<const double> prestige, const TrustGraph& graph,
                        std::span<double> out, int threads) {
  check_dimension(prestige, graph);
  if (out.size() != graph.node_count()) {
    throw DimensionError("bias output has wrong length");
  }
  const double lambda = spec.lambda;
  auto run = [&](auto kernel) {
    detail::parallel_for(graph.node_count(), threads, [&](std::size_t j) {
      out[j] = kernel(graph.out_neighbors(static_cast<NodeId>(j)));
    });
  };
  switch (spec.variant) {
    case BiasVariant::MB:
      run([&](auto nb) { return std::max(0.0, mb_raw_node(nb, prestige)); });
      break;
    case BiasVariant::L1Avg:
      run([&](auto nb) { return l1_avg_node(nb, prestige, lambda); });
      break;
    case BiasVariant::L1Max:
      run([&](auto nb) { return l1_max_node(nb, prestige, lambda); });
      break;
    case BiasVariant::L2Avg:
      run([&](auto nb) { return sq_avg_node(nb, prestige, lambda, 2.0); });
      break;
    case BiasVariant::L2Max:
      run([&](auto nb) { return sq_max_node(nb, prestige, lambda, 2.0); });
      break;
    case BiasVariant::L2AvgSigned:
      run([&](auto nb) { return sq_avg_node(nb, prestige, lambda, 4.0); });
      break;
    case BiasVariant::L2MaxSigned:
      run([&](auto nb) { return sq_max_node(nb, prestige, lambda, 4.0); });
      break;
  }
}

}  // namespace trustbias
