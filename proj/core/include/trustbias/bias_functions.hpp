#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trustbias/trust_graph.hpp"

namespace trustbias {

/// Per-node real values indexed by dense node id (prestige, bias, baselines).
using ScoreVector = std::vector<double>;

/// The contractive bias functions. The `*Signed` forms divide the squared
/// distance by 4 instead of 2 so they stay contractive on [-1, 1] weights.
enum class BiasVariant { MB, L1Avg, L1Max, L2Avg, L2Max, L2AvgSigned, L2MaxSigned };

struct BiasFunctionSpec {
  BiasVariant variant = BiasVariant::L1Avg;
  double lambda = 0.5;

  /// Contraction factor of the map: 1/2 for MB, `lambda` otherwise.
  double contraction_factor() const noexcept {
    return variant == BiasVariant::MB ? 0.5 : lambda;
  }

  friend bool operator==(const BiasFunctionSpec&, const BiasFunctionSpec&) = default;
};

/// CLI spelling: mb, l1-avg, l1-max, l2-avg, l2-max, l2-avg*, l2-max*.
std::string_view variant_name(BiasVariant variant);

/// Accepts the names produced by `variant_name`. Throws DomainError otherwise.
BiasVariant parse_variant(std::string_view name);

/// Throws if `spec` is not admissible on `graph`:
///  - lambda outside [0, 1) -> DomainError (MB ignores lambda);
///  - L1 variants on signed graphs need lambda <= 1/2 -> DomainError;
///  - L2Avg/L2Max on signed graphs, starred forms on unsigned -> VariantMismatchError.
void validate_spec(const BiasFunctionSpec& spec, const TrustGraph& graph);

/// Replaces L2Avg/L2Max with their starred forms when `graph` is signed.
BiasFunctionSpec resolve_for_graph(BiasFunctionSpec spec, const TrustGraph& graph);

// Individual bias functions. Nodes without out-edges always get bias 0.
// Each throws DimensionError if `prestige.size() != graph.node_count()`.

/// max{0, (1/(2|O_j|)) sum (W_ji - r_i)}
ScoreVector mb_bias(std::span<const double> prestige, const TrustGraph& graph);

/// (1/(2|O_j|)) sum (W_ji - r_i), without the clamp. Signed; used for ranking.
ScoreVector mb_raw_bias(std::span<const double> prestige, const TrustGraph& graph);

ScoreVector l1_avg_bias(std::span<const double> prestige, const TrustGraph& graph,
                        double lambda);
ScoreVector l1_max_bias(std::span<const double> prestige, const TrustGraph& graph,
                        double lambda);
ScoreVector l2_avg_bias(std::span<const double> prestige, const TrustGraph& graph,
                        double lambda);
ScoreVector l2_max_bias(std::span<const double> prestige, const TrustGraph& graph,
                        double lambda);

/// Throws VariantMismatchError on unsigned graphs.
ScoreVector l2_avg_signed_bias(std::span<const double> prestige,
                               const TrustGraph& graph, double lambda);
ScoreVector l2_max_signed_bias(std::span<const double> prestige,
                               const TrustGraph& graph, double lambda);

/// Evaluates the variant named by `spec` without admissibility checks.
ScoreVector evaluate_bias(const BiasFunctionSpec& spec,
                          std::span<const double> prestige, const TrustGraph& graph);

/// In-place form used by the solver; node loop split across `threads`.
void evaluate_bias_into(const BiasFunctionSpec& spec,
                        std::span<const double> prestige, const TrustGraph& graph,
                        std::span<double> out, int threads = 1);

}  // namespace trustbias
