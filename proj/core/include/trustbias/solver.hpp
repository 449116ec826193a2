#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "trustbias/bias_functions.hpp"
#include "trustbias/trust_graph.hpp"

namespace trustbias {

struct StoppingRule {
  enum class Mode { FixedIterations, ResidualThreshold, EpsilonBound };

  Mode mode = Mode::FixedIterations;
  int iterations = 15;
  double epsilon = 0.0;
  int max_iterations = 1000;

  static StoppingRule fixed(int k) { return {Mode::FixedIterations, k, 0.0, k}; }

  /// Stop once ||r^{t+1} - r^t||_inf < eps, or flag the result at `cap`.
  static StoppingRule residual(double eps, int cap = 1000) {
    return {Mode::ResidualThreshold, 0, eps, cap};
  }

  /// Run the a-priori count ceil(log eps / log lambda_eff), capped at `cap`.
  static StoppingRule epsilon_bound(double eps, int cap = 1000) {
    return {Mode::EpsilonBound, 0, eps, cap};
  }
};

/// Throws DomainError when the rule violates its invariants.
void validate_rule(const StoppingRule& rule);

struct SolveOptions {
  int threads = 1;
  /// Starting bias b^0; zeros when absent. Entries must lie in [0, 1].
  std::optional<ScoreVector> initial_bias;
  /// Called after each iteration t = 1, 2, ... with (t, r^t, b^t).
  std::function<void(int, std::span<const double>, std::span<const double>)>
      on_iteration;
};

struct SolveResult {
  ScoreVector prestige;
  /// The bias the iteration used (f(r) for framework variants; raw signed
  /// bias for the signed MB iteration).
  ScoreVector bias;
  /// Unclamped MB bias at the final prestige; empty for other variants.
  ScoreVector raw_bias;
  int iterations_run = 0;
  /// ||r^{t+1} - r^t||_inf for t = 1..iterations_run-1.
  std::vector<double> residual_history;
  /// Set when a ResidualThreshold rule hit its cap before converging.
  bool cap_exceeded = false;

  double final_residual() const {
    return residual_history.empty() ? 0.0 : residual_history.back();
  }

  /// Scores used to rank nodes by bias: |raw MB bias| or the bias itself.
  ScoreVector ranking_bias() const;
};

/// Iterates r^{t}_i = mean_{j in I_i} W_ji (1 - b_j^{t-1}), b^t = f(r^t), from
/// b^0 = 0. Nodes with no in-edges keep prestige 0. For MB the result also
/// carries the raw (unclamped) bias at the final prestige.
SolveResult solve(const TrustGraph& graph, const BiasFunctionSpec& spec,
                  const StoppingRule& stop = StoppingRule::fixed(15),
                  const SolveOptions& options = {});

/// The original signed MB system: prestige weights each in-edge by
/// 1 - max{0, b_j sign(W_ji)} and bias is the raw signed mean difference.
SolveResult solve_mb_signed(const TrustGraph& graph,
                            const StoppingRule& stop = StoppingRule::fixed(15),
                            const SolveOptions& options = {});

/// Dispatch used by the experiments and the CLI: starred L2 forms on signed
/// graphs, the signed MB system for MB on signed graphs, `solve` otherwise.
SolveResult solve_algorithm(const TrustGraph& graph, const BiasFunctionSpec& spec,
                            const StoppingRule& stop = StoppingRule::fixed(15),
                            const SolveOptions& options = {});

/// ceil(ln eps / ln lambda); 1 when lambda == 0.
int required_iterations(double lambda, double epsilon);

}  // namespace trustbias
