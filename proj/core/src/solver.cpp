#include "trustbias/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "parallel.hpp"
#include "trustbias/errors.hpp"

namespace trustbias {
namespace {

double sign(double w) { return (w > 0.0) - (w < 0.0); }

ScoreVector initial_bias(const TrustGraph& graph, const SolveOptions& options,
                         double lo) {
  if (!options.initial_bias) return ScoreVector(graph.node_count(), 0.0);
  const auto& b0 = *options.initial_bias;
  if (b0.size() != graph.node_count()) {
    throw DimensionError("initial bias has " + std::to_string(b0.size()) +
                         " entries, graph has " + std::to_string(graph.node_count()));
  }
  for (double v : b0) {
    if (!(v >= lo && v <= 1.0)) throw DomainError("initial bias entry out of range");
  }
  return b0;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Shared driver: `prestige_step(b, r_out)` then `bias_step(r, b_out)` per
// iteration, with the whole prestige vector finished before any bias entry.
template <class PrestigeStep, class BiasStep>
SolveResult iterate(const TrustGraph& graph, const StoppingRule& stop,
                    double contraction, const SolveOptions& options, ScoreVector bias,
                    PrestigeStep prestige_step, BiasStep bias_step) {
  validate_rule(stop);
  const auto n = graph.node_count();

  int limit = stop.max_iterations;
  bool check_residual = false;
  bool over_budget = false;
  switch (stop.mode) {
    case StoppingRule::Mode::FixedIterations:
      limit = stop.iterations;
      break;
    case StoppingRule::Mode::ResidualThreshold:
      check_residual = true;
      break;
    case StoppingRule::Mode::EpsilonBound: {
      const int k = required_iterations(contraction, stop.epsilon);
      limit = std::min(k, stop.max_iterations);
      over_budget = k > stop.max_iterations;
      break;
    }
  }

  SolveResult result;
  ScoreVector prestige(n, 0.0);
  ScoreVector next(n, 0.0);
  bool converged = false;
  for (int t = 1; t <= limit; ++t) {
    prestige_step(std::span<const double>(bias), std::span<double>(next));
    if (t >= 2) {
      result.residual_history.push_back(max_abs_diff(next, prestige));
    }
    prestige.swap(next);
    bias_step(std::span<const double>(prestige), std::span<double>(bias));
    result.iterations_run = t;
    if (options.on_iteration) options.on_iteration(t, prestige, bias);
    if (check_residual && t >= 2 && result.residual_history.back() < stop.epsilon) {
      converged = true;
      break;
    }
  }
  result.cap_exceeded = (check_residual && !converged) || over_budget;
  result.prestige = std::move(prestige);
  result.bias = std::move(bias);
  return result;
}

}  // namespace

ScoreVector SolveResult::ranking_bias() const {
  if (raw_bias.empty()) return bias;
  ScoreVector out(raw_bias.size());
  std::transform(raw_bias.begin(), raw_bias.end(), out.begin(),
                 [](double b) { return std::abs(b); });
  return out;
}

void validate_rule(const StoppingRule& rule) {
  switch (rule.mode) {
    case StoppingRule::Mode::FixedIterations:
      if (rule.iterations < 1) throw DomainError("iteration count must be >= 1");
      if (rule.max_iterations < rule.iterations) {
        throw DomainError("iteration cap below the fixed iteration count");
      }
      break;
    case StoppingRule::Mode::ResidualThreshold:
    case StoppingRule::Mode::EpsilonBound:
      if (!(rule.epsilon > 0.0)) throw DomainError("epsilon must be > 0");
      if (rule.max_iterations < 1) throw DomainError("iteration cap must be >= 1");
      break;
  }
}

SolveResult solve(const TrustGraph& graph, const BiasFunctionSpec& spec,
                  const StoppingRule& stop, const SolveOptions& options) {
  validate_spec(spec, graph);
  const int threads = options.threads;
  auto prestige_step = [&](std::span<const double> b, std::span<double> r) {
    detail::parallel_for(graph.node_count(), threads, [&](std::size_t i) {
      const auto in = graph.in_neighbors(static_cast<NodeId>(i));
      if (in.empty()) {
        r[i] = 0.0;
        return;
      }
      double sum = 0.0;
      for (const auto& nb : in) sum += nb.weight * (1.0 - b[nb.node]);
      r[i] = sum / static_cast<double>(in.size());
    });
  };
  auto bias_step = [&](std::span<const double> r, std::span<double> b) {
    evaluate_bias_into(spec, r, graph, b, threads);
  };
  auto result = iterate(graph, stop, spec.contraction_factor(), options,
                        initial_bias(graph, options, 0.0), prestige_step, bias_step);
  if (spec.variant == BiasVariant::MB) {
    result.raw_bias = mb_raw_bias(result.prestige, graph);
  }
  return result;
}

SolveResult solve_mb_signed(const TrustGraph& graph, const StoppingRule& stop,
                            const SolveOptions& options) {
  if (!graph.is_signed()) {
    throw VariantMismatchError("signed MB iteration requires a signed graph");
  }
  const int threads = options.threads;
  auto prestige_step = [&](std::span<const double> b, std::span<double> r) {
    detail::parallel_for(graph.node_count(), threads, [&](std::size_t i) {
      const auto in = graph.in_neighbors(static_cast<NodeId>(i));
      if (in.empty()) {
        r[i] = 0.0;
        return;
      }
      double sum = 0.0;
      for (const auto& nb : in) {
        sum += nb.weight * (1.0 - std::max(0.0, b[nb.node] * sign(nb.weight)));
      }
      r[i] = sum / static_cast<double>(in.size());
    });
  };
  auto bias_step = [&](std::span<const double> r, std::span<double> b) {
    detail::parallel_for(graph.node_count(), threads, [&](std::size_t j) {
      const auto out = graph.out_neighbors(static_cast<NodeId>(j));
      if (out.empty()) {
        b[j] = 0.0;
        return;
      }
      double sum = 0.0;
      for (const auto& nb : out) sum += nb.weight - r[nb.node];
      b[j] = sum / (2.0 * static_cast<double>(out.size()));
    });
  };
  auto result = iterate(graph, stop, 0.5, options, initial_bias(graph, options, -1.0),
                        prestige_step, bias_step);
  result.raw_bias = result.bias;
  return result;
}

SolveResult solve_algorithm(const TrustGraph& graph, const BiasFunctionSpec& spec,
                            const StoppingRule& stop, const SolveOptions& options) {
  if (spec.variant == BiasVariant::MB && graph.is_signed()) {
    return solve_mb_signed(graph, stop, options);
  }
  return solve(graph, resolve_for_graph(spec, graph), stop, options);
}

int required_iterations(double lambda, double epsilon) {
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    throw DomainError("lambda must lie in [0, 1), got " + std::to_string(lambda));
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw DomainError("epsilon must lie in (0, 1), got " + std::to_string(epsilon));
  }
  if (lambda == 0.0) return 1;
  auto k = static_cast<int>(std::ceil(std::log(epsilon) / std::log(lambda)));
  // Undo log round-off: the smallest k with lambda^k <= epsilon.
  while (k > 1 && std::pow(lambda, k - 1) <= epsilon) --k;
  while (std::pow(lambda, k) > epsilon) ++k;
  return std::max(k, 1);
}

}  // namespace trustbias
