#include "trustbias/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "trustbias/baselines.hpp"
#include "trustbias/errors.hpp"

namespace trustbias {
namespace {

// Sum of t(t-1)/2 over runs of equal values in an already sorted range.
template <class It, class Eq>
std::int64_t tied_pairs(It first, It last, Eq eq) {
  std::int64_t total = 0;
  while (first != last) {
    auto run_end = std::next(first);
    while (run_end != last && eq(*first, *run_end)) ++run_end;
    const auto t = static_cast<std::int64_t>(std::distance(first, run_end));
    total += t * (t - 1) / 2;
    first = run_end;
  }
  return total;
}

// Stable merge sort on `v` returning the number of inversions (strictly
// greater element before a smaller one).
std::int64_t count_swaps(std::vector<double>& v, std::vector<double>& tmp,
                         std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t swaps = count_swaps(v, tmp, lo, mid) + count_swaps(v, tmp, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      swaps += static_cast<std::int64_t>(mid - i);
      tmp[k++] = v[j++];
    } else {
      tmp[k++] = v[i++];
    }
  }
  while (i < mid) tmp[k++] = v[i++];
  while (j < hi) tmp[k++] = v[j++];
  std::copy(tmp.begin() + static_cast<std::ptrdiff_t>(lo),
            tmp.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return swaps;
}

}  // namespace

ScoreVector variance_ground_truth(const TrustGraph& graph) {
  const auto consensus = arithmetic_average(graph);
  ScoreVector out(graph.node_count(), 0.0);
  for (NodeId i = 0; i < graph.node_count(); ++i) {
    const auto given = graph.out_neighbors(i);
    if (given.empty()) continue;
    double sum = 0.0;
    for (const auto& nb : given) {
      const double d = nb.weight - consensus[nb.node];
      sum += d * d;
    }
    out[i] = sum / static_cast<double>(given.size());
  }
  return out;
}

double kendall_tau_b(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw DimensionError("kendall_tau_b: length mismatch (" + std::to_string(x.size()) +
                         " vs " + std::to_string(y.size()) + ")");
  }
  const std::size_t n = x.size();
  if (n < 2) throw DimensionError("kendall_tau_b needs at least 2 observations");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[a] != x[b] ? x[a] < x[b] : y[a] < y[b];
  });

  const auto same_x = [&](std::size_t a, std::size_t b) { return x[a] == x[b]; };
  const auto same_xy = [&](std::size_t a, std::size_t b) {
    return x[a] == x[b] && y[a] == y[b];
  };
  const std::int64_t ties_x = tied_pairs(order.begin(), order.end(), same_x);
  const std::int64_t ties_xy = tied_pairs(order.begin(), order.end(), same_xy);

  std::vector<double> ys(n);
  for (std::size_t k = 0; k < n; ++k) ys[k] = y[order[k]];
  std::vector<double> tmp(n);
  const std::int64_t swaps = count_swaps(ys, tmp, 0, n);
  const std::int64_t ties_y =
      tied_pairs(ys.begin(), ys.end(), [](double a, double b) { return a == b; });

  const auto total = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
  const std::int64_t concordant_minus_discordant =
      total - ties_x - ties_y + ties_xy - 2 * swaps;
  const std::int64_t left = total - ties_x;
  const std::int64_t right = total - ties_y;
  if (left == 0 || right == 0) return 0.0;
  return static_cast<double>(concordant_minus_discordant) /
         std::sqrt(static_cast<double>(left) * static_cast<double>(right));
}

std::size_t top_fraction_count(std::size_t n, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw DomainError("top fraction must lie in (0, 1)");
  }
  return static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n)));
}

double auc_top_fraction(std::span<const double> predicted,
                        std::span<const double> truth, double fraction) {
  if (predicted.size() != truth.size()) {
    throw DimensionError("auc_top_fraction: length mismatch");
  }
  const std::size_t n = truth.size();
  const std::size_t positives = top_fraction_count(n, fraction);
  if (positives == 0 || positives >= n) {
    throw UndefinedAucError("top " + std::to_string(positives) + " of " +
                            std::to_string(n) + " leaves one class empty");
  }

  std::vector<std::size_t> by_truth(n);
  std::iota(by_truth.begin(), by_truth.end(), 0);
  std::sort(by_truth.begin(), by_truth.end(), [&](std::size_t a, std::size_t b) {
    return truth[a] != truth[b] ? truth[a] > truth[b] : a < b;
  });
  std::vector<bool> positive(n, false);
  for (std::size_t k = 0; k < positives; ++k) positive[by_truth[k]] = true;

  // Average ranks (1-based) of predicted scores.
  std::vector<std::size_t> by_pred(n);
  std::iota(by_pred.begin(), by_pred.end(), 0);
  std::sort(by_pred.begin(), by_pred.end(),
            [&](std::size_t a, std::size_t b) { return predicted[a] < predicted[b]; });
  double positive_rank_sum = 0.0;
  std::size_t k = 0;
  while (k < n) {
    std::size_t end = k + 1;
    while (end < n && predicted[by_pred[end]] == predicted[by_pred[k]]) ++end;
    const double avg_rank = 0.5 * static_cast<double>(k + 1 + end);
    for (std::size_t m = k; m < end; ++m) {
      if (positive[by_pred[m]]) positive_rank_sum += avg_rank;
    }
    k = end;
  }
  const auto p = static_cast<double>(positives);
  const auto q = static_cast<double>(n - positives);
  return (positive_rank_sum - p * (p + 1.0) / 2.0) / (p * q);
}

}  // namespace trustbias
