#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include <nlohmann/json.hpp>

#include "support/test_support.hpp"

using namespace trustbias;
namespace ts = trustbias::test_support;

namespace {

const ReportRow& find_row(const ExperimentReport& report, const std::string& algorithm,
                          const std::string& target, const std::string& metric,
                          const std::string& reference = "") {
  for (const auto& row : report.rows) {
    if (row.algorithm == algorithm && row.target == target && row.metric == metric &&
        (reference.empty() || row.reference == reference)) {
      return row;
    }
  }
  throw std::runtime_error("row not found: " + algorithm + "/" + target + "/" + metric);
}

// Ten raters agree on five targets; rater 15 contradicts every rating.
TrustGraph lone_dissenter() {
  std::vector<Edge> edges;
  for (NodeId r = 5; r < 15; ++r) {
    for (NodeId t = 0; t < 5; ++t) edges.push_back({r, t, t < 3 ? 0.9 : 0.1});
  }
  for (NodeId t = 0; t < 5; ++t) edges.push_back({15, t, t < 3 ? 0.0 : 1.0});
  return TrustGraph::from_edges(16, edges);
}

}  // namespace

TEST(InjectSpam, NoSpammersLeavesGraph) {
  const auto g = generate_synthetic(50, 4, WeightModel::uniform_unit(), 3);
  const auto spam = inject_spam(g, 0.01, 1);
  EXPECT_TRUE(spam.empty);
  EXPECT_TRUE(spam.spammers.empty());
  EXPECT_TRUE(std::equal(g.edges().begin(), g.edges().end(), spam.graph.edges().begin(),
                         spam.graph.edges().end()));
  EXPECT_TRUE(inject_spam(g, 0.0, 1).empty);
  EXPECT_THROW(inject_spam(g, 1.0, 1), DomainError);
  EXPECT_THROW(inject_spam(g, -0.1, 1), DomainError);
}

TEST(InjectSpam, BandsAndEdgeDiff) {
  for (bool is_signed : {false, true}) {
    const auto g = generate_synthetic(
        200, 6,
        is_signed ? WeightModel::signed_bernoulli(0.3) : WeightModel::uniform_unit(), 8);
    const auto spam = inject_spam(g, 0.1, 42);
    EXPECT_EQ(spam.spammers.size(), 20u);
    EXPECT_EQ(spam.graph.signedness(), g.signedness());
    const auto aa = arithmetic_average(g);
    ScoreVector sorted = aa;
    std::sort(sorted.begin(), sorted.end());
    const double median = 0.5 * (sorted[99] + sorted[100]);
    std::set<NodeId> spammers(spam.spammers.begin(), spam.spammers.end());
    ASSERT_EQ(spam.graph.edge_count(), g.edge_count());
    for (std::size_t k = 0; k < g.edge_count(); ++k) {
      const auto& before = g.edges()[k];
      const auto& after = spam.graph.edges()[k];
      ASSERT_EQ(before.source, after.source);
      ASSERT_EQ(before.target, after.target);
      if (!spammers.count(before.source)) {
        EXPECT_EQ(before.weight, after.weight);
        continue;
      }
      const bool low_target = aa[before.target] < median;
      const double lo = low_target ? (is_signed ? 0.6 : 0.8) : (is_signed ? -1.0 : 0.0);
      const double hi = low_target ? 1.0 : (is_signed ? -0.6 : 0.2);
      EXPECT_GE(after.weight, lo);
      EXPECT_LE(after.weight, hi);
    }
  }
}

TEST(InjectSpam, OnlySourcesWithOutEdgesAndDeterministic) {
  const auto g = TrustGraph::from_edges(10, {{0, 5, 0.9}, {1, 5, 0.8}, {2, 6, 0.1}});
  const auto spam = inject_spam(g, 0.5, 9);
  EXPECT_EQ(spam.spammers, (std::vector<NodeId>{0, 1, 2}));

  const auto h = generate_synthetic(100, 5, WeightModel::uniform_unit(), 12);
  const auto a = inject_spam(h, 0.1, 77);
  const auto b = inject_spam(h, 0.1, 77);
  EXPECT_EQ(a.spammers, b.spammers);
  EXPECT_TRUE(std::equal(a.graph.edges().begin(), a.graph.edges().end(),
                         b.graph.edges().begin(), b.graph.edges().end()));
}

TEST(InjectSpam, SingleEdgeToBelowMedianTarget) {
  // Targets 2 and 3 carry high averages, target 1 a low one.
  const auto g = TrustGraph::from_edges(
      4, {{0, 1, 0.3}, {2, 3, 0.9}, {3, 2, 0.95}, {1, 2, 0.9}, {1, 3, 0.9}});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto spam = inject_spam(g, 0.25, seed);
    if (spam.spammers != std::vector<NodeId>{0}) continue;
    EXPECT_GE(spam.graph.edges()[0].weight, 0.8);
    EXPECT_LE(spam.graph.edges()[0].weight, 1.0);
    return;
  }
  FAIL() << "no seed selected node 0";
}

TEST(BiasComparison, LoneDissenterTopRanked) {
  const auto g = lone_dissenter();
  ExperimentOptions opts;
  opts.top_fraction = 1.0 / 16.0;
  const auto report = bias_comparison(g, {{BiasVariant::L1Avg, 0.5}}, opts);
  EXPECT_DOUBLE_EQ(find_row(report, "l1-avg", "bias", "auc").value, 1.0);

  const auto var = variance_ground_truth(g);
  EXPECT_EQ(std::max_element(var.begin(), var.end()) - var.begin(), 15);
  const auto bias = solve(g, {BiasVariant::L1Avg, 0.5}).bias;
  EXPECT_EQ(std::max_element(bias.begin(), bias.end()) - bias.begin(), 15);
}

TEST(BiasComparison, ZeroLambdaGivesZeroTau) {
  const auto g = generate_synthetic(80, 5, WeightModel::uniform_unit(), 1);
  std::vector<BiasFunctionSpec> algos;
  for (auto spec : ts::framework_variants()) {
    spec.lambda = 0.0;
    algos.push_back(spec);
  }
  const auto report = bias_comparison(g, algos);
  for (const auto& row : report.rows) {
    if (row.metric == "kendall_tau") EXPECT_EQ(row.value, 0.0);
    if (row.metric == "auc") EXPECT_EQ(row.value, 0.5);
  }
}

TEST(BiasComparison, CancellationGadget) {
  const auto gadget = ts::cancellation_gadget();
  const auto& g = gadget.graph;
  const auto mb = solve(g, {BiasVariant::MB, 0.5}).ranking_bias();
  for (NodeId h : gadget.honest_raters) EXPECT_LT(mb[gadget.adversary], mb[h]);
  for (const auto& spec : ts::framework_variants()) {
    const auto b = solve(g, spec).bias;
    EXPECT_EQ(std::max_element(b.begin(), b.end()) - b.begin(), gadget.adversary)
        << variant_name(spec.variant);
  }

  // AUC over the single top-variance node, which is the adversary.
  ExperimentOptions opts;
  opts.top_fraction = 0.05;
  const auto report =
      bias_comparison(g, {{BiasVariant::MB, 0.5}, {BiasVariant::L1Avg, 0.5}}, opts);
  EXPECT_GE(find_row(report, "l1-avg", "bias", "auc").value,
            find_row(report, "mb", "bias", "auc").value);
}

TEST(PrestigeComparison, ZeroLambdaMatchesAverage) {
  const auto g = generate_synthetic(120, 6, WeightModel::uniform_unit(), 5);
  const auto report = prestige_comparison(
      g, {{BiasVariant::L1Avg, 0.0}, {BiasVariant::L1Avg, 0.0}},
      {Baseline::ArithmeticAverage, Baseline::PageRank});
  ASSERT_EQ(report.rows.size(), 4u);
  EXPECT_DOUBLE_EQ(report.rows[0].value, 1.0);
  EXPECT_EQ(report.rows[0].value, report.rows[2].value);
  EXPECT_EQ(report.rows[1].value, report.rows[3].value);
}

TEST(PrestigeComparison, StrongAverageCorrelation) {
  const auto g = generate_synthetic(200, 8, WeightModel::uniform_unit(), 2024);
  const auto report = prestige_comparison(g, ts::framework_variants(),
                                          {Baseline::ArithmeticAverage});
  for (const auto& row : report.rows) EXPECT_GT(row.value, 0.5) << row.algorithm;
}

TEST(Robustness, ZeroRatioGivesTauOne) {
  const auto g = generate_synthetic(60, 4, WeightModel::uniform_unit(), 6);
  const auto report =
      robustness_experiment(g, {0.0}, {1, 2}, ts::all_cli_variants());
  for (const auto& row : report.rows) EXPECT_EQ(row.value, 1.0);
  EXPECT_EQ(report.warnings.size(), 2u);
}

TEST(Robustness, ReplayableAndInRange) {
  const auto g = generate_synthetic(100, 5, WeightModel::four_level(), 6);
  const auto a = robustness_experiment(g, {0.1, 0.2}, {3, 4, 5}, ts::all_cli_variants());
  const auto b = robustness_experiment(g, {0.1, 0.2}, {3, 4, 5}, ts::all_cli_variants());
  EXPECT_EQ(to_json(a), to_json(b));
  EXPECT_EQ(to_csv(a), to_csv(b));
  EXPECT_EQ(a.rows.size(), 2u * 5u * 2u);
  for (const auto& row : a.rows) {
    EXPECT_GE(row.value, -1.0);
    EXPECT_LE(row.value, 1.0);
  }
  EXPECT_THROW(robustness_experiment(g, {0.1}, {}, ts::all_cli_variants()), DomainError);
}

TEST(Scalability, NestedSubsets) {
  const auto subsets = nested_subsets(1000, {0.25, 0.5, 0.75, 1.0}, 11);
  ASSERT_EQ(subsets.size(), 4u);
  EXPECT_EQ(subsets[0].size(), 250u);
  EXPECT_EQ(subsets[3].size(), 1000u);
  for (std::size_t k = 1; k < subsets.size(); ++k) {
    EXPECT_TRUE(std::includes(subsets[k].begin(), subsets[k].end(), subsets[k - 1].begin(),
                              subsets[k - 1].end()));
  }
  EXPECT_THROW(nested_subsets(10, {0.5, 0.5}, 1), DomainError);
  EXPECT_THROW(nested_subsets(10, {0.0}, 1), DomainError);
  EXPECT_THROW(nested_subsets(10, {1.5}, 1), DomainError);
}

TEST(Scalability, FullGraphSingleRow) {
  const auto g = generate_synthetic(300, 5, WeightModel::uniform_unit(), 9);
  const auto report = scalability_experiment(g, {1.0}, 1, {{BiasVariant::L1Avg, 0.5}});
  ASSERT_EQ(report.rows.size(), 1u);
  EXPECT_TRUE(report.rows[0].is_timing());
  EXPECT_EQ(report.rows[0].edges, g.edge_count());
  EXPECT_GE(report.rows[0].value, 0.0);
  EXPECT_EQ(to_json(report, false).find("time_ms"), std::string::npos);
}

TEST(LambdaSweep, SingleLambdaMatchesComparisons) {
  const auto g = generate_synthetic(100, 5, WeightModel::uniform_unit(), 10);
  const std::vector<BiasFunctionSpec> algos{{BiasVariant::L2Avg, 0.5}};
  const std::vector<Baseline> bases{Baseline::ArithmeticAverage, Baseline::Hits};
  const auto sweep = lambda_sweep(g, {0.5}, algos, bases);
  const auto bias = bias_comparison(g, algos);
  const auto prestige = prestige_comparison(g, algos, bases);
  ASSERT_EQ(sweep.rows.size(), 3u);
  EXPECT_EQ(sweep.rows[0].value, find_row(bias, "l2-avg", "bias", "kendall_tau").value);
  EXPECT_EQ(sweep.rows[1].value, prestige.rows[0].value);
  EXPECT_EQ(sweep.rows[2].value, prestige.rows[1].value);
}

TEST(LambdaSweep, ZeroLambdaAndValidation) {
  const auto g = generate_synthetic(60, 4, WeightModel::uniform_unit(), 10);
  const auto sweep = lambda_sweep(g, {0.0}, ts::framework_variants(), {});
  for (const auto& row : sweep.rows) EXPECT_EQ(row.value, 0.0);
  EXPECT_THROW(lambda_sweep(g, {0.5, 1.0}, ts::framework_variants(), {}), DomainError);

  const auto s = generate_synthetic(60, 4, WeightModel::signed_bernoulli(0.3), 10);
  try {
    lambda_sweep(s, {0.7}, {{BiasVariant::L1Max, 0.5}}, {});
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("l1-max"), std::string::npos) << e.what();
  }
}

TEST(LambdaSweep, L2MaxSpreadBelowL1Avg) {
  const auto g = generate_synthetic(400, 10, WeightModel::four_level(), 2);
  std::vector<double> lambdas;
  for (int k = 1; k <= 9; ++k) lambdas.push_back(k / 10.0);
  const auto sweep =
      lambda_sweep(g, lambdas, {{BiasVariant::L1Avg, 0.5}, {BiasVariant::L2Max, 0.5}}, {});
  std::map<std::string, std::pair<double, double>> range;
  for (const auto& row : sweep.rows) {
    auto [it, fresh] = range.try_emplace(row.algorithm, row.value, row.value);
    it->second.first = std::min(it->second.first, row.value);
    it->second.second = std::max(it->second.second, row.value);
  }
  const double l1 = range["l1-avg"].second - range["l1-avg"].first;
  const double l2 = range["l2-max"].second - range["l2-max"].first;
  EXPECT_LT(l2, l1) << "l2-max spread " << l2 << ", l1-avg spread " << l1;
}

TEST(Reports, JsonAndCsvShape) {
  const auto g = generate_synthetic(50, 4, WeightModel::uniform_unit(), 10);
  const auto report = bias_comparison(g, {{BiasVariant::MB, 0.5}});
  const auto doc = nlohmann::json::parse(to_json(report));
  EXPECT_EQ(doc["kind"], "bias_comparison");
  EXPECT_EQ(doc["graph"]["nodes"], 50);
  EXPECT_EQ(doc["rows"].size(), 2u);
  EXPECT_EQ(doc["rows"][0]["parameter"], 0.05);
  EXPECT_TRUE(doc["rows"][1]["parameter"].is_null());

  const auto csv = to_csv(report);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "kind,algorithm,target,metric,reference,parameter,value,nodes,edges");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

TEST(Experiments, ThreadCountInvariant) {
  const auto g = generate_synthetic(400, 6, WeightModel::uniform_unit(), 31);
  std::string baseline;
  for (int threads : {1, 2, 8}) {
    ExperimentOptions opts;
    opts.threads = threads;
    const auto json = to_json(robustness_experiment(g, {0.1}, {1, 2},
                                                    ts::all_cli_variants(), opts)) +
                      to_json(bias_comparison(g, ts::all_cli_variants(), opts));
    if (baseline.empty()) {
      baseline = json;
    } else {
      EXPECT_EQ(json, baseline) << "threads=" << threads;
    }
  }
}
