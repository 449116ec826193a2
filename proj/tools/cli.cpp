#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trustbias/trustbias.hpp"

namespace trustbias::cli {
namespace {

struct Config {
  std::string command;
  std::string input;
  std::string output;
  std::string algorithm = "l1-avg";
  std::vector<std::string> algorithms;
  std::vector<std::string> baselines;
  double lambda = 0.5;
  int iterations = 15;
  std::optional<double> epsilon;
  std::string epsilon_mode = "residual";
  std::uint64_t seed = 42;
  std::string normalization = "none";
  double top_fraction = 0.05;
  std::vector<double> ratios{0.05, 0.10, 0.15, 0.20};
  int repeats = 10;
  std::vector<double> fractions{0.25, 0.5, 0.75, 1.0};
  int repetitions = 3;
  std::vector<double> lambdas{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  int threads = 1;
  // synth
  std::size_t nodes = 1000;
  double degree = 10.0;
  std::string weights = "uniform";
  double negative_probability = 0.2;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
  return out;
}

std::string join(const std::vector<double>& items) {
  std::string out;
  char buf[32];
  for (double v : items) {
    std::snprintf(buf, sizeof(buf), "%g", v);
    out += (out.empty() ? "" : ",") + std::string(buf);
  }
  return out;
}

std::string format12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void print_config(const Config& c, std::ostream& err) {
  err << "config: command=" << c.command;
  if (c.command == "synth") {
    err << " nodes=" << c.nodes << " degree=" << c.degree << " weights=" << c.weights
        << " neg_prob=" << c.negative_probability << " seed=" << c.seed;
  } else {
    err << " input=" << c.input << " normalization=" << c.normalization;
    if (c.command == "rank") {
      err << " algorithm=" << c.algorithm;
    } else {
      err << " algorithms=" << join(c.algorithms);
    }
    err << " lambda=" << c.lambda;
    if (c.epsilon) {
      err << " epsilon=" << *c.epsilon << " epsilon_mode=" << c.epsilon_mode;
    } else {
      err << " iterations=" << c.iterations;
    }
    err << " seed=" << c.seed << " threads=" << c.threads;
    if (c.command == "bias-eval") err << " top_fraction=" << c.top_fraction;
    if (c.command == "prestige-eval" || c.command == "lambda-sweep") {
      err << " baselines=" << join(c.baselines);
    }
    if (c.command == "robustness") {
      err << " ratios=" << join(c.ratios) << " repeats=" << c.repeats;
    }
    if (c.command == "scalability") {
      err << " fractions=" << join(c.fractions) << " repetitions=" << c.repetitions;
    }
    if (c.command == "lambda-sweep") err << " lambdas=" << join(c.lambdas);
  }
  err << " output=" << (c.output.empty() ? "-" : c.output) << '\n';
}

Normalization parse_normalization(const std::string& name) {
  if (name == "none") return Normalization::None;
  if (name == "minmax") return Normalization::MinMaxTo01;
  if (name == "signed") return Normalization::SignPreservingToPm1;
  throw ConfigError("unknown normalization '" + name + "'");
}

TrustGraph load_graph(const Config& c) {
  std::ifstream in(c.input);
  if (!in) throw InputError("cannot open input file '" + c.input + "'");
  const auto records = parse_edge_list(in);
  return build_graph(records, parse_normalization(c.normalization));
}

StoppingRule stopping_rule(const Config& c) {
  if (!c.epsilon) return StoppingRule::fixed(c.iterations);
  if (c.epsilon_mode == "residual") return StoppingRule::residual(*c.epsilon);
  if (c.epsilon_mode == "bound") return StoppingRule::epsilon_bound(*c.epsilon);
  throw ConfigError("unknown epsilon mode '" + c.epsilon_mode + "'");
}

std::vector<BiasFunctionSpec> specs(const Config& c, const TrustGraph& graph,
                                    std::ostream& err) {
  std::vector<BiasFunctionSpec> out;
  for (const auto& name : c.algorithms) {
    BiasFunctionSpec spec{parse_variant(name), c.lambda};
    if (graph.is_signed() &&
        (spec.variant == BiasVariant::L2Avg || spec.variant == BiasVariant::L2Max)) {
      spec = resolve_for_graph(spec, graph);
      err << "notice: signed graph, using " << variant_name(spec.variant) << " for "
          << name << '\n';
    }
    out.push_back(spec);
  }
  return out;
}

std::vector<Baseline> baselines(const Config& c) {
  std::vector<Baseline> out;
  for (const auto& name : c.baselines) out.push_back(parse_baseline(name));
  return out;
}

ExperimentOptions experiment_options(const Config& c) {
  ExperimentOptions options;
  options.stop = stopping_rule(c);
  options.threads = c.threads;
  options.top_fraction = c.top_fraction;
  return options;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write '" + path + "'");
  file << text;
}

int emit_report(const Config& c, const ExperimentReport& report, std::ostream& out,
                std::ostream& err) {
  for (const auto& w : report.warnings) err << "warning: " << w << '\n';
  if (c.output.empty()) {
    out << to_json(report);
    return kOk;
  }
  std::string base = c.output;
  for (const char* ext : {".json", ".csv"}) {
    const std::string e(ext);
    if (base.size() > e.size() && base.compare(base.size() - e.size(), e.size(), e) == 0) {
      base.resize(base.size() - e.size());
      break;
    }
  }
  write_text(base + ".json", to_json(report));
  write_text(base + ".csv", to_csv(report));
  err << "wrote " << base << ".json and " << base << ".csv\n";
  return kOk;
}

void print_graph_summary(const TrustGraph& graph, std::ostream& err) {
  err << "graph: n=" << graph.node_count() << " m=" << graph.edge_count()
      << (graph.is_signed() ? " signed" : " unsigned") << '\n';
}

int cmd_rank(const Config& c, std::ostream& out, std::ostream& err) {
  const auto graph = load_graph(c);
  print_graph_summary(graph, err);

  ScoreVector prestige;
  std::optional<ScoreVector> bias;
  bool is_baseline = false;
  for (auto b : {Baseline::ArithmeticAverage, Baseline::Hits, Baseline::PageRank}) {
    if (baseline_name(b) == c.algorithm) is_baseline = true;
  }
  if (is_baseline) {
    const auto which = parse_baseline(c.algorithm);
    if (which == Baseline::ArithmeticAverage) {
      prestige = arithmetic_average(graph);
      err << "summary: n=" << graph.node_count() << " m=" << graph.edge_count()
          << " iterations=0 final_residual=0\n";
    } else {
      const auto res = which == Baseline::Hits ? hits_authority(graph) : pagerank(graph);
      if (res.degenerate) err << "warning: no usable edges for " << c.algorithm << '\n';
      prestige = res.scores;
      err << "summary: n=" << graph.node_count() << " m=" << graph.edge_count()
          << " iterations=" << res.iterations << " converged=" << res.converged << '\n';
    }
  } else {
    Config single = c;
    single.algorithms = {c.algorithm};
    const auto spec = specs(single, graph, err).front();
    SolveOptions options;
    options.threads = c.threads;
    const auto result = solve_algorithm(graph, spec, stopping_rule(c), options);
    if (result.cap_exceeded) err << "warning: iteration cap reached before convergence\n";
    prestige = result.prestige;
    bias = result.raw_bias.empty() ? result.bias : result.raw_bias;
    err << "summary: n=" << graph.node_count() << " m=" << graph.edge_count()
        << " iterations=" << result.iterations_run
        << " final_residual=" << format12(result.final_residual()) << '\n';
  }

  std::vector<NodeId> order(graph.node_count());
  for (NodeId i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](NodeId a, NodeId b) { return graph.label(a) < graph.label(b); });

  std::ostringstream csv;
  csv << "node_id,prestige,bias\n";
  for (NodeId i : order) {
    csv << graph.label(i) << ',' << format12(prestige[i]) << ',';
    if (bias) csv << format12((*bias)[i]);
    csv << '\n';
  }
  if (c.output.empty()) {
    out << csv.str();
  } else {
    write_text(c.output, csv.str());
  }
  return kOk;
}

int cmd_synth(const Config& c, std::ostream& out, std::ostream& err) {
  WeightModel model;
  if (c.weights == "uniform") {
    model = WeightModel::uniform_unit();
  } else if (c.weights == "four-level") {
    model = WeightModel::four_level();
  } else if (c.weights == "signed") {
    model = WeightModel::signed_bernoulli(c.negative_probability);
  } else {
    throw ConfigError("unknown weight model '" + c.weights + "'");
  }
  const auto graph = generate_synthetic(c.nodes, c.degree, model, c.seed);
  print_graph_summary(graph, err);
  std::ostringstream text;
  text << "# synthetic trust graph: nodes=" << c.nodes << " degree=" << c.degree
       << " weights=" << c.weights << " seed=" << c.seed << '\n';
  write_edge_list(text, graph);
  if (c.output.empty()) {
    out << text.str();
  } else {
    write_text(c.output, text.str());
  }
  return kOk;
}

int dispatch(const Config& c, std::ostream& out, std::ostream& err) {
  if (c.command == "rank") return cmd_rank(c, out, err);
  if (c.command == "synth") return cmd_synth(c, out, err);

  const auto graph = load_graph(c);
  print_graph_summary(graph, err);
  const auto algos = specs(c, graph, err);
  const auto options = experiment_options(c);
  if (c.command == "bias-eval") {
    return emit_report(c, bias_comparison(graph, algos, options), out, err);
  }
  if (c.command == "prestige-eval") {
    return emit_report(c, prestige_comparison(graph, algos, baselines(c), options), out,
                       err);
  }
  if (c.command == "robustness") {
    if (c.repeats < 1) throw ConfigError("--repeats must be >= 1");
    std::vector<std::uint64_t> seeds;
    for (int k = 0; k < c.repeats; ++k) seeds.push_back(c.seed + static_cast<std::uint64_t>(k));
    return emit_report(c, robustness_experiment(graph, c.ratios, seeds, algos, options),
                       out, err);
  }
  if (c.command == "scalability") {
    return emit_report(
        c, scalability_experiment(graph, c.fractions, c.seed, algos, options, c.repetitions),
        out, err);
  }
  if (c.command == "lambda-sweep") {
    return emit_report(c, lambda_sweep(graph, c.lambdas, algos, baselines(c), options), out,
                       err);
  }
  throw ConfigError("unknown command '" + c.command + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Bias and prestige of nodes in trust networks"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-i,--input", c.input, "Edge-list file (source target [weight])")
        ->required();
    sub->add_option("-o,--output", c.output, "Output path (stdout when omitted)");
    sub->add_option("--normalization", c.normalization, "none | minmax | signed")
        ->capture_default_str();
    sub->add_option("--lambda", c.lambda, "Decay constant")->capture_default_str();
    auto* iters =
        sub->add_option("--iterations", c.iterations, "Fixed iteration count")
            ->capture_default_str();
    auto* eps = sub->add_option("--epsilon", c.epsilon, "Convergence tolerance");
    iters->excludes(eps);
    sub->add_option("--epsilon-mode", c.epsilon_mode,
                    "residual: stop when ||r^{t+1}-r^t|| < eps; bound: ceil(log eps/log lambda)")
        ->capture_default_str();
    sub->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
    sub->add_option("--threads", c.threads, "Worker threads")->capture_default_str();
  };

  auto* rank = app.add_subcommand("rank", "Write node_id,prestige,bias for one algorithm");
  add_common(rank);
  rank->add_option("-a,--algorithm", c.algorithm,
                   "mb | l1-avg | l1-max | l2-avg | l2-max | aa | hits | pagerank")
      ->capture_default_str();

  auto add_algorithms = [&](CLI::App* sub) {
    sub->add_option("--algorithms", c.algorithms, "Comma-separated bias functions")
        ->delimiter(',');
  };
  auto add_baselines = [&](CLI::App* sub) {
    sub->add_option("--baselines", c.baselines, "Comma-separated: aa,hits,pagerank")
        ->delimiter(',');
  };

  auto* bias_eval = app.add_subcommand("bias-eval", "Bias vs variance ground truth");
  add_common(bias_eval);
  bias_eval->add_option("--top-fraction", c.top_fraction, "Positive fraction for AUC")
      ->capture_default_str();

  auto* prestige_eval = app.add_subcommand("prestige-eval", "Prestige vs baselines");
  add_common(prestige_eval);
  add_baselines(prestige_eval);

  auto* robustness = app.add_subcommand("robustness", "Rank stability under spam");
  add_common(robustness);
  robustness->add_option("--ratios", c.ratios, "Spam ratios")->delimiter(',');
  robustness->add_option("--repeats", c.repeats, "Seeds per ratio (seed, seed+1, ...)")
      ->capture_default_str();

  auto* scalability = app.add_subcommand("scalability", "Solve time on nested subgraphs");
  add_common(scalability);
  scalability->add_option("--fractions", c.fractions, "Node fractions")->delimiter(',');
  scalability->add_option("--repetitions", c.repetitions, "Timing repetitions")
      ->capture_default_str();

  auto* sweep = app.add_subcommand("lambda-sweep", "Metrics across decay constants");
  add_common(sweep);
  sweep->add_option("--lambdas", c.lambdas, "Decay constants")->delimiter(',');
  add_baselines(sweep);

  for (auto* sub : {bias_eval, prestige_eval, robustness, scalability, sweep}) {
    add_algorithms(sub);
  }

  auto* synth = app.add_subcommand("synth", "Generate a synthetic trust graph");
  synth->add_option("-o,--output", c.output, "Output edge list (stdout when omitted)");
  synth->add_option("--nodes", c.nodes, "Node count")->capture_default_str();
  synth->add_option("--degree", c.degree, "Average out-degree")->capture_default_str();
  synth->add_option("--weights", c.weights, "uniform | four-level | signed")
      ->capture_default_str();
  synth->add_option("--neg-prob", c.negative_probability,
                    "Probability of a negative edge (signed weights)")
      ->capture_default_str();
  synth->add_option("--seed", c.seed, "RNG seed")->capture_default_str();

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("trustbias");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
  c.command = app.get_subcommands().front()->get_name();
  if (c.baselines.empty()) c.baselines = {"aa", "hits", "pagerank"};
  if (c.algorithms.empty()) {
    c.algorithms = {"mb", "l1-avg", "l1-max", "l2-avg", "l2-max"};
    if (c.command == "lambda-sweep") c.algorithms.erase(c.algorithms.begin());
  }
  if (c.threads < 1) {
    err << "error: --threads must be >= 1\n";
    return kConfigError;
  }
  print_config(c, err);

  try {
    return dispatch(c, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const EmptyGraphError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const VariantMismatchError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DegreeError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace trustbias::cli
