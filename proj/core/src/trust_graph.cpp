#include "trustbias/trust_graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "trustbias/errors.hpp"

namespace trustbias {
namespace {

bool weight_in_range(double w, Signedness s) {
  if (!std::isfinite(w)) return false;
  return s == Signedness::Signed ? (w >= -1.0 && w <= 1.0)
                                 : (w >= 0.0 && w <= 1.0);
}

void build_csr(std::size_t n, std::span<const Edge> edges, bool by_target,
               std::vector<std::size_t>& offsets, std::vector<Neighbor>& out) {
  offsets.assign(n + 1, 0);
  for (const auto& e : edges) ++offsets[(by_target ? e.target : e.source) + 1];
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  out.resize(edges.size());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  // Edges arrive sorted by (source, target); a counting pass keeps both
  // directions sorted by neighbor id.
  for (const auto& e : edges) {
    const NodeId key = by_target ? e.target : e.source;
    const NodeId other = by_target ? e.source : e.target;
    out[cursor[key]++] = Neighbor{other, e.weight};
  }
}

std::vector<std::string_view> split_fields(std::string_view line,
                                           Delimiter delimiter) {
  std::vector<std::string_view> fields;
  auto is_sep = [delimiter](char c) {
    if (delimiter == Delimiter::Comma) return c == ',';
    return c == ' ' || c == '\t' || c == '\r';
  };
  std::size_t i = 0;
  while (i < line.size()) {
    if (delimiter == Delimiter::Whitespace) {
      while (i < line.size() && is_sep(line[i])) ++i;
      if (i >= line.size()) break;
    }
    std::size_t j = i;
    while (j < line.size() && !is_sep(line[j])) ++j;
    auto field = line.substr(i, j - i);
    if (delimiter == Delimiter::Comma) {
      while (!field.empty() && (field.front() == ' ' || field.front() == '\t'))
        field.remove_prefix(1);
      while (!field.empty() && (field.back() == ' ' || field.back() == '\t' ||
                                field.back() == '\r'))
        field.remove_suffix(1);
      fields.push_back(field);
      i = j + 1;
      if (j == line.size()) break;
    } else {
      fields.push_back(field);
      i = j;
    }
  }
  return fields;
}

std::uint64_t parse_node_id(std::string_view field, std::size_t line_no) {
  std::uint64_t value = 0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc{} || ptr != end || field.empty()) {
    throw ParseError(line_no, "invalid node id '" + std::string(field) + "'");
  }
  return value;
}

double parse_weight(std::string_view field, std::size_t line_no) {
  double value = 0.0;
  const char* begin = field.data();
  const auto* end = field.data() + field.size();
  if (!field.empty() && field.front() == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || field.empty()) {
    throw ParseError(line_no, "invalid weight '" + std::string(field) + "'");
  }
  if (!std::isfinite(value)) {
    throw ParseError(line_no, "non-finite weight '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

TrustGraph TrustGraph::from_edges(std::size_t node_count,
                                  std::vector<Edge> edges,
                                  Signedness signedness,
                                  std::vector<std::uint64_t> labels) {
  if (labels.empty()) {
    labels.resize(node_count);
    for (std::size_t i = 0; i < node_count; ++i) labels[i] = i;
  }
  if (labels.size() != node_count) {
    throw DimensionError("label count does not match node count");
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.source != b.source ? a.source < b.source : a.target < b.target;
  });
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto& e = edges[k];
    if (e.source >= node_count || e.target >= node_count) {
      throw Error("edge endpoint out of range");
    }
    if (e.source == e.target) throw Error("self-loop on node " + std::to_string(e.source));
    if (k > 0 && edges[k - 1].source == e.source && edges[k - 1].target == e.target) {
      throw Error("duplicate edge " + std::to_string(e.source) + "->" +
                  std::to_string(e.target));
    }
    if (!weight_in_range(e.weight, signedness)) {
      throw DomainError("edge weight " + std::to_string(e.weight) +
                        " outside the range of a " +
                        (signedness == Signedness::Signed ? "signed" : "unsigned") +
                        " graph");
    }
  }

  TrustGraph g;
  g.signedness_ = signedness;
  g.labels_ = std::move(labels);
  g.edges_ = std::move(edges);
  build_csr(node_count, g.edges_, false, g.out_offsets_, g.out_);
  build_csr(node_count, g.edges_, true, g.in_offsets_, g.in_);
  return g;
}

TrustGraph TrustGraph::from_edges(std::size_t node_count,
                                  std::vector<Edge> edges,
                                  std::vector<std::uint64_t> labels) {
  const bool any_negative = std::any_of(edges.begin(), edges.end(),
                                        [](const Edge& e) { return e.weight < 0.0; });
  return from_edges(node_count, std::move(edges),
                    any_negative ? Signedness::Signed : Signedness::Unsigned,
                    std::move(labels));
}

std::span<const Neighbor> TrustGraph::out_neighbors(NodeId node) const {
  return {out_.data() + out_offsets_[node], out_.data() + out_offsets_[node + 1]};
}

std::span<const Neighbor> TrustGraph::in_neighbors(NodeId node) const {
  return {in_.data() + in_offsets_[node], in_.data() + in_offsets_[node + 1]};
}

std::size_t TrustGraph::out_degree(NodeId node) const {
  return out_offsets_[node + 1] - out_offsets_[node];
}

std::size_t TrustGraph::in_degree(NodeId node) const {
  return in_offsets_[node + 1] - in_offsets_[node];
}

std::vector<EdgeRecord> parse_edge_list(std::istream& in,
                                        const ParseOptions& options) {
  std::vector<EdgeRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    const auto first = view.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    if (view[first] == options.comment_prefix) continue;

    const auto fields = split_fields(view, options.delimiter);
    if (fields.size() != 2 && fields.size() != 3) {
      throw ParseError(line_no, "expected 2 or 3 fields, found " +
                                    std::to_string(fields.size()));
    }
    EdgeRecord rec;
    rec.source = parse_node_id(fields[0], line_no);
    rec.target = parse_node_id(fields[1], line_no);
    rec.weight = fields.size() == 3 ? parse_weight(fields[2], line_no) : 1.0;
    records.push_back(rec);
  }
  return records;
}

TrustGraph build_graph(std::span<const EdgeRecord> records,
                       Normalization normalization) {
  std::unordered_map<std::uint64_t, NodeId> index;
  std::vector<std::uint64_t> labels;
  auto dense = [&](std::uint64_t id) {
    auto [it, inserted] = index.try_emplace(id, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(id);
    return it->second;
  };

  struct PairHash {
    std::size_t operator()(std::uint64_t key) const noexcept {
      return std::hash<std::uint64_t>{}(key * 0x9E3779B97F4A7C15ULL);
    }
  };
  std::unordered_map<std::uint64_t, std::size_t, PairHash> slot;
  std::vector<Edge> edges;
  edges.reserve(records.size());
  for (const auto& rec : records) {
    if (rec.source == rec.target) continue;
    if (!std::isfinite(rec.weight)) throw DomainError("non-finite edge weight");
    const NodeId s = dense(rec.source);
    const NodeId t = dense(rec.target);
    const std::uint64_t key = (static_cast<std::uint64_t>(s) << 32) | t;
    auto [it, inserted] = slot.try_emplace(key, edges.size());
    if (inserted) {
      edges.push_back(Edge{s, t, rec.weight});
    } else {
      edges[it->second].weight = rec.weight;  // keep-last
    }
  }
  if (edges.empty()) throw EmptyGraphError("no edges remain after filtering");

  switch (normalization) {
    case Normalization::None:
      break;
    case Normalization::MinMaxTo01: {
      auto [lo, hi] = std::minmax_element(
          edges.begin(), edges.end(),
          [](const Edge& a, const Edge& b) { return a.weight < b.weight; });
      const double min_w = lo->weight;
      const double max_w = hi->weight;
      for (auto& e : edges) {
        e.weight = max_w == min_w ? 1.0 : (e.weight - min_w) / (max_w - min_w);
      }
      break;
    }
    case Normalization::SignPreservingToPm1: {
      double scale = 0.0;
      for (const auto& e : edges) scale = std::max(scale, std::abs(e.weight));
      if (scale > 0.0) {
        for (auto& e : edges) e.weight /= scale;
      }
      break;
    }
  }
  const auto n = labels.size();
  return TrustGraph::from_edges(n, std::move(edges), std::move(labels));
}

void write_edge_list(std::ostream& out, const TrustGraph& graph) {
  char buf[64];
  for (const auto& e : graph.edges()) {
    std::snprintf(buf, sizeof(buf), "%.17g", e.weight);
    out << graph.label(e.source) << '\t' << graph.label(e.target) << '\t' << buf
        << '\n';
  }
}

TrustGraph induced_subgraph(const TrustGraph& graph,
                            std::span<const NodeId> nodes) {
  if (nodes.empty()) throw EmptyGraphError("empty node set");
  std::vector<NodeId> keep(nodes.begin(), nodes.end());
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (keep.back() >= graph.node_count()) {
    throw DomainError("node id " + std::to_string(keep.back()) + " not in graph");
  }

  constexpr NodeId kAbsent = static_cast<NodeId>(-1);
  std::vector<NodeId> remap(graph.node_count(), kAbsent);
  std::vector<std::uint64_t> labels;
  labels.reserve(keep.size());
  for (NodeId i = 0; i < keep.size(); ++i) {
    remap[keep[i]] = i;
    labels.push_back(graph.label(keep[i]));
  }
  std::vector<Edge> edges;
  for (const auto& e : graph.edges()) {
    if (remap[e.source] != kAbsent && remap[e.target] != kAbsent) {
      edges.push_back(Edge{remap[e.source], remap[e.target], e.weight});
    }
  }
  return TrustGraph::from_edges(keep.size(), std::move(edges), graph.signedness(),
                                std::move(labels));
}

TrustGraph generate_synthetic(std::size_t node_count, double avg_out_degree,
                              const WeightModel& model, std::uint64_t seed) {
  if (node_count < 2) throw DomainError("synthetic graph needs at least 2 nodes");
  if (!(avg_out_degree >= 0.0)) throw DegreeError("average out-degree must be >= 0");
  if (avg_out_degree >= static_cast<double>(node_count)) {
    throw DegreeError("average out-degree must be below the node count");
  }
  const auto degree = static_cast<std::size_t>(std::llround(avg_out_degree));
  if (degree > node_count - 1) {
    throw DegreeError("rounded out-degree exceeds node_count - 1");
  }
  if (model.kind == WeightModel::Kind::SignedBernoulli &&
      !(model.negative_probability >= 0.0 && model.negative_probability <= 1.0)) {
    throw DomainError("negative-edge probability must lie in [0, 1]");
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, node_count - 2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> level(0, 3);
  constexpr double kLevels[] = {0.4, 0.6, 0.8, 1.0};

  auto draw_weight = [&]() {
    switch (model.kind) {
      case WeightModel::Kind::UniformUnit:
        return unit(rng);
      case WeightModel::Kind::FourLevel:
        return kLevels[level(rng)];
      case WeightModel::Kind::SignedBernoulli: {
        const double magnitude = 1.0 - unit(rng);  // (0, 1]
        return unit(rng) < model.negative_probability ? -magnitude : magnitude;
      }
    }
    return 0.0;
  };

  std::vector<Edge> edges;
  edges.reserve(node_count * degree);
  std::vector<NodeId> targets;
  std::unordered_set<NodeId> seen;
  std::vector<NodeId> pool;
  const bool dense_pick = degree * 2 > node_count;
  for (NodeId src = 0; src < node_count; ++src) {
    targets.clear();
    if (dense_pick) {
      // Partial Fisher-Yates over all other nodes.
      pool.clear();
      for (NodeId v = 0; v < node_count; ++v) {
        if (v != src) pool.push_back(v);
      }
      for (std::size_t k = 0; k < degree; ++k) {
        std::uniform_int_distribution<std::size_t> d(k, pool.size() - 1);
        std::swap(pool[k], pool[d(rng)]);
        targets.push_back(pool[k]);
      }
    } else {
      seen.clear();
      while (targets.size() < degree) {
        auto v = static_cast<NodeId>(pick(rng));
        if (v >= src) ++v;  // skip self
        if (seen.insert(v).second) targets.push_back(v);
      }
    }
    for (NodeId t : targets) edges.push_back(Edge{src, t, draw_weight()});
  }
  const auto signedness = model.kind == WeightModel::Kind::SignedBernoulli
                              ? Signedness::Signed
                              : Signedness::Unsigned;
  return TrustGraph::from_edges(node_count, std::move(edges), signedness);
}

}  // namespace trustbias
