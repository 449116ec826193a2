#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace trustbias {

using NodeId = std::uint32_t;

enum class Signedness { Unsigned, Signed };

enum class Normalization { None, MinMaxTo01, SignPreservingToPm1 };

/// One line of an edge-list file, before re-indexing or normalization.
struct EdgeRecord {
  std::uint64_t source = 0;
  std::uint64_t target = 0;
  double weight = 1.0;

  friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

struct Neighbor {
  NodeId node = 0;
  double weight = 0.0;
};

struct Edge {
  NodeId source = 0;
  NodeId target = 0;
  double weight = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Immutable directed weighted graph with CSR storage in both directions.
///
/// Neighbor lists are sorted by neighbor id, so every per-node reduction has a
/// fixed summation order. Each node also carries the external label it had in
/// the input file (identity for generated graphs).
class TrustGraph {
 public:
  /// Builds a graph from dense edges. Throws `Error` on self-loops, duplicate
  /// pairs, out-of-range ids, or weights outside the range of `signedness`.
  static TrustGraph from_edges(std::size_t node_count, std::vector<Edge> edges,
                               Signedness signedness,
                               std::vector<std::uint64_t> labels = {});

  /// Same as above with signedness detected from the weights.
  static TrustGraph from_edges(std::size_t node_count, std::vector<Edge> edges,
                               std::vector<std::uint64_t> labels = {});

  std::size_t node_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  Signedness signedness() const noexcept { return signedness_; }
  bool is_signed() const noexcept { return signedness_ == Signedness::Signed; }

  std::span<const Neighbor> out_neighbors(NodeId node) const;
  std::span<const Neighbor> in_neighbors(NodeId node) const;
  std::size_t out_degree(NodeId node) const;
  std::size_t in_degree(NodeId node) const;

  /// All edges ordered by (source, target).
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::uint64_t label(NodeId node) const { return labels_.at(node); }
  std::span<const std::uint64_t> labels() const noexcept { return labels_; }

 private:
  TrustGraph() = default;

  std::vector<Edge> edges_;
  std::vector<std::size_t> out_offsets_;
  std::vector<Neighbor> out_;
  std::vector<std::size_t> in_offsets_;
  std::vector<Neighbor> in_;
  std::vector<std::uint64_t> labels_;
  Signedness signedness_ = Signedness::Unsigned;
};

enum class Delimiter { Whitespace, Comma };

struct ParseOptions {
  Delimiter delimiter = Delimiter::Whitespace;
  char comment_prefix = '#';
};

/// Reads a SNAP-style edge list: `source target [weight]` per line.
std::vector<EdgeRecord> parse_edge_list(std::istream& in,
                                        const ParseOptions& options = {});

TrustGraph build_graph(std::span<const EdgeRecord> records,
                       Normalization normalization = Normalization::None);

/// Writes `graph` as an edge list using the original node labels.
void write_edge_list(std::ostream& out, const TrustGraph& graph);

/// Keeps the edges whose endpoints both lie in `nodes`. Surviving nodes are
/// re-indexed in ascending order of their old id; labels are carried over.
TrustGraph induced_subgraph(const TrustGraph& graph,
                            std::span<const NodeId> nodes);

struct WeightModel {
  enum class Kind { UniformUnit, FourLevel, SignedBernoulli };

  Kind kind = Kind::UniformUnit;
  double negative_probability = 0.0;

  static WeightModel uniform_unit() { return {Kind::UniformUnit, 0.0}; }
  static WeightModel four_level() { return {Kind::FourLevel, 0.0}; }
  static WeightModel signed_bernoulli(double p_negative) {
    return {Kind::SignedBernoulli, p_negative};
  }
};

/// Random graph where every node rates round(avg_out_degree) distinct others.
TrustGraph generate_synthetic(std::size_t node_count, double avg_out_degree,
                              const WeightModel& model, std::uint64_t seed);

}  // namespace trustbias
