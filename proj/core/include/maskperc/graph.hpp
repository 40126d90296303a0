#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "maskperc/degree.hpp"
#include "maskperc/mask_model.hpp"

namespace maskperc {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  NodeId u;
  NodeId v;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected multigraph in compressed adjacency form with a type label per
/// node. A self-loop appears twice in its node's neighbour list, so
/// `degree(u)` counts stubs. Immutable once built.
class ContactNetwork {
 public:
  ContactNetwork() = default;
  ContactNetwork(std::size_t n, std::vector<Edge> edges, std::vector<NodeType> types);

  std::size_t node_count() const noexcept { return types_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::span<const NodeId> neighbors(NodeId u) const noexcept {
    return {neighbors_.data() + offsets_[u], neighbors_.data() + offsets_[u + 1]};
  }
  /// Edge ids parallel to neighbors(u).
  std::span<const EdgeId> incident_edges(NodeId u) const noexcept {
    return {edge_ids_.data() + offsets_[u], edge_ids_.data() + offsets_[u + 1]};
  }
  std::size_t degree(NodeId u) const noexcept { return offsets_[u + 1] - offsets_[u]; }
  NodeType type(NodeId u) const noexcept { return types_[u]; }
  std::span<const NodeType> types() const noexcept { return types_; }
  std::span<const Edge> edges() const noexcept { return edges_; }

  /// Line format: `maskperc-network 1`, `nodes N`, `edges M`, a `types`
  /// line of N characters in {1,2}, then M lines `u v`.
  void save(std::ostream& out) const;
  static ContactNetwork load(std::istream& in);

  friend bool operator==(const ContactNetwork&, const ContactNetwork&) = default;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> neighbors_;
  std::vector<EdgeId> edge_ids_;
  std::vector<NodeType> types_;
  std::vector<Edge> edges_;
};

struct TypeCounts {
  std::size_t masked = 0;
  std::size_t unmasked = 0;
};

TypeCounts type_counts(const ContactNetwork& net);

struct BuildOptions {
  /// Erase self-loops and collapse multi-edges after matching.
  bool simple_graph = false;
};

/// Uniform stub matching over `degrees` (sum must be even).
std::vector<Edge> match_stubs(std::span<const int> degrees, std::uint64_t seed);

/// Independent Bernoulli(m) labels.
std::vector<NodeType> assign_types(std::size_t n, double m, std::uint64_t seed);

/// Configuration-model network: degrees drawn from `dist`, stubs paired
/// uniformly at random, labels i.i.d. Bernoulli(m) independent of degree.
ContactNetwork build_network(const DegreeDistribution& dist, std::size_t n, double m,
                             std::uint64_t seed, BuildOptions opts = {});

/// Drop self-loops and parallel edges.
std::vector<Edge> simplify(std::vector<Edge> edges);

}  // namespace maskperc
