#include "maskperc/graph.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "maskperc/rng.hpp"

namespace maskperc {
namespace {

constexpr std::uint64_t kDegreeStream = 11;
constexpr std::uint64_t kTypeStream = 12;
constexpr std::uint64_t kMatchStream = 13;

}  // namespace

ContactNetwork::ContactNetwork(std::size_t n, std::vector<Edge> edges, std::vector<NodeType> types)
    : types_(std::move(types)), edges_(std::move(edges)) {
  if (types_.size() != n) throw std::invalid_argument("type vector size does not match node count");
  if (n > std::numeric_limits<NodeId>::max() || edges_.size() > std::numeric_limits<EdgeId>::max()) {
    throw std::length_error("network too large for 32-bit indices");
  }
  offsets_.assign(n + 1, 0);
  for (const Edge& e : edges_) {
    if (e.u >= n || e.v >= n) throw std::out_of_range("edge endpoint out of range");
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  neighbors_.resize(offsets_.back());
  edge_ids_.resize(offsets_.back());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    neighbors_[cursor[e.u]] = e.v;
    edge_ids_[cursor[e.u]++] = id;
    neighbors_[cursor[e.v]] = e.u;
    edge_ids_[cursor[e.v]++] = id;
  }
}

void ContactNetwork::save(std::ostream& out) const {
  out << "maskperc-network 1\n";
  out << "nodes " << node_count() << "\n";
  out << "edges " << edge_count() << "\n";
  out << "types ";
  for (NodeType t : types_) out << (t == NodeType::masked ? '1' : '2');
  out << "\n";
  for (const Edge& e : edges_) out << e.u << ' ' << e.v << '\n';
  if (!out) throw std::runtime_error("failed writing network");
}

ContactNetwork ContactNetwork::load(std::istream& in) {
  std::string tag;
  int version = 0;
  if (!(in >> tag >> version) || tag != "maskperc-network" || version != 1) {
    throw std::runtime_error("not a maskperc-network v1 stream");
  }
  std::size_t n = 0, m = 0;
  std::string key;
  if (!(in >> key >> n) || key != "nodes") throw std::runtime_error("expected `nodes N`");
  if (!(in >> key >> m) || key != "edges") throw std::runtime_error("expected `edges M`");
  std::string labels;
  if (!(in >> key) || key != "types") throw std::runtime_error("expected `types` line");
  if (n > 0 && !(in >> labels)) throw std::runtime_error("missing type labels");
  if (labels.size() != n) throw std::runtime_error("type label count does not match node count");
  std::vector<NodeType> types(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] == '1') types[i] = NodeType::masked;
    else if (labels[i] == '2') types[i] = NodeType::unmasked;
    else throw std::runtime_error("type labels must be 1 or 2");
  }
  std::vector<Edge> edges(m);
  for (auto& e : edges) {
    if (!(in >> e.u >> e.v)) throw std::runtime_error("truncated edge list");
  }
  return ContactNetwork(n, std::move(edges), std::move(types));
}

TypeCounts type_counts(const ContactNetwork& net) {
  TypeCounts c;
  for (NodeType t : net.types()) {
    if (t == NodeType::masked) ++c.masked;
    else ++c.unmasked;
  }
  return c;
}

std::vector<Edge> match_stubs(std::span<const int> degrees, std::uint64_t seed) {
  std::size_t total = 0;
  for (int d : degrees) {
    if (d < 0) throw std::invalid_argument("negative degree");
    total += static_cast<std::size_t>(d);
  }
  if (total % 2 != 0) throw std::invalid_argument("degree sequence has odd sum");
  std::vector<NodeId> stubs;
  stubs.reserve(total);
  for (NodeId u = 0; u < degrees.size(); ++u) stubs.insert(stubs.end(), static_cast<std::size_t>(degrees[u]), u);

  Engine eng = make_engine(seed);
  std::shuffle(stubs.begin(), stubs.end(), eng);

  std::vector<Edge> edges(total / 2);
  for (std::size_t i = 0; i < edges.size(); ++i) edges[i] = {stubs[2 * i], stubs[2 * i + 1]};
  return edges;
}

std::vector<NodeType> assign_types(std::size_t n, double m, std::uint64_t seed) {
  if (!(m >= 0.0 && m <= 1.0)) throw std::invalid_argument("m must lie in [0,1]");
  Engine eng = make_engine(seed);
  std::vector<NodeType> types(n);
  for (auto& t : types) t = uniform01(eng) < m ? NodeType::masked : NodeType::unmasked;
  return types;
}

std::vector<Edge> simplify(std::vector<Edge> edges) {
  for (auto& e : edges) {
    if (e.v < e.u) std::swap(e.u, e.v);
  }
  std::erase_if(edges, [](const Edge& e) { return e.u == e.v; });
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

ContactNetwork build_network(const DegreeDistribution& dist, std::size_t n, double m,
                             std::uint64_t seed, BuildOptions opts) {
  if (n < 2) throw std::invalid_argument("network needs at least 2 nodes");
  const auto degrees = dist.sample(n, derive_seed(seed, kDegreeStream));
  auto types = assign_types(n, m, derive_seed(seed, kTypeStream));
  auto edges = match_stubs(degrees, derive_seed(seed, kMatchStream));
  if (opts.simple_graph) edges = simplify(std::move(edges));
  return ContactNetwork(n, std::move(edges), std::move(types));
}

}  // namespace maskperc
