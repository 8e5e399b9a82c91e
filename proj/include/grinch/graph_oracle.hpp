#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "grinch/types.hpp"

namespace grinch {

/// Latent graph over point ids 0..n-1 whose connected components are the
/// ground-truth clusters. Provides the connectivity indicator phi and a
/// linkage built from it that separates the graph by construction.
class GraphOracle {
 public:
  using Edge = std::pair<std::uint32_t, std::uint32_t>;

  GraphOracle() = default;
  /// Edges are normalised to (min, max), deduplicated and sorted. Self loops
  /// and out-of-range endpoints throw InputError.
  GraphOracle(std::size_t num_vertices, std::vector<Edge> edges);

  /// Edge-list text: first line "n m", then m lines "u v" (0-indexed).
  static GraphOracle parse(std::istream& in);
  static GraphOracle load(const std::string& path);
  void write(std::ostream& out) const;

  std::size_t num_vertices() const { return num_vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::uint32_t>& neighbors(std::uint32_t v) const { return adjacency_.at(v); }
  std::uint32_t component(std::uint32_t v) const { return component_.at(v); }
  std::size_t num_components() const { return num_components_; }
  /// Vertex sets of every component, ordered by smallest vertex.
  std::vector<std::vector<PointId>> components() const;
  /// Component id per vertex, as labels.
  GroundTruth ground_truth() const;

  /// True iff the subgraph induced on `set` is connected. Singletons are.
  bool connected(std::span<const PointId> set) const;

  /// 1 when a ∪ b induces a connected subgraph, else 0.
  int phi(std::span<const PointId> a, std::span<const PointId> b) const;

  /// Symmetric, deterministic value in [0, 0.5) derived from the two sets.
  double tie_break(std::span<const PointId> a, std::span<const PointId> b) const;

  /// phi(a, b) + tie_break(a, b). Throws InputError if the sets overlap or
  /// either is empty.
  double score(std::span<const PointId> a, std::span<const PointId> b) const;

 private:
  std::uint32_t vertex(PointId id) const;

  std::size_t num_vertices_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::uint32_t>> adjacency_;
  std::vector<std::uint32_t> component_;
  std::size_t num_components_ = 0;
};

bool connected(const GraphOracle& graph, std::span<const PointId> set);
double oracle_linkage(const GraphOracle& graph, std::span<const PointId> a, std::span<const PointId> b);

}  // namespace grinch
