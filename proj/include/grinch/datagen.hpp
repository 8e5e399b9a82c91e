#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "grinch/graph_oracle.hpp"
#include "grinch/types.hpp"

namespace grinch {

/// Binary vectors in K disjoint windows of width w; d = K * w.
struct SyntheticSpec {
  std::size_t num_clusters = 100;
  std::size_t points_per_cluster = 25;
  std::size_t window = 100;
  double bit_probability = 0.1;
  std::uint64_t seed = 0;

  /// Throws InputError on zero sizes or p outside (0, 1].
  void validate() const;
};

/// Point id c*m + j is the j-th point of cluster c and carries label c. Each
/// bit of cluster c's window [c*w, (c+1)*w) is set with probability p; other
/// bits are 0. All-zero draws are redrawn.
Dataset gen_synthetic(const SyntheticSpec& spec);

enum class ComponentShape { clique, chain, random_tree, random_density };

std::string_view to_string(ComponentShape shape);

struct PlantedGraphSpec {
  std::vector<std::size_t> sizes;
  /// One shape per component, or a single shape for all of them.
  std::vector<ComponentShape> shapes;
  /// Extra-edge probability for random_density (on top of a spanning tree).
  double density = 0.3;
  std::uint64_t seed = 0;
};

/// Graph whose components have the requested sizes and shapes. Vertex ids
/// are a random permutation, so components are not contiguous id ranges.
GraphOracle gen_planted_graph(const PlantedGraphSpec& spec);

/// One point per vertex with a constant 1-d vector and the component label,
/// for clustering under the oracle linkage.
Dataset oracle_points(const GraphOracle& graph);

enum class OrderScheme { given, random, round_robin, sorted };

OrderScheme parse_order(std::string_view name);
std::string_view to_string(OrderScheme scheme);

struct ArrivalOrder {
  OrderScheme scheme = OrderScheme::given;
  std::uint64_t seed = 0;
};

/// Permutes `points`. round_robin cycles through the clusters in a random
/// cluster order, skipping exhausted ones; sorted emits whole clusters in a
/// random cluster order with each cluster shuffled. Both need `truth` and
/// throw InputError without it.
std::vector<DataPoint> order_points(std::span<const DataPoint> points, const GroundTruth* truth,
                                    ArrivalOrder order);

/// Scales every nonzero vector to unit length.
void normalize_rows(std::vector<DataPoint>& points);

}  // namespace grinch
