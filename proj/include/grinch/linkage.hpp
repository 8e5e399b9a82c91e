#pragma once

#include <memory>
#include <string_view>

#include "grinch/aggregate.hpp"
#include "grinch/cluster_tree.hpp"
#include "grinch/graph_oracle.hpp"

namespace grinch {

/// Cosine similarity of the two vector sums. Zero-norm sums score 0.
double centroid_cosine(const Aggregate& a, const Aggregate& b);

/// dot(sum_a, sum_b) / (count_a * count_b): the mean pairwise dot product of
/// the underlying points (mean pairwise cosine when points are unit length).
double average_linkage(const Aggregate& a, const Aggregate& b);

/// A similarity between two disjoint point sets, each given as a node of a
/// cluster tree (possibly detached). Implementations are pure and may be
/// called concurrently.
class Linkage {
 public:
  virtual ~Linkage() = default;
  virtual double score(const ClusterTree& tree, NodeHandle a, NodeHandle b) const = 0;
  virtual std::string_view name() const = 0;
  /// Whether inputs should be unit-normalised on ingestion.
  virtual bool wants_unit_vectors() const { return false; }
};

class CosineLinkage final : public Linkage {
 public:
  double score(const ClusterTree& tree, NodeHandle a, NodeHandle b) const override {
    return centroid_cosine(tree.aggregate(a), tree.aggregate(b));
  }
  std::string_view name() const override { return "cosine"; }
  bool wants_unit_vectors() const override { return true; }
};

class AverageLinkage final : public Linkage {
 public:
  double score(const ClusterTree& tree, NodeHandle a, NodeHandle b) const override {
    return average_linkage(tree.aggregate(a), tree.aggregate(b));
  }
  std::string_view name() const override { return "avg"; }
  bool wants_unit_vectors() const override { return true; }
};

/// Scores leaf sets with GraphOracle::score. The graph must outlive the
/// linkage.
class OracleLinkage final : public Linkage {
 public:
  explicit OracleLinkage(const GraphOracle& graph) : graph_(&graph) {}
  double score(const ClusterTree& tree, NodeHandle a, NodeHandle b) const override;
  std::string_view name() const override { return "oracle"; }
  const GraphOracle& graph() const { return *graph_; }

 private:
  const GraphOracle* graph_;
};

/// "cosine" or "avg". Throws InputError on anything else.
std::unique_ptr<Linkage> make_vector_linkage(std::string_view name);

}  // namespace grinch
