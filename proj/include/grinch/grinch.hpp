#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "grinch/cluster_tree.hpp"
#include "grinch/linkage.hpp"
#include "grinch/nn_index.hpp"

namespace grinch {

enum class NnMode { exact, nsw };

/// Which comparison triggers a rotation of the inserted leaf x.
enum class RotateRule {
  /// f(x, sib(x)) < f(aunt(x), sib(x)): the aunt prefers x's sibling.
  aunt_prefers_sibling,
  /// f(x, sib(x)) < f(x, aunt(x)): x prefers its aunt.
  node_prefers_aunt,
};

std::string_view to_string(NnMode mode);
NnMode parse_nn_mode(std::string_view name);

/// Approximation switches. The default-constructed config is the exact
/// algorithm: no caps, no single elimination, exact nearest neighbours.
struct RunConfig {
  /// Edits are suppressed at nodes whose height exceeds the cap.
  std::optional<std::size_t> rotate_cap;
  std::optional<std::size_t> graft_cap;
  std::optional<std::size_t> restruct_cap;
  /// Stop an insert's graft ladder at the first mutual rejection.
  bool single_elimination = false;
  /// One k-NN search per insert; later graft searches reuse its candidates.
  std::optional<std::size_t> knn_budget;
  NnMode nn_mode = NnMode::exact;
  NswConfig nsw;
  std::uint64_t seed = 0;
  RotateRule rotate_rule = RotateRule::aunt_prefers_sibling;
  // Subroutine switches, used by the ablation ladder and the baselines.
  bool enable_rotate = true;
  bool enable_graft = true;
  bool enable_restruct = true;

  /// Throws InputError when a cap or the k-NN budget is zero.
  void validate() const;

  /// Caps of 100 and single elimination.
  static RunConfig capped_defaults();
};

struct PurityTraceRow {
  std::size_t index = 0;  // 1-based number of points inserted
  double before_grafts = 0.0;
  double after_grafts = 0.0;
};

struct RunMetrics {
  std::size_t rotations = 0;
  std::size_t grafts_attempted = 0;
  std::size_t grafts_accepted = 0;
  std::size_t restructs = 0;  // swaps performed by restruct
  std::size_t nn_searches = 0;
  double wall_time_seconds = 0.0;
  std::vector<PurityTraceRow> purity_trace;
  // Height of the highest node touched by each kind of edit.
  std::size_t max_rotate_height = 0;
  std::size_t max_graft_height = 0;
  std::size_t max_restruct_height = 0;
};

/// Observation points inside one insert, used by tracing and property tests.
struct InsertHooks {
  std::function<void(const ClusterTree&, PointId)> after_rotations;
  std::function<void(const ClusterTree&, PointId)> after_insert;
};

/// Incremental hierarchical clustering with rotations, grafts and
/// restructuring. Also runs the Online and Rotate baselines by switching
/// subroutines off.
///
/// Owns its tree. The linkage must outlive the clusterer.
class Grinch {
 public:
  Grinch(std::size_t dim, const Linkage& linkage, RunConfig config = {});

  /// Attach x beside its nearest leaf, rotate, then graft up the ancestors
  /// (each subroutine subject to the config switches).
  void insert(const DataPoint& x);
  /// Attach beside the nearest leaf only.
  void online_insert(const DataPoint& x);
  /// Attach, then rotate to a fixpoint.
  void rotate_insert(const DataPoint& x);

  /// Rotate leaf v upward while the rotate rule fires and the cap allows.
  void rotate_loop(NodeHandle v);

  /// One graft attempt from v. Returns the node the ladder continues from:
  /// the new parent after a merge, otherwise the climbed v, or lca(v, l)
  /// when v never moved.
  NodeHandle graft(NodeHandle v);

  /// Swap mis-nested subtrees on the path from z up to its ancestor r.
  void restruct(NodeHandle z, NodeHandle r);

  /// Nearest leaves of `query` outside its own subtree under the active
  /// search mode (exact, NSW, or the per-insert candidate cache).
  std::vector<Neighbor> nearest_leaves(NodeHandle query, std::size_t k);

  const ClusterTree& tree() const { return tree_; }
  ClusterTree& tree() { return tree_; }
  const RunMetrics& metrics() const { return metrics_; }
  RunMetrics& metrics() { return metrics_; }
  const RunConfig& config() const { return config_; }
  const Linkage& linkage() const { return *linkage_; }
  void set_hooks(InsertHooks hooks) { hooks_ = std::move(hooks); }

 private:
  struct GraftOutcome {
    NodeHandle node;
    bool merged = false;
    bool eliminated = false;
  };

  void insert_with(const DataPoint& x, bool rotate, bool graft);
  GraftOutcome graft_once(NodeHandle v);
  void graft_ladder(NodeHandle leaf);
  void mark_subtree(NodeHandle v);
  bool marked(PointId id) const;
  double f(NodeHandle a, NodeHandle b) const { return linkage_->score(tree_, a, b); }
  static bool over(const std::optional<std::size_t>& cap, std::size_t height) { return cap && height > *cap; }

  ClusterTree tree_;
  const Linkage* linkage_;
  RunConfig config_;
  RunMetrics metrics_;
  InsertHooks hooks_;
  std::optional<NswIndex> nsw_;
  std::vector<PointId> candidate_cache_;
  bool cache_active_ = false;
  std::vector<std::uint32_t> marks_;
  std::uint32_t epoch_ = 0;
};

}  // namespace grinch
