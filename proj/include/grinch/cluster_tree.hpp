#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "grinch/aggregate.hpp"
#include "grinch/types.hpp"

namespace grinch {

/// Arena slot plus generation. A handle stops resolving once its slot is
/// freed, even if the slot is later reused.
struct NodeHandle {
  std::uint32_t index = kNone;
  std::uint32_t generation = 0;

  static constexpr std::uint32_t kNone = 0xFFFFFFFFu;

  bool valid() const { return index != kNone; }
  friend bool operator==(const NodeHandle&, const NodeHandle&) = default;
};

/// Mutable binary cluster tree over inserted points.
///
/// Nodes live in an arena with freelist reuse. A node is either a leaf that
/// carries one point or an internal node with exactly two children. Every
/// node keeps an Aggregate that is recomputed along the root path after each
/// structural edit.
///
/// Besides the main tree (reachable from root()) the arena may hold detached
/// subtrees: a freshly added leaf before it is attached, a subtree removed
/// by detach(), or the forest of an agglomerative build.
///
/// Single writer. Const queries are safe from several readers while no
/// writer is active.
class ClusterTree {
 public:
  explicit ClusterTree(std::size_t dim);

  std::size_t dim() const { return dim_; }

  /// Creates a detached leaf for `point`. Throws InputError on a duplicate id
  /// or a dimension mismatch.
  NodeHandle add_leaf(const DataPoint& point);

  /// Makes a detached node the root of an empty tree.
  void set_root(NodeHandle node);

  /// Inserts a new parent in `existing`'s position with children
  /// {existing, incoming} and returns it. `incoming` must be detached.
  /// If `existing` is itself detached, the new parent is detached too.
  NodeHandle make_sib(NodeHandle existing, NodeHandle incoming);

  /// Swaps `v` with its aunt: ((v,s),a) becomes ((a,s),v).
  void rotate(NodeHandle v);

  /// Exchanges the positions of two subtrees. Neither may be an ancestor of
  /// the other. swap(x, x) is a no-op.
  void swap(NodeHandle a, NodeHandle b);

  /// Removes `v` from its parent; the parent is freed and its other child
  /// takes its place. Returns `v`, now detached.
  NodeHandle detach(NodeHandle v);

  /// Lowest node that has both `a` and `b` as (reflexive) descendants.
  /// Throws StructuralError when the two are in different trees.
  NodeHandle lca(NodeHandle a, NodeHandle b) const;

  /// `v` (when include_self) and its proper ancestors strictly below `stop`,
  /// deepest first. Throws StructuralError when `stop` is not an ancestor of
  /// `v`.
  std::vector<NodeHandle> ancestors(NodeHandle v, NodeHandle stop, bool include_self = true) const;

  // Queries. All throw StaleHandleError on dead handles.
  bool is_live(NodeHandle h) const;
  std::optional<NodeHandle> root() const;
  std::optional<NodeHandle> parent(NodeHandle v) const;
  std::optional<NodeHandle> sibling(NodeHandle v) const;
  std::optional<NodeHandle> aunt(NodeHandle v) const;
  bool is_leaf(NodeHandle v) const;
  NodeHandle left(NodeHandle v) const;
  NodeHandle right(NodeHandle v) const;
  std::optional<PointId> point(NodeHandle v) const;
  const Aggregate& aggregate(NodeHandle v) const;
  std::size_t height(NodeHandle v) const { return aggregate(v).height(); }
  std::size_t leaf_count(NodeHandle v) const { return aggregate(v).leaf_count(); }

  /// True when `a` is `b` or one of its ancestors.
  bool is_ancestor_or_self(NodeHandle a, NodeHandle b) const;
  std::size_t depth(NodeHandle v) const;

  /// Leaf node holding `id`, if that point was added.
  std::optional<NodeHandle> leaf_of(PointId id) const;
  bool contains(PointId id) const { return leaf_index_.count(id) != 0; }

  /// Point ids under `v`, in traversal order (left before right).
  std::vector<PointId> leaves(NodeHandle v) const;
  void for_each_leaf(NodeHandle v, const std::function<void(NodeHandle)>& fn) const;

  /// Every added point id, in insertion order.
  const std::vector<PointId>& point_ids() const { return insertion_order_; }
  std::size_t num_points() const { return insertion_order_.size(); }
  std::size_t num_live_nodes() const { return live_count_; }

  /// Nodes of the main tree in pre-order (left child first).
  std::vector<NodeHandle> nodes() const;

  /// Smallest point id under `v`.
  PointId min_point(NodeHandle v) const;

  /// Full consistency check: link symmetry, arity, aggregates against a
  /// from-scratch recomputation (relative tolerance 1e-9), and the leaf set of
  /// the root equal to every added point. Throws StructuralError on the first
  /// violation.
  void check_invariants() const;

 private:
  struct Node {
    std::uint32_t generation = 0;
    bool live = false;
    std::uint32_t parent = NodeHandle::kNone;
    std::uint32_t left = NodeHandle::kNone;
    std::uint32_t right = NodeHandle::kNone;
    std::optional<PointId> point;
    Aggregate agg;
  };

  std::uint32_t resolve(NodeHandle h) const;
  NodeHandle handle(std::uint32_t index) const { return {index, arena_[index].generation}; }
  std::uint32_t allocate();
  void release(std::uint32_t index);
  void replace_child(std::uint32_t parent, std::uint32_t old_child, std::uint32_t new_child);
  void refresh(std::uint32_t index);
  void refresh_to_root(std::uint32_t index);
  bool ancestor_or_self(std::uint32_t a, std::uint32_t b) const;

  std::size_t dim_;
  std::vector<Node> arena_;
  std::vector<std::uint32_t> free_;
  std::uint32_t root_ = NodeHandle::kNone;
  std::unordered_map<PointId, std::uint32_t> leaf_index_;
  std::vector<PointId> insertion_order_;
  std::size_t live_count_ = 0;
};

}  // namespace grinch
