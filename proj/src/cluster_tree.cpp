#include "grinch/cluster_tree.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace grinch {
namespace {

constexpr std::uint32_t kNone = NodeHandle::kNone;

}  // namespace

ClusterTree::ClusterTree(std::size_t dim) : dim_(dim) {}

std::uint32_t ClusterTree::resolve(NodeHandle h) const {
  if (h.index >= arena_.size() || !arena_[h.index].live || arena_[h.index].generation != h.generation) {
    throw StaleHandleError("node handle " + std::to_string(h.index) + "/" + std::to_string(h.generation) +
                           " does not resolve to a live node");
  }
  return h.index;
}

bool ClusterTree::is_live(NodeHandle h) const {
  return h.index < arena_.size() && arena_[h.index].live && arena_[h.index].generation == h.generation;
}

std::uint32_t ClusterTree::allocate() {
  std::uint32_t index;
  if (!free_.empty()) {
    index = free_.back();
    free_.pop_back();
  } else {
    index = static_cast<std::uint32_t>(arena_.size());
    arena_.emplace_back();
  }
  Node& n = arena_[index];
  n.live = true;
  n.parent = n.left = n.right = kNone;
  n.point.reset();
  n.agg = Aggregate(dim_);
  ++live_count_;
  return index;
}

void ClusterTree::release(std::uint32_t index) {
  Node& n = arena_[index];
  n.live = false;
  ++n.generation;
  n.parent = n.left = n.right = kNone;
  n.agg = Aggregate(dim_);
  free_.push_back(index);
  --live_count_;
}

NodeHandle ClusterTree::add_leaf(const DataPoint& point) {
  if (point.vector.size() != dim_) {
    throw InputError("point " + std::to_string(point.id) + " has dimension " + std::to_string(point.vector.size()) +
                     ", tree expects " + std::to_string(dim_));
  }
  if (leaf_index_.count(point.id) != 0) {
    throw InputError("duplicate point id " + std::to_string(point.id));
  }
  const std::uint32_t index = allocate();
  arena_[index].point = point.id;
  arena_[index].agg = Aggregate::from_point(point.vector);
  leaf_index_.emplace(point.id, index);
  insertion_order_.push_back(point.id);
  return handle(index);
}

void ClusterTree::set_root(NodeHandle node) {
  const std::uint32_t i = resolve(node);
  if (root_ != kNone) throw StructuralError("set_root: tree already has a root");
  if (arena_[i].parent != kNone) throw StructuralError("set_root: node is attached");
  root_ = i;
}

void ClusterTree::replace_child(std::uint32_t parent, std::uint32_t old_child, std::uint32_t new_child) {
  Node& p = arena_[parent];
  if (p.left == old_child) {
    p.left = new_child;
  } else if (p.right == old_child) {
    p.right = new_child;
  } else {
    throw StructuralError("replace_child: not a child");
  }
  arena_[new_child].parent = parent;
}

void ClusterTree::refresh(std::uint32_t index) {
  Node& n = arena_[index];
  if (n.left == kNone) return;
  n.agg.assign_sum(arena_[n.left].agg, arena_[n.right].agg);
}

void ClusterTree::refresh_to_root(std::uint32_t index) {
  for (std::uint32_t i = index; i != kNone; i = arena_[i].parent) refresh(i);
}

bool ClusterTree::ancestor_or_self(std::uint32_t a, std::uint32_t b) const {
  for (std::uint32_t i = b; i != kNone; i = arena_[i].parent) {
    if (i == a) return true;
  }
  return false;
}

NodeHandle ClusterTree::make_sib(NodeHandle existing, NodeHandle incoming) {
  const std::uint32_t e = resolve(existing);
  const std::uint32_t in = resolve(incoming);
  if (arena_[in].parent != kNone || in == root_) {
    throw StructuralError("make_sib: incoming node is already attached");
  }
  if (ancestor_or_self(in, e)) {
    throw StructuralError("make_sib: incoming node contains the existing node");
  }
  const std::uint32_t p = allocate();
  const std::uint32_t old_parent = arena_[e].parent;
  arena_[p].parent = old_parent;
  if (old_parent != kNone) {
    replace_child(old_parent, e, p);
  } else if (root_ == e) {
    root_ = p;
  }
  arena_[p].left = e;
  arena_[p].right = in;
  arena_[e].parent = p;
  arena_[in].parent = p;
  refresh_to_root(p);
  return handle(p);
}

void ClusterTree::rotate(NodeHandle v) {
  const std::uint32_t i = resolve(v);
  const std::uint32_t p = arena_[i].parent;
  if (p == kNone || arena_[p].parent == kNone) {
    throw StructuralError("rotate: node has no aunt");
  }
  const std::uint32_t g = arena_[p].parent;
  const std::uint32_t a = arena_[g].left == p ? arena_[g].right : arena_[g].left;
  swap(v, handle(a));
}

void ClusterTree::swap(NodeHandle a, NodeHandle b) {
  const std::uint32_t ia = resolve(a);
  const std::uint32_t ib = resolve(b);
  if (ia == ib) return;
  if (ancestor_or_self(ia, ib) || ancestor_or_self(ib, ia)) {
    throw StructuralError("swap: one node is an ancestor of the other");
  }
  const std::uint32_t pa = arena_[ia].parent;
  const std::uint32_t pb = arena_[ib].parent;
  if (pa == kNone || pb == kNone) {
    throw StructuralError("swap: both nodes must be attached");
  }
  if (pa == pb) {
    std::swap(arena_[pa].left, arena_[pa].right);
    return;
  }
  replace_child(pa, ia, ib);
  replace_child(pb, ib, ia);

  // Recompute both paths below their meeting point, then once from there up.
  const std::uint32_t meet = resolve(lca(handle(pa), handle(pb)));
  for (std::uint32_t i = pa; i != meet; i = arena_[i].parent) refresh(i);
  for (std::uint32_t i = pb; i != meet; i = arena_[i].parent) refresh(i);
  refresh_to_root(meet);
}

NodeHandle ClusterTree::detach(NodeHandle v) {
  const std::uint32_t i = resolve(v);
  const std::uint32_t p = arena_[i].parent;
  if (p == kNone) throw StructuralError("detach: node has no parent");
  const std::uint32_t s = arena_[p].left == i ? arena_[p].right : arena_[p].left;
  const std::uint32_t g = arena_[p].parent;
  if (g != kNone) {
    replace_child(g, p, s);
  } else {
    arena_[s].parent = kNone;
    if (root_ == p) root_ = s;
  }
  arena_[i].parent = kNone;
  release(p);
  if (g != kNone) refresh_to_root(g);
  return v;
}

std::size_t ClusterTree::depth(NodeHandle v) const {
  std::size_t d = 0;
  for (std::uint32_t i = arena_[resolve(v)].parent; i != kNone; i = arena_[i].parent) ++d;
  return d;
}

NodeHandle ClusterTree::lca(NodeHandle a, NodeHandle b) const {
  std::uint32_t x = resolve(a);
  std::uint32_t y = resolve(b);
  std::size_t dx = depth(a);
  std::size_t dy = depth(b);
  while (dx > dy) {
    x = arena_[x].parent;
    --dx;
  }
  while (dy > dx) {
    y = arena_[y].parent;
    --dy;
  }
  while (x != y) {
    x = arena_[x].parent;
    y = arena_[y].parent;
    if (x == kNone || y == kNone) throw StructuralError("lca: nodes are in different trees");
  }
  return handle(x);
}

std::vector<NodeHandle> ClusterTree::ancestors(NodeHandle v, NodeHandle stop, bool include_self) const {
  const std::uint32_t s = resolve(stop);
  std::uint32_t i = resolve(v);
  std::vector<NodeHandle> out;
  if (i == s) throw StructuralError("ancestors: stop must be a proper ancestor");
  if (!include_self) i = arena_[i].parent;
  for (; i != s; i = arena_[i].parent) {
    if (i == kNone) throw StructuralError("ancestors: stop is not an ancestor");
    out.push_back(handle(i));
  }
  return out;
}

std::optional<NodeHandle> ClusterTree::root() const {
  if (root_ == kNone) return std::nullopt;
  return handle(root_);
}

std::optional<NodeHandle> ClusterTree::parent(NodeHandle v) const {
  const std::uint32_t p = arena_[resolve(v)].parent;
  if (p == kNone) return std::nullopt;
  return handle(p);
}

std::optional<NodeHandle> ClusterTree::sibling(NodeHandle v) const {
  const std::uint32_t i = resolve(v);
  const std::uint32_t p = arena_[i].parent;
  if (p == kNone) return std::nullopt;
  return handle(arena_[p].left == i ? arena_[p].right : arena_[p].left);
}

std::optional<NodeHandle> ClusterTree::aunt(NodeHandle v) const {
  const auto p = parent(v);
  if (!p) return std::nullopt;
  return sibling(*p);
}

bool ClusterTree::is_leaf(NodeHandle v) const { return arena_[resolve(v)].left == kNone; }

NodeHandle ClusterTree::left(NodeHandle v) const {
  const std::uint32_t i = resolve(v);
  if (arena_[i].left == kNone) throw StructuralError("left: node is a leaf");
  return handle(arena_[i].left);
}

NodeHandle ClusterTree::right(NodeHandle v) const {
  const std::uint32_t i = resolve(v);
  if (arena_[i].right == kNone) throw StructuralError("right: node is a leaf");
  return handle(arena_[i].right);
}

std::optional<PointId> ClusterTree::point(NodeHandle v) const { return arena_[resolve(v)].point; }

const Aggregate& ClusterTree::aggregate(NodeHandle v) const { return arena_[resolve(v)].agg; }

bool ClusterTree::is_ancestor_or_self(NodeHandle a, NodeHandle b) const {
  return ancestor_or_self(resolve(a), resolve(b));
}

std::optional<NodeHandle> ClusterTree::leaf_of(PointId id) const {
  auto it = leaf_index_.find(id);
  if (it == leaf_index_.end()) return std::nullopt;
  return handle(it->second);
}

void ClusterTree::for_each_leaf(NodeHandle v, const std::function<void(NodeHandle)>& fn) const {
  std::vector<std::uint32_t> stack{resolve(v)};
  while (!stack.empty()) {
    const std::uint32_t i = stack.back();
    stack.pop_back();
    const Node& n = arena_[i];
    if (n.left == kNone) {
      fn(handle(i));
    } else {
      stack.push_back(n.right);
      stack.push_back(n.left);
    }
  }
}

std::vector<PointId> ClusterTree::leaves(NodeHandle v) const {
  std::vector<PointId> out;
  out.reserve(leaf_count(v));
  for_each_leaf(v, [&](NodeHandle leaf) { out.push_back(*arena_[leaf.index].point); });
  return out;
}

std::vector<NodeHandle> ClusterTree::nodes() const {
  std::vector<NodeHandle> out;
  if (root_ == kNone) return out;
  out.reserve(live_count_);
  std::vector<std::uint32_t> stack{root_};
  while (!stack.empty()) {
    const std::uint32_t i = stack.back();
    stack.pop_back();
    out.push_back(handle(i));
    if (arena_[i].left != kNone) {
      stack.push_back(arena_[i].right);
      stack.push_back(arena_[i].left);
    }
  }
  return out;
}

PointId ClusterTree::min_point(NodeHandle v) const {
  const auto ids = leaves(v);
  return *std::min_element(ids.begin(), ids.end());
}

void ClusterTree::check_invariants() const {
  auto fail = [](const std::string& msg) { throw StructuralError("invariant violated: " + msg); };
  if (insertion_order_.empty()) {
    if (root_ != kNone) fail("root without points");
    return;
  }
  if (root_ == kNone) fail("points without root");
  if (arena_[root_].parent != kNone) fail("root has a parent");

  // Post-order from-scratch recomputation with plain loops.
  struct Scratch {
    std::vector<double> sum;
    std::size_t count = 0;
    std::size_t height = 0;
  };
  std::size_t leaves_seen = 0;
  std::function<Scratch(std::uint32_t)> visit = [&](std::uint32_t i) -> Scratch {
    const Node& n = arena_[i];
    if (!n.live) fail("dead node reachable");
    Scratch s;
    if (n.left == kNone) {
      if (n.right != kNone) fail("node with exactly one child");
      if (!n.point) fail("leaf without a point");
      auto it = leaf_index_.find(*n.point);
      if (it == leaf_index_.end() || it->second != i) fail("leaf index mismatch");
      ++leaves_seen;
      s.sum = n.agg.dense();
      s.count = 1;
      s.height = 0;
    } else {
      if (n.right == kNone) fail("node with exactly one child");
      if (n.point) fail("internal node carries a point");
      if (arena_[n.left].parent != i || arena_[n.right].parent != i) fail("child/parent links disagree");
      Scratch l = visit(n.left);
      Scratch r = visit(n.right);
      s.sum.resize(dim_);
      for (std::size_t k = 0; k < dim_; ++k) s.sum[k] = l.sum[k] + r.sum[k];
      s.count = l.count + r.count;
      s.height = 1 + std::max(l.height, r.height);
    }
    if (n.agg.leaf_count() != s.count) fail("leaf_count mismatch");
    if (n.agg.height() != s.height) fail("height mismatch");
    double norm = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) {
      const double expected = s.sum[k];
      const double got = n.agg.value(k);
      norm += got * got;
      if (std::abs(got - expected) > 1e-9 * std::max(1.0, std::abs(expected))) fail("vector_sum mismatch");
    }
    if (std::abs(norm - n.agg.squared_norm()) > 1e-9 * std::max(1.0, norm)) fail("cached norm mismatch");
    return s;
  };
  visit(root_);
  if (leaves_seen != insertion_order_.size()) fail("root leaf set differs from inserted points");
}

}  // namespace grinch
