#include "grinch/grinch.hpp"

#include <algorithm>
#include <optional>
#include <string>

namespace grinch {

std::string_view to_string(NnMode mode) { return mode == NnMode::exact ? "exact" : "nsw"; }

NnMode parse_nn_mode(std::string_view name) {
  if (name == "exact") return NnMode::exact;
  if (name == "nsw") return NnMode::nsw;
  throw InputError("unknown nearest-neighbour mode: " + std::string(name));
}

void RunConfig::validate() const {
  for (const auto* cap : {&rotate_cap, &graft_cap, &restruct_cap}) {
    if (cap->has_value() && **cap == 0) throw InputError("height caps must be at least 1");
  }
  if (knn_budget && *knn_budget == 0) throw InputError("k-NN budget must be at least 1");
}

RunConfig RunConfig::capped_defaults() {
  RunConfig cfg;
  cfg.rotate_cap = 100;
  cfg.graft_cap = 100;
  cfg.restruct_cap = 100;
  cfg.single_elimination = true;
  return cfg;
}

Grinch::Grinch(std::size_t dim, const Linkage& linkage, RunConfig config)
    : tree_(dim), linkage_(&linkage), config_(config) {
  config_.validate();
  if (config_.nn_mode == NnMode::nsw) {
    NswConfig nsw = config_.nsw;
    nsw.seed ^= config_.seed;
    nsw_.emplace(nsw);
  }
}

void Grinch::insert(const DataPoint& x) {
  insert_with(x, config_.enable_rotate, config_.enable_graft);
}

void Grinch::online_insert(const DataPoint& x) { insert_with(x, false, false); }

void Grinch::rotate_insert(const DataPoint& x) { insert_with(x, true, false); }

void Grinch::insert_with(const DataPoint& x, bool rotate, bool graft) {
  const NodeHandle leaf = tree_.add_leaf(x);
  if (!tree_.root()) {
    tree_.set_root(leaf);
  } else {
    std::vector<Neighbor> nn;
    if (config_.knn_budget) {
      nn = nearest_leaves(leaf, *config_.knn_budget);
      candidate_cache_.clear();
      for (const auto& n : nn) candidate_cache_.push_back(n.id);
      cache_active_ = true;
    } else {
      nn = nearest_leaves(leaf, 1);
    }
    // Every other point is in the main tree, so the pool is never empty.
    tree_.make_sib(*tree_.leaf_of(nn.front().id), leaf);
  }
  if (nsw_) {
    nsw_->insert(x.id, [&](PointId p) { return f(leaf, *tree_.leaf_of(p)); });
  }
  if (rotate) rotate_loop(leaf);
  if (hooks_.after_rotations) hooks_.after_rotations(tree_, x.id);
  if (graft) graft_ladder(leaf);
  cache_active_ = false;
  if (hooks_.after_insert) hooks_.after_insert(tree_, x.id);
}

void Grinch::rotate_loop(NodeHandle v) {
  for (;;) {
    const auto p = tree_.parent(v);
    if (!p) return;
    const auto g = tree_.parent(*p);
    if (!g) return;
    const std::size_t h = tree_.height(*g);
    if (over(config_.rotate_cap, h)) return;
    const NodeHandle s = *tree_.sibling(v);
    const NodeHandle a = *tree_.aunt(v);
    const double own = f(v, s);
    const bool fire = config_.rotate_rule == RotateRule::aunt_prefers_sibling ? own < f(a, s) : own < f(v, a);
    if (!fire) return;
    metrics_.max_rotate_height = std::max(metrics_.max_rotate_height, h);
    ++metrics_.rotations;
    tree_.rotate(v);
  }
}

void Grinch::graft_ladder(NodeHandle leaf) {
  auto p = tree_.parent(leaf);
  while (p) {
    if (over(config_.graft_cap, tree_.height(*p))) return;
    const GraftOutcome out = graft_once(*p);
    if (out.eliminated) return;
    // Resume from the returned node when the graft moved us; otherwise step up.
    if (out.node == *p) {
      p = tree_.parent(*p);
    } else {
      p = out.node;
    }
  }
}

NodeHandle Grinch::graft(NodeHandle v) { return graft_once(v).node; }

Grinch::GraftOutcome Grinch::graft_once(NodeHandle v) {
  ++metrics_.grafts_attempted;
  GraftOutcome out{v};
  const auto nn = nearest_leaves(v, 1);
  if (nn.empty()) return out;
  NodeHandle l = *tree_.leaf_of(nn.front().id);
  const NodeHandle top = tree_.lca(v, l);
  const NodeHandle start = v;
  while (v != top && l != top && tree_.sibling(v) != l) {
    if (over(config_.graft_cap, tree_.height(v)) || over(config_.graft_cap, tree_.height(l))) break;
    const double vl = f(v, l);
    const double vs = f(v, *tree_.sibling(v));
    const double ls = f(l, *tree_.sibling(l));
    if (vl > std::max(vs, ls)) {
      metrics_.max_graft_height =
          std::max({metrics_.max_graft_height, tree_.height(v), tree_.height(l)});
      // Restructuring starts from l's old sibling, which takes over the
      // slot of l's spliced-out parent.
      const NodeHandle z = *tree_.sibling(l);
      tree_.detach(l);
      v = tree_.make_sib(v, l);
      ++metrics_.grafts_accepted;
      if (config_.enable_restruct && tree_.is_live(z)) {
        const NodeHandle r = tree_.lca(z, v);
        if (z != r) restruct(z, r);
      }
      out.node = v;
      out.merged = true;
      return out;
    }
    const bool climb_l = vl <= ls;
    const bool climb_v = vl <= vs;
    if (climb_l && climb_v && config_.single_elimination) {
      out.eliminated = true;
      break;
    }
    if (climb_l) l = *tree_.parent(l);
    if (climb_v) v = *tree_.parent(v);
  }
  out.node = v == start ? top : v;
  return out;
}

void Grinch::restruct(NodeHandle z, NodeHandle r) {
  if (!tree_.is_ancestor_or_self(r, z)) throw StructuralError("restruct: r is not an ancestor of z");
  while (z != r) {
    const NodeHandle p = *tree_.parent(z);
    if (over(config_.restruct_cap, tree_.height(p))) return;
    const NodeHandle s = *tree_.sibling(z);
    std::optional<NodeHandle> best;
    double best_score = 0.0;
    for (const NodeHandle a : tree_.ancestors(z, r, true)) {
      const NodeHandle m = *tree_.sibling(a);
      if (m == s || over(config_.restruct_cap, tree_.height(*tree_.parent(m)))) continue;
      const double score = f(z, m);
      if (!best || score > best_score || (score == best_score && m.index < best->index)) {
        best = m;
        best_score = score;
      }
    }
    if (best && f(z, s) < best_score) {
      metrics_.max_restruct_height = std::max(metrics_.max_restruct_height, tree_.height(*tree_.parent(*best)));
      ++metrics_.restructs;
      tree_.swap(s, *best);
    }
    z = *tree_.parent(z);
  }
}

void Grinch::mark_subtree(NodeHandle v) {
  if (++epoch_ == 0) {
    std::fill(marks_.begin(), marks_.end(), 0u);
    epoch_ = 1;
  }
  tree_.for_each_leaf(v, [&](NodeHandle leaf) {
    const std::size_t slot = leaf.index;
    if (slot >= marks_.size()) marks_.resize(slot + 1, 0u);
    marks_[slot] = epoch_;
  });
}

bool Grinch::marked(PointId id) const {
  const auto leaf = tree_.leaf_of(id);
  return !leaf || (leaf->index < marks_.size() && marks_[leaf->index] == epoch_);
}

std::vector<Neighbor> Grinch::nearest_leaves(NodeHandle query, std::size_t k) {
  mark_subtree(query);
  const ScoreFn score = [&](PointId p) { return f(query, *tree_.leaf_of(p)); };
  const ExcludeFn exclude = [&](PointId p) { return marked(p); };
  ++metrics_.nn_searches;
  if (cache_active_) return exact_knn(candidate_cache_, k, score, exclude);
  if (nsw_ && nsw_->size() > 0) return nsw_->search(score, k, exclude, metrics_.nn_searches);
  return exact_knn(tree_.point_ids(), k, score, exclude);
}

}  // namespace grinch
