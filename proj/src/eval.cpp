#include "grinch/eval.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "grinch/random.hpp"

namespace grinch {
namespace {

Label label_of(const GroundTruth& truth, PointId id) {
  const auto it = truth.find(id);
  if (it == truth.end()) throw InputError("no ground-truth label for point " + std::to_string(id));
  return it->second;
}

double choose2(std::size_t n) { return n < 2 ? 0.0 : 0.5 * static_cast<double>(n) * static_cast<double>(n - 1); }

// Pre-order nodes plus a slot per node for data indexed by arena index.
struct Layout {
  std::vector<NodeHandle> order;
  std::vector<std::size_t> slot;  // arena index -> position in order

  explicit Layout(const ClusterTree& tree) : order(tree.nodes()) {
    std::uint32_t max_index = 0;
    for (const auto& h : order) max_index = std::max(max_index, h.index);
    slot.assign(order.empty() ? 0 : max_index + 1, 0);
    for (std::size_t i = 0; i < order.size(); ++i) slot[order[i].index] = i;
  }
};

}  // namespace

double dendrogram_purity_exact(const ClusterTree& tree, const GroundTruth& truth) {
  const Layout layout(tree);
  using Histogram = std::unordered_map<Label, std::size_t>;
  std::vector<Histogram> hist(layout.order.size());
  long double total = 0.0L;
  // Reverse pre-order visits children before parents.
  for (std::size_t i = layout.order.size(); i-- > 0;) {
    const NodeHandle v = layout.order[i];
    if (tree.is_leaf(v)) {
      hist[i][label_of(truth, *tree.point(v))] = 1;
      continue;
    }
    Histogram& l = hist[layout.slot[tree.left(v).index]];
    Histogram& r = hist[layout.slot[tree.right(v).index]];
    Histogram& small = l.size() < r.size() ? l : r;
    Histogram& large = l.size() < r.size() ? r : l;
    const long double size = static_cast<long double>(tree.leaf_count(v));
    for (const auto& [label, count] : small) {
      const auto it = large.find(label);
      if (it == large.end()) continue;
      const long double a = static_cast<long double>(count);
      const long double b = static_cast<long double>(it->second);
      total += a * b * (a + b) / size;
    }
    for (const auto& [label, count] : small) large[label] += count;
    hist[i] = std::move(large);
    Histogram().swap(small);
  }
  long double pairs = 0.0L;
  if (!hist.empty()) {
    for (const auto& [label, count] : hist.front()) pairs += choose2(count);
  }
  if (pairs == 0.0L) throw UndefinedMetricError("dendrogram purity needs at least one same-cluster pair");
  return static_cast<double>(total / pairs);
}

double dendrogram_purity_sampled(const ClusterTree& tree, const GroundTruth& truth, std::size_t num_pairs,
                                 std::uint64_t seed) {
  if (num_pairs == 0) throw InputError("sampled dendrogram purity needs at least one pair");
  const Layout layout(tree);
  // Leaf positions in pre-order and the leaf interval [lo, hi) of every node.
  std::vector<std::size_t> lo(layout.order.size()), hi(layout.order.size());
  std::map<Label, std::vector<std::size_t>> positions;
  std::map<Label, std::vector<NodeHandle>> members;
  std::size_t next = 0;
  for (std::size_t i = 0; i < layout.order.size(); ++i) {
    const NodeHandle v = layout.order[i];
    lo[i] = next;
    if (tree.is_leaf(v)) {
      const Label c = label_of(truth, *tree.point(v));
      positions[c].push_back(next);
      members[c].push_back(v);
      hi[i] = ++next;
    }
  }
  for (std::size_t i = layout.order.size(); i-- > 0;) {
    const NodeHandle v = layout.order[i];
    if (!tree.is_leaf(v)) hi[i] = hi[layout.slot[tree.right(v).index]];
  }

  std::vector<const std::vector<NodeHandle>*> clusters;
  std::vector<const std::vector<std::size_t>*> cluster_positions;
  std::vector<double> cumulative;
  double weight = 0.0;
  for (const auto& [label, nodes] : members) {
    if (nodes.size() < 2) continue;
    weight += choose2(nodes.size());
    clusters.push_back(&nodes);
    cluster_positions.push_back(&positions[label]);
    cumulative.push_back(weight);
  }
  if (clusters.empty()) throw UndefinedMetricError("dendrogram purity needs at least one same-cluster pair");

  Rng rng(seed);
  long double sum = 0.0L;
  for (std::size_t s = 0; s < num_pairs; ++s) {
    const double u = rng.unit() * weight;
    const std::size_t c = std::min<std::size_t>(
        std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin(), clusters.size() - 1);
    const auto& nodes = *clusters[c];
    const std::size_t i = rng.below(nodes.size());
    std::size_t j = rng.below(nodes.size() - 1);
    if (j >= i) ++j;
    const NodeHandle top = tree.lca(nodes[i], nodes[j]);
    const std::size_t k = layout.slot[top.index];
    const auto& pos = *cluster_positions[c];
    const auto same = std::lower_bound(pos.begin(), pos.end(), hi[k]) - std::lower_bound(pos.begin(), pos.end(), lo[k]);
    sum += static_cast<long double>(same) / static_cast<long double>(hi[k] - lo[k]);
  }
  return static_cast<double>(sum / static_cast<long double>(num_pairs));
}

FlatClustering flatten_by_threshold(const ClusterTree& tree, const Linkage& f, double tau) {
  FlatClustering out;
  const auto root = tree.root();
  if (!root) return out;
  Label next = 0;
  std::vector<NodeHandle> stack{*root};
  while (!stack.empty()) {
    const NodeHandle v = stack.back();
    stack.pop_back();
    if (tree.is_leaf(v) || f.score(tree, tree.left(v), tree.right(v)) >= tau) {
      const Label label = next++;
      tree.for_each_leaf(v, [&](NodeHandle leaf) { out[*tree.point(leaf)] = label; });
    } else {
      stack.push_back(tree.right(v));
      stack.push_back(tree.left(v));
    }
  }
  return out;
}

PairwiseScores pairwise_prf(const FlatClustering& predicted, const GroundTruth& truth) {
  std::map<std::pair<Label, Label>, std::size_t> joint;
  std::map<Label, std::size_t> pred_sizes, true_sizes;
  for (const auto& [id, p] : predicted) {
    const Label t = label_of(truth, id);
    ++joint[{p, t}];
    ++pred_sizes[p];
    ++true_sizes[t];
  }
  double tp = 0.0, pred_pairs = 0.0, true_pairs = 0.0;
  for (const auto& [key, n] : joint) tp += choose2(n);
  for (const auto& [key, n] : pred_sizes) pred_pairs += choose2(n);
  for (const auto& [key, n] : true_sizes) true_pairs += choose2(n);

  PairwiseScores s;
  if (pred_pairs > 0.0) s.precision = tp / pred_pairs; else s.degenerate = true;
  if (true_pairs > 0.0) s.recall = tp / true_pairs; else s.degenerate = true;
  if (s.precision + s.recall > 0.0) {
    s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
  } else {
    s.degenerate = true;
  }
  return s;
}

}  // namespace grinch
