#include "grinch/tree_export.hpp"

#include <unordered_map>

#include <json.hpp>

namespace grinch {
namespace {

// Smallest point id below every node of the main tree, in one post-order pass.
std::unordered_map<std::uint32_t, PointId> min_points(const ClusterTree& tree) {
  std::unordered_map<std::uint32_t, PointId> out;
  auto order = tree.nodes();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeHandle n = *it;
    if (tree.is_leaf(n)) {
      out[n.index] = *tree.point(n);
    } else {
      out[n.index] = std::min(out.at(tree.left(n).index), out.at(tree.right(n).index));
    }
  }
  return out;
}

std::pair<NodeHandle, NodeHandle> ordered_children(const ClusterTree& tree, NodeHandle n,
                                                   const std::unordered_map<std::uint32_t, PointId>& mins) {
  NodeHandle a = tree.left(n);
  NodeHandle b = tree.right(n);
  if (mins.at(b.index) < mins.at(a.index)) std::swap(a, b);
  return {a, b};
}

}  // namespace

std::string to_json(const ClusterTree& tree) {
  nlohmann::ordered_json doc;
  doc["num_points"] = tree.num_points();
  auto nodes = nlohmann::ordered_json::array();
  if (const auto root = tree.root()) {
    const auto mins = min_points(tree);
    // Pre-order with explicit stack of (node, parent_id).
    std::vector<std::pair<NodeHandle, long long>> stack{{*root, -1}};
    long long next_id = 0;
    while (!stack.empty()) {
      auto [n, parent_id] = stack.back();
      stack.pop_back();
      const long long id = next_id++;
      nlohmann::ordered_json rec;
      rec["node_id"] = id;
      if (parent_id < 0) {
        rec["parent_id"] = nullptr;
      } else {
        rec["parent_id"] = parent_id;
      }
      if (tree.is_leaf(n)) rec["point_id"] = *tree.point(n);
      rec["leaf_count"] = tree.leaf_count(n);
      rec["height"] = tree.height(n);
      nodes.push_back(std::move(rec));
      if (!tree.is_leaf(n)) {
        auto [first, second] = ordered_children(tree, n, mins);
        stack.emplace_back(second, id);
        stack.emplace_back(first, id);
      }
    }
  }
  doc["nodes"] = std::move(nodes);
  return doc.dump(1) + "\n";
}

std::string to_newick(const ClusterTree& tree) {
  const auto root = tree.root();
  if (!root) return ";\n";
  const auto mins = min_points(tree);
  std::string out;
  // Iterative emission: a frame is either a node to open or a literal token.
  struct Frame {
    NodeHandle node;
    const char* token;
  };
  std::vector<Frame> stack{{*root, nullptr}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (f.token != nullptr) {
      out += f.token;
      continue;
    }
    if (tree.is_leaf(f.node)) {
      out += std::to_string(*tree.point(f.node));
      continue;
    }
    auto [first, second] = ordered_children(tree, f.node, mins);
    out += '(';
    stack.push_back({{}, ")"});
    stack.push_back({second, nullptr});
    stack.push_back({{}, ","});
    stack.push_back({first, nullptr});
  }
  out += ";\n";
  return out;
}

}  // namespace grinch
