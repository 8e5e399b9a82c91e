#pragma once

#include <string>

#include "grinch/cluster_tree.hpp"

namespace grinch {

// Both exports visit children ordered by their smallest descendant point id,
// so two trees with the same shape serialize identically regardless of arena
// layout or left/right placement.

/// {"num_points": n, "nodes": [{"node_id", "parent_id", "point_id"?,
/// "leaf_count", "height"}, ...]} with node ids assigned in pre-order.
std::string to_json(const ClusterTree& tree);

/// Newick string with leaf names equal to point ids, terminated by ';'.
std::string to_newick(const ClusterTree& tree);

}  // namespace grinch
