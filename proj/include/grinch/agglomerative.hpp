#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "grinch/cluster_tree.hpp"
#include "grinch/linkage.hpp"

namespace grinch {

/// One agglomeration step. Cluster ids number points 0..n-1 in input order,
/// then merged clusters n, n+1, ... in creation order; `a < b`.
struct MergeStep {
  std::size_t a = 0;
  std::size_t b = 0;
  double score = 0.0;
};

struct AgglomerativeResult {
  ClusterTree tree;
  std::vector<MergeStep> merges;
};

/// Best-first HAC: merge the highest-scoring pair of active clusters until one
/// remains. Ties go to the smallest (a, b) pair. Throws InputError on empty
/// input.
AgglomerativeResult hac_build(std::span<const DataPoint> points, const Linkage& f);

/// Buffered HAC: add points until `buffer` clusters are active, run one merge,
/// add the next point, and so on; then agglomerate what remains. With
/// buffer >= n this is exactly hac_build. Throws InputError when buffer < 2.
AgglomerativeResult mb_hac(std::span<const DataPoint> points, const Linkage& f, std::size_t buffer);

}  // namespace grinch
