#pragma once

#include <cstddef>
#include <cstdint>

#include "grinch/cluster_tree.hpp"
#include "grinch/linkage.hpp"
#include "grinch/types.hpp"

namespace grinch {

/// Mean, over pairs of same-label leaves, of the fraction of their lca's
/// leaves that carry that label. Only leaves of the main tree count. Throws
/// InputError on an unlabelled leaf and UndefinedMetricError when no label
/// has two leaves.
double dendrogram_purity_exact(const ClusterTree& tree, const GroundTruth& truth);

/// Monte Carlo estimate of the same quantity from `num_pairs` same-label
/// pairs drawn uniformly. Deterministic in `seed`.
double dendrogram_purity_sampled(const ClusterTree& tree, const GroundTruth& truth, std::size_t num_pairs,
                                 std::uint64_t seed);

/// Top-down cut: a node becomes a cluster when it is a leaf or when
/// f(left, right) >= tau. Cluster labels are 0, 1, ... in pre-order.
FlatClustering flatten_by_threshold(const ClusterTree& tree, const Linkage& f, double tau);

struct PairwiseScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  /// Set when a ratio had a zero denominator and was reported as 0.
  bool degenerate = false;
};

/// Pair-counting precision, recall and F1 of `predicted` against `truth`
/// over the points of `predicted`. Throws InputError on a point missing from
/// `truth`.
PairwiseScores pairwise_prf(const FlatClustering& predicted, const GroundTruth& truth);

}  // namespace grinch
