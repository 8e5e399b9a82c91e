#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "grinch/cluster_tree.hpp"
#include "grinch/grinch.hpp"
#include "grinch/linkage.hpp"

namespace grinch {

enum class Algorithm { grinch, online, rotate, hac, mbhac };

Algorithm parse_algorithm(std::string_view name);
std::string_view to_string(Algorithm algo);

struct BuildOptions {
  /// Buffer size for mbhac.
  std::size_t buffer = 0;
  /// When set, record dendrogram purity after the rotations and after the
  /// grafts of every insert (incremental algorithms only). Inserts where the
  /// metric is undefined are skipped.
  const GroundTruth* trace_truth = nullptr;
  /// Above this many points the trace uses sampled purity.
  std::size_t trace_exact_limit = 5000;
  std::size_t trace_samples = 100000;
  /// Extra per-insert observers (incremental algorithms only).
  InsertHooks hooks;
};

struct BuildResult {
  ClusterTree tree;
  RunMetrics metrics;
};

/// Builds a tree over `points` in the given order. The incremental
/// algorithms honour `cfg`; online and rotate switch off the later
/// subroutines themselves. Throws InputError on empty input.
BuildResult build(std::span<const DataPoint> points, Algorithm algo, const Linkage& f, const RunConfig& cfg,
                  const BuildOptions& options = {});

}  // namespace grinch
