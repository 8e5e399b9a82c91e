#include "grinch/build.hpp"

#include <chrono>
#include <string>

#include "grinch/agglomerative.hpp"
#include "grinch/eval.hpp"

namespace grinch {
namespace {

std::optional<double> purity(const ClusterTree& tree, const BuildOptions& options, std::uint64_t seed) {
  try {
    if (tree.num_points() > options.trace_exact_limit) {
      return dendrogram_purity_sampled(tree, *options.trace_truth, options.trace_samples, seed);
    }
    return dendrogram_purity_exact(tree, *options.trace_truth);
  } catch (const UndefinedMetricError&) {
    return std::nullopt;
  }
}

}  // namespace

Algorithm parse_algorithm(std::string_view name) {
  if (name == "grinch") return Algorithm::grinch;
  if (name == "online") return Algorithm::online;
  if (name == "rotate") return Algorithm::rotate;
  if (name == "hac") return Algorithm::hac;
  if (name == "mbhac" || name == "mb_hac") return Algorithm::mbhac;
  throw InputError("unknown algorithm: " + std::string(name));
}

std::string_view to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::grinch: return "grinch";
    case Algorithm::online: return "online";
    case Algorithm::rotate: return "rotate";
    case Algorithm::hac: return "hac";
    case Algorithm::mbhac: return "mbhac";
  }
  return "?";
}

BuildResult build(std::span<const DataPoint> points, Algorithm algo, const Linkage& f, const RunConfig& cfg,
                  const BuildOptions& options) {
  if (points.empty()) throw InputError("no points to cluster");
  const auto started = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count(); };

  if (algo == Algorithm::hac || algo == Algorithm::mbhac) {
    auto result = algo == Algorithm::hac ? hac_build(points, f) : mb_hac(points, f, options.buffer);
    RunMetrics metrics;
    metrics.wall_time_seconds = elapsed();
    return {std::move(result.tree), std::move(metrics)};
  }

  RunConfig run = cfg;
  if (algo != Algorithm::grinch) run.enable_graft = false;
  if (algo == Algorithm::online) run.enable_rotate = false;
  Grinch clusterer(points.front().vector.size(), f, run);

  InsertHooks hooks = options.hooks;
  if (options.trace_truth) {
    double before = 0.0;
    bool defined = false;
    auto user_rotations = hooks.after_rotations;
    auto user_insert = hooks.after_insert;
    hooks.after_rotations = [&, user_rotations](const ClusterTree& tree, PointId id) {
      const auto dp = purity(tree, options, run.seed + tree.num_points());
      defined = dp.has_value();
      before = dp.value_or(0.0);
      if (user_rotations) user_rotations(tree, id);
    };
    hooks.after_insert = [&, user_insert](const ClusterTree& tree, PointId id) {
      if (defined) {
        const auto after = purity(tree, options, run.seed + tree.num_points());
        clusterer.metrics().purity_trace.push_back({tree.num_points(), before, after.value_or(before)});
      }
      if (user_insert) user_insert(tree, id);
    };
  }
  clusterer.set_hooks(std::move(hooks));
  for (const auto& p : points) clusterer.insert(p);
  clusterer.metrics().wall_time_seconds = elapsed();
  return {std::move(clusterer.tree()), std::move(clusterer.metrics())};
}

}  // namespace grinch
