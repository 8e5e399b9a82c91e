#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

#include "grinch/types.hpp"

namespace grinch {

struct Neighbor {
  PointId id = 0;
  double score = 0.0;
  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Similarity of the query to the given point.
using ScoreFn = std::function<double(PointId)>;
/// True for points that must not be returned. An empty function excludes
/// nothing.
using ExcludeFn = std::function<bool(PointId)>;

/// Ranking order used everywhere: higher score first, then smaller id.
inline bool ranks_before(const Neighbor& a, const Neighbor& b) {
  return a.score > b.score || (a.score == b.score && a.id < b.id);
}

/// Top-k of `pool` by `score`, skipping excluded ids, ranked with
/// ranks_before. Fewer than k are returned when the pool is small.
std::vector<Neighbor> exact_knn(std::span<const PointId> pool, std::size_t k, const ScoreFn& score,
                                const ExcludeFn& exclude = {});

struct NswConfig {
  std::size_t k_build = 25;   // neighbours linked per insertion
  std::size_t restarts = 5;   // random entry points per search
  std::size_t beam = 25;      // frontier width of each greedy walk (at least k)
  std::uint64_t seed = 0;
};

/// Online navigable small-world graph over point ids.
///
/// The index stores only ids and an undirected adjacency; similarity comes
/// from the caller's ScoreFn, so the same graph can be searched with any
/// linkage (including node-vs-leaf scores during grafting).
///
/// Searches are const and deterministic: entry points derive from the seed
/// and a caller-supplied salt. Insertion is single writer.
class NswIndex {
 public:
  explicit NswIndex(NswConfig config = {});

  /// Links `id` to up to k_build approximate nearest neighbours, where
  /// `similarity` scores existing entries against the new point.
  void insert(PointId id, const ScoreFn& similarity);

  /// Greedy best-first walks from `restarts` random entries, each with a
  /// visited set and a frontier of width max(k, beam). Excluded entries are
  /// traversed but never returned. Scores come straight from `score`.
  std::vector<Neighbor> search(const ScoreFn& score, std::size_t k, const ExcludeFn& exclude = {},
                               std::uint64_t salt = 0) const;

  std::size_t size() const { return ids_.size(); }
  bool contains(PointId id) const { return slot_.count(id) != 0; }
  std::size_t edge_count() const;
  std::vector<PointId> neighbors(PointId id) const;
  const NswConfig& config() const { return config_; }

 private:
  NswConfig config_;
  std::vector<PointId> ids_;
  std::vector<std::vector<std::uint32_t>> adjacency_;
  std::unordered_map<PointId, std::uint32_t> slot_;
};

}  // namespace grinch
