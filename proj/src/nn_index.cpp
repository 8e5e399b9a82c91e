#include "grinch/nn_index.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <string>

namespace grinch {
namespace {

struct WorstOnTop {
  bool operator()(const Neighbor& a, const Neighbor& b) const { return ranks_before(a, b); }
};

struct BestOnTop {
  bool operator()(const Neighbor& a, const Neighbor& b) const { return ranks_before(b, a); }
};

std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

std::vector<Neighbor> exact_knn(std::span<const PointId> pool, std::size_t k, const ScoreFn& score,
                                const ExcludeFn& exclude) {
  std::vector<Neighbor> out;
  if (k == 0) return out;
  std::priority_queue<Neighbor, std::vector<Neighbor>, WorstOnTop> best;
  for (PointId id : pool) {
    if (exclude && exclude(id)) continue;
    Neighbor n{id, score(id)};
    if (best.size() < k) {
      best.push(n);
    } else if (ranks_before(n, best.top())) {
      best.pop();
      best.push(n);
    }
  }
  out.resize(best.size());
  for (auto it = out.rbegin(); it != out.rend(); ++it) {
    *it = best.top();
    best.pop();
  }
  return out;
}

NswIndex::NswIndex(NswConfig config) : config_(config) {
  if (config_.k_build == 0) config_.k_build = 1;
  if (config_.restarts == 0) config_.restarts = 1;
}

void NswIndex::insert(PointId id, const ScoreFn& similarity) {
  if (contains(id)) throw InputError("NSW: duplicate id " + std::to_string(id));
  std::vector<Neighbor> links;
  if (!ids_.empty()) links = search(similarity, config_.k_build, {}, ids_.size());
  const auto slot = static_cast<std::uint32_t>(ids_.size());
  ids_.push_back(id);
  adjacency_.emplace_back();
  slot_.emplace(id, slot);
  for (const Neighbor& n : links) {
    const std::uint32_t other = slot_.at(n.id);
    adjacency_[slot].push_back(other);
    adjacency_[other].push_back(slot);
  }
}

std::vector<Neighbor> NswIndex::search(const ScoreFn& score, std::size_t k, const ExcludeFn& exclude,
                                       std::uint64_t salt) const {
  if (ids_.empty() || k == 0) return {};
  const std::size_t width = std::max(k, config_.beam);
  std::mt19937_64 rng(mix(config_.seed) ^ mix(salt + 0x5851F42D4C957F2Dull));
  std::uniform_int_distribution<std::size_t> pick(0, ids_.size() - 1);

  std::vector<double> scored(ids_.size());
  std::vector<std::uint8_t> has_score(ids_.size(), 0);
  auto score_of = [&](std::uint32_t s) {
    if (!has_score[s]) {
      scored[s] = score(ids_[s]);
      has_score[s] = 1;
    }
    return scored[s];
  };

  std::vector<std::uint32_t> visited_stamp(ids_.size(), 0);
  for (std::size_t walk = 1; walk <= config_.restarts; ++walk) {
    const auto stamp = static_cast<std::uint32_t>(walk);
    const auto entry = static_cast<std::uint32_t>(pick(rng));
    std::priority_queue<Neighbor, std::vector<Neighbor>, BestOnTop> frontier;
    std::priority_queue<Neighbor, std::vector<Neighbor>, WorstOnTop> pool;
    // Neighbor.id temporarily carries the slot index inside the walk.
    visited_stamp[entry] = stamp;
    Neighbor start{static_cast<PointId>(entry), score_of(entry)};
    frontier.push(start);
    if (!(exclude && exclude(ids_[entry]))) pool.push(start);
    while (!frontier.empty()) {
      const Neighbor current = frontier.top();
      if (pool.size() >= width && ranks_before(pool.top(), current)) break;
      frontier.pop();
      for (std::uint32_t next : adjacency_[static_cast<std::size_t>(current.id)]) {
        if (visited_stamp[next] == stamp) continue;
        visited_stamp[next] = stamp;
        Neighbor cand{static_cast<PointId>(next), score_of(next)};
        if (pool.size() < width || ranks_before(cand, pool.top())) {
          frontier.push(cand);
          if (!(exclude && exclude(ids_[next]))) {
            pool.push(cand);
            if (pool.size() > width) pool.pop();
          }
        }
      }
    }
  }

  std::vector<Neighbor> found;
  for (std::size_t s = 0; s < ids_.size(); ++s) {
    if (!has_score[s]) continue;
    if (exclude && exclude(ids_[s])) continue;
    found.push_back({ids_[s], scored[s]});
  }
  const std::size_t keep = std::min(k, found.size());
  std::partial_sort(found.begin(), found.begin() + static_cast<std::ptrdiff_t>(keep), found.end(), ranks_before);
  found.resize(keep);
  return found;
}

std::size_t NswIndex::edge_count() const {
  std::size_t total = 0;
  for (const auto& adj : adjacency_) total += adj.size();
  return total / 2;
}

std::vector<PointId> NswIndex::neighbors(PointId id) const {
  std::vector<PointId> out;
  for (std::uint32_t s : adjacency_.at(slot_.at(id))) out.push_back(ids_[s]);
  return out;
}

}  // namespace grinch
