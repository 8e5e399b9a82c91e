#include "grinch/agglomerative.hpp"

#include <queue>
#include <tuple>

namespace grinch {
namespace {

struct Candidate {
  double score;
  std::size_t a;
  std::size_t b;
};

// Max-heap order: higher score, then smaller (a, b).
struct Lower {
  bool operator()(const Candidate& x, const Candidate& y) const {
    if (x.score != y.score) return x.score < y.score;
    return std::tie(x.a, x.b) > std::tie(y.a, y.b);
  }
};

class Agglomerator {
 public:
  Agglomerator(std::size_t dim, const Linkage& f) : result_{ClusterTree(dim), {}}, f_(&f) {}

  void add_point(const DataPoint& p) { add(result_.tree.add_leaf(p)); }

  std::size_t active() const { return active_count_; }

  void step() {
    for (;;) {
      const Candidate c = heap_.top();
      heap_.pop();
      if (!alive_[c.a] || !alive_[c.b]) continue;
      alive_[c.a] = alive_[c.b] = false;
      active_count_ -= 2;
      result_.merges.push_back({c.a, c.b, c.score});
      add(result_.tree.make_sib(nodes_[c.a], nodes_[c.b]));
      return;
    }
  }

  AgglomerativeResult finish() {
    while (active_count_ > 1) step();
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (alive_[i]) result_.tree.set_root(nodes_[i]);
    }
    return std::move(result_);
  }

 private:
  void add(NodeHandle node) {
    const std::size_t id = nodes_.size();
    for (std::size_t other = 0; other < id; ++other) {
      if (alive_[other]) heap_.push({f_->score(result_.tree, nodes_[other], node), other, id});
    }
    nodes_.push_back(node);
    alive_.push_back(true);
    ++active_count_;
  }

  AgglomerativeResult result_;
  const Linkage* f_;
  std::vector<NodeHandle> nodes_;
  std::vector<bool> alive_;
  std::size_t active_count_ = 0;
  std::priority_queue<Candidate, std::vector<Candidate>, Lower> heap_;
};

std::size_t dimension_of(std::span<const DataPoint> points) {
  if (points.empty()) throw InputError("agglomerative clustering needs at least one point");
  return points.front().vector.size();
}

}  // namespace

AgglomerativeResult hac_build(std::span<const DataPoint> points, const Linkage& f) {
  Agglomerator agg(dimension_of(points), f);
  for (const auto& p : points) agg.add_point(p);
  return agg.finish();
}

AgglomerativeResult mb_hac(std::span<const DataPoint> points, const Linkage& f, std::size_t buffer) {
  if (buffer < 2) throw InputError("mini-batch HAC needs a buffer of at least 2");
  Agglomerator agg(dimension_of(points), f);
  for (const auto& p : points) {
    agg.add_point(p);
    if (agg.active() >= buffer) agg.step();
  }
  return agg.finish();
}

}  // namespace grinch
