#include "grinch/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "grinch/random.hpp"

namespace grinch {

GroundTruth Dataset::ground_truth() const {
  GroundTruth truth;
  for (const auto& p : points) {
    if (p.label) truth[p.id] = *p.label;
  }
  return truth;
}

void SyntheticSpec::validate() const {
  if (num_clusters == 0 || points_per_cluster == 0 || window == 0) {
    throw InputError("synthetic spec sizes must be positive");
  }
  if (!(bit_probability > 0.0 && bit_probability <= 1.0)) {
    throw InputError("bit probability must be in (0, 1]");
  }
}

Dataset gen_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  Dataset data;
  data.dim = spec.num_clusters * spec.window;
  data.points.reserve(spec.num_clusters * spec.points_per_cluster);
  Rng rng(spec.seed);
  for (std::size_t c = 0; c < spec.num_clusters; ++c) {
    for (std::size_t j = 0; j < spec.points_per_cluster; ++j) {
      DataPoint p;
      p.id = static_cast<PointId>(c * spec.points_per_cluster + j);
      p.label = static_cast<Label>(c);
      p.vector.assign(data.dim, 0.0);
      const auto window = p.vector.begin() + static_cast<std::ptrdiff_t>(c * spec.window);
      bool any = false;
      while (!any) {
        for (std::size_t b = 0; b < spec.window; ++b) {
          const bool bit = rng.bernoulli(spec.bit_probability);
          window[static_cast<std::ptrdiff_t>(b)] = bit ? 1.0 : 0.0;
          any = any || bit;
        }
      }
      data.points.push_back(std::move(p));
    }
  }
  return data;
}

std::string_view to_string(ComponentShape shape) {
  switch (shape) {
    case ComponentShape::clique: return "clique";
    case ComponentShape::chain: return "chain";
    case ComponentShape::random_tree: return "random_tree";
    case ComponentShape::random_density: return "random_density";
  }
  return "?";
}

GraphOracle gen_planted_graph(const PlantedGraphSpec& spec) {
  if (spec.shapes.empty() || (spec.shapes.size() != 1 && spec.shapes.size() != spec.sizes.size())) {
    throw InputError("planted graph needs one shape, or one shape per component");
  }
  std::size_t n = 0;
  for (const std::size_t s : spec.sizes) {
    if (s == 0) throw InputError("component sizes must be positive");
    n += s;
  }
  Rng rng(spec.seed);
  std::vector<std::uint32_t> relabel(n);
  for (std::size_t i = 0; i < n; ++i) relabel[i] = static_cast<std::uint32_t>(i);
  rng.shuffle(relabel);

  std::vector<GraphOracle::Edge> edges;
  std::size_t base = 0;
  for (std::size_t c = 0; c < spec.sizes.size(); ++c) {
    const std::size_t size = spec.sizes[c];
    const ComponentShape shape = spec.shapes.size() == 1 ? spec.shapes.front() : spec.shapes[c];
    auto link = [&](std::size_t a, std::size_t b) { edges.emplace_back(relabel[base + a], relabel[base + b]); };
    switch (shape) {
      case ComponentShape::clique:
        for (std::size_t a = 0; a < size; ++a) {
          for (std::size_t b = a + 1; b < size; ++b) link(a, b);
        }
        break;
      case ComponentShape::chain:
        for (std::size_t a = 1; a < size; ++a) link(a - 1, a);
        break;
      case ComponentShape::random_tree:
      case ComponentShape::random_density:
        for (std::size_t a = 1; a < size; ++a) link(rng.below(a), a);
        if (shape == ComponentShape::random_density) {
          for (std::size_t a = 0; a < size; ++a) {
            for (std::size_t b = a + 1; b < size; ++b) {
              if (rng.bernoulli(spec.density)) link(a, b);
            }
          }
        }
        break;
    }
    base += size;
  }
  return GraphOracle(n, std::move(edges));
}

Dataset oracle_points(const GraphOracle& graph) {
  Dataset data;
  data.dim = 1;
  for (std::uint32_t v = 0; v < graph.num_vertices(); ++v) {
    data.points.push_back({static_cast<PointId>(v), {1.0}, static_cast<Label>(graph.component(v))});
  }
  return data;
}

OrderScheme parse_order(std::string_view name) {
  if (name == "given") return OrderScheme::given;
  if (name == "random") return OrderScheme::random;
  if (name == "roundrobin" || name == "round_robin" || name == "round-robin") return OrderScheme::round_robin;
  if (name == "sorted") return OrderScheme::sorted;
  throw InputError("unknown arrival order: " + std::string(name));
}

std::string_view to_string(OrderScheme scheme) {
  switch (scheme) {
    case OrderScheme::given: return "given";
    case OrderScheme::random: return "random";
    case OrderScheme::round_robin: return "roundrobin";
    case OrderScheme::sorted: return "sorted";
  }
  return "?";
}

std::vector<DataPoint> order_points(std::span<const DataPoint> points, const GroundTruth* truth,
                                    ArrivalOrder order) {
  std::vector<DataPoint> out(points.begin(), points.end());
  Rng rng(order.seed);
  if (order.scheme == OrderScheme::given) return out;
  if (order.scheme == OrderScheme::random) {
    rng.shuffle(out);
    return out;
  }
  if (!truth) throw InputError("cluster-aware arrival orders need ground truth");

  std::map<Label, std::vector<std::size_t>> by_label;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto it = truth->find(points[i].id);
    if (it == truth->end()) throw InputError("no ground-truth label for point " + std::to_string(points[i].id));
    by_label[it->second].push_back(i);
  }
  std::vector<std::vector<std::size_t>> clusters;
  for (auto& [label, members] : by_label) clusters.push_back(std::move(members));
  rng.shuffle(clusters);
  for (auto& members : clusters) rng.shuffle(members);

  out.clear();
  if (order.scheme == OrderScheme::sorted) {
    for (const auto& members : clusters) {
      for (const std::size_t i : members) out.push_back(points[i]);
    }
    return out;
  }
  for (std::size_t round = 0; out.size() < points.size(); ++round) {
    for (const auto& members : clusters) {
      if (round < members.size()) out.push_back(points[members[round]]);
    }
  }
  return out;
}

void normalize_rows(std::vector<DataPoint>& points) {
  for (auto& p : points) {
    double norm = 0.0;
    for (const double x : p.vector) norm += x * x;
    if (norm == 0.0) continue;
    norm = std::sqrt(norm);
    for (double& x : p.vector) x /= norm;
  }
}

}  // namespace grinch
