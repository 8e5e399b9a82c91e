#include "grinch/graph_oracle.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace grinch {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t hash_set(std::span<const PointId> set) {
  std::vector<PointId> sorted(set.begin(), set.end());
  std::sort(sorted.begin(), sorted.end());
  std::uint64_t h = 0x243F6A8885A308D3ull ^ sorted.size();
  for (PointId id : sorted) h = splitmix64(h ^ static_cast<std::uint64_t>(id));
  return h;
}

}  // namespace

GraphOracle::GraphOracle(std::size_t num_vertices, std::vector<Edge> edges)
    : num_vertices_(num_vertices), adjacency_(num_vertices), component_(num_vertices, 0) {
  for (auto& [u, v] : edges) {
    if (u >= num_vertices || v >= num_vertices) {
      throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
    }
    if (u == v) throw InputError("self loop on vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  for (const auto& [u, v] : edges_) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());

  constexpr std::uint32_t kUnset = 0xFFFFFFFFu;
  std::fill(component_.begin(), component_.end(), kUnset);
  std::vector<std::uint32_t> queue;
  for (std::uint32_t s = 0; s < num_vertices_; ++s) {
    if (component_[s] != kUnset) continue;
    const auto c = static_cast<std::uint32_t>(num_components_++);
    component_[s] = c;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (std::uint32_t w : adjacency_[queue[head]]) {
        if (component_[w] == kUnset) {
          component_[w] = c;
          queue.push_back(w);
        }
      }
    }
  }
}

GraphOracle GraphOracle::parse(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) throw InputError("edge list: empty input");
  std::istringstream header(line);
  long long n = -1, m = -1;
  if (!(header >> n >> m) || n < 0 || m < 0) throw InputError("edge list: malformed header on line 1");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long k = 0; k < m; ++k) {
    if (!next_line()) throw InputError("edge list: expected " + std::to_string(m) + " edges");
    std::istringstream row(line);
    long long u = -1, v = -1;
    if (!(row >> u >> v) || u < 0 || v < 0) {
      throw InputError("edge list: malformed edge on line " + std::to_string(line_no));
    }
    edges.emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
  }
  return GraphOracle(static_cast<std::size_t>(n), std::move(edges));
}

GraphOracle GraphOracle::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open edge list " + path);
  return parse(in);
}

void GraphOracle::write(std::ostream& out) const {
  out << num_vertices_ << ' ' << edges_.size() << '\n';
  for (const auto& [u, v] : edges_) out << u << ' ' << v << '\n';
}

std::vector<std::vector<PointId>> GraphOracle::components() const {
  std::vector<std::vector<PointId>> out(num_components_);
  for (std::uint32_t v = 0; v < num_vertices_; ++v) out[component_[v]].push_back(v);
  return out;
}

GroundTruth GraphOracle::ground_truth() const {
  GroundTruth gt;
  for (std::uint32_t v = 0; v < num_vertices_; ++v) gt[v] = component_[v];
  return gt;
}

std::uint32_t GraphOracle::vertex(PointId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= num_vertices_) {
    throw InputError("point id " + std::to_string(id) + " is not a graph vertex");
  }
  return static_cast<std::uint32_t>(id);
}

bool GraphOracle::connected(std::span<const PointId> set) const {
  if (set.empty()) return false;
  if (set.size() == 1) return true;
  // 0 = outside the set, 1 = in the set, 2 = reached.
  std::vector<std::uint8_t> state(num_vertices_, 0);
  for (PointId id : set) state[vertex(id)] = 1;
  std::vector<std::uint32_t> queue{vertex(set.front())};
  state[queue[0]] = 2;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (std::uint32_t w : adjacency_[queue[head]]) {
      if (state[w] == 1) {
        state[w] = 2;
        queue.push_back(w);
      }
    }
  }
  std::size_t distinct = 0;
  for (std::uint8_t s : state) distinct += s != 0;
  return queue.size() == distinct;
}

int GraphOracle::phi(std::span<const PointId> a, std::span<const PointId> b) const {
  std::vector<PointId> joined(a.begin(), a.end());
  joined.insert(joined.end(), b.begin(), b.end());
  return connected(joined) ? 1 : 0;
}

double GraphOracle::tie_break(std::span<const PointId> a, std::span<const PointId> b) const {
  std::uint64_t ha = hash_set(a);
  std::uint64_t hb = hash_set(b);
  if (hb < ha) std::swap(ha, hb);
  const std::uint64_t h = splitmix64(ha ^ splitmix64(hb));
  return static_cast<double>(h >> 11) * 0x1.0p-53 * 0.5;
}

double GraphOracle::score(std::span<const PointId> a, std::span<const PointId> b) const {
  if (a.empty() || b.empty()) throw InputError("oracle linkage: empty argument");
  std::vector<PointId> sa(a.begin(), a.end());
  std::vector<PointId> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  std::vector<PointId> common;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(common));
  if (!common.empty()) throw InputError("oracle linkage: arguments overlap");
  return phi(a, b) + tie_break(a, b);
}

bool connected(const GraphOracle& graph, std::span<const PointId> set) { return graph.connected(set); }

double oracle_linkage(const GraphOracle& graph, std::span<const PointId> a, std::span<const PointId> b) {
  return graph.score(a, b);
}

}  // namespace grinch
