#include "grinch/linkage.hpp"

#include <cmath>
#include <string>

namespace grinch {

double centroid_cosine(const Aggregate& a, const Aggregate& b) {
  const double na = a.squared_norm();
  const double nb = b.squared_norm();
  if (na <= 0.0 || nb <= 0.0) return 0.0;
  return dot(a, b) / (std::sqrt(na) * std::sqrt(nb));
}

double average_linkage(const Aggregate& a, const Aggregate& b) {
  return dot(a, b) / (static_cast<double>(a.leaf_count()) * static_cast<double>(b.leaf_count()));
}

double OracleLinkage::score(const ClusterTree& tree, NodeHandle a, NodeHandle b) const {
  const auto la = tree.leaves(a);
  const auto lb = tree.leaves(b);
  return graph_->score(la, lb);
}

std::unique_ptr<Linkage> make_vector_linkage(std::string_view name) {
  if (name == "cosine" || name == "cs") return std::make_unique<CosineLinkage>();
  if (name == "avg" || name == "average") return std::make_unique<AverageLinkage>();
  throw InputError("unknown linkage: " + std::string(name));
}

}  // namespace grinch
