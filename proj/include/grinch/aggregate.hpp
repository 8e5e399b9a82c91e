#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace grinch {

/// Per-node summary of a subtree: the sum of its leaf vectors, the number of
/// leaves and the height (edges on the longest downward path).
///
/// The vector sum is stored as a dense window [offset, offset + size) of a
/// `dim`-dimensional vector; everything outside the window is zero. Sparse
/// inputs (e.g. banded binary data) therefore stay cheap while dense inputs
/// simply use a full-width window.
class Aggregate {
 public:
  Aggregate() = default;
  explicit Aggregate(std::size_t dim) : dim_(dim) {}

  /// Leaf aggregate for one point; the window is trimmed to the first and last
  /// nonzero coordinate.
  static Aggregate from_point(std::span<const double> vector);

  /// Overwrite with the aggregate of two disjoint children.
  void assign_sum(const Aggregate& left, const Aggregate& right);

  std::size_t dim() const { return dim_; }
  std::size_t offset() const { return offset_; }
  std::span<const double> window() const { return values_; }
  std::size_t leaf_count() const { return leaf_count_; }
  std::size_t height() const { return height_; }
  double squared_norm() const { return squared_norm_; }

  /// Coordinate `i` of the vector sum.
  double value(std::size_t i) const;
  std::vector<double> dense() const;

  void set_height(std::size_t h) { height_ = h; }

 private:
  std::size_t dim_ = 0;
  std::size_t offset_ = 0;
  std::vector<double> values_;
  std::size_t leaf_count_ = 0;
  std::size_t height_ = 0;
  double squared_norm_ = 0.0;
};

/// Dot product of two vector sums, evaluated over the overlap of their
/// windows only.
double dot(const Aggregate& a, const Aggregate& b);

}  // namespace grinch
