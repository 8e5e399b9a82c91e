#include "grinch/aggregate.hpp"

#include <algorithm>

#include "grinch/simd/kernels.hpp"

namespace grinch {

Aggregate Aggregate::from_point(std::span<const double> vector) {
  Aggregate agg(vector.size());
  agg.leaf_count_ = 1;
  agg.height_ = 0;
  std::size_t first = 0;
  while (first < vector.size() && vector[first] == 0.0) ++first;
  std::size_t last = vector.size();
  while (last > first && vector[last - 1] == 0.0) --last;
  agg.offset_ = first;
  agg.values_.assign(vector.begin() + static_cast<std::ptrdiff_t>(first),
                     vector.begin() + static_cast<std::ptrdiff_t>(last));
  agg.squared_norm_ = simd::dot(agg.values_.data(), agg.values_.data(), agg.values_.size());
  return agg;
}

void Aggregate::assign_sum(const Aggregate& left, const Aggregate& right) {
  dim_ = left.dim_;
  leaf_count_ = left.leaf_count_ + right.leaf_count_;
  height_ = 1 + std::max(left.height_, right.height_);

  const bool left_empty = left.values_.empty();
  const bool right_empty = right.values_.empty();
  if (left_empty && right_empty) {
    offset_ = 0;
    values_.clear();
    squared_norm_ = 0.0;
    return;
  }
  std::size_t lo = 0, hi = 0;
  if (left_empty) {
    lo = right.offset_;
    hi = right.offset_ + right.values_.size();
  } else if (right_empty) {
    lo = left.offset_;
    hi = left.offset_ + left.values_.size();
  } else {
    lo = std::min(left.offset_, right.offset_);
    hi = std::max(left.offset_ + left.values_.size(), right.offset_ + right.values_.size());
  }
  offset_ = lo;
  values_.assign(hi - lo, 0.0);
  if (!left_empty) simd::accumulate(values_.data() + (left.offset_ - lo), left.values_.data(), left.values_.size());
  if (!right_empty) simd::accumulate(values_.data() + (right.offset_ - lo), right.values_.data(), right.values_.size());
  squared_norm_ = simd::dot(values_.data(), values_.data(), values_.size());
}

double Aggregate::value(std::size_t i) const {
  if (i < offset_ || i >= offset_ + values_.size()) return 0.0;
  return values_[i - offset_];
}

std::vector<double> Aggregate::dense() const {
  std::vector<double> out(dim_, 0.0);
  std::copy(values_.begin(), values_.end(), out.begin() + static_cast<std::ptrdiff_t>(offset_));
  return out;
}

double dot(const Aggregate& a, const Aggregate& b) {
  const std::size_t lo = std::max(a.offset(), b.offset());
  const std::size_t hi = std::min(a.offset() + a.window().size(), b.offset() + b.window().size());
  if (hi <= lo) return 0.0;
  return simd::dot(a.window().data() + (lo - a.offset()), b.window().data() + (lo - b.offset()), hi - lo);
}

}  // namespace grinch
