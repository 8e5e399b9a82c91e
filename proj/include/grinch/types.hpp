#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace grinch {

using PointId = std::int64_t;
using Label = std::int64_t;

/// An identified dense feature vector, optionally carrying its ground-truth
/// cluster.
struct DataPoint {
  PointId id = 0;
  std::vector<double> vector;
  std::optional<Label> label;
};

/// Ground-truth cluster per point id.
using GroundTruth = std::unordered_map<PointId, Label>;

/// Predicted flat cluster per point id.
using FlatClustering = std::unordered_map<PointId, Label>;

struct Dataset {
  std::vector<DataPoint> points;
  std::size_t dim = 0;

  /// Labels of every labelled point.
  GroundTruth ground_truth() const;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An edit would break the binary-tree shape (already attached, ancestry
/// overlap, no aunt, detaching the root...).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A handle that never existed or whose node has since been freed.
class StaleHandleError : public Error {
 public:
  using Error::Error;
};

/// Bad user input: duplicate ids, dimension mismatches, malformed files.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A metric that is not defined on its input (e.g. no same-cluster pairs).
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

}  // namespace grinch
