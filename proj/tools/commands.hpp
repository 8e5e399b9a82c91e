#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace grinch::cli {

/// Flags shared by every command that builds trees.
struct RunFlags {
  std::string input;
  std::string format = "auto";
  std::string linkage = "cosine";
  std::string order = "given";
  std::uint64_t seed = 0;
  std::string nn = "exact";
  std::string rotate_cap = "100";
  std::string graft_cap = "100";
  std::string restruct_cap = "100";
  bool single_elim = true;
  std::string knn = "none";
  std::string rotate_rule = "aunt-sibling";
  std::size_t buffer = 0;
  std::string dp_mode = "auto";
  std::size_t dp_samples = 100000;
  bool timing = false;
};

struct ClusterFlags {
  RunFlags run;
  std::string algo = "grinch";
  std::optional<double> tau;
  std::string out_tree;
  std::string out_newick;
  std::string out_metrics;
};

struct SynthFlags {
  std::size_t clusters = 100;
  std::size_t per_cluster = 25;
  std::size_t window = 100;
  double prob = 0.1;
  std::uint64_t seed = 0;
  std::string format = "grvc";
  std::string out;
};

struct AblateFlags {
  RunFlags run;
  std::size_t knn_budget = 25;
  std::size_t cap = 100;
  std::string out;
};

struct RobustFlags {
  RunFlags run;
  std::string algo = "grinch";
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};
  std::string out;
};

struct TraceFlags {
  RunFlags run;
  std::string algo = "grinch";
  std::size_t exact_limit = 5000;
  std::string out;
};

// Each returns the process exit code and reports errors on stderr.
int cmd_cluster(const ClusterFlags& flags);
int cmd_synth(const SynthFlags& flags);
int cmd_ablate(const AblateFlags& flags);
int cmd_robust(const RobustFlags& flags);
int cmd_trace(const TraceFlags& flags);

}  // namespace grinch::cli
