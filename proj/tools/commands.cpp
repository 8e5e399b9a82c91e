#include "commands.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "grinch/build.hpp"
#include "grinch/datagen.hpp"
#include "grinch/eval.hpp"
#include "grinch/graph_oracle.hpp"
#include "grinch/linkage.hpp"
#include "grinch/tree_export.hpp"
#include "grinch/vector_io.hpp"

namespace grinch::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::size_t kExactDpLimit = 5000;

struct Workload {
  Dataset data;
  GroundTruth truth;
  std::unique_ptr<GraphOracle> graph;
  std::unique_ptr<Linkage> linkage;
};

std::optional<std::size_t> parse_cap(const std::string& text, const char* flag) {
  if (text == "none" || text == "inf") return std::nullopt;
  std::size_t used = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty() || value == 0) {
    throw InputError(std::string(flag) + " must be a positive integer or 'none'");
  }
  return static_cast<std::size_t>(value);
}

VectorFormat resolve_format(const RunFlags& flags) {
  if (flags.format != "auto") return parse_format(flags.format);
  const auto dot = flags.input.rfind('.');
  const std::string ext = dot == std::string::npos ? "" : flags.input.substr(dot + 1);
  return ext == "tsv" || ext == "txt" ? VectorFormat::tsv : VectorFormat::grvc;
}

std::unique_ptr<Workload> load(const RunFlags& flags) {
  auto w = std::make_unique<Workload>();
  if (flags.linkage == "oracle") {
    w->graph = std::make_unique<GraphOracle>(GraphOracle::load(flags.input));
    w->data = oracle_points(*w->graph);
    w->linkage = std::make_unique<OracleLinkage>(*w->graph);
  } else {
    w->linkage = make_vector_linkage(flags.linkage);
    w->data = load_vectors(flags.input, resolve_format(flags));
    if (w->linkage->wants_unit_vectors()) normalize_rows(w->data.points);
  }
  w->truth = w->data.ground_truth();
  return w;
}

RunConfig run_config(const RunFlags& flags) {
  RunConfig cfg;
  cfg.rotate_cap = parse_cap(flags.rotate_cap, "--rotate-cap");
  cfg.graft_cap = parse_cap(flags.graft_cap, "--graft-cap");
  cfg.restruct_cap = parse_cap(flags.restruct_cap, "--restruct-cap");
  cfg.single_elimination = flags.single_elim;
  cfg.knn_budget = parse_cap(flags.knn, "--knn");
  cfg.nn_mode = parse_nn_mode(flags.nn);
  cfg.seed = flags.seed;
  if (flags.rotate_rule == "aunt-sibling") {
    cfg.rotate_rule = RotateRule::aunt_prefers_sibling;
  } else if (flags.rotate_rule == "node-aunt") {
    cfg.rotate_rule = RotateRule::node_prefers_aunt;
  } else {
    throw InputError("--rotate-rule must be aunt-sibling or node-aunt");
  }
  cfg.validate();
  return cfg;
}

std::vector<DataPoint> arrange(const Workload& w, OrderScheme scheme, std::uint64_t seed) {
  return order_points(w.data.points, &w.truth, {scheme, seed});
}

struct Purity {
  std::optional<double> value;
  std::string mode;
};

Purity evaluate(const ClusterTree& tree, const GroundTruth& truth, const RunFlags& flags) {
  if (truth.size() != tree.num_points()) return {std::nullopt, "unlabelled"};
  std::string mode = flags.dp_mode;
  if (mode == "auto") mode = tree.num_points() > kExactDpLimit ? "sampled" : "exact";
  try {
    if (mode == "exact") return {dendrogram_purity_exact(tree, truth), mode};
    if (mode == "sampled") return {dendrogram_purity_sampled(tree, truth, flags.dp_samples, flags.seed), mode};
  } catch (const UndefinedMetricError&) {
    return {std::nullopt, "undefined"};
  }
  throw InputError("--dp-mode must be auto, exact or sampled");
}

Json optional_number(const std::optional<std::size_t>& v) { return v ? Json(*v) : Json(nullptr); }

Json config_json(const RunConfig& cfg) {
  Json j;
  j["rotate_cap"] = optional_number(cfg.rotate_cap);
  j["graft_cap"] = optional_number(cfg.graft_cap);
  j["restruct_cap"] = optional_number(cfg.restruct_cap);
  j["single_elimination"] = cfg.single_elimination;
  j["knn_budget"] = optional_number(cfg.knn_budget);
  j["nn"] = std::string(to_string(cfg.nn_mode));
  j["rotate"] = cfg.enable_rotate;
  j["graft"] = cfg.enable_graft;
  j["restruct"] = cfg.enable_restruct;
  return j;
}

Json counters_json(const RunMetrics& m) {
  Json j;
  j["rotations"] = m.rotations;
  j["grafts_attempted"] = m.grafts_attempted;
  j["grafts_accepted"] = m.grafts_accepted;
  j["restructs"] = m.restructs;
  return j;
}

Json purity_json(const Purity& p) { return p.value ? Json(*p.value) : Json(nullptr); }

std::string format_dp(const std::optional<double>& dp) {
  if (!dp) return "n/a";
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << *dp;
  return s.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !out.write(text.data(), static_cast<std::streamsize>(text.size())) || !out.flush()) {
    throw InputError("cannot write " + path);
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  if (!in) throw InputError("cannot read back " + path);
  return s.str();
}

// Writes and re-reads each output so a zero exit means it parses.
void write_json(const std::string& path, const std::string& text) {
  write_text(path, text);
  if (!Json::accept(read_text(path))) throw InputError("unparseable JSON in " + path);
}

void write_json_lines(const std::string& path, const std::vector<Json>& rows) {
  std::string text;
  for (const auto& row : rows) text += row.dump() + "\n";
  write_text(path, text);
  std::istringstream back(read_text(path));
  std::string line;
  std::size_t count = 0;
  while (std::getline(back, line)) {
    if (!Json::accept(line)) throw InputError("unparseable JSON line in " + path);
    ++count;
  }
  if (count != rows.size()) throw InputError("short write to " + path);
}

template <class Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

int cmd_cluster(const ClusterFlags& flags) {
  return guarded([&] {
    const auto w = load(flags.run);
    const RunConfig cfg = run_config(flags.run);
    const Algorithm algo = parse_algorithm(flags.algo);
    const auto points = arrange(*w, parse_order(flags.run.order), flags.run.seed);
    BuildOptions options;
    options.buffer = flags.run.buffer;
    const BuildResult result = build(points, algo, *w->linkage, cfg, options);
    const Purity dp = evaluate(result.tree, w->truth, flags.run);

    Json metrics;
    metrics["algorithm"] = std::string(to_string(algo));
    metrics["linkage"] = std::string(w->linkage->name());
    metrics["order"] = flags.run.order;
    metrics["seed"] = flags.run.seed;
    metrics["num_points"] = points.size();
    metrics["dim"] = w->data.dim;
    if (algo == Algorithm::mbhac) metrics["buffer"] = flags.run.buffer;
    if (algo != Algorithm::hac && algo != Algorithm::mbhac) metrics["config"] = config_json(cfg);
    metrics["dp"] = purity_json(dp);
    metrics["dp_mode"] = dp.mode;
    std::optional<PairwiseScores> prf;
    if (flags.tau && w->truth.size() == points.size()) {
      prf = pairwise_prf(flatten_by_threshold(result.tree, *w->linkage, *flags.tau), w->truth);
      metrics["tau"] = *flags.tau;
      metrics["precision"] = prf->precision;
      metrics["recall"] = prf->recall;
      metrics["f1"] = prf->f1;
      metrics["prf_degenerate"] = prf->degenerate;
    }
    metrics["counters"] = counters_json(result.metrics);
    if (flags.run.timing) metrics["wall_time_seconds"] = result.metrics.wall_time_seconds;

    if (!flags.out_tree.empty()) write_json(flags.out_tree, to_json(result.tree));
    if (!flags.out_newick.empty()) {
      write_text(flags.out_newick, to_newick(result.tree));
      if (read_text(flags.out_newick) != to_newick(result.tree)) throw InputError("newick read-back mismatch");
    }
    if (!flags.out_metrics.empty()) write_json(flags.out_metrics, metrics.dump(2) + "\n");

    std::cout << "algorithm  " << to_string(algo) << "\n"
              << "points     " << points.size() << "\n"
              << "dp         " << format_dp(dp.value) << " (" << dp.mode << ")\n";
    if (prf) std::cout << "pairwise   P=" << prf->precision << " R=" << prf->recall << " F1=" << prf->f1 << "\n";
    std::cout << "rotations  " << result.metrics.rotations << "\n"
              << "grafts     " << result.metrics.grafts_accepted << " / " << result.metrics.grafts_attempted << "\n"
              << "restructs  " << result.metrics.restructs << "\n"
              << "wall time  " << result.metrics.wall_time_seconds << " s\n";
    return 0;
  });
}

int cmd_synth(const SynthFlags& flags) {
  return guarded([&] {
    SyntheticSpec spec{flags.clusters, flags.per_cluster, flags.window, flags.prob, flags.seed};
    const Dataset data = gen_synthetic(spec);
    const VectorFormat format = parse_format(flags.format);
    save_vectors(flags.out, data, format);
    const Dataset back = load_vectors(flags.out, format);
    if (back.points.size() != data.points.size() || back.dim != data.dim) {
      throw InputError("read-back mismatch for " + flags.out);
    }
    std::cout << "wrote " << data.points.size() << " x " << data.dim << " to " << flags.out << "\n";
    return 0;
  });
}

int cmd_ablate(const AblateFlags& flags) {
  return guarded([&] {
    const auto w = load(flags.run);
    const auto points = arrange(*w, parse_order(flags.run.order), flags.run.seed);
    RunConfig cfg;
    cfg.seed = flags.run.seed;
    cfg.nn_mode = parse_nn_mode(flags.run.nn);

    struct Rung {
      const char* name;
      void (*apply)(RunConfig&, const AblateFlags&);
    };
    const Rung rungs[] = {
        {"none", [](RunConfig&, const AblateFlags&) {}},
        {"+cap", [](RunConfig& c, const AblateFlags& f) { c.rotate_cap = c.graft_cap = c.restruct_cap = f.cap; }},
        {"+single-elim", [](RunConfig& c, const AblateFlags&) { c.single_elimination = true; }},
        {"+single-nn", [](RunConfig& c, const AblateFlags& f) { c.knn_budget = f.knn_budget; }},
        {"+no-restruct", [](RunConfig& c, const AblateFlags&) { c.enable_restruct = false; }},
        {"+no-graft", [](RunConfig& c, const AblateFlags&) { c.enable_graft = false; }},
        {"+no-rotate", [](RunConfig& c, const AblateFlags&) { c.enable_rotate = false; }},
    };

    std::vector<Json> rows;
    std::cout << std::left << std::setw(14) << "rung" << std::setw(10) << "dp" << std::setw(12) << "time_s"
              << std::setw(11) << "rotations" << std::setw(9) << "grafts" << "restructs\n";
    for (const auto& rung : rungs) {
      rung.apply(cfg, flags);
      cfg.validate();
      const BuildResult result = build(points, Algorithm::grinch, *w->linkage, cfg);
      const Purity dp = evaluate(result.tree, w->truth, flags.run);
      Json row;
      row["rung"] = rung.name;
      row["seed"] = flags.run.seed;
      row["config"] = config_json(cfg);
      row["dp"] = purity_json(dp);
      row["dp_mode"] = dp.mode;
      row["counters"] = counters_json(result.metrics);
      if (flags.run.timing) row["wall_time_seconds"] = result.metrics.wall_time_seconds;
      rows.push_back(std::move(row));
      std::cout << std::left << std::setw(14) << rung.name << std::setw(10) << format_dp(dp.value) << std::setw(12)
                << std::setprecision(4) << result.metrics.wall_time_seconds << std::setw(11)
                << result.metrics.rotations << std::setw(9) << result.metrics.grafts_accepted
                << result.metrics.restructs << "\n";
    }
    if (!flags.out.empty()) write_json_lines(flags.out, rows);
    return 0;
  });
}

int cmd_robust(const RobustFlags& flags) {
  return guarded([&] {
    const auto w = load(flags.run);
    const Algorithm algo = parse_algorithm(flags.algo);
    RunConfig cfg = run_config(flags.run);
    BuildOptions options;
    options.buffer = flags.run.buffer;

    std::vector<Json> rows;
    std::cout << std::left << std::setw(8) << "seed" << std::setw(14) << "roundrobin" << "sorted\n";
    for (const std::uint64_t seed : flags.seeds) {
      cfg.seed = seed;
      std::cout << std::left << std::setw(8) << seed;
      for (const OrderScheme scheme : {OrderScheme::round_robin, OrderScheme::sorted}) {
        const auto points = arrange(*w, scheme, seed);
        const BuildResult result = build(points, algo, *w->linkage, cfg, options);
        RunFlags eval_flags = flags.run;
        eval_flags.seed = seed;
        const Purity dp = evaluate(result.tree, w->truth, eval_flags);
        Json row;
        row["algorithm"] = std::string(to_string(algo));
        row["order"] = std::string(to_string(scheme));
        row["seed"] = seed;
        if (algo == Algorithm::mbhac) row["buffer"] = flags.run.buffer;
        row["dp"] = purity_json(dp);
        row["dp_mode"] = dp.mode;
        row["counters"] = counters_json(result.metrics);
        if (flags.run.timing) row["wall_time_seconds"] = result.metrics.wall_time_seconds;
        rows.push_back(std::move(row));
        std::cout << std::setw(14) << format_dp(dp.value);
      }
      std::cout << "\n";
    }
    if (!flags.out.empty()) write_json_lines(flags.out, rows);
    return 0;
  });
}

int cmd_trace(const TraceFlags& flags) {
  return guarded([&] {
    const auto w = load(flags.run);
    const Algorithm algo = parse_algorithm(flags.algo);
    if (algo == Algorithm::hac || algo == Algorithm::mbhac) throw InputError("trace needs an incremental algorithm");
    if (w->truth.size() != w->data.points.size()) throw InputError("trace needs every point labelled");
    const RunConfig cfg = run_config(flags.run);
    const auto points = arrange(*w, parse_order(flags.run.order), flags.run.seed);
    BuildOptions options;
    options.trace_truth = &w->truth;
    options.trace_exact_limit = flags.exact_limit;
    options.trace_samples = flags.run.dp_samples;
    const BuildResult result = build(points, algo, *w->linkage, cfg, options);

    std::ostringstream csv;
    csv << std::setprecision(17);
    csv << "i,dp_pre_graft,dp_post_graft,cumulative_delta\n";
    double cumulative = 0.0;
    for (const auto& row : result.metrics.purity_trace) {
      cumulative += row.after_grafts - row.before_grafts;
      csv << row.index << ',' << row.before_grafts << ',' << row.after_grafts << ',' << cumulative << '\n';
    }
    if (!flags.out.empty()) {
      write_text(flags.out, csv.str());
      if (read_text(flags.out) != csv.str()) throw InputError("trace read-back mismatch");
    } else {
      std::cout << csv.str();
    }
    const auto final_dp = result.metrics.purity_trace.empty()
                              ? std::optional<double>()
                              : std::optional<double>(result.metrics.purity_trace.back().after_grafts);
    std::cerr << "final dp " << format_dp(final_dp) << ", cumulative graft delta " << cumulative << "\n";
    return 0;
  });
}

}  // namespace grinch::cli
