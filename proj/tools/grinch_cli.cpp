#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using grinch::cli::RunFlags;

void add_run_flags(CLI::App& cmd, RunFlags& f) {
  cmd.add_option("--input", f.input, "Vector file, or edge-list graph with --linkage oracle")->required();
  cmd.add_option("--format", f.format, "auto, tsv or grvc")->capture_default_str();
  cmd.add_option("--linkage", f.linkage, "cosine, avg or oracle")->capture_default_str();
  cmd.add_option("--order", f.order, "given, random, roundrobin or sorted")->capture_default_str();
  cmd.add_option("--seed", f.seed)->capture_default_str();
  cmd.add_option("--nn", f.nn, "exact or nsw")->capture_default_str();
  cmd.add_option("--rotate-cap", f.rotate_cap, "Height cap or 'none'")->capture_default_str();
  cmd.add_option("--graft-cap", f.graft_cap, "Height cap or 'none'")->capture_default_str();
  cmd.add_option("--restruct-cap", f.restruct_cap, "Height cap or 'none'")->capture_default_str();
  cmd.add_option("--single-elim", f.single_elim, "true or false")->capture_default_str();
  cmd.add_option("--rotate-rule", f.rotate_rule, "aunt-sibling or node-aunt")->capture_default_str();
  cmd.add_option("--knn", f.knn, "Single k-NN search budget or 'none'")->capture_default_str();
  cmd.add_option("--buffer", f.buffer, "Buffer size for mbhac")->capture_default_str();
  cmd.add_option("--dp-mode", f.dp_mode, "auto, exact or sampled")->capture_default_str();
  cmd.add_option("--dp-samples", f.dp_samples)->capture_default_str();
  cmd.add_flag("--timing", f.timing, "Include wall time in JSON outputs");
}

// Commands other than cluster default to the unapproximated algorithm.
RunFlags exact_defaults() {
  RunFlags f;
  f.rotate_cap = f.graft_cap = f.restruct_cap = "none";
  f.single_elim = false;
  return f;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Incremental hierarchical clustering"};
  app.require_subcommand(1);

  grinch::cli::ClusterFlags cluster;
  auto* c = app.add_subcommand("cluster", "Build a tree and evaluate it");
  add_run_flags(*c, cluster.run);
  c->add_option("--algo", cluster.algo, "grinch, online, rotate, hac or mbhac")->capture_default_str();
  c->add_option("--tau", cluster.tau, "Flat-cut threshold for pairwise P/R/F1");
  c->add_option("--out-tree", cluster.out_tree, "Tree JSON");
  c->add_option("--out-newick", cluster.out_newick, "Tree in Newick format");
  c->add_option("--out-metrics", cluster.out_metrics, "Metrics JSON");

  grinch::cli::SynthFlags synth;
  auto* s = app.add_subcommand("synth", "Generate the windowed binary dataset");
  s->add_option("--clusters", synth.clusters)->capture_default_str();
  s->add_option("--per-cluster", synth.per_cluster)->capture_default_str();
  s->add_option("--window", synth.window)->capture_default_str();
  s->add_option("--prob", synth.prob)->capture_default_str();
  s->add_option("--seed", synth.seed)->capture_default_str();
  s->add_option("--format", synth.format, "grvc or tsv")->capture_default_str();
  s->add_option("--out", synth.out)->required();

  grinch::cli::AblateFlags ablate;
  ablate.run = exact_defaults();
  auto* a = app.add_subcommand("ablate", "Cumulative approximation ladder");
  add_run_flags(*a, ablate.run);
  a->add_option("--cap", ablate.cap, "Height cap of the +cap rung")->capture_default_str();
  a->add_option("--knn-budget", ablate.knn_budget, "k of the +single-nn rung")->capture_default_str();
  a->add_option("--out", ablate.out, "JSON-lines report");

  grinch::cli::RobustFlags robust;
  robust.run = exact_defaults();
  auto* r = app.add_subcommand("robust", "Round-robin versus sorted arrival");
  add_run_flags(*r, robust.run);
  r->add_option("--algo", robust.algo)->capture_default_str();
  r->add_option("--seeds", robust.seeds, "Seeds to run")->delimiter(',')->capture_default_str();
  r->add_option("--out", robust.out, "JSON-lines report");

  grinch::cli::TraceFlags trace;
  trace.run = exact_defaults();
  auto* t = app.add_subcommand("trace", "Per-insert purity before and after grafts");
  add_run_flags(*t, trace.run);
  t->add_option("--algo", trace.algo)->capture_default_str();
  t->add_option("--exact-limit", trace.exact_limit, "Use sampled purity above this many points")
      ->capture_default_str();
  t->add_option("--out", trace.out, "CSV output (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (c->parsed()) return grinch::cli::cmd_cluster(cluster);
  if (s->parsed()) return grinch::cli::cmd_synth(synth);
  if (a->parsed()) return grinch::cli::cmd_ablate(ablate);
  if (r->parsed()) return grinch::cli::cmd_robust(robust);
  return grinch::cli::cmd_trace(trace);
}
