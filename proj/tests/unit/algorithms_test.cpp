#include <gtest/gtest.h>

#include <vector>

#include "grinch/agglomerative.hpp"
#include "grinch/build.hpp"
#include "grinch/datagen.hpp"
#include "grinch/eval.hpp"
#include "grinch/grinch.hpp"
#include "grinch/linkage.hpp"
#include "grinch/random.hpp"
#include "grinch/tree_export.hpp"
#include "oracles.hpp"

namespace grinch {
namespace {

namespace gt = grinch::testing;

// Oracle points for `g`, reordered to `order`.
std::vector<DataPoint> arrival(const GraphOracle& g, const std::vector<PointId>& order) {
  const auto all = oracle_points(g).points;
  std::vector<DataPoint> out;
  for (const auto id : order) out.push_back(all[static_cast<std::size_t>(id)]);
  return out;
}

bool siblings(const ClusterTree& t, PointId a, PointId b) { return t.sibling(*t.leaf_of(a)) == t.leaf_of(b); }

// ---------------------------------------------------------------------------
// Insert and rotate

TEST(GrinchInsert, EmptyTreeMakesRoot) {
  const CosineLinkage f;
  Grinch g(2, f);
  g.insert({7, {1, 0}, std::nullopt});
  ASSERT_TRUE(g.tree().root());
  EXPECT_EQ(g.tree().point(*g.tree().root()), 7);
  EXPECT_EQ(g.metrics().nn_searches, 0u);
}

TEST(GrinchInsert, DuplicateAndDimensionErrors) {
  const CosineLinkage f;
  Grinch g(2, f);
  g.insert({1, {1, 0}, std::nullopt});
  EXPECT_THROW(g.insert({1, {0, 1}, std::nullopt}), InputError);
  EXPECT_THROW(g.insert({2, {0, 1, 0}, std::nullopt}), InputError);
}

TEST(RunConfigTest, ZeroCapsRejected) {
  RunConfig cfg;
  cfg.graft_cap = 0;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg.graft_cap.reset();
  cfg.knn_budget = 0;
  EXPECT_THROW(cfg.validate(), InputError);
  const auto capped = RunConfig::capped_defaults();
  EXPECT_EQ(capped.rotate_cap, 100u);
  EXPECT_TRUE(capped.single_elimination);
  EXPECT_NO_THROW(capped.validate());
}

TEST(RotateLoop, NoRotationWhenSiblingIsBest) {
  const GraphOracle graph(3, {{0, 1}});
  const OracleLinkage f(graph);
  Grinch g(1, f);
  for (const auto& p : arrival(graph, {0, 2, 1})) g.rotate_insert(p);
  EXPECT_EQ(g.metrics().rotations, 0u);
  EXPECT_TRUE(siblings(g.tree(), 0, 1));
}

TEST(RotateLoop, RepairsOnlineMistake) {
  // 0 and 1 share an edge; 2 arrives last and lands beside one of them.
  const GraphOracle graph(3, {{0, 1}});
  const OracleLinkage f(graph);
  Grinch online(1, f), rotate(1, f);
  for (const auto& p : arrival(graph, {0, 1, 2})) {
    online.online_insert(p);
    rotate.rotate_insert(p);
  }
  EXPECT_FALSE(siblings(online.tree(), 0, 1));
  EXPECT_FALSE(gt::is_node_leaf_set(online.tree(), {0, 1}));
  EXPECT_EQ(rotate.metrics().rotations, 1u);
  EXPECT_TRUE(siblings(rotate.tree(), 0, 1));
}

TEST(RotateLoop, ChainMiddleLandsBesideNeighbour) {
  const GraphOracle graph(3, {{0, 1}, {1, 2}});
  const OracleLinkage f(graph);
  Grinch g(1, f);
  for (const auto& p : arrival(graph, {0, 2, 1})) g.rotate_insert(p);
  const auto s = g.tree().point(*g.tree().sibling(*g.tree().leaf_of(1)));
  ASSERT_TRUE(s);
  EXPECT_TRUE(*s == 0 || *s == 2);
}

TEST(RotateLoop, RulesDiffer) {
  // ((v,s),a) where a is close to s but far from v.
  const CosineLinkage f;
  for (const auto rule : {RotateRule::aunt_prefers_sibling, RotateRule::node_prefers_aunt}) {
    RunConfig cfg;
    cfg.rotate_rule = rule;
    Grinch g(2, f, cfg);
    auto& t = g.tree();
    const auto s = t.add_leaf({0, {1.0, 0.0}, std::nullopt});
    const auto a = t.add_leaf({1, {1.0, -0.1}, std::nullopt});
    const auto v = t.add_leaf({2, {1.0, 0.5}, std::nullopt});
    t.set_root(s);
    t.make_sib(s, a);
    t.make_sib(s, v);
    g.rotate_loop(v);
    EXPECT_EQ(g.metrics().rotations, rule == RotateRule::aunt_prefers_sibling ? 1u : 0u);
    t.check_invariants();
  }
}

TEST(RotateLoop, CapBlocksHighRotations) {
  const GraphOracle graph(3, {{0, 1}});
  const OracleLinkage f(graph);
  RunConfig cfg;
  cfg.rotate_cap = 1;  // the grandparent here has height 2
  cfg.enable_graft = false;
  Grinch g(1, f, cfg);
  for (const auto& p : arrival(graph, {0, 1, 2})) g.insert(p);
  EXPECT_EQ(g.metrics().rotations, 0u);
}

// ---------------------------------------------------------------------------
// Graft

TEST(Graft, SingleClusterReturnsRoot) {
  const GraphOracle graph(3, {{0, 1}, {1, 2}});
  const OracleLinkage f(graph);
  Grinch g(1, f);
  for (const auto& p : arrival(graph, {0, 1, 2})) g.insert(p);
  const auto root = *g.tree().root();
  const auto accepted = g.metrics().grafts_accepted;
  EXPECT_EQ(g.graft(root), root);
  EXPECT_EQ(g.metrics().grafts_accepted, accepted);
}

TEST(Graft, MergesSplitComponent) {
  // {0,1} and {2,3} are joined by 4; {5,6} is a separate component.
  const GraphOracle graph(7, {{0, 1}, {2, 3}, {1, 4}, {4, 2}, {5, 6}});
  const OracleLinkage f(graph);
  for (const bool with_graft : {true, false}) {
    RunConfig cfg;
    cfg.enable_graft = with_graft;
    Grinch g(1, f, cfg);
    auto& t = g.tree();
    const auto pts = oracle_points(graph).points;
    for (const PointId id : {0, 1, 5, 6, 2, 3}) t.add_leaf(pts[static_cast<std::size_t>(id)]);
    const auto leaf = [&](PointId id) { return *t.leaf_of(id); };
    t.set_root(leaf(0));
    const auto p01 = t.make_sib(leaf(0), leaf(1));
    t.make_sib(p01, leaf(5));
    t.make_sib(leaf(5), leaf(6));
    t.make_sib(*t.root(), leaf(2));
    t.make_sib(leaf(2), leaf(3));
    // ((0,1),(5,6)),(2,3)
    g.insert(pts[4]);
    EXPECT_EQ(gt::is_node_leaf_set(t, {0, 1, 2, 3, 4}), with_graft);
    EXPECT_EQ(g.metrics().grafts_accepted > 0, with_graft);
    t.check_invariants();
  }
}

TEST(Graft, FromCompleteComponentKeepsStructure) {
  Rng rng(3);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto graph = gt::random_planted_graph(20, 4, seed);
    const OracleLinkage f(graph);
    Grinch g(1, f);
    auto pts = oracle_points(graph).points;
    rng.shuffle(pts);
    for (const auto& p : pts) g.insert(p);
    for (const auto& comp : graph.components()) {
      ASSERT_TRUE(gt::is_node_leaf_set(g.tree(), comp));
      auto v = *g.tree().leaf_of(comp.front());
      while (g.tree().leaf_count(v) < comp.size()) v = *g.tree().parent(v);
      // A merge with another whole component is allowed; nothing may split.
      g.graft(v);
      EXPECT_EQ(gt::strong_connectivity_violations(g.tree(), graph), 0u);
      EXPECT_EQ(gt::completeness_violations(g.tree(), graph), 0u);
    }
  }
}

// ---------------------------------------------------------------------------
// Restruct

TEST(Restruct, AlreadyAdjacentNoSwap) {
  const GraphOracle graph(3, {{0, 1}});
  const OracleLinkage f(graph);
  Grinch g(1, f);
  auto& t = g.tree();
  for (const auto& p : oracle_points(graph).points) t.add_leaf(p);
  t.set_root(*t.leaf_of(0));
  t.make_sib(*t.leaf_of(0), *t.leaf_of(1));
  t.make_sib(*t.root(), *t.leaf_of(2));
  g.restruct(*t.leaf_of(0), *t.root());
  EXPECT_EQ(g.metrics().restructs, 0u);
}

TEST(Restruct, SingleSwapConnectsDescendants) {
  // ((0,1),(2,3)) with edges 0-2, 1-3, 2-3: 0 and 1 are mis-nested.
  const GraphOracle graph(4, {{0, 2}, {1, 3}, {2, 3}});
  const OracleLinkage f(graph);
  Grinch g(1, f);
  auto& t = g.tree();
  for (const auto& p : oracle_points(graph).points) t.add_leaf(p);
  const auto leaf = [&](PointId id) { return *t.leaf_of(id); };
  t.set_root(leaf(0));
  t.make_sib(leaf(0), leaf(1));
  t.make_sib(*t.root(), leaf(2));
  t.make_sib(leaf(2), leaf(3));
  const auto v = *t.root();
  EXPECT_GT(gt::strong_connectivity_violations(t, graph), 0u);
  g.restruct(leaf(0), v);
  EXPECT_EQ(g.metrics().restructs, 1u);
  for (const auto u : t.nodes()) EXPECT_TRUE(graph.connected(t.leaves(u)));
  t.check_invariants();
}

TEST(Restruct, TwoSwapsAlongChain) {
  // (((z,p),q),w) over the chain z-w-p-q, with z=0, w=1, p=2, q=3.
  const GraphOracle graph(4, {{0, 1}, {1, 2}, {2, 3}});
  const OracleLinkage f(graph);
  Grinch g(1, f);
  auto& t = g.tree();
  for (const auto& p : oracle_points(graph).points) t.add_leaf(p);
  const auto leaf = [&](PointId id) { return *t.leaf_of(id); };
  t.set_root(leaf(0));
  t.make_sib(leaf(0), leaf(2));
  t.make_sib(*t.root(), leaf(3));
  t.make_sib(*t.root(), leaf(1));
  g.restruct(leaf(0), *t.root());
  EXPECT_EQ(g.metrics().restructs, 2u);
  EXPECT_EQ(gt::strong_connectivity_violations(t, graph), 0u);
  for (const auto u : t.nodes()) EXPECT_TRUE(graph.connected(t.leaves(u)));
}

TEST(Restruct, NonAncestorThrows) {
  const GraphOracle graph(3, {{0, 1}});
  const OracleLinkage f(graph);
  Grinch g(1, f);
  for (const auto& p : oracle_points(graph).points) g.insert(p);
  const auto& t = g.tree();
  EXPECT_THROW(g.restruct(*t.root(), *t.leaf_of(0)), StructuralError);
}

// ---------------------------------------------------------------------------
// Baselines

std::vector<DataPoint> random_unit_points(std::size_t n, std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<DataPoint> pts;
  for (std::size_t i = 0; i < n; ++i) {
    DataPoint p{static_cast<PointId>(i), std::vector<double>(d), std::nullopt};
    for (auto& x : p.vector) x = rng.unit();
    pts.push_back(std::move(p));
  }
  normalize_rows(pts);
  return pts;
}

TEST(Hac, TwoPointsSingleMerge) {
  const CosineLinkage f;
  const auto r = hac_build(random_unit_points(2, 3, 1), f);
  ASSERT_EQ(r.merges.size(), 1u);
  EXPECT_EQ(r.merges[0].a, 0u);
  EXPECT_EQ(r.merges[0].b, 1u);
  EXPECT_EQ(r.tree.leaf_count(*r.tree.root()), 2u);
}

TEST(Hac, MatchesNaiveRescan) {
  const AverageLinkage f;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto pts = random_unit_points(2 + seed % 9, 4, seed);
    const auto r = hac_build(pts, f);
    const auto ref = gt::naive_hac(pts, f);
    ASSERT_EQ(r.merges.size(), ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
      EXPECT_EQ(r.merges[i].a, ref[i].first) << seed << " step " << i;
      EXPECT_EQ(r.merges[i].b, ref[i].second) << seed << " step " << i;
    }
  }
}

TEST(Hac, EmptyInputThrows) {
  const CosineLinkage f;
  EXPECT_THROW(hac_build({}, f), InputError);
}

TEST(MbHac, LargeBufferEqualsHac) {
  const CosineLinkage f;
  const auto pts = random_unit_points(30, 5, 4);
  for (const std::size_t b : {30u, 31u, 1000u}) {
    EXPECT_EQ(to_json(mb_hac(pts, f, b).tree), to_json(hac_build(pts, f).tree)) << b;
  }
}

TEST(MbHac, BufferOfTwoIsGreedyChain) {
  const CosineLinkage f;
  const auto r = mb_hac(random_unit_points(3, 2, 5), f, 2);
  ASSERT_EQ(r.merges.size(), 2u);
  EXPECT_EQ(r.merges[0].a, 0u);
  EXPECT_EQ(r.merges[0].b, 1u);
  EXPECT_EQ(r.merges[1].a, 2u);
  EXPECT_EQ(r.merges[1].b, 3u);
}

TEST(MbHac, BufferBelowTwoThrows) {
  const CosineLinkage f;
  EXPECT_THROW(mb_hac(random_unit_points(3, 2, 5), f, 1), InputError);
}

// ---------------------------------------------------------------------------
// build() and approximations

Dataset small_synthetic(std::uint64_t seed) {
  SyntheticSpec spec;
  spec.num_clusters = 8;
  spec.points_per_cluster = 10;
  spec.seed = seed;
  auto d = gen_synthetic(spec);
  normalize_rows(d.points);
  return d;
}

TEST(Build, DeterministicExport) {
  const CosineLinkage f;
  const auto d = small_synthetic(1);
  const auto pts = order_points(d.points, nullptr, {OrderScheme::random, 3});
  for (const auto algo : {Algorithm::grinch, Algorithm::online, Algorithm::rotate, Algorithm::hac}) {
    EXPECT_EQ(to_json(build(pts, algo, f, {}).tree), to_json(build(pts, algo, f, {}).tree));
  }
  RunConfig nsw;
  nsw.nn_mode = NnMode::nsw;
  EXPECT_EQ(to_json(build(pts, Algorithm::grinch, f, nsw).tree), to_json(build(pts, Algorithm::grinch, f, nsw).tree));
}

TEST(Build, ExactGrinchIsPureOnSeparatedData) {
  const CosineLinkage f;
  const auto d = small_synthetic(2);
  const auto truth = d.ground_truth();
  const auto pts = order_points(d.points, nullptr, {OrderScheme::random, 1});
  EXPECT_EQ(dendrogram_purity_exact(build(pts, Algorithm::grinch, f, {}).tree, truth), 1.0);
  EXPECT_GE(dendrogram_purity_exact(build(pts, Algorithm::grinch, f, RunConfig::capped_defaults()).tree, truth),
            0.99);
}

TEST(Build, BaselinesSwitchSubroutinesOff) {
  const CosineLinkage f;
  const auto d = small_synthetic(3);
  const auto online = build(d.points, Algorithm::online, f, {});
  EXPECT_EQ(online.metrics.rotations, 0u);
  EXPECT_EQ(online.metrics.grafts_attempted, 0u);
  const auto rotate = build(d.points, Algorithm::rotate, f, {});
  EXPECT_EQ(rotate.metrics.grafts_attempted, 0u);
}

TEST(Build, EmptyInputThrows) {
  const CosineLinkage f;
  EXPECT_THROW(build({}, Algorithm::grinch, f, {}), InputError);
}

TEST(Build, CapsBoundEditHeights) {
  const CosineLinkage f;
  const auto d = small_synthetic(4);
  const auto pts = order_points(d.points, nullptr, {OrderScheme::random, 2});
  for (const std::size_t cap : {1u, 2u, 4u}) {
    RunConfig cfg;
    cfg.rotate_cap = cfg.graft_cap = cfg.restruct_cap = cap;
    const auto m = build(pts, Algorithm::grinch, f, cfg).metrics;
    EXPECT_LE(m.max_rotate_height, cap);
    EXPECT_LE(m.max_graft_height, cap);
    EXPECT_LE(m.max_restruct_height, cap);
  }
}

TEST(Build, UnreachableCapChangesNothing) {
  const CosineLinkage f;
  const auto d = small_synthetic(5);
  const auto pts = order_points(d.points, nullptr, {OrderScheme::random, 4});
  RunConfig huge;
  huge.rotate_cap = huge.graft_cap = huge.restruct_cap = pts.size();
  EXPECT_EQ(to_json(build(pts, Algorithm::grinch, f, huge).tree), to_json(build(pts, Algorithm::grinch, f, {}).tree));
}

TEST(Build, CountersNeverDecrease) {
  const CosineLinkage f;
  const auto d = small_synthetic(6);
  const auto pts = order_points(d.points, nullptr, {OrderScheme::random, 5});
  Grinch g(d.dim, f);
  RunMetrics last;
  for (const auto& p : pts) {
    g.insert(p);
    const auto& m = g.metrics();
    EXPECT_GE(m.rotations, last.rotations);
    EXPECT_GE(m.grafts_attempted, last.grafts_attempted);
    EXPECT_GE(m.grafts_accepted, last.grafts_accepted);
    EXPECT_GE(m.restructs, last.restructs);
    EXPECT_GE(m.nn_searches, last.nn_searches);
    EXPECT_LE(m.grafts_accepted, m.grafts_attempted);
    last = m;
  }
}

TEST(Build, KnnBudgetLimitsCandidates) {
  const CosineLinkage f;
  const auto d = small_synthetic(7);
  RunConfig cfg;
  cfg.knn_budget = 5;
  Grinch g(d.dim, f, cfg);
  for (const auto& p : d.points) g.insert(p);
  g.tree().check_invariants();
  // Outside an insert the cache is inactive and searches see every point.
  const auto nn = g.nearest_leaves(*g.tree().leaf_of(0), 20);
  EXPECT_EQ(nn.size(), 20u);
}

TEST(Build, PurityTraceRecorded) {
  const CosineLinkage f;
  const auto d = small_synthetic(8);
  const auto truth = d.ground_truth();
  BuildOptions options;
  options.trace_truth = &truth;
  const auto r = build(d.points, Algorithm::grinch, f, {}, options);
  ASSERT_FALSE(r.metrics.purity_trace.empty());
  EXPECT_EQ(r.metrics.purity_trace.back().index, d.points.size());
  EXPECT_EQ(r.metrics.purity_trace.back().after_grafts, 1.0);
}

TEST(Build, AlgorithmNamesRoundTrip) {
  for (const auto a : {Algorithm::grinch, Algorithm::online, Algorithm::rotate, Algorithm::hac, Algorithm::mbhac}) {
    EXPECT_EQ(parse_algorithm(to_string(a)), a);
  }
  EXPECT_THROW(parse_algorithm("perch"), InputError);
}

}  // namespace
}  // namespace grinch
