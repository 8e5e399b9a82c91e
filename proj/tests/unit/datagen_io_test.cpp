#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "grinch/datagen.hpp"
#include "grinch/random.hpp"
#include "grinch/simd/kernels.hpp"
#include "grinch/vector_io.hpp"
#include "oracles.hpp"

namespace grinch {
namespace {

namespace gt = grinch::testing;

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  const double ab = simd::dot(a, b), aa = simd::dot(a, a), bb = simd::dot(b, b);
  return ab / std::sqrt(aa * bb);
}

TEST(Synthetic, FullScaleShape) {
  const auto d = gen_synthetic({});
  EXPECT_EQ(d.points.size(), 2500u);
  EXPECT_EQ(d.dim, 10000u);
  EXPECT_EQ(d.points[26].id, 26);
  EXPECT_EQ(d.points[26].label, 1);
}

TEST(Synthetic, SupportsStayInsideWindows) {
  SyntheticSpec spec;
  spec.num_clusters = 10;
  const auto d = gen_synthetic(spec);
  for (const auto& p : d.points) {
    const auto c = static_cast<std::size_t>(*p.label);
    double sum = 0.0;
    for (std::size_t i = 0; i < d.dim; ++i) {
      if (p.vector[i] != 0.0) {
        EXPECT_EQ(p.vector[i], 1.0);
        EXPECT_EQ(i / spec.window, c);
      }
      sum += p.vector[i];
    }
    EXPECT_GT(sum, 0.0);
  }
}

TEST(Synthetic, CrossClusterCosineZeroWithinSometimesZero) {
  SyntheticSpec spec;
  spec.num_clusters = 10;
  const auto d = gen_synthetic(spec);
  std::size_t within_zero = 0;
  for (std::size_t i = 0; i < d.points.size(); ++i) {
    for (std::size_t j = i + 1; j < d.points.size(); ++j) {
      const double c = cosine(d.points[i].vector, d.points[j].vector);
      if (d.points[i].label != d.points[j].label) {
        ASSERT_EQ(c, 0.0);
      } else {
        within_zero += c == 0.0;
      }
    }
  }
  EXPECT_GT(within_zero, 0u);
}

TEST(Synthetic, SeedDeterministicAndValidated) {
  SyntheticSpec spec;
  spec.num_clusters = 3;
  spec.seed = 4;
  const auto a = gen_synthetic(spec), b = gen_synthetic(spec);
  for (std::size_t i = 0; i < a.points.size(); ++i) EXPECT_EQ(a.points[i].vector, b.points[i].vector);
  spec.bit_probability = 0.0;
  EXPECT_THROW(gen_synthetic(spec), InputError);
  spec.bit_probability = 0.1;
  spec.window = 0;
  EXPECT_THROW(gen_synthetic(spec), InputError);
}

TEST(PlantedGraph, CliqueAndChainEdgeCounts) {
  const auto clique = gen_planted_graph({{4}, {ComponentShape::clique}, 0.3, 1});
  EXPECT_EQ(clique.edges().size(), 6u);
  const auto chain = gen_planted_graph({{5}, {ComponentShape::chain}, 0.3, 1});
  EXPECT_EQ(chain.edges().size(), 4u);
  std::size_t ends = 0;
  for (std::uint32_t v = 0; v < 5; ++v) ends += chain.neighbors(v).size() == 1;
  EXPECT_EQ(ends, 2u);
}

TEST(PlantedGraph, TraversalFindsPlantedComponents) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = gt::random_planted_graph(40, 5, seed);
    const auto comps = gt::induced_components(g, [&] {
      std::set<PointId> all;
      for (PointId v = 0; v < 40; ++v) all.insert(v);
      return all;
    }());
    EXPECT_EQ(comps.size(), 5u);
    for (const auto& c : comps) {
      for (const auto v : c) EXPECT_EQ(g.component(static_cast<std::uint32_t>(v)), g.component(c.front()));
    }
  }
}

TEST(PlantedGraph, ShapeCountMismatchThrows) {
  EXPECT_THROW(gen_planted_graph({{3, 3, 3}, {ComponentShape::clique, ComponentShape::chain}, 0.3, 0}), InputError);
  EXPECT_THROW(gen_planted_graph({{3, 0}, {ComponentShape::clique}, 0.3, 0}), InputError);
}

TEST(OraclePoints, OnePointPerVertexWithComponentLabel) {
  const auto g = gt::random_planted_graph(12, 3, 2);
  const auto d = oracle_points(g);
  ASSERT_EQ(d.points.size(), 12u);
  for (const auto& p : d.points) EXPECT_EQ(*p.label, static_cast<Label>(g.component(static_cast<std::uint32_t>(p.id))));
}

std::vector<DataPoint> labelled(const std::vector<Label>& labels) {
  std::vector<DataPoint> out;
  for (std::size_t i = 0; i < labels.size(); ++i) out.push_back({static_cast<PointId>(i), {1.0}, labels[i]});
  return out;
}

GroundTruth truth_of(const std::vector<DataPoint>& pts) {
  GroundTruth t;
  for (const auto& p : pts) t[p.id] = *p.label;
  return t;
}

TEST(Orders, RoundRobinAlternates) {
  const auto pts = labelled({0, 0, 1, 1});
  const auto truth = truth_of(pts);
  const auto out = order_points(pts, &truth, {OrderScheme::round_robin, 3});
  for (std::size_t i = 1; i < out.size(); ++i) EXPECT_NE(out[i].label, out[i - 1].label);
}

TEST(Orders, RoundRobinCyclesClusterOrder) {
  const auto pts = labelled({2, 0, 1, 0, 2, 1, 1, 0, 2});
  const auto truth = truth_of(pts);
  const auto out = order_points(pts, &truth, {OrderScheme::round_robin, 5});
  for (std::size_t i = 3; i < out.size(); ++i) EXPECT_EQ(out[i].label, out[i % 3].label);
}

TEST(Orders, SortedFormsContiguousRuns) {
  const auto pts = labelled({0, 1, 2, 0, 1, 2, 0, 1, 2, 3});
  const auto truth = truth_of(pts);
  const auto out = order_points(pts, &truth, {OrderScheme::sorted, 6});
  std::set<Label> closed;
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i].label != out[i - 1].label) {
      closed.insert(*out[i - 1].label);
      EXPECT_FALSE(closed.count(*out[i].label));
    }
  }
}

TEST(Orders, EverySchemeIsAPermutation) {
  Rng rng(8);
  std::vector<Label> labels(50);
  for (auto& l : labels) l = static_cast<Label>(rng.below(5));
  const auto pts = labelled(labels);
  const auto truth = truth_of(pts);
  for (const auto s : {OrderScheme::given, OrderScheme::random, OrderScheme::round_robin, OrderScheme::sorted}) {
    auto out = order_points(pts, &truth, {s, 1});
    std::vector<PointId> ids;
    for (const auto& p : out) ids.push_back(p.id);
    std::sort(ids.begin(), ids.end());
    for (std::size_t i = 0; i < ids.size(); ++i) EXPECT_EQ(ids[i], static_cast<PointId>(i));
  }
}

TEST(Orders, ClusterAwareNeedTruth) {
  const auto pts = labelled({0, 1});
  EXPECT_THROW(order_points(pts, nullptr, {OrderScheme::sorted, 0}), InputError);
  EXPECT_THROW(order_points(pts, nullptr, {OrderScheme::round_robin, 0}), InputError);
  EXPECT_NO_THROW(order_points(pts, nullptr, {OrderScheme::random, 0}));
}

TEST(Orders, NamesRoundTrip) {
  for (const auto s : {OrderScheme::given, OrderScheme::random, OrderScheme::round_robin, OrderScheme::sorted}) {
    EXPECT_EQ(parse_order(to_string(s)), s);
  }
  EXPECT_THROW(parse_order("reverse"), InputError);
}

TEST(NormalizeRows, UnitLengthAndZeroRowsKept) {
  std::vector<DataPoint> pts{{0, {3, 4}, std::nullopt}, {1, {0, 0}, std::nullopt}};
  normalize_rows(pts);
  EXPECT_DOUBLE_EQ(pts[0].vector[0], 0.6);
  EXPECT_DOUBLE_EQ(pts[0].vector[1], 0.8);
  EXPECT_EQ(pts[1].vector, (std::vector<double>{0, 0}));
}

Dataset random_dataset(std::size_t n, std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  Dataset data;
  data.dim = d;
  for (std::size_t i = 0; i < n; ++i) {
    DataPoint p{static_cast<PointId>(i), std::vector<double>(d), std::nullopt};
    // float-representable values so the float32 format round-trips exactly
    for (auto& x : p.vector) x = static_cast<float>(rng.unit() * 2.0 - 1.0);
    if (i % 3 != 0) p.label = static_cast<Label>(rng.below(7));
    data.points.push_back(std::move(p));
  }
  return data;
}

void expect_same(const Dataset& a, const Dataset& b) {
  ASSERT_EQ(a.points.size(), b.points.size());
  EXPECT_EQ(a.dim, b.dim);
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    EXPECT_EQ(a.points[i].id, b.points[i].id);
    EXPECT_EQ(a.points[i].vector, b.points[i].vector);
    EXPECT_EQ(a.points[i].label, b.points[i].label);
  }
}

TEST(VectorIo, RoundTripBothFormats) {
  const auto data = random_dataset(100, 7, 3);
  for (const auto fmt : {VectorFormat::tsv, VectorFormat::grvc}) {
    std::stringstream io;
    write_vectors(io, data, fmt);
    expect_same(read_vectors(io, fmt), data);
  }
}

TEST(VectorIo, TsvKeepsFullDoublePrecision) {
  Dataset data;
  data.dim = 2;
  data.points.push_back({42, {0.1, 1.0 / 3.0}, 5});
  std::stringstream io;
  write_vectors(io, data, VectorFormat::tsv);
  expect_same(read_vectors(io, VectorFormat::tsv), data);
}

TEST(VectorIo, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "grinch_io_test.grvc";
  const auto data = random_dataset(10, 3, 4);
  save_vectors(path.string(), data, VectorFormat::grvc);
  expect_same(load_vectors(path.string(), VectorFormat::grvc), data);
  std::filesystem::remove(path);
  EXPECT_THROW(load_vectors(path.string(), VectorFormat::grvc), InputError);
}

TEST(VectorIo, EmptyInputRejected) {
  for (const auto fmt : {VectorFormat::tsv, VectorFormat::grvc}) {
    std::stringstream empty;
    EXPECT_THROW(read_vectors(empty, fmt), InputError);
  }
}

TEST(VectorIo, RaggedRowNamesLine) {
  std::stringstream in("0\t1\t0.5\t0.5\n1\t-\t0.5\n");
  try {
    read_vectors(in, VectorFormat::tsv);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(VectorIo, GrvcHeaderAndTrailerChecks) {
  std::stringstream bad_magic("NOPE0000");
  EXPECT_THROW(read_vectors(bad_magic, VectorFormat::grvc), InputError);
  const auto data = random_dataset(2, 2, 5);
  std::stringstream io;
  write_vectors(io, data, VectorFormat::grvc);
  std::string bytes = io.str();
  std::stringstream trailing(bytes + "x");
  EXPECT_THROW(read_vectors(trailing, VectorFormat::grvc), InputError);
  std::stringstream truncated(bytes.substr(0, bytes.size() - 2));
  EXPECT_THROW(read_vectors(truncated, VectorFormat::grvc), InputError);
}

TEST(VectorIo, FormatNames) {
  EXPECT_EQ(parse_format("tsv"), VectorFormat::tsv);
  EXPECT_EQ(parse_format("grvc"), VectorFormat::grvc);
  EXPECT_EQ(parse_format("dense-binary"), VectorFormat::grvc);
  EXPECT_THROW(parse_format("csv"), InputError);
}

}  // namespace
}  // namespace grinch
