#include <gtest/gtest.h>

#include "cloudlab/cloud_format.hpp"
#include "cloudlab/coloring.hpp"
#include "cloudlab/datasets.hpp"
#include "cloudlab/errors.hpp"
#include "oracles.hpp"

using namespace cloudlab;

namespace {

SkeletonGraph cycle(std::size_t n) {
  SkeletonGraph g(n);
  for (std::size_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

TEST(Coloring, OddCycleNeedsThree) {
  EXPECT_EQ(chromatic_number(cycle(5)).chromatic_number, 3U);
  EXPECT_EQ(chromatic_number(cycle(6)).chromatic_number, 2U);
  EXPECT_FALSE(t_coloring(cycle(5), 2));
  const auto c = t_coloring(cycle(5), 3);
  ASSERT_TRUE(c);
  EXPECT_TRUE(is_proper(cycle(5), *c));
  EXPECT_THROW(chromatic_number(SkeletonGraph(0)), PreconditionError);
}

TEST(Coloring, ImproperColoringDetected) {
  Coloring c{{1, 1, 2, 1, 2}, 2};
  EXPECT_FALSE(is_proper(cycle(5), c));
  EXPECT_EQ(c.used(), 2U);
}

TEST(Coloring, DatasetChromaticNumbers) {
  const SkeletonGraph ff = skeleton_graph(dataset("firefly").cloud);
  EXPECT_EQ(chromatic_number(ff).chromatic_number, 3U);
  const SkeletonGraph tri = skeleton_graph(dataset("triangle").cloud);
  EXPECT_EQ(chromatic_number(tri).chromatic_number, 3U);
  const SkeletonGraph pent = skeleton_graph(dataset("pentagon").cloud);
  EXPECT_EQ(chromatic_number(pent).chromatic_number, 3U);
}

TEST(Coloring, ColoringToStateAndBack) {
  const Cloud ff = dataset("firefly").cloud;
  const auto chi = chromatic_number(skeleton_graph(ff));
  for (std::size_t color = 1; color <= 3; ++color) {
    const TwoValuedState s = coloring_to_state(ff, chi.witness, color);
    EXPECT_TRUE(is_type_ii(ff, s));
    const Coloring back = state_to_coloring(ff, s);
    EXPECT_TRUE(is_proper(skeleton_graph(ff), back));
    for (VertexIndex v : s.true_vertices()) EXPECT_EQ(back.colors[v], 1U);
  }
}

TEST(Coloring, ColoringToStatePreconditions) {
  const Cloud mixed = parse_cloud("context a b c\ncontext c d\n");
  const auto chi = chromatic_number(skeleton_graph(mixed));
  EXPECT_THROW(coloring_to_state(mixed, chi.witness, 1), PreconditionError);
  const Cloud tri = dataset("triangle").cloud;
  EXPECT_THROW(coloring_to_state(tri, chromatic_number(skeleton_graph(tri)).witness, 1), PreconditionError);
  const Cloud single = parse_cloud("context a b c\n");
  EXPECT_THROW(coloring_to_state(single, Coloring{{1, 1, 2}, 3}, 1), PreconditionError);
}

TEST(SeparableChromatic, FireflyAndPentagon) {
  for (const char* name : {"firefly", "pentagon", "bug"}) {
    const Cloud c = dataset(name).cloud;
    const SkeletonGraph g = skeleton_graph(c);
    const auto r = separable_chromatic_number(g);
    EXPECT_GE(r.value, r.chromatic_number) << name;
    EXPECT_EQ(r.certificate.size(), g.nonadjacent_pairs().size());
    EXPECT_EQ(separable_chromatic_number(g, 4).value, r.value) << name;
    for (const auto& p : r.certificate) {
      EXPECT_TRUE(is_proper(g, p.witness));
      EXPECT_NE(p.witness.colors[p.pair.first], p.witness.colors[p.pair.second]);
    }
  }
}

TEST(SeparableChromatic, CompleteGraphHasNoPairs) {
  SkeletonGraph k3(3);
  k3.add_edge(0, 1);
  k3.add_edge(1, 2);
  k3.add_edge(0, 2);
  const auto r = separable_chromatic_number(k3);
  EXPECT_EQ(r.value, 3U);
  EXPECT_TRUE(r.certificate.empty());
}

}  // namespace
