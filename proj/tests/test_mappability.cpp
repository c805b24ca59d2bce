#include <gtest/gtest.h>

#include "cubu/constructors.hpp"
#include "cubu/mappability.hpp"
#include "cubu/standard.hpp"

using namespace cubu;

TEST(Mappability, EdgeClassesOfBoundaryCube) {
  const auto k = edge_classes(make_boundary_cube(2));
  EXPECT_EQ(k.members.size(), 3u);  // one class per coordinate direction
  for (const auto& m : k.members) EXPECT_EQ(m.size(), 4u);
  EXPECT_TRUE(is_simple_general(make_boundary_cube(2)));
}

TEST(Mappability, BoundaryCubeEmbeds) {
  const auto s = search_partition(make_boundary_cube(2), 4);
  ASSERT_TRUE(s.found);
  EXPECT_EQ(s.found->partition.families(), 3);
  EXPECT_TRUE(s.found->report.mappable);
  EXPECT_TRUE(s.found->report.embeddable);
  // Developed coordinates are the vertices of a unit cube.
  std::set<DevelopmentValue> pts(s.found->report.coordinates.begin(), s.found->report.coordinates.end());
  EXPECT_EQ(pts.size(), 8u);
}

TEST(Mappability, PillowIsMappableButNotEmbeddable) {
  const auto s = search_partition(make_pillow(), 4);
  ASSERT_TRUE(s.found);
  EXPECT_TRUE(s.found->report.mappable);
  EXPECT_FALSE(s.found->report.embeddable);
  EXPECT_FALSE(s.found->report.standard);
}

TEST(Mappability, KleinBottleCannotBeOriented) {
  const auto r = orient_classes(make_klein_grid(3, 3));
  EXPECT_FALSE(r.orientation);
  EXPECT_FALSE(r.witness.empty());
  const auto s = search_partition(make_klein_grid(3, 3), 4);
  EXPECT_FALSE(s.found);
  EXPECT_FALSE(s.orientation_witness.empty());
}

TEST(Mappability, EmbeddableImpliesStandardAndSimple) {
  for (const auto& c : {make_boundary_cube(2), make_boundary_cube(3), from_triangulation(boundary_of_simplex(2)),
                        doubling(make_boundary_cube(2)), make_pillow(), make_torus_grid(3, 3)}) {
    const auto s = search_partition(c, 6, 50000);
    if (!s.found || !s.found->report.embeddable) continue;
    EXPECT_TRUE(is_standard(c));
    EXPECT_TRUE(is_simple_general(c));
  }
  const auto t = search_partition(from_triangulation(boundary_of_simplex(2)), 6);
  ASSERT_TRUE(t.found);
  EXPECT_TRUE(t.found->report.embeddable);
}

TEST(Mappability, BadPartitionIsRejected) {
  const auto c = make_boundary_cube(2);
  const CellTable cells(c);
  const auto k = edge_classes(c, cells);
  FamilyPartition all_one{std::vector<int>(k.members.size(), 0)};
  EXPECT_TRUE(partition_error(c, cells, k, all_one));
}
