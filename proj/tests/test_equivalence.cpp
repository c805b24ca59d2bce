#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "cubu/equivalence.hpp"

using namespace cubu;

namespace {

bool contains(const OrbitStore& s, const Cubulation& c) { return s.find(canonical_certificate(c)).has_value(); }

}  // namespace

TEST(Certificate, DecodeGivesCanonicalComplex) {
  for (const auto& c : {make_boundary_cube(2), make_torus_grid(3, 4), make_polygon(5), make_boundary_cube(3),
                        make_klein_grid(2, 3)}) {
    const auto f = canonical_form(c);
    EXPECT_EQ(decode_certificate(f.certificate), f.complex);
  }
  EXPECT_THROW(decode_certificate("\x02\x05"), Error);
}

TEST(Orbit, PolygonNpOrbit) {
  SearchConfig cfg;
  cfg.max_depth = 2;
  cfg.np_only = true;
  const auto s = bfs_orbit(make_polygon(4), cfg);
  EXPECT_TRUE(contains(s, make_polygon(4)));
  EXPECT_TRUE(contains(s, make_polygon(6)));
  EXPECT_TRUE(contains(s, make_polygon(8)));
  EXPECT_FALSE(s.truncated);
  for (const auto& e : s.entries) EXPECT_EQ(e.f[0] % 2, 0);
}

TEST(Orbit, TriangleNeverReachesSquare) {
  SearchConfig cfg;
  cfg.max_depth = 4;
  const auto s = bfs_orbit(make_polygon(3), cfg);
  EXPECT_FALSE(contains(s, make_polygon(4)));
  const auto a = invariant_audit(s);
  EXPECT_EQ(a.fb.residues[0], 1);
}

TEST(Orbit, Deterministic) {
  SearchConfig cfg;
  cfg.max_depth = 2;
  const auto a = bfs_orbit(make_boundary_cube(2), cfg), b = bfs_orbit(make_boundary_cube(2), cfg);
  ASSERT_EQ(a.entries.size(), b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) EXPECT_EQ(a.entries[i].certificate, b.entries[i].certificate);
  invariant_audit(a);
}

TEST(Orbit, BudgetTruncates) {
  SearchConfig cfg;
  cfg.max_depth = 3;
  cfg.max_states = 10;
  const auto s = bfs_orbit(make_boundary_cube(2), cfg);
  EXPECT_TRUE(s.truncated);
  EXPECT_EQ(s.entries.size(), 10u);
}

TEST(Orbit, UndoSitesLeadBack) {
  SearchConfig cfg;
  cfg.max_depth = 2;
  const auto s = bfs_orbit(make_boundary_cube(2), cfg);
  for (std::size_t i = 1; i < s.entries.size(); ++i) {
    const auto& e = s.entries[i];
    const auto r = apply_move(s.complex(static_cast<int>(i)), e.undo);
    ASSERT_TRUE(r.ok);
    EXPECT_EQ(canonical_certificate(r.complex), s.entries[e.parent].certificate);
  }
}

TEST(Orbit, JournalResumes) {
  const auto path = (std::filesystem::temp_directory_path() / "cubu_orbit_journal.txt").string();
  std::remove(path.c_str());
  SearchConfig cfg;
  cfg.journal = path;
  cfg.max_depth = 1;
  bfs_orbit(make_boundary_cube(2), cfg);
  cfg.max_depth = 2;
  const auto resumed = bfs_orbit(make_boundary_cube(2), cfg);
  SearchConfig plain;
  plain.max_depth = 2;
  const auto fresh = bfs_orbit(make_boundary_cube(2), plain);
  ASSERT_EQ(resumed.entries.size(), fresh.entries.size());
  for (const auto& e : fresh.entries) EXPECT_TRUE(resumed.find(e.certificate));
  EXPECT_THROW(bfs_orbit(make_pillow(), cfg), Error);
  std::remove(path.c_str());
}

TEST(Orbit, TorusCensusIsConstant) {
  SearchConfig cfg;
  cfg.max_depth = 2;
  cfg.np_only = true;
  cfg.track_census = true;
  const auto s = bfs_orbit(make_torus_grid(3, 3), cfg);
  const auto a = invariant_audit(s);
  EXPECT_TRUE(a.census_tracked);
  EXPECT_GT(a.states, 1);
}

TEST(Path, Polygons) {
  SearchConfig cfg;
  cfg.max_depth = 4;
  const auto r = find_path(make_polygon(4), make_polygon(8), cfg);
  ASSERT_EQ(r.status, PathStatus::found);
  EXPECT_EQ(r.path.steps.size(), 2u);
  EXPECT_TRUE(replay(r.path));
  const auto s = find_path(make_polygon(3), make_polygon(4), cfg);
  EXPECT_EQ(s.status, PathStatus::separated);
  EXPECT_FALSE(s.reason.empty());
}

TEST(Path, PillowToBoundaryCube) {
  SearchConfig cfg;
  cfg.max_depth = 3;
  const auto r = find_path(make_pillow(), make_boundary_cube(2), cfg);
  ASSERT_EQ(r.status, PathStatus::found);
  EXPECT_EQ(r.path.steps.size(), 1u);
}

TEST(Path, NotFoundIsNotSeparation) {
  SearchConfig cfg;
  cfg.max_depth = 1;
  // Same fb class (f0 even) but more than one move apart.
  const auto r = find_path(make_polygon(4), make_polygon(12), cfg);
  EXPECT_EQ(r.status, PathStatus::not_found);
}
