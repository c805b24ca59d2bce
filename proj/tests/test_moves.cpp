#include <gtest/gtest.h>

#include "cubu/certificate.hpp"
#include "cubu/constructors.hpp"
#include "cubu/moves.hpp"

using namespace cubu;

namespace {

int count_np(int n) {
  int k = 0;
  for (const auto& t : templates(n)) k += t.np;
  return k;
}

std::vector<Cubulation> surface_corpus() {
  return {make_boundary_cube(2), make_pillow(), make_torus_grid(3, 3), make_klein_grid(3, 3)};
}

}  // namespace

TEST(Templates, Census) {
  EXPECT_EQ(templates(1).size(), 2u);
  EXPECT_EQ(templates(2).size(), 4u);
  EXPECT_EQ(templates(3).size(), 6u);
  for (int n = 1; n <= 3; ++n) EXPECT_EQ(count_np(n), n + 1) << n;
  EXPECT_EQ(templates(2).size() - count_np(2), 1u);
}

TEST(Templates, SidesAreComplementaryBalls) {
  for (int n = 1; n <= 3; ++n)
    for (const auto& t : templates(n)) {
      const FacetMask all = (1u << (2 * (n + 1))) - 1;
      EXPECT_TRUE(is_ball(n, t.B.mask)) << t.id;
      EXPECT_TRUE(is_ball(n, t.Bp.mask)) << t.id;
      EXPECT_EQ(t.B.mask | t.Bp.mask, all);
      EXPECT_EQ(t.B.mask & t.Bp.mask, 0u);
      EXPECT_LE(std::popcount(t.B.mask), std::popcount(t.Bp.mask));
    }
  // Opposite facet pair: disconnected, not a ball.
  EXPECT_FALSE(is_ball(2, 0b11));
}

TEST(Templates, DeltaMatchesSideComplexes) {
  // Both sides share the boundary sphere, so the difference of their full
  // f-vectors is the difference of their interiors.
  for (int n = 1; n <= 3; ++n)
    for (const auto& t : templates(n)) {
      const auto fb = f_vector(side_complex(t, false)), fp = f_vector(side_complex(t, true));
      FVector d(n + 1);
      for (int i = 0; i <= n; ++i) d[i] = fp[i] - fb[i];
      EXPECT_EQ(t.delta_f, d) << t.id;
      EXPECT_EQ(euler_characteristic(d), 0) << t.id;
    }
}

TEST(Templates, HandCountedDeltasInDimensionTwo) {
  // b1 replaces one square by five: +4 vertices, +8 edges, +4 squares.
  const auto& ts = templates(2);
  EXPECT_EQ(ts[0].id, "b1");
  EXPECT_EQ(ts[0].delta_f, (FVector{4, 8, 4}));
  EXPECT_EQ(ts[1].delta_f, (FVector{2, 4, 2}));
  EXPECT_EQ(ts[2].delta_f, (FVector{0, 0, 0}));
}

TEST(Moves, RoundTripAndDeltaOnCorpus) {
  for (const auto& c : surface_corpus()) {
    const auto cert = canonical_certificate(c);
    const auto f = f_vector(c);
    const CellTable cells(c);
    for (int ti = 0; ti < static_cast<int>(templates(2).size()); ++ti)
      for (bool inverse : {false, true})
        for (const auto& site : find_sites(c, cells, ti, inverse)) {
          const auto r = apply_move(c, site);
          ASSERT_TRUE(r.ok) << r.diagnostic;
          const auto g = f_vector(r.complex);
          const auto d = fvector_delta(templates(2)[ti], inverse);
          for (int i = 0; i <= 2; ++i) EXPECT_EQ(g[i] - f[i], d[i]);
          const auto back = apply_move(r.complex, r.inverse_site);
          ASSERT_TRUE(back.ok) << back.diagnostic;
          EXPECT_EQ(canonical_certificate(back.complex), cert);
        }
  }
}

TEST(Moves, SiteCountsOnBoundaryCube) {
  const auto c = make_boundary_cube(2);
  EXPECT_EQ(find_sites(c, 0, false).size(), 6u);  // one per square
  EXPECT_EQ(find_sites(c, 1, false).size(), 12u);  // one per edge
  EXPECT_EQ(find_sites(c, 2, false).size(), 8u);  // one per vertex
  // The inverse of b1 collapses five squares around a face: gives the pillow.
  const auto sites = find_sites(c, 0, true);
  ASSERT_FALSE(sites.empty());
  const auto r = apply_move(c, sites.front());
  ASSERT_TRUE(r.ok);
  EXPECT_TRUE(is_isomorphic(r.complex, make_pillow()));
}

TEST(Moves, PillowAdmitsOnlyB1) {
  const auto p = make_pillow();
  EXPECT_EQ(find_sites(p, 0, false).size(), 2u);
  for (int ti = 1; ti < 4; ++ti) EXPECT_TRUE(find_sites(p, ti, false).empty());
}

TEST(Moves, CircleAndThreeSphere) {
  const auto c = make_polygon(4);
  const auto r = apply_move(c, find_sites(c, 0, false).front());
  ASSERT_TRUE(r.ok);
  EXPECT_TRUE(is_isomorphic(r.complex, make_polygon(6)));
  const auto s3 = make_boundary_cube(3);
  const auto cert = canonical_certificate(s3);
  for (int ti = 0; ti < static_cast<int>(templates(3).size()); ++ti) {
    const auto sites = find_sites(s3, ti, false);
    if (sites.empty()) continue;
    const auto m = apply_move(s3, sites.front());
    ASSERT_TRUE(m.ok) << templates(3)[ti].id;
    EXPECT_TRUE(validate(m.complex, ValidationMode::closed_manifold).ok());
    EXPECT_EQ(canonical_certificate(apply_move(m.complex, m.inverse_site).complex), cert);
  }
}
