#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "cubu/certificate.hpp"
#include "cubu/constructors.hpp"
#include "cubu/standard.hpp"

using namespace cubu;

namespace {

FVector fv(std::initializer_list<std::int64_t> v) { return FVector(v); }

// Relabel cubes by a permutation and re-coordinatize each cube by a random
// symmetry; the result is isomorphic to the input.
Cubulation shuffle(const Cubulation& c, std::mt19937& rng) {
  const int n = c.dim(), m = c.size();
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  const auto& syms = symmetries(n);
  std::vector<CubeSymmetry> frame(m);
  for (auto& s : frame) s = syms[rng() % syms.size()];
  Cubulation out(n, m);
  for (int q = 0; q < m; ++q)
    for (int f = 0; f < 2 * n; ++f) {
      const Gluing& g = c.gluing(q, f);
      if (!g.paired()) continue;
      const Facet F = Facet::from_index(f), D = Facet::from_index(g.facet);
      const AttachingMap map = restrict_to_facet(frame[g.cube], D.axis)
                                   .after(g.map)
                                   .after(restrict_to_facet(frame[q], F.axis).inverse());
      out.set_slot(perm[q], frame[q].map_facet(F).index(),
                   Gluing{perm[g.cube], static_cast<std::int8_t>(frame[g.cube].map_facet(D).index()), map});
    }
  return out;
}

}  // namespace

TEST(SignedPerm, ComposeInverseAndFacetExtension) {
  for (int n = 1; n <= 4; ++n) {
    for (const auto& s : symmetries(n)) {
      EXPECT_TRUE(s.after(s.inverse()).is_identity());
      for (int f = 0; f < 2 * n; ++f) {
        const Facet F = Facet::from_index(f);
        EXPECT_EQ(extend_from_facet(n, F, s.map_facet(F), restrict_to_facet(s, F.axis)), s);
      }
    }
  }
  EXPECT_EQ(symmetries(3).size(), 48u);
  EXPECT_THROW(SignedPerm::from({0, 0}, {false, false}), Error);
}

TEST(Cells, BoundaryCubePillowTorus) {
  EXPECT_EQ(f_vector(make_boundary_cube(2)), fv({8, 12, 6}));
  EXPECT_EQ(f_vector(make_pillow()), fv({4, 4, 2}));
  EXPECT_EQ(f_vector(make_torus_grid(3, 3)), fv({9, 18, 9}));
  EXPECT_EQ(f_vector(make_boundary_cube(3)), fv({16, 32, 24, 8}));
  EXPECT_EQ(f_vector(make_polygon(4)), fv({4, 4}));
  EXPECT_EQ(euler_characteristic(make_boundary_cube(2)), 2);
  EXPECT_EQ(euler_characteristic(make_torus_grid(3, 3)), 0);
  EXPECT_EQ(euler_characteristic(make_klein_grid(3, 3)), 0);
}

TEST(Cells, EveryDescriptorInExactlyOneClass) {
  const auto c = make_boundary_cube(2);
  const CellTable t(c);
  std::size_t total = 0;
  for (int k = 0; k <= 2; ++k)
    for (int i = 0; i < t.count(k); ++i) {
      for (const auto& d : t.members(k, i)) {
        EXPECT_EQ(t.cell_of(d).dim, k);
        EXPECT_EQ(t.cell_of(d).index, i);
      }
      total += t.members(k, i).size();
    }
  EXPECT_EQ(total, 6u * 9u);
  // Deterministic across runs.
  const CellTable again(c);
  for (int k = 0; k <= 2; ++k)
    for (int i = 0; i < t.count(k); ++i) EXPECT_EQ(t.members(k, i), again.members(k, i));
}

TEST(Validate, CorpusIsValid) {
  for (const auto& c : {make_boundary_cube(1), make_boundary_cube(2), make_boundary_cube(3), make_pillow(),
                        make_polygon(2), make_polygon(7), make_torus_grid(3, 3), make_torus_grid(2, 2),
                        make_klein_grid(3, 3)}) {
    const auto r = validate(c, ValidationMode::closed_manifold);
    EXPECT_TRUE(r.ok()) << (r.issues.empty() ? "" : r.issues.front().message);
    EXPECT_EQ(r.links, "checked");
  }
  EXPECT_EQ(validate(make_boundary_cube(4), ValidationMode::closed_manifold).links, "unchecked");
}

TEST(Validate, SelfIdentificationIsReportedNotThrown) {
  Cubulation square(2, 1);
  square.glue(0, 0, 0, 1);
  const auto r = validate(square, ValidationMode::closed_manifold);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(r.has("self-identification"));
}

TEST(Validate, IdentifiedVerticesAreSelfIdentification) {
  // Two edges glued end to end at both ends form a circle.
  Cubulation c(1, 2);
  c.glue(0, 1, 1, 0);
  c.glue(1, 1, 0, 0);
  EXPECT_TRUE(validate(c, ValidationMode::closed_manifold).ok());
  Cubulation d(2, 2);  // second square glued to the first with a flip on one side only
  d.glue(0, 0, 1, 0);
  d.glue(0, 1, 1, 1, SignedPerm::from({0}, {true}));
  d.glue(0, 2, 1, 2);
  d.glue(0, 3, 1, 3);
  EXPECT_FALSE(validate(d, ValidationMode::complex).ok());
}

TEST(Validate, TorusLinkFailsLinkCheck) {
  // Suspension of the 7-vertex torus: the two suspension points have torus links.
  SimplicialComplex t{3, {}};
  for (int i = 0; i < 7; ++i)
    for (int apex : {7, 8}) {
      t.simplices.push_back({i, (i + 1) % 7, (i + 3) % 7, apex});
      t.simplices.push_back({i, (i + 2) % 7, (i + 3) % 7, apex});
    }
  const auto c = detail::cubical_subdivision(t);
  EXPECT_TRUE(validate(c, ValidationMode::complex).ok());
  const auto r = validate(c, ValidationMode::closed_manifold);
  EXPECT_TRUE(r.has("link"));
  EXPECT_EQ(r.issues.size(), 2u);
  EXPECT_THROW(from_triangulation(t), Error);
}

TEST(Validate, TubeIsManifoldWithBoundary) {
  std::vector<std::vector<std::vector<int>>> cubes;
  // Annulus: 4 squares around a square hole, vertices on a 4x2 grid.
  for (int i = 0; i < 4; ++i) {
    const int a = i, b = (i + 1) % 4;
    cubes.push_back({{a, 0}, {b, 0}, {a, 1}, {b, 1}});
  }
  const auto c = from_vertex_cubes(2, cubes);
  EXPECT_TRUE(validate(c, ValidationMode::manifold_with_boundary).ok());
  EXPECT_FALSE(validate(c, ValidationMode::closed_manifold).ok());
}

TEST(Constructors, Doubling) {
  EXPECT_EQ(f_vector(doubling(make_polygon(3))), fv({6, 6}));
  EXPECT_EQ(f_vector(doubling(make_boundary_cube(2))), fv({26, 48, 24}));
  EXPECT_EQ(f_vector(doubling(make_pillow())), fv({10, 16, 8}));
  for (const auto& c : {make_boundary_cube(2), make_pillow(), make_torus_grid(3, 3), make_klein_grid(3, 3),
                        make_boundary_cube(3)}) {
    const auto d = doubling(c);
    const auto f = f_vector(c), g = f_vector(d);
    EXPECT_EQ(g.back(), (1 << c.dim()) * f.back());
    EXPECT_EQ(euler_characteristic(g), euler_characteristic(f));
    EXPECT_TRUE(validate(d, ValidationMode::closed_manifold).ok());
  }
}

TEST(Constructors, FromTriangulation) {
  const auto c = from_triangulation(boundary_of_simplex(2));
  EXPECT_EQ(f_vector(c), fv({14, 24, 12}));
  EXPECT_EQ(f_vector(from_triangulation(boundary_of_simplex(1))), fv({6, 6}));
  const auto c3 = from_triangulation(boundary_of_simplex(3));
  EXPECT_EQ(c3.size(), 4 * 5);
  EXPECT_EQ(euler_characteristic(c3), 0);
  SimplicialComplex twice{2, {{0, 1, 2}, {0, 1, 2}}};
  EXPECT_THROW(from_triangulation(twice), Error);
  SimplicialComplex open{2, {{0, 1, 2}}};
  EXPECT_THROW(from_triangulation(open), Error);
}

TEST(Constructors, VertexCubesRejectAmbiguity) {
  // Three edges sharing the same vertex pair.
  std::vector<std::vector<int>> cubes{{0, 1}, {0, 1}, {0, 1}};
  EXPECT_THROW(from_vertex_cubes(1, cubes), Error);
}

TEST(Certificate, StableUnderRelabeling) {
  std::mt19937 rng(7);
  for (const auto& c : {make_boundary_cube(2), make_pillow(), make_torus_grid(3, 3), make_klein_grid(3, 4),
                        make_boundary_cube(3), doubling(make_boundary_cube(2))}) {
    const auto cert = canonical_certificate(c);
    for (int trial = 0; trial < 100; ++trial) {
      const auto s = shuffle(c, rng);
      ASSERT_TRUE(validate(s, ValidationMode::complex).ok());
      ASSERT_EQ(canonical_certificate(s), cert);
    }
  }
}

TEST(Certificate, CanonicalComplexIsIsomorphicAndFixed) {
  const auto c = make_torus_grid(3, 4);
  const auto form = canonical_form(c);
  EXPECT_TRUE(validate(form.complex, ValidationMode::closed_manifold).ok());
  const auto again = canonical_form(form.complex);
  EXPECT_EQ(again.certificate, form.certificate);
  EXPECT_EQ(again.complex, form.complex);
}

TEST(Certificate, DistinguishesNonIsomorphic) {
  EXPECT_NE(canonical_certificate(make_boundary_cube(2)), canonical_certificate(make_pillow()));
  EXPECT_NE(canonical_certificate(make_torus_grid(3, 3)), canonical_certificate(make_klein_grid(3, 3)));
  EXPECT_NE(canonical_certificate(make_torus_grid(2, 6)), canonical_certificate(make_torus_grid(3, 4)));
  EXPECT_TRUE(is_isomorphic(make_torus_grid(3, 4), make_torus_grid(4, 3)));
}

TEST(Standard, Examples) {
  EXPECT_TRUE(is_standard(make_boundary_cube(2)));
  EXPECT_FALSE(is_standard(make_pillow()));
  // The 1-skeleton of the pillow is a plain 4-cycle; only the squares overlap.
  EXPECT_TRUE(is_k_standard(make_pillow(), 1));
  EXPECT_FALSE(is_k_standard(make_pillow(), 2));
  EXPECT_TRUE(is_standard(make_torus_grid(3, 3)));
  EXPECT_FALSE(is_standard(make_torus_grid(2, 3)));
  EXPECT_TRUE(is_standard(from_triangulation(boundary_of_simplex(2))));
}
