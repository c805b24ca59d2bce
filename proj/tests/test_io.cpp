#include <gtest/gtest.h>

#include "cubu/certificate.hpp"
#include "cubu/constructors.hpp"
#include "cubu/corpus.hpp"
#include "cubu/cub_io.hpp"
#include "cubu/surgery.hpp"

using namespace cubu;

TEST(CubIo, RoundTrip) {
  for (const auto& c : {make_boundary_cube(2), make_pillow(), make_klein_grid(3, 3), make_polygon(5),
                        make_boundary_cube(3), make_tube(2, 3)}) {
    const auto text = write_cub(c);
    const auto back = parse_cub(text);
    EXPECT_EQ(back, c);
    EXPECT_EQ(write_cub(back), text);
    EXPECT_EQ(canonical_certificate(back), canonical_certificate(c));
  }
}

TEST(CubIo, VertexCubes) {
  const auto c = parse_cub("CUB 1\ndim 1\nvcube a b\nvcube b c\nvcube c a\n");
  EXPECT_TRUE(is_isomorphic(c, make_polygon(3)));
}

TEST(CubIo, ErrorsCarryLineNumbers) {
  try {
    parse_cub("CUB 1\ndim 2\ncube a\nglue a 0 a 9\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 4);
  }
  EXPECT_THROW(parse_cub("dim 2\n"), ParseError);
  EXPECT_THROW(parse_cub("CUB 1\ndim 7\n"), ParseError);
}

TEST(Corpus, Names) {
  EXPECT_EQ(f_vector(corpus_complex("boundary-cube-3")), (FVector{8, 12, 6}));
  EXPECT_EQ(f_vector(corpus_complex("c-of-tetrahedron")), (FVector{14, 24, 12}));
  EXPECT_EQ(f_vector(corpus_complex("doubled-pillow")), (FVector{10, 16, 8}));
  EXPECT_EQ(corpus_complex("torus-3-4").size(), 12);
  EXPECT_EQ(corpus_complex("polygon-7").size(), 7);
  EXPECT_TRUE(validate(corpus_complex("klein-3-3"), ValidationMode::closed_manifold).ok());
  for (const char* bad : {"torus-3", "polygon-x", "boundary-cube-9", "cube", "doubled-"})
    EXPECT_THROW(corpus_complex(bad), Error) << bad;
}
