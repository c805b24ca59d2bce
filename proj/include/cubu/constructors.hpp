// Standard complexes and subdivisions.
#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "validate.hpp"

namespace cubu {

/// Boundary of the (n+1)-cube, a cubulation of the n-sphere. Cube i is the
/// facet i of the (n+1)-cube (2j <-> x_j = 0, 2j+1 <-> x_j = 1); its axes are
/// the remaining ambient axes in increasing order.
inline Cubulation make_boundary_cube(int n) {
  if (n < 1 || n > kMaxAxes - 1) throw Error("make_boundary_cube: n must be in 1..4");
  const int m = n + 1;
  Cubulation c(n, 2 * m);
  for (int F = 0; F < 2 * m; ++F) {
    const Facet outer = Facet::from_index(F);
    for (int k = 0; k < n; ++k) {
      const int a = ambient_axis(k, outer.axis);
      for (int w = 0; w < 2; ++w) {
        const int G = Facet{a, w}.index();
        if (G < F) continue;
        c.glue(F, Facet{k, w}.index(), G, Facet{intrinsic_index(outer.axis, a), outer.side}.index());
      }
    }
  }
  return c;
}

/// Two squares glued along all four sides.
inline Cubulation make_pillow() {
  Cubulation c(2, 2);
  for (int f = 0; f < 4; ++f) c.glue(0, f, 1, f);
  return c;
}

/// Circle made of k edges. k = 1 would glue an edge to itself.
inline Cubulation make_polygon(int k) {
  if (k < 2) throw Error("make_polygon: need at least 2 edges");
  Cubulation c(1, k);
  for (int i = 0; i < k; ++i) c.glue(i, 1, (i + 1) % k, 0);
  return c;
}

namespace detail {

inline Cubulation grid(int p, int q, bool klein) {
  if (p < 2 || q < 2) throw Error("grid surfaces need p, q >= 2");
  Cubulation c(2, p * q);
  auto id = [p](int i, int j) { return i + p * j; };
  for (int j = 0; j < q; ++j)
    for (int i = 0; i < p; ++i) {
      c.glue(id(i, j), 3, id(i, (j + 1) % q), 2);
      if (i + 1 < p) {
        c.glue(id(i, j), 1, id(i + 1, j), 0);
      } else if (klein) {
        c.glue(id(i, j), 1, id(0, q - 1 - j), 0, SignedPerm::from({0}, {true}));
      } else {
        c.glue(id(i, j), 1, id(0, j), 0);
      }
    }
  return c;
}

}  // namespace detail

/// p x q square grid with opposite sides identified. Square (i, j) is cube i + p*j.
inline Cubulation make_torus_grid(int p, int q) { return detail::grid(p, q, false); }

/// Like the torus grid, but the x-wraparound reverses y: a Klein bottle.
inline Cubulation make_klein_grid(int p, int q) { return detail::grid(p, q, true); }

/// Subdivide every cube into 2^n half-size cubes. Subcube b of cube q is
/// q * 2^n + b and occupies [b_i/2, (b_i+1)/2] along axis i.
inline Cubulation doubling(const Cubulation& c) {
  const int n = c.dim();
  const int per = 1 << n;
  Cubulation out(n, c.size() * per);
  for (int q = 0; q < c.size(); ++q)
    for (int b = 0; b < per; ++b) {
      const int self = q * per + b;
      for (int i = 0; i < n; ++i) {
        const int bit = (b >> i) & 1;
        if (bit == 0) {
          out.glue(self, Facet{i, 1}.index(), q * per + (b | (1 << i)), Facet{i, 0}.index());
        }
        const Facet outer{i, bit};
        const Gluing& g = c.gluing(q, outer.index());
        if (!g.paired()) continue;
        const Facet target = Facet::from_index(g.facet);
        int tb = target.side << target.axis;
        for (int k = 0; k < n - 1; ++k) {
          const int v = ((b >> ambient_axis(k, i)) & 1) ^ static_cast<int>(g.map.flip(k));
          tb |= v << ambient_axis(g.map.axis(k), target.axis);
        }
        const int other = g.cube * per + tb;
        if (other < self || (other == self && target.index() < outer.index())) continue;
        out.glue(self, outer.index(), other, target.index(), g.map);
      }
    }
  return out;
}

/// Closed simplicial n-manifold given by its top simplices (vertex labels).
struct SimplicialComplex {
  int dim = 0;
  std::vector<std::vector<int>> simplices;
};

/// Boundary of the (n+1)-simplex on vertices 0..n+1.
inline SimplicialComplex boundary_of_simplex(int n) {
  SimplicialComplex s{n, {}};
  for (int skip = 0; skip <= n + 1; ++skip) {
    std::vector<int> f;
    for (int v = 0; v <= n + 1; ++v)
      if (v != skip) f.push_back(v);
    s.simplices.push_back(f);
  }
  return s;
}

namespace detail {

/// Cubes of C(S) without any manifold check.
inline Cubulation cubical_subdivision(const SimplicialComplex& t) {
  const int n = t.dim;
  std::vector<std::vector<std::vector<int>>> cubes;
  for (auto s : t.simplices) {
    std::sort(s.begin(), s.end());
    for (int v : s) {
      std::vector<int> others;
      for (int w : s)
        if (w != v) others.push_back(w);
      std::vector<std::vector<int>> corners(1u << n);
      for (unsigned b = 0; b < (1u << n); ++b) {
        std::vector<int> face{v};
        for (int k = 0; k < n; ++k)
          if ((b >> k) & 1u) face.push_back(others[k]);
        std::sort(face.begin(), face.end());
        corners[b] = face;
      }
      cubes.push_back(std::move(corners));
    }
  }
  return from_vertex_cubes(n, cubes);
}

}  // namespace detail

/// Cubical subdivision C(S): each n-simplex is split into n+1 cubes, one per
/// vertex v, whose corners are the barycenters of the faces of the simplex
/// containing v.
inline Cubulation from_triangulation(const SimplicialComplex& t) {
  const int n = t.dim;
  if (n < 1 || n > 3) throw Error("from_triangulation: dimension must be in 1..3");
  if (t.simplices.empty()) throw Error("from_triangulation: no simplices");
  std::set<std::vector<int>> seen;
  std::map<std::vector<int>, int> ridge_count;
  for (auto s : t.simplices) {
    std::sort(s.begin(), s.end());
    if (static_cast<int>(s.size()) != n + 1 || std::adjacent_find(s.begin(), s.end()) != s.end())
      throw Error("from_triangulation: simplex with wrong vertex count or repeated vertex");
    if (!seen.insert(s).second) throw Error("from_triangulation: duplicate simplex");
    for (int skip = 0; skip <= n; ++skip) {
      std::vector<int> r;
      for (int k = 0; k <= n; ++k)
        if (k != skip) r.push_back(s[k]);
      ++ridge_count[r];
    }
  }
  for (const auto& [r, k] : ridge_count)
    if (k != 2) throw Error("from_triangulation: a codimension-one face is not shared by exactly two simplices");

  Cubulation c = detail::cubical_subdivision(t);
  const auto report = validate(c, ValidationMode::closed_manifold);
  if (!report.ok())
    throw Error("from_triangulation: input is not a closed simplicial manifold (" + report.issues.front().message + ")");
  return c;
}

}  // namespace cubu
