// Bubble moves: complementary ball pairs in the boundary of the (n+1)-cube,
// their sites in a complex, and their application.
#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "constructors.hpp"

namespace cubu {

/// Facet subsets of the boundary of the (n+1)-cube, bit F = facet F.
using FacetMask = std::uint32_t;

namespace detail {

inline int popcount(FacetMask m) { return std::popcount(m); }

inline bool has_parallel_pair(FacetMask m, int axes) {
  for (int a = 0; a < axes; ++a)
    if (((m >> (2 * a)) & 3u) == 3u) return true;
  return false;
}

/// Two facets of a cube meet iff they are not parallel.
inline bool facets_connected(FacetMask m) {
  if (m == 0) return false;
  const int first = std::countr_zero(m);
  FacetMask seen = 1u << first, frontier = seen;
  while (frontier) {
    FacetMask next = 0;
    for (FacetMask f = frontier; f; f &= f - 1) {
      const int F = std::countr_zero(f);
      next |= m & ~(1u << (F ^ 1));
    }
    next &= ~seen;
    seen |= next;
    frontier = next;
  }
  return seen == m;
}

inline FacetMask map_mask(const CubeSymmetry& g, FacetMask m) {
  FacetMask out = 0;
  for (FacetMask f = m; f; f &= f - 1) out |= 1u << g.map_facet(Facet::from_index(std::countr_zero(f))).index();
  return out;
}

/// Faces of the N-cube as patterns, with their codimension-one cofaces.
struct CubeFaces {
  int N = 0;
  std::vector<int> dim;
  std::vector<std::vector<std::uint32_t>> cofaces;

  explicit CubeFaces(int axes) : N(axes), dim(pattern::pow3(axes)), cofaces(pattern::pow3(axes)) {
    for (std::uint32_t p = 0; p < pattern::pow3(N); ++p) {
      dim[p] = pattern::dimension(p, N);
      for (int i = 0; i < N; ++i)
        if (pattern::digit(p, i) != pattern::kFree) cofaces[p].push_back(pattern::set_digit(p, i, pattern::kFree));
    }
  }

  /// Is face p contained in one of the facets in m?
  bool in(std::uint32_t p, FacetMask m) const {
    for (FacetMask f = m; f; f &= f - 1) {
      const Facet F = Facet::from_index(std::countr_zero(f));
      if (pattern::digit(p, F.axis) == F.side) return true;
    }
    return false;
  }
};

inline const CubeFaces& cube_faces(int axes) {
  static const std::array<CubeFaces, kMaxAxes + 1> table = [] {
    return std::array<CubeFaces, kMaxAxes + 1>{CubeFaces(0), CubeFaces(1), CubeFaces(2),
                                               CubeFaces(3), CubeFaces(4), CubeFaces(5)};
  }();
  return table.at(axes);
}

/// Greedy elementary collapses; true iff a single vertex remains.
inline bool collapses_to_point(FacetMask m, int axes) {
  const CubeFaces& cf = cube_faces(axes);
  const std::size_t total = cf.dim.size();
  std::vector<char> alive(total, 0);
  std::size_t count = 0;
  for (std::uint32_t p = 0; p < total; ++p)
    if (cf.dim[p] < axes && cf.in(p, m)) {
      alive[p] = 1;
      ++count;
    }
  auto free_coface = [&](std::uint32_t p) -> long {
    long found = -1;
    for (std::uint32_t q : cf.cofaces[p])
      if (alive[q]) {
        if (found >= 0) return -1;
        found = q;
      }
    return found;
  };
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::uint32_t p = 0; p < total; ++p) {
      if (!alive[p]) continue;
      const long q = free_coface(p);
      if (q < 0) continue;
      alive[p] = 0;
      alive[q] = 0;
      count -= 2;
      progress = true;
    }
  }
  return count == 1;
}

}  // namespace detail

/// A union of facets of the boundary of the (n+1)-cube is accepted as a ball
/// if it is nonempty, proper, connected with connected complement, and
/// collapses to a point.
inline bool is_ball(int n, FacetMask s) {
  const int N = n + 1;
  const FacetMask all = (1u << (2 * N)) - 1u;
  if (s == 0 || (s & all) == all || (s & ~all)) return false;
  return detail::facets_connected(s) && detail::facets_connected(all & ~s) && detail::collapses_to_point(s, N);
}

/// Interior cells per dimension: faces of s not lying in the complement.
inline FVector interior_cells(int n, FacetMask s) {
  const int N = n + 1;
  const FacetMask rest = ((1u << (2 * N)) - 1u) & ~s;
  const auto& cf = detail::cube_faces(N);
  FVector f(N, 0);
  for (std::uint32_t p = 0; p < cf.dim.size(); ++p)
    if (cf.dim[p] < N && cf.in(p, s) && !cf.in(p, rest)) ++f[cf.dim[p]];
  return f;
}

/// One side of a template as a piece of the boundary complex.
struct TemplateSide {
  FacetMask mask = 0;
  std::vector<int> facets;      // facets of the (n+1)-cube, ascending; site position = index here
  std::vector<int> position;    // facet -> position, or -1
  std::vector<CubeSymmetry> stabilizer;

  struct CellUse {
    int dim = 0;
    bool interior = false;
    std::vector<std::pair<int, std::uint32_t>> descriptors;  // (position, local pattern)
  };
  std::vector<CellUse> cells;  // cells of the side (boundary complex numbering)
};

struct MoveTemplate {
  int n = 0;
  std::string id;
  bool np = false;
  int k = 0;  // number of facets in B
  FVector delta_f;  // interior cells of B' minus interior cells of B
  TemplateSide B, Bp;

  const TemplateSide& side(bool inverse) const { return inverse ? Bp : B; }
};

inline FVector fvector_delta(const MoveTemplate& t, bool inverse = false) {
  FVector d = t.delta_f;
  if (inverse)
    for (auto& x : d) x = -x;
  return d;
}

namespace detail {

inline const Cubulation& boundary_cube_cached(int n) {
  static const std::array<Cubulation, kMaxAxes> table = [] {
    std::array<Cubulation, kMaxAxes> t;
    for (int k = 1; k < kMaxAxes; ++k) t[k] = make_boundary_cube(k);
    return t;
  }();
  return table.at(n);
}

inline TemplateSide make_side(int n, FacetMask mask) {
  const int N = n + 1;
  TemplateSide s;
  s.mask = mask;
  s.position.assign(2 * N, -1);
  for (int F = 0; F < 2 * N; ++F)
    if ((mask >> F) & 1u) {
      s.position[F] = static_cast<int>(s.facets.size());
      s.facets.push_back(F);
    }
  for (const auto& g : symmetries(N))
    if (map_mask(g, mask) == mask) s.stabilizer.push_back(g);
  const Cubulation& T = boundary_cube_cached(n);
  const CellTable cells(T);
  for (int d = 0; d < n; ++d)
    for (int i = 0; i < cells.count(d); ++i) {
      TemplateSide::CellUse use;
      use.dim = d;
      use.interior = true;
      for (const auto& desc : cells.members(d, i)) {
        if (s.position[desc.cube] < 0) use.interior = false;
        else use.descriptors.push_back({s.position[desc.cube], desc.pattern});
      }
      if (!use.descriptors.empty()) s.cells.push_back(std::move(use));
    }
  for (int F : s.facets) {
    TemplateSide::CellUse use;
    use.dim = n;
    use.interior = true;
    use.descriptors.push_back({s.position[F], pattern::whole(n)});
    s.cells.push_back(std::move(use));
  }
  return s;
}

}  // namespace detail

/// Representatives of the symmetry classes of unordered complementary ball
/// pairs. B is the smaller side (on ties, the side without parallel facets).
/// The np templates come first as b1 .. b{n+1}.
inline std::vector<MoveTemplate> enumerate_templates(int n) {
  if (n < 1 || n > 4) throw Error("enumerate_templates: n must be in 1..4");
  const int N = n + 1;
  const FacetMask all = (1u << (2 * N)) - 1u;
  const auto& syms = symmetries(N);
  std::vector<std::vector<int>> facet_image(syms.size(), std::vector<int>(2 * N));
  for (std::size_t g = 0; g < syms.size(); ++g)
    for (int F = 0; F < 2 * N; ++F) facet_image[g][F] = syms[g].map_facet(Facet::from_index(F)).index();
  auto image = [&](std::size_t g, FacetMask m) {
    FacetMask out = 0;
    for (FacetMask f = m; f; f &= f - 1) out |= 1u << facet_image[g][std::countr_zero(f)];
    return out;
  };
  std::set<FacetMask> seen;
  std::vector<MoveTemplate> out;
  for (FacetMask m = 1; m < all; ++m) {
    if (seen.count(m) || !is_ball(n, m) || !is_ball(n, all & ~m)) continue;
    FacetMask b = m, bp = all & ~m;
    const int cb = std::popcount(b), cbp = std::popcount(bp);
    const bool pb = detail::has_parallel_pair(b, N), pbp = detail::has_parallel_pair(bp, N);
    if (cbp < cb || (cbp == cb && pb && !pbp)) std::swap(b, bp);
    FacetMask best = b;
    for (std::size_t g = 0; g < syms.size(); ++g) {
      seen.insert(image(g, m));
      seen.insert(image(g, all & ~m));
      best = std::min(best, image(g, b));
    }
    if (std::popcount(b) == std::popcount(bp))  // either side may serve as B
      for (std::size_t g = 0; g < syms.size(); ++g)
        if (!detail::has_parallel_pair(image(g, bp), N) || pb) best = std::min(best, image(g, bp));
    MoveTemplate t;
    t.n = n;
    t.B = detail::make_side(n, best);
    t.Bp = detail::make_side(n, all & ~best);
    t.k = std::popcount(best);
    t.np = !detail::has_parallel_pair(best, N) || !detail::has_parallel_pair(all & ~best, N);
    const FVector ib = interior_cells(n, best), ibp = interior_cells(n, all & ~best);
    t.delta_f.resize(N);
    for (int d = 0; d < N; ++d) t.delta_f[d] = ibp[d] - ib[d];
    out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end(), [](const MoveTemplate& a, const MoveTemplate& b) {
    if (a.np != b.np) return a.np;
    if (a.k != b.k) return a.k < b.k;
    return a.B.mask < b.B.mask;
  });
  std::map<int, int> count_by_k;
  for (auto& t : out) {
    if (t.np) {
      t.id = "b" + std::to_string(t.k);
    } else {
      t.id = "x" + std::to_string(t.k) + "." + std::to_string(++count_by_k[t.k]);
    }
  }
  return out;
}

/// Cached enumerate_templates(n).
inline const std::vector<MoveTemplate>& templates(int n) {
  static std::array<std::optional<std::vector<MoveTemplate>>, 5> cache;
  if (n < 1 || n > 4) throw Error("templates: n must be in 1..4");
  if (!cache[n]) cache[n] = enumerate_templates(n);
  return *cache[n];
}

/// An embedding of the excised side into a complex: side facet at position i
/// goes to cube cubes[i], template coordinates mapped by frames[i].
struct MoveSite {
  int template_index = 0;
  bool inverse = false;
  std::vector<int> cubes;
  std::vector<CubeSymmetry> frames;

  friend bool operator==(const MoveSite&, const MoveSite&) = default;
};

namespace detail {

/// Propagates an embedding of a side from a root facet; checks gluings.
inline bool propagate(const Cubulation& c, const TemplateSide& s, int n, int root_cube, const CubeSymmetry& root_frame,
                      std::vector<int>& cubes, std::vector<CubeSymmetry>& frames) {
  const Cubulation& T = boundary_cube_cached(n);
  const int m = static_cast<int>(s.facets.size());
  cubes.assign(m, -1);
  frames.assign(m, CubeSymmetry{});
  cubes[0] = root_cube;
  frames[0] = root_frame;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int a = stack.back();
    stack.pop_back();
    const int F = s.facets[a];
    for (int f = 0; f < 2 * n; ++f) {
      const Gluing& tg = T.gluing(F, f);
      const int b = s.position[tg.cube];
      if (b < 0) continue;
      const Facet fa = Facet::from_index(f), fb = Facet::from_index(tg.facet);
      const Facet target = frames[a].map_facet(fa);
      const Gluing& g = c.gluing(cubes[a], target.index());
      if (!g.paired()) return false;
      const Facet landed = Facet::from_index(g.facet);
      const AttachingMap on_facet = g.map.after(restrict_to_facet(frames[a], fa.axis)).after(tg.map.inverse());
      const CubeSymmetry want = extend_from_facet(n, fb, landed, on_facet);
      if (cubes[b] < 0) {
        cubes[b] = g.cube;
        frames[b] = want;
        stack.push_back(b);
      } else if (cubes[b] != g.cube || !(frames[b] == want)) {
        return false;
      }
    }
  }
  return true;
}

/// Injective on cells, and interior cells are faces of image cubes only.
inline bool embeds(const CellTable& cells, const TemplateSide& s, const std::vector<int>& cubes,
                   const std::vector<CubeSymmetry>& frames) {
  std::vector<int> sorted = cubes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  std::set<std::pair<int, int>> used;
  for (const auto& use : s.cells) {
    std::optional<CellTable::Cell> img;
    for (auto [pos, p] : use.descriptors) {
      const auto cell = cells.cell_of(cubes[pos], pattern::apply(frames[pos], p));
      if (!img) img = cell;
      else if (!(*img == cell)) return false;
    }
    if (!used.insert({img->dim, img->index}).second) return false;
    if (use.interior && cells.members(img->dim, img->index).size() != use.descriptors.size()) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> site_key(const TemplateSide& s, const CubeSymmetry& g, const std::vector<int>& cubes,
                                           const std::vector<CubeSymmetry>& frames, std::vector<int>* out_cubes,
                                           std::vector<CubeSymmetry>* out_frames) {
  const int m = static_cast<int>(s.facets.size());
  std::vector<std::uint64_t> key(m);
  for (int a = 0; a < m; ++a) {
    const Facet F = Facet::from_index(s.facets[a]);
    const int b = s.position[g.map_facet(F).index()];
    const CubeSymmetry fr = frames[b].after(restrict_to_facet(g, F.axis));
    key[a] = (static_cast<std::uint64_t>(cubes[b]) << 32) | fr.code();
    if (out_cubes) {
      (*out_cubes)[a] = cubes[b];
      (*out_frames)[a] = fr;
    }
  }
  return key;
}

}  // namespace detail

/// All embeddings of the excised side of `t` (B, or B' when `inverse`) into
/// `c`, one per orbit of the side's symmetry group, sorted.
inline std::vector<MoveSite> find_sites(const Cubulation& c, const CellTable& cells, int template_index, bool inverse) {
  const int n = c.dim();
  const MoveTemplate& t = templates(n).at(template_index);
  const TemplateSide& s = t.side(inverse);
  std::map<std::vector<std::uint64_t>, MoveSite> found;
  std::vector<int> cubes, best_cubes(s.facets.size());
  std::vector<CubeSymmetry> frames, best_frames(s.facets.size());
  std::vector<int> tmp_cubes(s.facets.size());
  std::vector<CubeSymmetry> tmp_frames(s.facets.size());
  for (int q = 0; q < c.size(); ++q)
    for (const auto& sigma : symmetries(n)) {
      if (!detail::propagate(c, s, n, q, sigma, cubes, frames)) continue;
      std::vector<std::uint64_t> best;
      for (const auto& g : s.stabilizer) {
        auto key = detail::site_key(s, g, cubes, frames, &tmp_cubes, &tmp_frames);
        if (best.empty() || key < best) {
          best = std::move(key);
          best_cubes = tmp_cubes;
          best_frames = tmp_frames;
        }
      }
      if (found.count(best)) continue;
      if (!detail::embeds(cells, s, cubes, frames)) {
        found.emplace(best, MoveSite{-1, inverse, {}, {}});
        continue;
      }
      found.emplace(best, MoveSite{template_index, inverse, best_cubes, best_frames});
    }
  std::vector<MoveSite> out;
  for (auto& [key, site] : found)
    if (site.template_index >= 0) out.push_back(std::move(site));
  return out;
}

inline std::vector<MoveSite> find_sites(const Cubulation& c, int template_index, bool inverse) {
  return find_sites(c, CellTable(c), template_index, inverse);
}

struct MoveResult {
  bool ok = false;
  std::string diagnostic;
  Cubulation complex;
  MoveSite inverse_site;  // undoes the move on `complex`
};

/// Excise the embedded side and glue in the complementary side along the
/// boundary sphere. A replacement producing an invalid complex is rejected.
inline MoveResult apply_move(const Cubulation& c, const MoveSite& site) {
  const int n = c.dim();
  const MoveTemplate& t = templates(n).at(site.template_index);
  const TemplateSide& s = t.side(site.inverse);
  const TemplateSide& r = t.side(!site.inverse);
  const Cubulation& T = detail::boundary_cube_cached(n);
  if (site.cubes.size() != s.facets.size()) throw Error("apply_move: site does not match its template");

  std::vector<int> new_index(c.size(), -1);
  std::vector<char> excised(c.size(), 0);
  for (int q : site.cubes) excised.at(q) = 1;
  int kept = 0;
  for (int q = 0; q < c.size(); ++q)
    if (!excised[q]) new_index[q] = kept++;
  const int total = kept + static_cast<int>(r.facets.size());
  Cubulation out(n, total);
  for (int q = 0; q < c.size(); ++q) {
    if (excised[q]) continue;
    for (int f = 0; f < 2 * n; ++f) {
      const Gluing& g = c.gluing(q, f);
      if (!g.paired() || excised[g.cube]) continue;
      out.set_slot(new_index[q], f, Gluing{new_index[g.cube], g.facet, g.map});
    }
  }
  MoveResult res;
  for (std::size_t i = 0; i < r.facets.size(); ++i) {
    const int F = r.facets[i];
    const int me = kept + static_cast<int>(i);
    for (int f = 0; f < 2 * n; ++f) {
      const Gluing& tg = T.gluing(F, f);
      const int other = r.position[tg.cube];
      if (other >= 0) {
        out.set_slot(me, f, Gluing{kept + other, tg.facet, tg.map});
        continue;
      }
      const int a = s.position[tg.cube];
      const Facet fa = Facet::from_index(tg.facet);
      const CubeSymmetry& sigma = site.frames[a];
      const Gluing& g = c.gluing(site.cubes[a], sigma.map_facet(fa).index());
      if (!g.paired()) continue;
      if (excised[g.cube]) {
        res.diagnostic = "boundary of the excised ball is glued to itself";
        return res;
      }
      const AttachingMap m = g.map.after(restrict_to_facet(sigma, fa.axis)).after(tg.map);
      out.set_slot(me, f, Gluing{new_index[g.cube], g.facet, m});
      out.set_slot(new_index[g.cube], g.facet, Gluing{me, static_cast<std::int8_t>(f), m.inverse()});
    }
  }
  if (c.closed() && !out.closed()) {
    res.diagnostic = "move rejected: replacement leaves facets unpaired";
    return res;
  }
  const auto report = validate(out, ValidationMode::complex);
  if (!report.ok()) {
    res.diagnostic = "move rejected: " + report.issues.front().message;
    return res;
  }
  res.ok = true;
  res.complex = std::move(out);
  res.inverse_site.template_index = site.template_index;
  res.inverse_site.inverse = !site.inverse;
  for (std::size_t i = 0; i < r.facets.size(); ++i) {
    res.inverse_site.cubes.push_back(kept + static_cast<int>(i));
    res.inverse_site.frames.push_back(CubeSymmetry::identity(n));
  }
  return res;
}

/// Template side as a .cub-ready complex with boundary (cube i = side facet i).
inline Cubulation side_complex(const MoveTemplate& t, bool inverse) {
  const TemplateSide& s = t.side(inverse);
  const Cubulation& T = detail::boundary_cube_cached(t.n);
  Cubulation out(t.n, static_cast<int>(s.facets.size()));
  for (std::size_t i = 0; i < s.facets.size(); ++i)
    for (int f = 0; f < 2 * t.n; ++f) {
      const Gluing& g = T.gluing(s.facets[i], f);
      if (s.position[g.cube] >= 0) out.set_slot(static_cast<int>(i), f, Gluing{s.position[g.cube], g.facet, g.map});
    }
  return out;
}

}  // namespace cubu
