// The derivative complex: midplane sections of all cubes and the immersion
// they form. Circle traces, Gauss codes and strata for surfaces.
#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "validate.hpp"

namespace cubu {

/// Sheets are (cube, axis) pairs: the midplane x_axis = 1/2 of the cube.
/// Sheet id = cube * n + axis.
struct DerivativeComplex {
  int n = 0;
  int sheets = 0;
  std::vector<std::vector<int>> adjacent;  // per sheet, one entry per facet not normal to its axis (-1 if free)
  std::vector<int> component;              // per sheet
  std::vector<std::vector<int>> components;
};

namespace detail {

/// Sheet of the neighbour across facet `f` of `cube` continuing sheet `axis`.
inline std::optional<std::pair<int, int>> continue_sheet(const Cubulation& c, int cube, int axis, int f) {
  const Gluing& g = c.gluing(cube, f);
  if (!g.paired()) return std::nullopt;
  const Facet F = Facet::from_index(f), D = Facet::from_index(g.facet);
  return std::pair{g.cube, ambient_axis(g.map.axis(intrinsic_index(axis, F.axis)), D.axis)};
}

}  // namespace detail

inline DerivativeComplex derivative_complex(const Cubulation& c) {
  const int n = c.dim();
  DerivativeComplex d;
  d.n = n;
  d.sheets = c.size() * n;
  d.adjacent.assign(d.sheets, {});
  detail::UnionFind uf(static_cast<std::size_t>(d.sheets));
  for (int q = 0; q < c.size(); ++q)
    for (int i = 0; i < n; ++i) {
      const int s = q * n + i;
      for (int f = 0; f < 2 * n; ++f) {
        if (f / 2 == i) continue;
        const auto next = detail::continue_sheet(c, q, i, f);
        const int t = next ? next->first * n + next->second : -1;
        d.adjacent[s].push_back(t);
        if (t >= 0) uf.unite(static_cast<std::size_t>(s), static_cast<std::size_t>(t));
      }
    }
  d.component.assign(d.sheets, -1);
  std::map<std::size_t, int> root_id;
  for (int s = 0; s < d.sheets; ++s) {
    const auto r = uf.find(static_cast<std::size_t>(s));
    auto [it, fresh] = root_id.emplace(r, static_cast<int>(d.components.size()));
    if (fresh) d.components.emplace_back();
    d.component[s] = it->second;
    d.components[it->second].push_back(s);
  }
  return d;
}

/// One passage of a circle through a square: the midline normal to `axis`,
/// travelled towards increasing (dir = +1) or decreasing (dir = -1) values
/// of the other coordinate.
struct Passage {
  int square = 0;
  int axis = 0;
  int dir = 1;
};

struct TraceComponent {
  std::vector<Passage> passages;   // cyclic
  std::vector<int> gauss_code;     // canonical unsigned Gauss code
  std::vector<int> self_points;    // squares where the circle crosses itself
  int ns = 0;
};

struct ImmersionTrace {
  std::vector<TraceComponent> components;
  /// Per square (double point): the components of its two midlines.
  std::vector<std::pair<int, int>> double_points;
  int ns_total = 0;
};

namespace detail {

/// Relabel by first occurrence; least word over rotations and reflections.
inline std::vector<int> canonical_gauss(const std::vector<int>& word) {
  const std::size_t L = word.size();
  std::vector<int> best;
  for (int reflect = 0; reflect < 2; ++reflect)
    for (std::size_t r = 0; r < L; ++r) {
      std::map<int, int> label;
      std::vector<int> w(L);
      for (std::size_t k = 0; k < L; ++k) {
        const std::size_t idx = reflect ? (r + L - k) % L : (r + k) % L;
        auto [it, fresh] = label.emplace(word[idx], static_cast<int>(label.size()));
        w[k] = it->second;
      }
      if (best.empty() || w < best) best = std::move(w);
    }
  return best;
}

}  // namespace detail

/// Circles of the derivative complex of a closed surface cubulation.
inline ImmersionTrace trace_circles(const Cubulation& c) {
  if (c.dim() != 2) throw Error("trace_circles: surfaces only");
  if (!c.closed()) throw Error("trace_circles: complex must be closed");
  const DerivativeComplex d = derivative_complex(c);
  ImmersionTrace t;
  t.double_points.assign(c.size(), {-1, -1});
  for (int q = 0; q < c.size(); ++q) t.double_points[q] = {d.component[q * 2], d.component[q * 2 + 1]};
  for (const auto& comp : d.components) {
    TraceComponent tc;
    Passage p{comp.front() / 2, comp.front() % 2, 1};
    const Passage start = p;
    do {
      tc.passages.push_back(p);
      const int along = 1 - p.axis;
      const Facet exit{along, p.dir > 0 ? 1 : 0};
      const Gluing& g = c.gluing(p.square, exit.index());
      const Facet entry = Facet::from_index(g.facet);
      const int axis = ambient_axis(g.map.axis(intrinsic_index(p.axis, exit.axis)), entry.axis);
      p = Passage{g.cube, axis, entry.side == 0 ? 1 : -1};
    } while (!(p.square == start.square && p.axis == start.axis && p.dir == start.dir));
    std::vector<int> word;
    for (const auto& x : tc.passages) word.push_back(x.square);
    tc.gauss_code = detail::canonical_gauss(word);
    std::vector<int> sorted = word;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k + 1 < sorted.size(); ++k)
      if (sorted[k] == sorted[k + 1]) tc.self_points.push_back(sorted[k]);
    tc.ns = static_cast<int>(tc.self_points.size());
    t.ns_total += tc.ns;
    t.components.push_back(std::move(tc));
  }
  return t;
}

/// Cancelling pairs: a perfect matching of the self-crossings of a circle in
/// which matched points p, q are consecutive on the circle at least twice
/// (two arcs between them free of other double points). Returns nullopt if
/// no such matching exists.
inline std::optional<std::vector<std::pair<int, int>>> cancelling_pairs(const TraceComponent& k) {
  const auto& pts = k.self_points;
  if (pts.size() % 2) return std::nullopt;
  const std::size_t L = k.passages.size();
  std::map<std::pair<int, int>, int> segments;
  for (std::size_t i = 0; i < L; ++i) {
    int a = k.passages[i].square, b = k.passages[(i + 1) % L].square;
    if (a > b) std::swap(a, b);
    ++segments[{a, b}];
  }
  auto joins = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    const auto it = segments.find({a, b});
    return it != segments.end() && it->second >= 2;
  };
  std::vector<std::pair<int, int>> match;
  std::vector<char> used(pts.size(), 0);
  auto solve = [&](auto&& self) -> bool {
    std::size_t i = 0;
    while (i < pts.size() && used[i]) ++i;
    if (i == pts.size()) return true;
    used[i] = 1;
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (used[j] || !joins(pts[i], pts[j])) continue;
      used[j] = 1;
      match.push_back({pts[i], pts[j]});
      if (self(self)) return true;
      match.pop_back();
      used[j] = 0;
    }
    used[i] = 0;
    return false;
  };
  if (!solve(solve)) return std::nullopt;
  return match;
}

enum class SurfaceClass { simple, semi_simple, neither };

inline const char* to_string(SurfaceClass s) {
  switch (s) {
    case SurfaceClass::simple: return "simple";
    case SurfaceClass::semi_simple: return "semi-simple";
    default: return "neither";
  }
}

struct Classification {
  SurfaceClass kind = SurfaceClass::neither;
  std::vector<int> ns;                                           // per component
  std::vector<std::vector<std::pair<int, int>>> matchings;       // per component, when semi-simple
  int failing_component = -1;                                    // first component without a matching
};

inline Classification classify_surface(const Cubulation& c) {
  const auto t = trace_circles(c);
  Classification out;
  bool simple = true;
  for (std::size_t i = 0; i < t.components.size(); ++i) {
    out.ns.push_back(t.components[i].ns);
    simple &= t.components[i].ns == 0;
    auto m = cancelling_pairs(t.components[i]);
    if (!m && out.failing_component < 0) out.failing_component = static_cast<int>(i);
    out.matchings.push_back(m ? *m : std::vector<std::pair<int, int>>{});
  }
  out.kind = simple ? SurfaceClass::simple
                    : out.failing_component < 0 ? SurfaceClass::semi_simple : SurfaceClass::neither;
  return out;
}

/// Open strata X_k (points covered exactly k times by the immersion; X_0 is
/// the complement of the image). cells[k][d] counts open d-cells of X_k in
/// the subdivision of every derived cell by the midplanes.
struct Stratification {
  std::vector<std::vector<std::int64_t>> cells;
  std::vector<std::int64_t> euler;  // chi(X_k) = sum_d (-1)^d cells[k][d]
};

inline Stratification strata(const Cubulation& c) {
  const int n = c.dim();
  const CellTable t(c);
  Stratification s;
  s.cells.assign(n + 1, std::vector<std::int64_t>(n + 1, 0));
  for (int d = 0; d <= n; ++d)
    for (int i = 0; i < t.count(d); ++i) {
      // Each free coordinate is below, on or above its midplane.
      for (std::uint32_t w = 0; w < pattern::pow3(d); ++w) {
        int on = 0;
        for (int k = 0; k < d; ++k) on += pattern::digit(w, k) == 1;
        ++s.cells[on][d - on];
      }
    }
  s.euler.assign(n + 1, 0);
  for (int k = 0; k <= n; ++k)
    for (int d = 0; d <= n; ++d) s.euler[k] += (d % 2 ? -1 : 1) * s.cells[k][d];
  return s;
}

/// f_i == chi(X_i) mod 2 for every i.
inline bool babson_chan_check(const Cubulation& c) {
  const auto f = f_vector(c);
  const auto s = strata(c);
  for (int i = 0; i <= c.dim(); ++i)
    if (((f[i] - s.euler[i]) % 2) != 0) return false;
  return true;
}

/// f_0 mod 2 of a sphere cubulation, cross-checked against ns(C).
inline int bordism_invariant_s2(const Cubulation& c) {
  if (c.dim() != 2) throw Error("bordism_invariant_s2: surfaces only");
  const auto r = validate(c, ValidationMode::closed_manifold);
  if (!r.ok()) throw Error("bordism_invariant_s2: not a closed surface: " + r.issues.front().message);
  if (euler_characteristic(c) != 2) throw Error("bordism_invariant_s2: not a sphere (Euler characteristic != 2)");
  const int f0 = static_cast<int>(f_vector(c)[0] % 2);
  const int ns = trace_circles(c).ns_total % 2;
  if (ns != f0) throw Error("bordism_invariant_s2: internal inconsistency, ns(C) and f0 differ mod 2");
  return f0;
}

/// Orientation of a surface or 3-manifold: +1/-1 per cube, or nullopt.
inline std::optional<std::vector<int>> orient_cubes(const Cubulation& c) {
  const int n = c.dim();
  std::vector<int> o(c.size(), 0);
  for (int s = 0; s < c.size(); ++s) {
    if (o[s]) continue;
    o[s] = 1;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      const int q = stack.back();
      stack.pop_back();
      for (int f = 0; f < 2 * n; ++f) {
        const Gluing& g = c.gluing(q, f);
        if (!g.paired()) continue;
        const Facet F = Facet::from_index(f), D = Facet::from_index(g.facet);
        const int want = o[q] * extend_from_facet(n, F, D.opposite(), g.map).determinant();
        if (o[g.cube] == 0) {
          o[g.cube] = want;
          stack.push_back(g.cube);
        } else if (o[g.cube] != want) {
          return std::nullopt;
        }
      }
    }
  }
  return o;
}

/// Homology data of the circles on an orientable closed surface: for each
/// circle the intersection numbers with a basis of cycles (gcd = content, 0
/// for null-homologous circles), and pairwise algebraic intersections.
struct HomologyCensus {
  bool orientable = false;
  std::vector<std::vector<std::int64_t>> intersections;  // per circle, against fundamental cycles
  std::vector<std::int64_t> content;                     // per circle
  std::vector<std::vector<std::int64_t>> pairwise;       // algebraic intersection numbers

  /// Basis-independent summary: sorted contents of non-trivial circles and
  /// sorted |pairwise| numbers among them.
  std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> signature() const {
    std::vector<std::int64_t> cs, ps;
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < content.size(); ++i)
      if (content[i]) {
        cs.push_back(content[i]);
        live.push_back(i);
      }
    for (std::size_t a = 0; a < live.size(); ++a)
      for (std::size_t b = a + 1; b < live.size(); ++b) ps.push_back(std::llabs(pairwise[live[a]][live[b]]));
    std::sort(cs.begin(), cs.end());
    std::sort(ps.begin(), ps.end());
    return {cs, ps};
  }
};

inline HomologyCensus homology_census(const Cubulation& c) {
  HomologyCensus h;
  const auto o = orient_cubes(c);
  if (!o) return h;
  h.orientable = true;
  const CellTable cells(c);
  const auto trace = trace_circles(c);
  const int nv = cells.count(0), ne = cells.count(1);
  // Edge endpoints, oriented from the smaller to the larger vertex id.
  std::vector<std::pair<int, int>> ends(ne);
  for (int e = 0; e < ne; ++e) {
    const auto v = cells.vertices_of(cells.members(1, e).front());
    ends[e] = {std::min(v[0], v[1]), std::max(v[0], v[1])};
  }
  // Spanning tree by BFS.
  std::vector<std::vector<std::pair<int, int>>> inc(nv);
  for (int e = 0; e < ne; ++e) {
    inc[ends[e].first].push_back({e, ends[e].second});
    inc[ends[e].second].push_back({e, ends[e].first});
  }
  std::vector<int> parent_edge(nv, -2), order;
  for (int r = 0; r < nv; ++r) {
    if (parent_edge[r] != -2) continue;
    parent_edge[r] = -1;
    order.push_back(r);
    for (std::size_t h2 = order.size() - 1; h2 < order.size(); ++h2)
      for (auto [e, w] : inc[order[h2]])
        if (parent_edge[w] == -2) {
          parent_edge[w] = e;
          order.push_back(w);
        }
  }
  std::vector<char> tree(ne, 0);
  for (int v = 0; v < nv; ++v)
    if (parent_edge[v] >= 0) tree[parent_edge[v]] = 1;

  for (const auto& comp : trace.components) {
    std::vector<std::int64_t> cross(ne, 0);
    for (const auto& p : comp.passages) {
      const int along = 1 - p.axis;
      const int side = p.dir > 0 ? 1 : 0;
      std::uint32_t edge = pattern::set_digit(pattern::set_digit(0, along, side), p.axis, pattern::kFree);
      const auto cell = cells.cell_of(p.square, edge);
      const int lo = cells.vertex(p.square, static_cast<unsigned>(side << along));
      const int t = lo == ends[cell.index].first ? 1 : -1;
      // det(dir e_along, t e_axis)
      const int det = along == 0 ? 1 : -1;
      cross[cell.index] += (*o)[p.square] * p.dir * t * det;
    }
    // Potential along the tree.
    std::vector<std::int64_t> phi(nv, 0);
    for (int v : order) {
      const int e = parent_edge[v];
      if (e < 0) continue;
      const int u = ends[e].first == v ? ends[e].second : ends[e].first;
      phi[v] = phi[u] + (ends[e].first == u ? cross[e] : -cross[e]);
    }
    std::vector<std::int64_t> row;
    std::int64_t g = 0;
    for (int e = 0; e < ne; ++e) {
      if (tree[e]) continue;
      const std::int64_t x = cross[e] + phi[ends[e].first] - phi[ends[e].second];
      row.push_back(x);
      g = std::gcd(g, x);
    }
    h.intersections.push_back(row);
    h.content.push_back(g);
  }
  const std::size_t m = trace.components.size();
  h.pairwise.assign(m, std::vector<std::int64_t>(m, 0));
  std::vector<std::vector<std::pair<int, int>>> at(c.size());  // square -> (component, dir) per axis
  for (auto& v : at) v.assign(2, {-1, 0});
  for (std::size_t k = 0; k < m; ++k)
    for (const auto& p : trace.components[k].passages) at[p.square][p.axis] = {static_cast<int>(k), p.dir};
  for (int q = 0; q < c.size(); ++q) {
    const auto [a, da] = at[q][0];  // travels along axis 1
    const auto [b, db] = at[q][1];  // travels along axis 0
    if (a == b) continue;
    // det(da e_1, db e_0) = -da db
    const std::int64_t s = -static_cast<std::int64_t>((*o)[q]) * da * db;
    h.pairwise[a][b] += s;
    h.pairwise[b][a] -= s;
  }
  return h;
}

/// DOT graph of the image: nodes are double points (squares), edges are arcs
/// between consecutive double points of a circle.
inline std::string image_dot(const Cubulation& c) {
  const auto t = trace_circles(c);
  std::ostringstream out;
  out << "graph image {\n";
  for (int q = 0; q < c.size(); ++q) out << "  d" << q << ";\n";
  for (std::size_t k = 0; k < t.components.size(); ++k) {
    const auto& ps = t.components[k].passages;
    for (std::size_t i = 0; i < ps.size(); ++i)
      out << "  d" << ps[i].square << " -- d" << ps[(i + 1) % ps.size()].square << " [label=\"K" << k << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace cubu
