// Edge-equivalence classes, simplicity, class orientations and the
// development map into the standard cubical lattice.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "standard.hpp"

namespace cubu {

/// Derived edges with their endpoints (smaller vertex id first); the
/// reference orientation of an edge runs from first to second.
struct EdgeGraph {
  std::vector<std::pair<int, int>> ends;
  int vertices = 0;
};

inline EdgeGraph edge_graph(const CellTable& cells) {
  EdgeGraph g;
  g.vertices = cells.count(0);
  for (int e = 0; e < cells.count(1); ++e) {
    const auto v = cells.vertices_of(cells.members(1, e).front());
    g.ends.push_back({std::min(v[0], v[1]), std::max(v[0], v[1])});
  }
  return g;
}

namespace detail {

/// Edge of cube q along `axis` at corner `bits` (bit `axis` ignored), and
/// whether its reference orientation points towards increasing x_axis.
inline std::pair<int, int> cube_edge(const CellTable& cells, const EdgeGraph& g, int q, int axis, unsigned bits) {
  const int n = cells.dim();
  bits &= ~(1u << axis);
  std::uint32_t p = pattern::corner(bits, n);
  p = pattern::set_digit(p, axis, pattern::kFree);
  const int e = cells.cell_of(q, p).index;
  const int lo = cells.vertex(q, bits);
  return {e, g.ends[e].first == lo ? 1 : -1};
}

/// Opposite-side relations inside every square of every cube:
/// (edge, edge', relative sign of their reference orientations).
template <typename F>
void for_each_opposite_pair(const Cubulation& c, const CellTable& cells, const EdgeGraph& g, F&& f) {
  const int n = c.dim();
  for (int q = 0; q < c.size(); ++q)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;
        for (unsigned bits = 0; bits < (1u << n); ++bits) {
          if ((bits >> a) & 1u || (bits >> b) & 1u) continue;
          const auto [e0, t0] = cube_edge(cells, g, q, a, bits);
          const auto [e1, t1] = cube_edge(cells, g, q, a, bits | (1u << b));
          f(e0, e1, t0 * t1);
        }
      }
}

}  // namespace detail

struct EdgeClasses {
  std::vector<int> class_of;                // per edge
  std::vector<std::vector<int>> members;    // per class, ascending
};

inline EdgeClasses edge_classes(const Cubulation& c, const CellTable& cells) {
  const EdgeGraph g = edge_graph(cells);
  const int ne = cells.count(1);
  detail::UnionFind uf(static_cast<std::size_t>(ne));
  detail::for_each_opposite_pair(c, cells, g, [&](int a, int b, int) {
    uf.unite(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
  });
  EdgeClasses out;
  out.class_of.assign(ne, -1);
  std::map<std::size_t, int> id;
  for (int e = 0; e < ne; ++e) {
    auto [it, fresh] = id.emplace(uf.find(static_cast<std::size_t>(e)), static_cast<int>(out.members.size()));
    if (fresh) out.members.emplace_back();
    out.class_of[e] = it->second;
    out.members[it->second].push_back(e);
  }
  return out;
}

inline EdgeClasses edge_classes(const Cubulation& c) { return edge_classes(c, CellTable(c)); }

namespace detail {

/// For each cube, the class of its edges along each axis (-1 if mixed).
template <typename F>
void for_each_cube_axis_class(const Cubulation& c, const CellTable& cells, const EdgeGraph& g, const EdgeClasses& k,
                              F&& f) {
  const int n = c.dim();
  for (int q = 0; q < c.size(); ++q)
    for (int a = 0; a < n; ++a)
      for (unsigned bits = 0; bits < (1u << n); ++bits) {
        if ((bits >> a) & 1u) continue;
        f(q, a, k.class_of[cube_edge(cells, g, q, a, bits).first]);
      }
}

}  // namespace detail

/// Within every cube, edges of one class are parallel.
inline bool is_simple_general(const Cubulation& c) {
  const CellTable cells(c);
  const EdgeGraph g = edge_graph(cells);
  const EdgeClasses k = edge_classes(c, cells);
  std::vector<std::map<int, int>> axis_of(c.size());
  bool ok = true;
  detail::for_each_cube_axis_class(c, cells, g, k, [&](int q, int a, int cls) {
    auto [it, fresh] = axis_of[q].emplace(cls, a);
    if (!fresh && it->second != a) ok = false;
  });
  return ok;
}

/// Orientation per edge: +1 keeps the reference orientation, -1 reverses it.
struct ClassOrientation {
  std::vector<int> sign;
};

struct OrientationResult {
  std::optional<ClassOrientation> orientation;
  std::vector<int> witness;  // closed chain of edges with odd transport parity
};

inline OrientationResult orient_classes(const Cubulation& c, const CellTable& cells) {
  const EdgeGraph g = edge_graph(cells);
  const int ne = cells.count(1);
  std::vector<std::vector<std::pair<int, int>>> adj(ne);
  detail::for_each_opposite_pair(c, cells, g, [&](int a, int b, int rel) {
    adj[a].push_back({b, rel});
    adj[b].push_back({a, rel});
  });
  std::vector<int> sign(ne, 0), parent(ne, -1);
  OrientationResult r;
  for (int s = 0; s < ne; ++s) {
    if (sign[s]) continue;
    sign[s] = 1;
    std::vector<int> queue{s};
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const int e = queue[h];
      for (auto [f, rel] : adj[e]) {
        if (!sign[f]) {
          sign[f] = sign[e] * rel;
          parent[f] = e;
          queue.push_back(f);
        } else if (sign[f] != sign[e] * rel) {
          std::vector<int> up, down;
          for (int x = e; x >= 0; x = parent[x]) up.push_back(x);
          for (int x = f; x >= 0; x = parent[x]) down.push_back(x);
          while (up.size() > 1 && down.size() > 1 && up[up.size() - 2] == down[down.size() - 2]) {
            up.pop_back();
            down.pop_back();
          }
          down.pop_back();
          r.witness = up;
          r.witness.insert(r.witness.end(), down.rbegin(), down.rend());
          return r;
        }
      }
    }
  }
  r.orientation = ClassOrientation{sign};
  return r;
}

inline OrientationResult orient_classes(const Cubulation& c) { return orient_classes(c, CellTable(c)); }

/// Family index per edge class.
struct FamilyPartition {
  std::vector<int> family;
  int families() const { return family.empty() ? 0 : *std::max_element(family.begin(), family.end()) + 1; }
};

/// Perpendicular edges (one cube, different axes) must lie in different families.
inline std::optional<std::string> partition_error(const Cubulation& c, const CellTable& cells, const EdgeClasses& k,
                                                  const FamilyPartition& F) {
  if (F.family.size() != k.members.size()) return "partition does not cover every edge class";
  const EdgeGraph g = edge_graph(cells);
  std::optional<std::string> err;
  std::vector<std::map<int, int>> axis_of(c.size());
  detail::for_each_cube_axis_class(c, cells, g, k, [&](int q, int a, int cls) {
    auto [it, fresh] = axis_of[q].emplace(F.family[cls], a);
    if (!fresh && it->second != a && !err)
      err = "perpendicular edges of cube " + std::to_string(q) + " share family " + std::to_string(F.family[cls]);
  });
  return err;
}

struct PathStep {
  int edge = 0;
  int dir = 1;  // +1 along the reference orientation
};

using DevelopmentValue = std::vector<std::int64_t>;

inline DevelopmentValue development(const EdgeClasses& k, const FamilyPartition& F, const ClassOrientation& o,
                                    const std::vector<PathStep>& path) {
  DevelopmentValue d(static_cast<std::size_t>(F.families()), 0);
  for (const auto& s : path) d[F.family[k.class_of[s.edge]]] += s.dir * o.sign[s.edge];
  return d;
}

/// Fundamental cycles of a spanning forest of the 1-skeleton, found by BFS
/// or DFS.
inline std::vector<std::vector<PathStep>> cycle_basis(const EdgeGraph& g, bool depth_first) {
  const int nv = g.vertices, ne = static_cast<int>(g.ends.size());
  std::vector<std::vector<std::pair<int, int>>> inc(nv);
  for (int e = 0; e < ne; ++e) {
    inc[g.ends[e].first].push_back({e, g.ends[e].second});
    inc[g.ends[e].second].push_back({e, g.ends[e].first});
  }
  std::vector<int> parent_edge(nv, -2), depth(nv, 0);
  std::vector<char> tree(ne, 0);
  for (int r = 0; r < nv; ++r) {
    if (parent_edge[r] != -2) continue;
    parent_edge[r] = -1;
    std::vector<int> work{r};
    std::size_t head = 0;
    while (depth_first ? !work.empty() : head < work.size()) {
      int v;
      if (depth_first) {
        v = work.back();
        work.pop_back();
      } else {
        v = work[head++];
      }
      for (auto [e, w] : inc[v])
        if (parent_edge[w] == -2) {
          parent_edge[w] = e;
          depth[w] = depth[v] + 1;
          tree[e] = 1;
          work.push_back(w);
        }
    }
  }
  auto step_up = [&](int v) {  // step from v to its parent
    const int e = parent_edge[v];
    return PathStep{e, g.ends[e].second == v ? -1 : 1};
  };
  auto other = [&](int e, int v) { return g.ends[e].first == v ? g.ends[e].second : g.ends[e].first; };
  std::vector<std::vector<PathStep>> out;
  for (int e = 0; e < ne; ++e) {
    if (tree[e]) continue;
    int u = g.ends[e].second, w = g.ends[e].first;  // e goes w -> u; close from u back to w
    std::vector<PathStep> cyc{{e, 1}}, back;
    while (u != w) {
      if (depth[u] >= depth[w]) {
        cyc.push_back(step_up(u));
        u = other(parent_edge[u], u);
      } else {
        PathStep s = step_up(w);
        s.dir = -s.dir;
        back.push_back(s);
        w = other(parent_edge[w], w);
      }
    }
    cyc.insert(cyc.end(), back.rbegin(), back.rend());
    out.push_back(std::move(cyc));
  }
  return out;
}

struct MappabilityReport {
  bool partition_valid = false;
  std::string partition_error;
  bool mappable = false;        // D_F vanishes on the BFS cycle basis
  bool mappable_dfs = false;    // same check on the DFS cycle basis
  std::vector<DevelopmentValue> coordinates;  // per vertex, when mappable
  bool embeddable = false;
  bool standard = false;
  bool simple = false;
  bool injective = false;
};

inline MappabilityReport check_embeddable(const Cubulation& c, const FamilyPartition& F, const ClassOrientation& o) {
  const CellTable cells(c);
  const EdgeGraph g = edge_graph(cells);
  const EdgeClasses k = edge_classes(c, cells);
  MappabilityReport r;
  if (auto err = partition_error(c, cells, k, F)) {
    r.partition_error = *err;
    return r;
  }
  r.partition_valid = true;
  auto vanishes = [&](bool dfs) {
    for (const auto& cyc : cycle_basis(g, dfs))
      for (auto x : development(k, F, o, cyc))
        if (x) return false;
    return true;
  };
  r.mappable = vanishes(false);
  r.mappable_dfs = vanishes(true);
  r.simple = is_simple_general(c);
  r.standard = is_standard(c);
  if (r.mappable) {
    const std::size_t N = static_cast<std::size_t>(F.families());
    r.coordinates.assign(g.vertices, DevelopmentValue(N, 0));
    std::vector<char> seen(g.vertices, 0);
    std::vector<std::vector<std::pair<int, int>>> inc(g.vertices);
    for (int e = 0; e < static_cast<int>(g.ends.size()); ++e) {
      inc[g.ends[e].first].push_back({e, 1});
      inc[g.ends[e].second].push_back({e, -1});
    }
    for (int s = 0; s < g.vertices; ++s) {
      if (seen[s]) continue;
      seen[s] = 1;
      std::vector<int> queue{s};
      for (std::size_t h = 0; h < queue.size(); ++h) {
        const int v = queue[h];
        for (auto [e, dir] : inc[v]) {
          const int w = dir > 0 ? g.ends[e].second : g.ends[e].first;
          if (seen[w]) continue;
          seen[w] = 1;
          r.coordinates[w] = r.coordinates[v];
          r.coordinates[w][F.family[k.class_of[e]]] += dir * o.sign[e];
          queue.push_back(w);
        }
      }
    }
    auto sorted = r.coordinates;
    std::sort(sorted.begin(), sorted.end());
    r.injective = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  }
  r.embeddable = r.mappable && r.injective && r.standard && r.simple;
  return r;
}

inline bool check_mappable(const Cubulation& c, const FamilyPartition& F, const ClassOrientation& o) {
  return check_embeddable(c, F, o).mappable;
}

struct PartitionCertificate {
  FamilyPartition partition;
  ClassOrientation orientation;
  MappabilityReport report;
};

struct PartitionSearch {
  std::optional<PartitionCertificate> found;
  long tried = 0;
  bool exhausted = true;  // false if the attempt budget ran out
  std::vector<int> orientation_witness;  // when classes cannot be oriented
};

/// Search family partitions (finest first, at most `max_families` families)
/// and relative orientations of merged classes for a mappable certificate.
/// Finding none is not a proof of non-mappability.
inline PartitionSearch search_partition(const Cubulation& c, int max_families, long budget = 200000) {
  PartitionSearch out;
  const CellTable cells(c);
  const EdgeGraph g = edge_graph(cells);
  const EdgeClasses k = edge_classes(c, cells);
  const auto base = orient_classes(c, cells);
  if (!base.orientation) {
    out.orientation_witness = base.witness;
    return out;
  }
  const int K = static_cast<int>(k.members.size());
  // Perpendicular class pairs.
  std::vector<std::vector<char>> perp(K, std::vector<char>(K, 0));
  {
    std::vector<std::map<int, int>> axis_of(c.size());
    std::vector<std::vector<std::pair<int, int>>> per_cube(c.size());
    detail::for_each_cube_axis_class(c, cells, g, k, [&](int q, int a, int cls) { per_cube[q].push_back({cls, a}); });
    for (const auto& v : per_cube)
      for (auto [x, ax] : v)
        for (auto [y, ay] : v)
          if (ax != ay) perp[x][y] = 1;
  }
  const auto cycles_bfs = cycle_basis(g, false);
  // Per cycle and class: signed traversal count with the base orientation.
  std::vector<std::vector<std::int64_t>> load(cycles_bfs.size(), std::vector<std::int64_t>(K, 0));
  for (std::size_t i = 0; i < cycles_bfs.size(); ++i)
    for (const auto& s : cycles_bfs[i]) load[i][k.class_of[s.edge]] += s.dir * base.orientation->sign[s.edge];

  std::vector<int> fam(K, 0), flip(K, 1);
  auto test = [&](int N) {
    for (const auto& row : load) {
      std::vector<std::int64_t> d(N, 0);
      for (int x = 0; x < K; ++x) d[fam[x]] += flip[x] * row[x];
      for (auto v : d)
        if (v) return false;
    }
    return true;
  };
  for (int N = std::min(K, max_families); N >= 1 && !out.found; --N) {
    // Restricted growth strings with exactly N blocks, perpendicular classes apart.
    auto assign = [&](auto&& self, int x, int used) -> bool {
      if (K - x < N - used) return false;
      if (x == K) {
        if (used != N) return false;
        // Orientation flips: the first class of each family is fixed.
        std::vector<int> free_classes;
        std::vector<char> leader(N, 0);
        for (int y = 0; y < K; ++y) {
          if (!leader[fam[y]]) leader[fam[y]] = 1;
          else free_classes.push_back(y);
        }
        const long combos = 1L << std::min<std::size_t>(free_classes.size(), 40);
        for (long mask = 0; mask < combos; ++mask) {
          if (++out.tried > budget) {
            out.exhausted = false;
            return true;
          }
          for (int y = 0; y < K; ++y) flip[y] = 1;
          for (std::size_t b = 0; b < free_classes.size(); ++b)
            if ((mask >> b) & 1L) flip[free_classes[b]] = -1;
          if (test(N)) return true;
        }
        return false;
      }
      for (int f = 0; f <= used && f < N; ++f) {
        bool clash = false;
        for (int y = 0; y < x && !clash; ++y) clash = fam[y] == f && perp[x][y];
        if (clash) continue;
        fam[x] = f;
        if (self(self, x + 1, std::max(used, f + 1))) return true;
      }
      return false;
    };
    if (assign(assign, 0, 0) && out.exhausted) {
      PartitionCertificate cert;
      cert.partition.family = fam;
      cert.orientation = *base.orientation;
      for (int e = 0; e < static_cast<int>(g.ends.size()); ++e) cert.orientation.sign[e] *= flip[k.class_of[e]];
      cert.report = check_embeddable(c, cert.partition, cert.orientation);
      out.found = cert;
    }
    if (!out.exhausted) break;
  }
  return out;
}

}  // namespace cubu
