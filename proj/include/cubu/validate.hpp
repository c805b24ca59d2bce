// Structural and manifold validation.
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cells.hpp"

namespace cubu {

enum class ValidationMode { complex, closed_manifold, manifold_with_boundary };

struct ValidationIssue {
  std::string code;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  /// "checked", "unchecked" (n >= 4) or "skipped" (structural errors first).
  std::string links = "skipped";

  bool ok() const { return issues.empty(); }
  bool has(const std::string& code) const {
    for (const auto& i : issues)
      if (i.code == code) return true;
    return false;
  }
};

namespace detail {

inline std::string slot_name(int cube, int facet) { return std::to_string(cube) + "." + std::to_string(facet); }

/// Cell complex of the link of one derived vertex: the faces containing the
/// vertex, shifted down one dimension. `faces[k]` lists link cells of
/// dimension k (faces of dimension k+1), each with its boundary link cells.
struct Link {
  std::vector<std::vector<std::vector<int>>> faces;
};

/// Links of all derived vertices at once.
inline std::vector<Link> vertex_links(const Cubulation& c, const CellTable& cells) {
  const int n = c.dim();
  std::vector<Link> links(cells.count(0));
  // (vertex, dim, cell index) -> link cell index
  std::vector<std::vector<std::map<int, int>>> ids(cells.count(0), std::vector<std::map<int, int>>(n + 1));
  for (auto& l : links) l.faces.assign(n, {});
  for (int k = 1; k <= n; ++k) {
    for (int idx = 0; idx < cells.count(k); ++idx) {
      const FaceDescriptor& d = cells.members(k, idx).front();
      std::vector<int> free;
      for (int i = 0; i < n; ++i)
        if (pattern::digit(d.pattern, i) == pattern::kFree) free.push_back(i);
      for (unsigned b = 0; b < (1u << k); ++b) {
        std::uint32_t corner = d.pattern;
        for (int j = 0; j < k; ++j) corner = pattern::set_digit(corner, free[j], (b >> j) & 1u);
        const int v = cells.cell_of(d.cube, corner).index;
        auto& my = ids[v][k];
        if (my.count(idx)) continue;  // face meets v twice: reported elsewhere
        const int lid = static_cast<int>(links[v].faces[k - 1].size());
        my[idx] = lid;
        std::vector<int> bnd;
        if (k >= 2) {
          for (int j = 0; j < k; ++j) {
            const std::uint32_t sub = pattern::set_digit(d.pattern, free[j], (b >> j) & 1u);
            const int sidx = cells.cell_of(d.cube, sub).index;
            bnd.push_back(ids[v][k - 1].at(sidx));
          }
        }
        links[v].faces[k - 1].push_back(std::move(bnd));
      }
    }
  }
  return links;
}

inline int components(int nodes, const std::vector<std::pair<int, int>>& edges) {
  UnionFind uf(static_cast<std::size_t>(nodes));
  int comps = nodes;
  for (auto [a, b] : edges) comps -= uf.unite(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
  return comps;
}

/// 1-dimensional link: sphere = cycle, ball = path.
inline bool graph_is(const std::vector<std::pair<int, int>>& edges, int nodes, bool sphere) {
  std::vector<int> deg(nodes);
  for (auto [a, b] : edges) {
    if (a == b) return false;
    ++deg[a];
    ++deg[b];
  }
  if (components(nodes, edges) != 1) return false;
  int ends = 0;
  for (int d : deg) {
    if (d == 1) ++ends;
    else if (d != 2) return false;
  }
  return sphere ? ends == 0 : ends == 2;
}

/// 0-dimensional link: sphere = two points, ball = one point.
inline bool points_are(int nodes, bool sphere) { return nodes == (sphere ? 2 : 1); }

/// 2-dimensional link built from triangles (cube corners) whose sides are
/// link edges (square corners) between link nodes (edges at the vertex).
inline bool surface_is(const Link& l, bool sphere) {
  const int nodes = static_cast<int>(l.faces[0].size());
  const auto& ledges = l.faces[1];
  const auto& tris = l.faces[2];
  std::vector<std::vector<int>> edge_tris(ledges.size());
  for (std::size_t t = 0; t < tris.size(); ++t)
    for (int e : tris[t]) edge_tris[e].push_back(static_cast<int>(t));
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : ledges) edges.push_back({e[0], e[1]});
  if (components(nodes, edges) != 1) return false;
  int boundary_edges = 0;
  for (const auto& et : edge_tris) {
    if (et.empty() || et.size() > 2) return false;
    if (et.size() == 1) ++boundary_edges;
  }
  if (sphere && boundary_edges) return false;
  if (!sphere && !boundary_edges) return false;
  const long chi = static_cast<long>(nodes) - static_cast<long>(ledges.size()) + static_cast<long>(tris.size());
  if (chi != (sphere ? 2 : 1)) return false;
  // Each node's star must be a disk: its link (triangles around it) is a
  // cycle, or a path when the node is on the boundary.
  for (int v = 0; v < nodes; ++v) {
    std::vector<int> incident;
    for (std::size_t e = 0; e < ledges.size(); ++e)
      if (ledges[e][0] == v || ledges[e][1] == v) incident.push_back(static_cast<int>(e));
    std::map<int, int> local;
    for (int e : incident) local.emplace(e, static_cast<int>(local.size()));
    std::vector<std::pair<int, int>> around;
    for (std::size_t t = 0; t < tris.size(); ++t) {
      std::vector<int> at;
      for (int e : tris[t])
        if (local.count(e)) at.push_back(local[e]);
      if (at.empty()) continue;
      if (at.size() != 2) return false;
      around.push_back({at[0], at[1]});
    }
    bool on_boundary = false;
    for (int e : incident) on_boundary |= edge_tris[e].size() == 1;
    if (!graph_is(around, static_cast<int>(local.size()), !on_boundary)) return false;
  }
  // A closed surface with chi 2 is a sphere; with boundary, connected and
  // chi 1 it is a disk once the boundary is a single circle.
  if (!sphere) {
    std::vector<std::pair<int, int>> rim;
    std::set<int> rim_nodes;
    for (std::size_t e = 0; e < ledges.size(); ++e)
      if (edge_tris[e].size() == 1) {
        rim.push_back({ledges[e][0], ledges[e][1]});
        rim_nodes.insert(ledges[e][0]);
        rim_nodes.insert(ledges[e][1]);
      }
    std::map<int, int> rn;
    for (int v : rim_nodes) rn.emplace(v, static_cast<int>(rn.size()));
    for (auto& [a, b] : rim) {
      a = rn[a];
      b = rn[b];
    }
    if (!graph_is(rim, static_cast<int>(rn.size()), true)) return false;
  }
  return true;
}

}  // namespace detail

/// Derived vertices lying on an unpaired facet.
inline std::vector<bool> boundary_vertices(const Cubulation& c, const CellTable& cells) {
  std::vector<bool> out(cells.count(0));
  const int n = c.dim();
  for (int q = 0; q < c.size(); ++q)
    for (int f = 0; f < 2 * n; ++f) {
      if (c.gluing(q, f).paired()) continue;
      const Facet fc = Facet::from_index(f);
      for (unsigned b = 0; b < (1u << n); ++b)
        if (static_cast<int>((b >> fc.axis) & 1u) == fc.side) out[cells.vertex(q, b)] = true;
    }
  return out;
}

inline ValidationReport validate(const Cubulation& c, ValidationMode mode) {
  ValidationReport r;
  const int n = c.dim();
  auto add = [&](std::string code, std::string msg) { r.issues.push_back({std::move(code), std::move(msg)}); };
  if (n < 1) {
    add("empty", "complex has no dimension");
    return r;
  }
  bool structural = true;
  for (int q = 0; q < c.size(); ++q) {
    for (int f = 0; f < 2 * n; ++f) {
      const Gluing& g = c.gluing(q, f);
      if (!g.paired()) {
        if (mode == ValidationMode::closed_manifold)
          add("unpaired-facet", "facet " + detail::slot_name(q, f) + " is not paired in a closed complex");
        continue;
      }
      if (g.cube >= c.size() || g.facet < 0 || g.facet >= 2 * n || g.map.size() != n - 1 || !g.map.is_bijection()) {
        add("malformed-pairing", "facet " + detail::slot_name(q, f) + " has an out-of-range pairing");
        structural = false;
        continue;
      }
      const Gluing& back = c.gluing(g.cube, g.facet);
      if (back.cube != q || back.facet != f || !(back.map == g.map.inverse())) {
        add("non-involutive", "pairing of facet " + detail::slot_name(q, f) + " is not an involution");
        structural = false;
      }
      if (g.cube == q && f <= g.facet) {
        add("self-identification", "facet " + detail::slot_name(q, f) + " is paired with a facet of its own cube");
        structural = false;
      }
    }
  }
  if (!structural) return r;

  const CellTable cells(c);
  const std::uint32_t per = pattern::pow3(n);
  for (int q = 0; q < c.size(); ++q) {
    std::set<std::pair<int, int>> seen;
    for (std::uint32_t p = 0; p < per; ++p) {
      const auto cell = cells.cell_of(q, p);
      if (!seen.insert({cell.dim, cell.index}).second) {
        add("self-identification", "cube " + std::to_string(q) + " has two faces identified (face " +
                                       pattern::to_string(p, n) + ")");
        break;
      }
    }
  }
  if (!r.ok() || mode == ValidationMode::complex) {
    if (mode != ValidationMode::complex) r.links = "skipped";
    else r.links = "not-requested";
    return r;
  }
  if (n >= 4) {
    r.links = "unchecked";
    return r;
  }
  r.links = "checked";
  const auto links = detail::vertex_links(c, cells);
  const auto on_boundary = boundary_vertices(c, cells);
  for (int v = 0; v < cells.count(0); ++v) {
    const bool sphere = !on_boundary[v];
    const auto& l = links[v];
    bool good = false;
    if (n == 1) {
      good = detail::points_are(static_cast<int>(l.faces[0].size()), sphere);
    } else if (n == 2) {
      std::vector<std::pair<int, int>> edges;
      for (const auto& e : l.faces[1]) edges.push_back({e[0], e[1]});
      good = detail::graph_is(edges, static_cast<int>(l.faces[0].size()), sphere);
    } else {
      good = detail::surface_is(l, sphere);
    }
    if (!good)
      add("link", "link of vertex " + std::to_string(v) + " is not a " +
                      (sphere ? "sphere" : "ball") + " of dimension " + std::to_string(n - 1));
  }
  return r;
}

}  // namespace cubu
