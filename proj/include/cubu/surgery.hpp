// Connected sums through a cubical tube.
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "certificate.hpp"
#include "constructors.hpp"
#include "derivative.hpp"

namespace cubu {

/// The tube (boundary of an n-cube) x [0, l]. Cube G*l + t sits over facet G
/// of the n-cube between levels t and t+1; its axes are those of the n-cube
/// except G's normal, ascending, then the length axis. Facet 2(n-1) is the
/// lower end, facet 2(n-1)+1 the upper end.
inline Cubulation make_tube(int n, int l) {
  if (l < 3) throw Error("make_tube: length must be at least 3");
  if (n < 1 || n > 3) throw Error("make_tube: n must be in 1..3");
  std::vector<std::vector<int>> cubes;
  for (int G = 0; G < 2 * n; ++G) {
    const Facet F = Facet::from_index(G);
    for (int t = 0; t < l; ++t) {
      std::vector<int> corners(1u << n);
      for (unsigned b = 0; b < (1u << n); ++b) {
        unsigned e = static_cast<unsigned>(F.side) << F.axis;
        for (int k = 0; k < n - 1; ++k) e |= ((b >> k) & 1u) << ambient_axis(k, F.axis);
        const int level = t + static_cast<int>((b >> (n - 1)) & 1u);
        corners[b] = static_cast<int>(e) + (1 << n) * level;
      }
      cubes.push_back(corners);
    }
  }
  return from_vertex_cubes(n, cubes);
}

struct SumSpec {
  int cell_c = 0;  // removed cube of C
  int cell_d = 0;  // removed cube of D
  int length = 3;
  CubeSymmetry twist;  // identification of the upper tube end with the boundary of the D cell; identity if empty
};

struct SumResult {
  bool ok = false;
  std::string diagnostic;
  Cubulation complex;
  int offset_d = 0;     // first cube of D in the result
  int offset_tube = 0;  // first tube cube
};

/// C minus the open cell e, the tube, and D minus the open cell e'. The lower
/// end of the tube replaces e identically; facet G of the upper end is glued
/// where facet twist(G) of e' was, through the twist.
inline SumResult connected_sum(const Cubulation& C, const Cubulation& D, const SumSpec& spec) {
  const int n = C.dim();
  if (D.dim() != n) throw Error("connected_sum: dimensions differ");
  if (spec.cell_c < 0 || spec.cell_c >= C.size() || spec.cell_d < 0 || spec.cell_d >= D.size())
    throw Error("connected_sum: cell index out of range");
  const CubeSymmetry twist = spec.twist.size() == 0 ? CubeSymmetry::identity(n) : spec.twist;
  if (twist.size() != n) throw Error("connected_sum: twist has wrong size");
  const Cubulation tube = make_tube(n, spec.length);
  const int l = spec.length;
  SumResult r;
  r.offset_d = C.size() - 1;
  r.offset_tube = r.offset_d + D.size() - 1;
  Cubulation out(n, r.offset_tube + tube.size());
  auto ci = [&](int q) { return q < spec.cell_c ? q : q - 1; };
  auto di = [&](int q) { return r.offset_d + (q < spec.cell_d ? q : q - 1); };
  auto copy = [&](const Cubulation& X, int skip, auto index) {
    for (int q = 0; q < X.size(); ++q) {
      if (q == skip) continue;
      for (int f = 0; f < 2 * n; ++f) {
        const Gluing& g = X.gluing(q, f);
        if (!g.paired() || g.cube == skip) continue;
        out.set_slot(index(q), f, Gluing{index(g.cube), g.facet, g.map});
      }
    }
  };
  copy(C, spec.cell_c, ci);
  copy(D, spec.cell_d, di);
  for (int q = 0; q < tube.size(); ++q)
    for (int f = 0; f < 2 * n; ++f) {
      const Gluing& g = tube.gluing(q, f);
      if (g.paired()) out.set_slot(r.offset_tube + q, f, Gluing{r.offset_tube + g.cube, g.facet, g.map});
    }
  const int lower = 2 * (n - 1), upper = lower + 1;
  for (int G = 0; G < 2 * n; ++G) {
    const Facet F = Facet::from_index(G);
    const Gluing& gc = C.gluing(spec.cell_c, G);
    const int low = r.offset_tube + G * l, high = r.offset_tube + G * l + l - 1;
    if (gc.paired()) {
      out.set_slot(low, lower, Gluing{ci(gc.cube), gc.facet, gc.map});
      out.set_slot(ci(gc.cube), gc.facet, Gluing{low, static_cast<std::int8_t>(lower), gc.map.inverse()});
    }
    const Facet T = twist.map_facet(F);
    const Gluing& gd = D.gluing(spec.cell_d, T.index());
    if (gd.paired()) {
      const AttachingMap m = gd.map.after(restrict_to_facet(twist, F.axis));
      out.set_slot(high, upper, Gluing{di(gd.cube), gd.facet, m});
      out.set_slot(di(gd.cube), gd.facet, Gluing{high, static_cast<std::int8_t>(upper), m.inverse()});
    }
  }
  const auto report = validate(out, ValidationMode::closed_manifold);
  if (!report.ok()) {
    r.diagnostic = "connected sum rejected: " + report.issues.front().message;
    return r;
  }
  r.ok = true;
  r.complex = std::move(out);
  return r;
}

/// Compatibility of the surface invariants with the connected sum.
struct AdditivityReport {
  bool ok = false;
  bool f0_parity = false;
  int predicted_components = 0, actual_components = 0;
  int predicted_ns = 0, actual_ns = 0;
  bool ns_matches_f0 = false;                   // on the result, when it is a sphere
  std::vector<std::pair<int, int>> merged;      // (component of C, component of D) joined by a tube arc
  std::string diagnostic;
};

inline AdditivityReport invariant_additivity_check(const Cubulation& C, const Cubulation& D, const SumSpec& spec) {
  if (C.dim() != 2) throw Error("invariant_additivity_check: surfaces only");
  AdditivityReport a;
  const SumResult s = connected_sum(C, D, spec);
  if (!s.ok) {
    a.diagnostic = s.diagnostic;
    return a;
  }
  const CubeSymmetry twist = spec.twist.size() == 0 ? CubeSymmetry::identity(2) : spec.twist;
  const auto fc = f_vector(C), fd = f_vector(D), fr = f_vector(s.complex);
  a.f0_parity = (fr[0] - fc[0] - fd[0]) % 2 == 0;
  const auto dc = derivative_complex(C), dd = derivative_complex(D);
  const int kc = static_cast<int>(dc.components.size()), kd = static_cast<int>(dd.components.size());
  detail::UnionFind uf(static_cast<std::size_t>(kc + kd));
  for (int G = 0; G < 4; ++G) {
    const Facet F = Facet::from_index(G);
    const int a_c = dc.component[spec.cell_c * 2 + (1 - F.axis)];
    const int a_d = dd.component[spec.cell_d * 2 + (1 - twist.map_facet(F).axis)];
    a.merged.push_back({a_c, a_d});
    uf.unite(static_cast<std::size_t>(a_c), static_cast<std::size_t>(kc + a_d));
  }
  std::set<std::size_t> roots;
  for (int i = 0; i < kc + kd; ++i) roots.insert(uf.find(static_cast<std::size_t>(i)));
  a.predicted_components = static_cast<int>(roots.size()) + spec.length;
  for (int q = 0; q < C.size(); ++q)
    if (q != spec.cell_c)
      a.predicted_ns += uf.find(static_cast<std::size_t>(dc.component[2 * q])) ==
                        uf.find(static_cast<std::size_t>(dc.component[2 * q + 1]));
  for (int q = 0; q < D.size(); ++q)
    if (q != spec.cell_d)
      a.predicted_ns += uf.find(static_cast<std::size_t>(kc + dd.component[2 * q])) ==
                        uf.find(static_cast<std::size_t>(kc + dd.component[2 * q + 1]));
  const auto t = trace_circles(s.complex);
  a.actual_components = static_cast<int>(t.components.size());
  a.actual_ns = t.ns_total;
  a.ns_matches_f0 = euler_characteristic(fr) != 2 || (t.ns_total - fr[0]) % 2 == 0;
  a.ok = a.f0_parity && a.predicted_components == a.actual_components && a.predicted_ns == a.actual_ns &&
         a.ns_matches_f0;
  return a;
}

struct TwistSurvey {
  std::vector<FVector> f_vectors;        // per twist, in symmetry order
  std::vector<int> isomorphism_class;    // per twist, classes numbered by first appearance
};

/// Sums for every twist at fixed cells; f-vectors and isomorphism classes.
inline TwistSurvey twist_survey(const Cubulation& C, const Cubulation& D, SumSpec spec) {
  TwistSurvey s;
  std::map<Certificate, int> seen;
  for (const auto& g : symmetries(C.dim())) {
    spec.twist = g;
    const auto r = connected_sum(C, D, spec);
    if (!r.ok) throw Error(r.diagnostic);
    s.f_vectors.push_back(f_vector(r.complex));
    auto [it, fresh] = seen.emplace(canonical_certificate(r.complex), static_cast<int>(seen.size()));
    s.isomorphism_class.push_back(it->second);
  }
  return s;
}

}  // namespace cubu
