// Canonical labeling and isomorphism certificates.
//
// A start (cube, frame) determines a complete relabeling: cubes are numbered
// in breadth-first order, and every newly reached cube gets the frame in
// which it sits across the shared facet with an identity gluing, the way
// neighbouring cubes sit in the standard lattice. The certificate is the
// lexicographically least such encoding over all admissible starts; starts
// are restricted to the smallest color class of an iterated neighbourhood
// refinement, which is itself isomorphism invariant.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cubulation.hpp"

namespace cubu {

using Certificate = std::string;

struct CanonicalForm {
  Certificate certificate;
  Cubulation complex;              // relabeled complex, cube i = i-th in canonical order
  std::vector<int> new_index;      // old cube -> canonical cube
  std::vector<CubeSymmetry> frame; // old cube coordinates -> canonical cube coordinates
};

namespace detail {

inline std::vector<int> refine_colors(const Cubulation& c) {
  const int m = c.size(), F = c.facets_per_cube();
  std::vector<int> color(m);
  for (int q = 0; q < m; ++q) {
    int free = 0;
    for (int f = 0; f < F; ++f) free += !c.gluing(q, f).paired();
    color[q] = free;
  }
  int classes = -1;
  for (int round = 0; round < m; ++round) {
    std::vector<std::vector<int>> sig(m);
    for (int q = 0; q < m; ++q) {
      std::vector<int> nb;
      for (int f = 0; f < F; ++f) {
        const Gluing& g = c.gluing(q, f);
        nb.push_back(g.paired() ? color[g.cube] : -1);
      }
      std::sort(nb.begin(), nb.end());
      sig[q].push_back(color[q]);
      sig[q].insert(sig[q].end(), nb.begin(), nb.end());
    }
    std::vector<std::vector<int>> uniq = sig;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    for (int q = 0; q < m; ++q)
      color[q] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), sig[q]) - uniq.begin());
    const int now = static_cast<int>(uniq.size());
    if (now == classes) break;
    classes = now;
  }
  return color;
}

inline std::vector<std::vector<int>> cube_components(const Cubulation& c) {
  const int m = c.size();
  std::vector<int> comp(m, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < m; ++s) {
    if (comp[s] >= 0) continue;
    out.emplace_back();
    std::vector<int> stack{s};
    comp[s] = static_cast<int>(out.size()) - 1;
    while (!stack.empty()) {
      const int q = stack.back();
      stack.pop_back();
      out.back().push_back(q);
      for (int f = 0; f < c.facets_per_cube(); ++f) {
        const Gluing& g = c.gluing(q, f);
        if (g.paired() && comp[g.cube] < 0) {
          comp[g.cube] = comp[s];
          stack.push_back(g.cube);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

/// Breadth-first encoding from one start. Tokens per canonical slot:
/// 0 for a free facet, otherwise (label + 1, canonical facet, map code).
/// Stops early once the output is known to exceed `best`.
struct Encoder {
  const Cubulation& c;
  std::vector<int> label;
  std::vector<CubeSymmetry> frame;
  std::vector<int> order;
  std::vector<std::uint32_t> out;

  explicit Encoder(const Cubulation& cx) : c(cx), label(cx.size(), -1), frame(cx.size()) {}

  // Returns false if aborted because the encoding exceeds best.
  bool run(int start, const CubeSymmetry& g0, const std::vector<std::uint32_t>* best) {
    for (int q : order) label[q] = -1;
    order.clear();
    out.clear();
    const int n = c.dim();
    label[start] = 0;
    frame[start] = g0;
    order.push_back(start);
    int cmp = 0;  // 0: equal prefix, -1: already smaller
    auto emit = [&](std::uint32_t v) {
      if (best && cmp == 0) {
        const std::size_t pos = out.size();
        if (pos < best->size()) {
          if (v < (*best)[pos]) cmp = -1;
          else if (v > (*best)[pos]) return false;
        }
      }
      out.push_back(v);
      return true;
    };
    for (std::size_t head = 0; head < order.size(); ++head) {
      const int q = order[head];
      const CubeSymmetry& s = frame[q];
      const CubeSymmetry inv = s.inverse();
      for (int cf = 0; cf < 2 * n; ++cf) {
        const Facet canon = Facet::from_index(cf);
        const Facet f = inv.map_facet(canon);
        const Gluing& g = c.gluing(q, f.index());
        if (!g.paired()) {
          if (!emit(0)) return false;
          continue;
        }
        const Facet fd = Facet::from_index(g.facet);
        const AttachingMap here = restrict_to_facet(s, f.axis);
        if (label[g.cube] < 0) {
          label[g.cube] = static_cast<int>(order.size());
          order.push_back(g.cube);
          frame[g.cube] = extend_from_facet(n, fd, canon.opposite(), here.after(g.map.inverse()));
        }
        const CubeSymmetry& sd = frame[g.cube];
        const AttachingMap canon_map = restrict_to_facet(sd, fd.axis).after(g.map).after(here.inverse());
        if (!emit(static_cast<std::uint32_t>(label[g.cube]) + 1)) return false;
        if (!emit(static_cast<std::uint32_t>(sd.map_facet(fd).index()))) return false;
        if (!emit(canon_map.code())) return false;
      }
    }
    return true;
  }
};

inline void put_varint(std::string& s, std::uint32_t v) {
  while (v >= 0x80) {
    s.push_back(static_cast<char>((v & 0x7f) | 0x80));
    v >>= 7;
  }
  s.push_back(static_cast<char>(v));
}

}  // namespace detail

inline CanonicalForm canonical_form(const Cubulation& c) {
  const int n = c.dim();
  const auto colors = detail::refine_colors(c);
  const auto comps = detail::cube_components(c);
  const auto& syms = symmetries(n);

  struct Best {
    std::vector<std::uint32_t> code;
    std::vector<int> order;
    std::vector<CubeSymmetry> frames;
  };
  std::vector<Best> per_comp;
  detail::Encoder enc(c);
  for (const auto& comp : comps) {
    std::map<int, int> class_size;
    for (int q : comp) ++class_size[colors[q]];
    int pick = -1, pick_size = 0;
    for (auto [col, sz] : class_size)
      if (pick < 0 || sz < pick_size) {
        pick = col;
        pick_size = sz;
      }
    Best best;
    bool have = false;
    for (int q : comp) {
      if (colors[q] != pick) continue;
      for (const auto& g : syms) {
        if (!enc.run(q, g, have ? &best.code : nullptr)) continue;
        if (!have || enc.out < best.code) {
          have = true;
          best.code = enc.out;
          best.order = enc.order;
          best.frames.clear();
          for (int x : enc.order) best.frames.push_back(enc.frame[x]);
        }
      }
    }
    per_comp.push_back(std::move(best));
  }
  std::vector<int> idx(per_comp.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    const auto& x = per_comp[a].code;
    const auto& y = per_comp[b].code;
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });

  CanonicalForm out;
  out.new_index.assign(c.size(), -1);
  out.frame.assign(c.size(), CubeSymmetry{});
  out.complex = Cubulation(n, c.size());
  std::string& cert = out.certificate;
  detail::put_varint(cert, static_cast<std::uint32_t>(n));
  detail::put_varint(cert, static_cast<std::uint32_t>(c.size()));
  detail::put_varint(cert, static_cast<std::uint32_t>(comps.size()));
  int offset = 0;
  for (int ci : idx) {
    const Best& b = per_comp[ci];
    detail::put_varint(cert, static_cast<std::uint32_t>(b.order.size()));
    for (std::size_t k = 0; k < b.order.size(); ++k) {
      out.new_index[b.order[k]] = offset + static_cast<int>(k);
      out.frame[b.order[k]] = b.frames[k];
    }
    std::size_t pos = 0;
    for (std::size_t k = 0; k < b.order.size(); ++k) {
      for (int cf = 0; cf < 2 * n; ++cf) {
        const std::uint32_t tag = b.code[pos++];
        detail::put_varint(cert, tag);
        if (tag == 0) continue;
        const std::uint32_t facet = b.code[pos++];
        const std::uint32_t map = b.code[pos++];
        detail::put_varint(cert, facet);
        detail::put_varint(cert, map);
      }
    }
    offset += static_cast<int>(b.order.size());
  }
  // Canonical gluings, transported through the frames.
  for (int q = 0; q < c.size(); ++q) {
    const CubeSymmetry& s = out.frame[q];
    for (int f = 0; f < 2 * n; ++f) {
      const Gluing& g = c.gluing(q, f);
      if (!g.paired()) continue;
      const Facet F = Facet::from_index(f), D = Facet::from_index(g.facet);
      const CubeSymmetry& sd = out.frame[g.cube];
      const AttachingMap m =
          restrict_to_facet(sd, D.axis).after(g.map).after(restrict_to_facet(s, F.axis).inverse());
      out.complex.set_slot(out.new_index[q], s.map_facet(F).index(),
                           Gluing{out.new_index[g.cube], static_cast<std::int8_t>(sd.map_facet(D).index()), m});
    }
  }
  return out;
}

namespace detail {

inline std::uint32_t get_varint(const std::string& s, std::size_t& pos) {
  std::uint32_t v = 0;
  for (int shift = 0;; shift += 7) {
    if (pos >= s.size() || shift > 28) throw Error("certificate: truncated or malformed");
    const auto byte = static_cast<unsigned char>(s[pos++]);
    v |= static_cast<std::uint32_t>(byte & 0x7f) << shift;
    if (!(byte & 0x80)) return v;
  }
}

}  // namespace detail

/// The canonical complex encoded by a certificate.
inline Cubulation decode_certificate(const Certificate& cert) {
  std::size_t pos = 0;
  const int n = static_cast<int>(detail::get_varint(cert, pos));
  const int m = static_cast<int>(detail::get_varint(cert, pos));
  const int comps = static_cast<int>(detail::get_varint(cert, pos));
  Cubulation c(n, m);
  int offset = 0;
  for (int k = 0; k < comps; ++k) {
    const int size = static_cast<int>(detail::get_varint(cert, pos));
    for (int q = 0; q < size; ++q)
      for (int f = 0; f < 2 * n; ++f) {
        const std::uint32_t tag = detail::get_varint(cert, pos);
        if (tag == 0) continue;
        const int facet = static_cast<int>(detail::get_varint(cert, pos));
        const auto map = SignedPerm::from_code(detail::get_varint(cert, pos), n - 1);
        c.set_slot(offset + q, f, Gluing{offset + static_cast<int>(tag) - 1, static_cast<std::int8_t>(facet), map});
      }
    offset += size;
  }
  if (offset != m || pos != cert.size()) throw Error("certificate: inconsistent sizes");
  return c;
}

inline Certificate canonical_certificate(const Cubulation& c) { return canonical_form(c).certificate; }

inline bool is_isomorphic(const Cubulation& a, const Cubulation& b) {
  return a.dim() == b.dim() && a.size() == b.size() && canonical_certificate(a) == canonical_certificate(b);
}

/// 64-bit FNV-1a digest, rendered as 16 hex digits.
inline std::string digest(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) s[i] = hex[h & 15];
  return s;
}

}  // namespace cubu
