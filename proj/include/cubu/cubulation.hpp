// Abstract cubical complexes given by facet pairings.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "signed_perm.hpp"

namespace cubu {

/// Faces of an n-cube as words over {0, 1, *}, packed base 3 (digit i is
/// coordinate i; 2 means free).
namespace pattern {

inline constexpr int kFree = 2;

inline constexpr std::uint32_t pow3(int k) {
  std::uint32_t r = 1;
  for (int i = 0; i < k; ++i) r *= 3;
  return r;
}

inline int digit(std::uint32_t p, int i) { return static_cast<int>((p / pow3(i)) % 3); }

inline std::uint32_t set_digit(std::uint32_t p, int i, int d) {
  return p + (static_cast<std::uint32_t>(d) - static_cast<std::uint32_t>(digit(p, i))) * pow3(i);
}

inline int dimension(std::uint32_t p, int n) {
  int k = 0;
  for (int i = 0; i < n; ++i) k += digit(p, i) == kFree;
  return k;
}

inline std::uint32_t whole(int n) { return pow3(n) - 1; }

/// Pattern of the corner with bit i of `bits` as coordinate i.
inline std::uint32_t corner(unsigned bits, int n) {
  std::uint32_t p = 0;
  for (int i = n - 1; i >= 0; --i) p = p * 3 + ((bits >> i) & 1u);
  return p;
}

/// Image of a face under a cube symmetry.
inline std::uint32_t apply(const SignedPerm& s, std::uint32_t p) {
  std::uint32_t out = 0;
  for (int k = 0; k < s.size(); ++k) {
    int d = digit(p, k);
    if (d != kFree && s.flip(k)) d ^= 1;
    out += static_cast<std::uint32_t>(d) * pow3(s.axis(k));
  }
  return out;
}

/// Drop coordinate `normal` (face lies in a facet normal to it).
inline std::uint32_t to_facet(std::uint32_t p, int n, int normal) {
  std::uint32_t out = 0;
  for (int i = n - 1; i >= 0; --i)
    if (i != normal) out = out * 3 + static_cast<std::uint32_t>(digit(p, i));
  return out;
}

/// Inverse of to_facet: insert `side` at coordinate `normal`.
inline std::uint32_t from_facet(std::uint32_t q, int n, Facet f) {
  std::uint32_t out = 0;
  for (int i = n - 1; i >= 0; --i) {
    const int d = i == f.axis ? f.side : digit(q, intrinsic_index(i, f.axis));
    out = out * 3 + static_cast<std::uint32_t>(d);
  }
  return out;
}

inline std::string to_string(std::uint32_t p, int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s += "01*"[digit(p, i)];
  return s;
}

}  // namespace pattern

/// One side of a facet pairing.
struct Gluing {
  std::int32_t cube = -1;
  std::int8_t facet = -1;
  AttachingMap map;

  bool paired() const { return cube >= 0; }
  friend bool operator==(const Gluing&, const Gluing&) = default;
};

/// An abstract cubical complex: `size()` n-cubes and a partial involution on
/// (cube, facet) slots, each pairing carrying the attaching map between the
/// two facets. Values are treated as immutable once built.
class Cubulation {
 public:
  Cubulation() = default;
  Cubulation(int dim, int cubes) : dim_(dim), slots_(static_cast<std::size_t>(cubes) * 2 * dim) {
    if (dim < 1 || dim > kMaxAxes) throw Error("cubulation: dimension must be in 1..5");
    if (cubes < 0) throw Error("cubulation: negative cube count");
  }

  int dim() const { return dim_; }
  int size() const { return dim_ == 0 ? 0 : static_cast<int>(slots_.size()) / (2 * dim_); }
  int facets_per_cube() const { return 2 * dim_; }

  const Gluing& gluing(int cube, int facet) const { return slots_.at(slot(cube, facet)); }

  /// Pair facet `fa` of cube `a` with facet `fb` of cube `b`; `map` sends
  /// intrinsic coordinates of the first facet to those of the second.
  void glue(int a, int fa, int b, int fb, const AttachingMap& map) {
    if (map.size() != dim_ - 1) throw Error("glue: attaching map has wrong size");
    check(a, fa);
    check(b, fb);
    if (slots_[slot(a, fa)].paired() || slots_[slot(b, fb)].paired())
      throw Error("glue: facet " + std::to_string(a) + "." + std::to_string(fa) + " or " +
                  std::to_string(b) + "." + std::to_string(fb) + " already glued");
    slots_[slot(a, fa)] = {b, static_cast<std::int8_t>(fb), map};
    slots_[slot(b, fb)] = {a, static_cast<std::int8_t>(fa), map.inverse()};
  }

  void glue(int a, int fa, int b, int fb) { glue(a, fa, b, fb, AttachingMap::identity(dim_ - 1)); }

  /// Raw one-sided write, used by loaders that validate involution afterwards.
  void set_slot(int cube, int facet, const Gluing& g) {
    check(cube, facet);
    slots_[slot(cube, facet)] = g;
  }

  bool closed() const {
    for (const auto& g : slots_)
      if (!g.paired()) return false;
    return true;
  }

  int free_facet_count() const {
    int k = 0;
    for (const auto& g : slots_) k += !g.paired();
    return k;
  }

  friend bool operator==(const Cubulation&, const Cubulation&) = default;

 private:
  std::size_t slot(int cube, int facet) const {
    return static_cast<std::size_t>(cube) * 2 * dim_ + static_cast<std::size_t>(facet);
  }
  void check(int cube, int facet) const {
    if (cube < 0 || cube >= size() || facet < 0 || facet >= 2 * dim_)
      throw Error("cubulation: slot " + std::to_string(cube) + "." + std::to_string(facet) +
                  " out of range");
  }

  int dim_ = 0;
  std::vector<Gluing> slots_;
};

/// Face of a specific cube.
struct FaceDescriptor {
  std::int32_t cube = 0;
  std::uint32_t pattern = 0;
  friend auto operator<=>(const FaceDescriptor&, const FaceDescriptor&) = default;
};

/// Where a face lying in facet `f` of `cube` lands in the adjacent cube.
inline std::optional<FaceDescriptor> transport(const Cubulation& c, int cube, Facet f,
                                               std::uint32_t p) {
  const Gluing& g = c.gluing(cube, f.index());
  if (!g.paired()) return std::nullopt;
  const int n = c.dim();
  const std::uint32_t q = pattern::apply(g.map, pattern::to_facet(p, n, f.axis));
  return FaceDescriptor{g.cube, pattern::from_facet(q, n, Facet::from_index(g.facet))};
}

/// Build a complex from cubes listed by vertex labels (corner b has label
/// vertices[b]). Facets with equal label sets are glued by the matching they
/// induce. Throws when a label set is shared by more than two facets, when a
/// cube repeats a label, or when a matching is not a cube symmetry.
template <typename Label>
Cubulation from_vertex_cubes(int n, const std::vector<std::vector<Label>>& cubes) {
  const unsigned corners = 1u << n;
  Cubulation c(n, static_cast<int>(cubes.size()));
  std::map<std::vector<Label>, std::vector<std::pair<int, int>>> by_set;
  for (int q = 0; q < static_cast<int>(cubes.size()); ++q) {
    const auto& v = cubes[q];
    if (v.size() != corners) throw Error("vertex cube " + std::to_string(q) + ": wrong vertex count");
    if (std::set<Label>(v.begin(), v.end()).size() != v.size())
      throw Error("vertex cube " + std::to_string(q) + ": repeated vertex label");
    for (int f = 0; f < 2 * n; ++f) {
      const Facet fc = Facet::from_index(f);
      std::vector<Label> key;
      for (unsigned b = 0; b < corners; ++b)
        if (static_cast<int>((b >> fc.axis) & 1u) == fc.side) key.push_back(v[b]);
      std::sort(key.begin(), key.end());
      by_set[key].push_back({q, f});
    }
  }
  for (const auto& [key, users] : by_set) {
    if (users.size() == 1) continue;
    if (users.size() > 2) throw Error("vertex cubes: ambiguous gluing, facet shared by more than two cubes");
    const auto [a, fa] = users[0];
    const auto [b, fb] = users[1];
    const Facet A = Facet::from_index(fa), B = Facet::from_index(fb);
    // Intrinsic corner index -> label, for both facets.
    auto facet_labels = [&](int q, Facet f) {
      std::vector<Label> out(1u << (n - 1));
      for (unsigned b = 0; b < corners; ++b) {
        if (static_cast<int>((b >> f.axis) & 1u) != f.side) continue;
        unsigned ib = 0;
        for (int k = 0; k < n - 1; ++k) ib |= ((b >> ambient_axis(k, f.axis)) & 1u) << k;
        out[ib] = cubes[q][b];
      }
      return out;
    };
    const auto la = facet_labels(a, A), lb = facet_labels(b, B);
    std::optional<AttachingMap> found;
    for (const auto& s : symmetries(n - 1)) {
      bool ok = true;
      for (unsigned ib = 0; ib < la.size() && ok; ++ib) {
        unsigned jb = 0;
        for (int k = 0; k < n - 1; ++k) jb |= (((ib >> k) & 1u) ^ static_cast<unsigned>(s.flip(k))) << s.axis(k);
        ok = la[ib] == lb[jb];
      }
      if (ok) {
        found = s;
        break;
      }
    }
    if (!found) throw Error("vertex cubes: facet labels do not match by a cube symmetry");
    c.glue(a, fa, b, fb, *found);
  }
  return c;
}

}  // namespace cubu
