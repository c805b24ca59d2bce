// Derived cells: classes of cube faces under the closure of the pairings.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "cubulation.hpp"

namespace cubu {

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

/// Cell table of a complex. Every face descriptor belongs to exactly one
/// class; classes are numbered per dimension in order of their smallest
/// descriptor.
class CellTable {
 public:
  struct Cell {
    int dim = 0;
    int index = 0;  // within its dimension
    friend bool operator==(const Cell&, const Cell&) = default;
  };

  CellTable() = default;

  explicit CellTable(const Cubulation& c) : n_(c.dim()), cubes_(c.size()) {
    const std::uint32_t per = pattern::pow3(n_);
    const std::size_t total = static_cast<std::size_t>(cubes_) * per;
    detail::UnionFind uf(total);
    for (int q = 0; q < cubes_; ++q) {
      for (int f = 0; f < 2 * n_; ++f) {
        const Gluing& g = c.gluing(q, f);
        if (!g.paired()) continue;
        if (g.cube < q || (g.cube == q && g.facet < f)) continue;
        if (g.cube >= cubes_ || g.facet < 0 || g.facet >= 2 * n_) continue;
        const Facet fc = Facet::from_index(f);
        for (std::uint32_t fp = 0; fp < pattern::pow3(n_ - 1); ++fp) {
          const std::uint32_t p = pattern::from_facet(fp, n_, fc);
          const auto t = transport(c, q, fc, p);
          uf.unite(index_of(q, p), index_of(t->cube, t->pattern));
        }
      }
    }
    by_desc_.assign(total, Cell{});
    std::vector<int> root_to_cell(total, -1);
    classes_.assign(n_ + 1, {});
    for (std::size_t d = 0; d < total; ++d) {
      const std::size_t r = uf.find(d);
      const int dim = pattern::dimension(static_cast<std::uint32_t>(d % per), n_);
      if (root_to_cell[r] < 0) {
        root_to_cell[r] = static_cast<int>(classes_[dim].size());
        classes_[dim].emplace_back();
      }
      const int idx = root_to_cell[r];
      classes_[dim][idx].push_back(descriptor(d));
      by_desc_[d] = {dim, idx};
    }
  }

  int dim() const { return n_; }
  int count(int k) const { return static_cast<int>(classes_.at(k).size()); }
  const std::vector<FaceDescriptor>& members(int k, int index) const { return classes_.at(k).at(index); }
  Cell cell_of(int cube, std::uint32_t p) const { return by_desc_.at(index_of(cube, p)); }
  Cell cell_of(const FaceDescriptor& d) const { return cell_of(d.cube, d.pattern); }

  /// Derived vertex at corner `bits` of `cube`.
  int vertex(int cube, unsigned bits) const { return cell_of(cube, pattern::corner(bits, n_)).index; }

  /// Derived vertices of a face, one per corner of the face (in corner order
  /// of its free coordinates).
  std::vector<int> vertices_of(const FaceDescriptor& d) const {
    std::vector<int> free;
    for (int i = 0; i < n_; ++i)
      if (pattern::digit(d.pattern, i) == pattern::kFree) free.push_back(i);
    std::vector<int> out;
    for (unsigned b = 0; b < (1u << free.size()); ++b) {
      std::uint32_t p = d.pattern;
      for (std::size_t k = 0; k < free.size(); ++k) p = pattern::set_digit(p, free[k], (b >> k) & 1u);
      out.push_back(cell_of(d.cube, p).index);
    }
    return out;
  }

  /// All proper and improper faces of a cell, as cells (closure).
  std::vector<Cell> closure(int k, int index) const {
    const FaceDescriptor& d = members(k, index).front();
    std::vector<Cell> out;
    for (std::uint32_t p = 0; p < pattern::pow3(n_); ++p) {
      bool sub = true;
      for (int i = 0; i < n_ && sub; ++i) {
        const int a = pattern::digit(d.pattern, i), b = pattern::digit(p, i);
        sub = a == pattern::kFree || a == b;
      }
      if (sub) out.push_back(cell_of(d.cube, p));
    }
    return out;
  }

  std::vector<std::int64_t> f_vector() const {
    std::vector<std::int64_t> f(n_ + 1);
    for (int k = 0; k <= n_; ++k) f[k] = count(k);
    return f;
  }

 private:
  std::size_t index_of(int cube, std::uint32_t p) const {
    return static_cast<std::size_t>(cube) * pattern::pow3(n_) + p;
  }
  FaceDescriptor descriptor(std::size_t d) const {
    const std::uint32_t per = pattern::pow3(n_);
    return {static_cast<std::int32_t>(d / per), static_cast<std::uint32_t>(d % per)};
  }

  int n_ = 0;
  int cubes_ = 0;
  std::vector<std::vector<std::vector<FaceDescriptor>>> classes_;
  std::vector<Cell> by_desc_;
};

inline CellTable derive_cells(const Cubulation& c) { return CellTable(c); }

using FVector = std::vector<std::int64_t>;

inline FVector f_vector(const Cubulation& c) { return CellTable(c).f_vector(); }

inline std::int64_t euler_characteristic(const FVector& f) {
  std::int64_t chi = 0;
  for (std::size_t i = 0; i < f.size(); ++i) chi += (i % 2 ? -1 : 1) * f[i];
  return chi;
}

inline std::int64_t euler_characteristic(const Cubulation& c) { return euler_characteristic(f_vector(c)); }

}  // namespace cubu
