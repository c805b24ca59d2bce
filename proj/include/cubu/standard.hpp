// Standardness: any two cells meet in nothing or in exactly one common face.
#pragma once

#include <algorithm>
#include <vector>

#include "cells.hpp"

namespace cubu {

/// True iff every pair of cells of dimension <= k intersects in the empty
/// set or in the full face set of a single cell.
inline bool is_k_standard(const Cubulation& c, int k) {
  const CellTable t(c);
  const int n = c.dim();
  k = std::min(k, n);
  std::vector<int> offset(n + 2, 0);
  for (int d = 0; d <= n; ++d) offset[d + 1] = offset[d] + t.count(d);
  auto id = [&](CellTable::Cell x) { return offset[x.dim] + x.index; };

  std::vector<std::vector<int>> closure(offset[n + 1]);
  std::vector<int> dim_of(offset[n + 1]);
  std::vector<std::vector<int>> at_vertex(t.count(0));
  for (int d = 0; d <= n; ++d)
    for (int i = 0; i < t.count(d); ++i) {
      auto& cl = closure[offset[d] + i];
      for (auto x : t.closure(d, i)) cl.push_back(id(x));
      std::sort(cl.begin(), cl.end());
      dim_of[offset[d] + i] = d;
      if (d <= k)
        for (int v : cl)
          if (v < offset[1]) at_vertex[v].push_back(offset[d] + i);
    }
  std::vector<int> common;
  for (const auto& cells : at_vertex)
    for (std::size_t a = 0; a < cells.size(); ++a)
      for (std::size_t b = a + 1; b < cells.size(); ++b) {
        const auto& A = closure[cells[a]];
        const auto& B = closure[cells[b]];
        common.clear();
        std::set_intersection(A.begin(), A.end(), B.begin(), B.end(), std::back_inserter(common));
        int top = common.front();
        for (int x : common)
          if (dim_of[x] > dim_of[top]) top = x;
        if (closure[top] != common) return false;
      }
  return true;
}

inline bool is_standard(const Cubulation& c) { return is_k_standard(c, c.dim()); }

}  // namespace cubu
