// Named built-in complexes.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "constructors.hpp"

namespace cubu {

namespace detail {

inline std::optional<std::vector<int>> dash_ints(const std::string& s, std::size_t count) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto next = s.find('-', pos);
    const std::string part = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    if (part.empty() || part.size() > 4 || part.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
    out.push_back(std::stoi(part));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (out.size() != count) return std::nullopt;
  return out;
}

}  // namespace detail

/// boundary-cube-k is the boundary of the k-cube, a (k-1)-sphere.
inline Cubulation corpus_complex(const std::string& name) {
  auto starts = [&](const std::string& p) { return name.rfind(p, 0) == 0; };
  if (starts("doubled-")) return doubling(corpus_complex(name.substr(8)));
  if (name == "pillow") return make_pillow();
  if (name == "c-of-tetrahedron") return from_triangulation(boundary_of_simplex(2));
  if (starts("boundary-cube-"))
    if (auto k = detail::dash_ints(name.substr(14), 1); k && (*k)[0] >= 2 && (*k)[0] <= 5)
      return make_boundary_cube((*k)[0] - 1);
  if (starts("polygon-"))
    if (auto k = detail::dash_ints(name.substr(8), 1)) return make_polygon((*k)[0]);
  if (starts("torus-"))
    if (auto k = detail::dash_ints(name.substr(6), 2)) return make_torus_grid((*k)[0], (*k)[1]);
  if (starts("klein-"))
    if (auto k = detail::dash_ints(name.substr(6), 2)) return make_klein_grid((*k)[0], (*k)[1]);
  throw Error("unknown corpus name '" + name + "'");
}

inline std::vector<std::string> corpus_names() {
  return {"boundary-cube-2", "boundary-cube-3", "boundary-cube-4", "boundary-cube-5", "pillow",
          "polygon-<k>",     "torus-<p>-<q>",   "klein-<p>-<q>",   "c-of-tetrahedron",
          "doubled-<name>"};
}

}  // namespace cubu
