// Load a complex, look at its invariants, move it around and sum it with a copy.
#include <iostream>

#include "cubu/cub_io.hpp"
#include "cubu/equivalence.hpp"
#include "cubu/surgery.hpp"

using namespace cubu;

static void show(const char* label, const Cubulation& c) {
  const auto f = f_vector(c);
  std::cout << label << ": f = (";
  for (std::size_t i = 0; i < f.size(); ++i) std::cout << (i ? "," : "") << f[i];
  std::cout << "), chi = " << euler_characteristic(f) << "\n";
}

int main(int argc, char** argv) {
  const Cubulation c = argc > 1 ? load_cub(argv[1]) : make_boundary_cube(2);
  const auto v = validate(c, ValidationMode::closed_manifold);
  if (!v.ok()) {
    std::cerr << v.issues.front().message << "\n";
    return 1;
  }
  show("input", c);

  const auto fb = fb_class(c);
  std::cout << "residues mod (";
  for (std::size_t i = 0; i < fb.residues.size(); ++i)
    std::cout << (i ? "," : "") << invariants_for(c.dim()).moduli[i];
  std::cout << "):";
  for (auto r : fb.residues) std::cout << " " << r;
  std::cout << "\n";

  // One b1 move, then its inverse.
  const auto sites = find_sites(c, 0, false);
  if (!sites.empty()) {
    const auto r = apply_move(c, sites.front());
    show("after b1", r.complex);
    const auto back = apply_move(r.complex, r.inverse_site);
    std::cout << "undo restores input: " << std::boolalpha << is_isomorphic(back.complex, c) << "\n";
  }

  if (c.dim() == 2) {
    const auto k = classify_surface(c);
    std::cout << "derivative circles: " << k.ns.size() << ", class " << to_string(k.kind) << "\n";
  }

  const auto sum = connected_sum(c, c, {});
  if (sum.ok) show("sum with itself", sum.complex);

  SearchConfig cfg;
  cfg.max_depth = 2;
  const auto orbit = bfs_orbit(c, cfg);
  std::cout << "complexes within two moves: " << orbit.entries.size() << "\n";
}
