// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cubu/corpus.hpp"
#include "cubu/equivalence.hpp"
#include "cubu/mappability.hpp"
#include "cubu/standard.hpp"
#include "cubu/surgery.hpp"

using namespace cubu;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void check(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass &= ok;
  }
};

std::vector<Cubulation> sphere_corpus() {
  return {make_boundary_cube(2), make_pillow(), doubling(make_boundary_cube(2)), doubling(make_pillow()),
          from_triangulation(boundary_of_simplex(2))};
}

std::vector<Cubulation> full_corpus() {
  auto c = sphere_corpus();
  for (auto x : {make_torus_grid(3, 3), make_klein_grid(3, 3), doubling(make_torus_grid(3, 3)), make_polygon(3),
                 make_polygon(4), make_polygon(5), make_boundary_cube(3)})
    c.push_back(std::move(x));
  return c;
}

std::string fv(const FVector& f) {
  std::string s = "(";
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + std::to_string(f[i]);
  return s + ")";
}

// Random walks from the cube surface, 100 of them, 1..5 moves each.
std::vector<Cubulation> walk_samples() {
  std::vector<Cubulation> out;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto w = random_walk(make_boundary_cube(2), 1 + static_cast<int>(seed % 5), seed);
    for (auto& c : w) out.push_back(std::move(c));
  }
  return out;
}

Outcome template_census() {
  Outcome o;
  const int np_expected[] = {0, 2, 3, 4};
  for (int n = 1; n <= 4; ++n) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto ts = enumerate_templates(n);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    int np = 0;
    for (const auto& t : ts) np += t.np;
    if (n <= 3) o.check(np == np_expected[n], "n=" + std::to_string(n) + ": " + std::to_string(np) + " np templates");
    else o.check(np == n + 1, "n=4: np count " + std::to_string(np));
    if (n == 2) o.check(ts.size() - np == 1, "n=2: non-np count " + std::to_string(ts.size() - np));
    const double limit = n <= 2 ? 1.0 : n == 3 ? 60.0 : 600.0;
    o.check(secs < limit, "n=" + std::to_string(n) + " too slow");
  }
  return o;
}

Outcome moduli() {
  Outcome o;
  for (int n = 1; n <= 4; ++n) {
    const auto& a = invariants_for(n).moduli;
    // Closed forms; where two apply to the same index they must agree.
    std::vector<std::vector<std::int64_t>> expect(n + 1);
    expect[n].push_back(2);
    expect[n - 1].push_back(2 * n);
    if (n >= 2) expect[n - 2].push_back(2);
    expect[0].push_back(2);
    expect[1].push_back(3 + (n % 2 ? -1 : 1));
    for (int i = 0; i <= n; ++i)
      for (auto e : expect[i])
        o.check(a[i] == e, "n=" + std::to_string(n) + " a_" + std::to_string(i) + " = " + std::to_string(a[i]) +
                               ", expected " + std::to_string(e));
  }
  o.check(invariants_for(4).moduli == std::vector<std::int64_t>{2, 4, 2, 8, 2}, "n=4 moduli");
  return o;
}

Outcome extra_invariant() {
  Outcome o;
  for (const auto& t : templates(3))
    o.check((t.delta_f[0] + t.delta_f[1]) % 4 == 0, t.id + " changes f0+f1 mod 4");
  bool found = false;
  for (const auto& r : invariants_for(3).extra_relations) found |= r.to_string() == "f0 + f1 mod 4";
  o.check(found, "search did not report f0 + f1 mod 4");
  return o;
}

Outcome parity_strata(const std::vector<Cubulation>& samples) {
  Outcome o;
  auto corpus = full_corpus();
  for (std::size_t i = 0; i < corpus.size(); ++i) o.check(babson_chan_check(corpus[i]), "corpus item " + std::to_string(i));
  for (const auto& c : samples) o.check(babson_chan_check(c), "walk sample " + fv(f_vector(c)));
  return o;
}

Outcome polygons() {
  Outcome o;
  SearchConfig cfg;
  cfg.max_depth = 4;
  for (int k = 2; k <= 10; ++k) {
    const auto r = find_path(make_polygon(k), make_polygon(k + 2), cfg);
    o.check(r.status == PathStatus::found && replay(r.path), "no path " + std::to_string(k) + " -> " + std::to_string(k + 2));
    const auto s = find_path(make_polygon(k), make_polygon(k + 1), cfg);
    o.check(s.status == PathStatus::separated && fb_class(make_polygon(k)).residues[0] != fb_class(make_polygon(k + 1)).residues[0],
            "polygons " + std::to_string(k) + ", " + std::to_string(k + 1) + " not separated by f0 mod 2");
  }
  return o;
}

Outcome sphere_invariant(const std::vector<Cubulation>& samples, long* counted) {
  Outcome o;
  std::vector<Cubulation> spheres = sphere_corpus();
  spheres.insert(spheres.end(), samples.begin(), samples.end());
  SearchConfig cfg;
  cfg.max_depth = 3;
  const auto store = bfs_orbit(make_boundary_cube(2), cfg);
  for (int i = 0; i < static_cast<int>(store.entries.size()); ++i) spheres.push_back(store.complex(i));
  for (const auto& c : spheres) {
    const auto f = f_vector(c);
    o.check(trace_circles(c).ns_total % 2 == f[0] % 2, "ns and f0 differ mod 2 on " + fv(f));
  }
  *counted = static_cast<long>(spheres.size());
  return o;
}

Outcome move_soundness(long* applied) {
  Outcome o;
  *applied = 0;
  for (const auto& c : full_corpus()) {
    const int n = c.dim();
    const auto cert = canonical_certificate(c);
    const auto f = f_vector(c);
    const CellTable cells(c);
    for (int ti = 0; ti < static_cast<int>(templates(n).size()); ++ti)
      for (bool inverse : {false, true})
        for (const auto& site : find_sites(c, cells, ti, inverse)) {
          const auto r = apply_move(c, site);
          const std::string where = templates(n)[ti].id + (inverse ? "'" : "") + " on " + fv(f);
          o.check(r.ok, "rejected " + where + ": " + r.diagnostic);
          if (!r.ok) continue;
          ++*applied;
          const auto g = f_vector(r.complex);
          const auto d = fvector_delta(templates(n)[ti], inverse);
          for (int i = 0; i <= n; ++i) o.check(g[i] - f[i] == d[i], "delta mismatch " + where);
          const auto back = apply_move(r.complex, r.inverse_site);
          o.check(back.ok && canonical_certificate(back.complex) == cert, "round trip fails " + where);
        }
  }
  return o;
}

Outcome fb_orbit(long* states, bool* truncated) {
  Outcome o;
  SearchConfig cfg;
  cfg.max_depth = 4;
  cfg.max_states = 100000;
  const auto store = bfs_orbit(make_boundary_cube(2), cfg);
  *states = static_cast<long>(store.entries.size());
  *truncated = store.truncated;
  try {
    invariant_audit(store);
  } catch (const Error& e) {
    o.check(false, e.what());
  }
  return o;
}

Outcome connected_sums() {
  Outcome o;
  const auto cube = make_boundary_cube(2);
  const auto r = connected_sum(cube, cube, {});
  o.check(r.ok, r.diagnostic);
  if (r.ok) {
    o.check(f_vector(r.complex) == FVector{24, 44, 22}, "f = " + fv(f_vector(r.complex)));
    o.check(euler_characteristic(r.complex) == 2, "chi != 2");
  }
  const std::vector<std::pair<Cubulation, Cubulation>> pairs{
      {cube, cube}, {cube, make_pillow()}, {make_pillow(), doubling(make_pillow())}};
  for (const auto& [a, b] : pairs)
    for (int g : {0, 3, 7}) {
      SumSpec spec;
      spec.twist = symmetries(2)[g];
      const auto rep = invariant_additivity_check(a, b, spec);
      o.check(rep.f0_parity && rep.ok, "additivity: " + rep.diagnostic);
    }
  return o;
}

Outcome mappability() {
  Outcome o;
  for (const auto& c : {make_boundary_cube(2), make_pillow()}) {
    const auto s = search_partition(c, 4);
    o.check(s.found && s.found->report.mappable, "no mappable certificate for " + fv(f_vector(c)));
  }
  const auto t = search_partition(from_triangulation(boundary_of_simplex(2)), 6);
  o.check(t.found && t.found->report.embeddable, "C(tetrahedron) not certified embeddable");
  for (const auto& c : full_corpus()) {
    const auto s = search_partition(c, 6, 50000);
    if (!s.found || !s.found->report.embeddable) continue;
    o.check(is_standard(c) && is_simple_general(c), "embeddable but not standard and simple: " + fv(f_vector(c)));
  }
  return o;
}

Outcome bordism() {
  Outcome o;
  o.check(stable_stem(3) == std::optional<std::string>("Z/24"), "pi_3^s");
  o.check(bordism_group_report(4).oriented_immersions == std::optional<std::string>("Z/24"), "I+(S^4)");
  o.check(stable_stem_rp_infinity(3) == std::optional<std::string>("Z/8"), "pi_3^s(RP^inf)");
  o.check(bordism_group_report(3).immersions == std::optional<std::string>("Z/8"), "I(S^3)");
  return o;
}

}  // namespace

int main() {
  int failures = 0;
  auto run = [&](int id, const char* name, double limit, const std::function<Outcome(std::string&)>& f) {
    std::string note;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = f(note);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit > 0 && secs >= limit) o.check(false, "time limit exceeded");
    failures += !o.pass;
    std::printf("%s [%2d] %-34s %7.2fs%s%s%s%s\n", o.pass ? "PASS" : "FAIL", id, name, secs, note.empty() ? "" : "  ",
                note.c_str(), o.pass ? "" : "  -- ", o.detail.c_str());
    std::fflush(stdout);
  };
  std::vector<Cubulation> samples;
  run(1, "template census", 0, [](std::string&) { return template_census(); });
  run(2, "f-vector moduli", 0, [](std::string&) { return moduli(); });
  run(3, "extra invariant f0+f1 mod 4", 0, [](std::string&) { return extra_invariant(); });
  run(4, "strata parity", 60, [&](std::string& note) {
    samples = walk_samples();
    note = std::to_string(samples.size()) + " walk states";
    return parity_strata(samples);
  });
  run(5, "circle classes", 1, [](std::string&) { return polygons(); });
  run(6, "sphere invariant ns = f0 mod 2", 0, [&](std::string& note) {
    long n = 0;
    auto o = sphere_invariant(samples, &n);
    note = std::to_string(n) + " spheres";
    return o;
  });
  run(7, "move soundness", 60, [](std::string& note) {
    long n = 0;
    auto o = move_soundness(&n);
    note = std::to_string(n) + " moves applied";
    return o;
  });
  run(8, "fb invariance on orbit", 0, [](std::string& note) {
    long n = 0;
    bool trunc = false;
    auto o = fb_orbit(&n, &trunc);
    note = std::to_string(n) + " states" + (trunc ? ", truncated" : "");
    return o;
  });
  run(9, "connected sum", 0, [](std::string&) { return connected_sums(); });
  run(10, "mappability", 0, [](std::string&) { return mappability(); });
  run(11, "bordism table", 0, [](std::string&) { return bordism(); });
  std::printf("%d of 11 criteria failed\n", failures);
  return failures ? 1 : 0;
}
