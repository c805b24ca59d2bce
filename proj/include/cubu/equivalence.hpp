// Bounded exploration of the bubble-move graph, deduplicated by certificate.
#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "certificate.hpp"
#include "derivative.hpp"
#include "invariants.hpp"

namespace cubu {

struct SearchConfig {
  int max_depth = 2;
  bool np_only = false;
  long max_states = 1000000;
  std::vector<std::string> template_whitelist;  // template ids; empty = all
  bool track_census = false;                    // record circle homology signatures (orientable surfaces)
  std::string journal;                          // append-only record file; empty = none
};

/// Templates admitted by a configuration.
inline std::vector<int> allowed_templates(int n, const SearchConfig& cfg) {
  std::vector<int> out;
  const auto& ts = templates(n);
  for (int i = 0; i < static_cast<int>(ts.size()); ++i) {
    if (cfg.np_only && !ts[i].np) continue;
    if (!cfg.template_whitelist.empty() &&
        std::find(cfg.template_whitelist.begin(), cfg.template_whitelist.end(), ts[i].id) == cfg.template_whitelist.end())
      continue;
    out.push_back(i);
  }
  return out;
}

/// A site expressed on the canonical complex of the state it applies to.
inline MoveSite to_canonical(const MoveSite& s, const CanonicalForm& form) {
  MoveSite out = s;
  for (std::size_t i = 0; i < s.cubes.size(); ++i) {
    out.cubes[i] = form.new_index[s.cubes[i]];
    out.frames[i] = form.frame[s.cubes[i]].after(s.frames[i]);
  }
  return out;
}

struct OrbitEntry {
  Certificate certificate;
  int depth = 0;
  int parent = -1;
  MoveSite move;  // on the parent's canonical complex
  MoveSite undo;  // on this state's canonical complex, leads back to the parent
  FVector f;
  std::string census;  // circle homology signature, when tracked
};

struct OrbitStore {
  int dim = 0;
  std::vector<OrbitEntry> entries;
  std::unordered_map<Certificate, int> index;
  bool truncated = false;
  int completed_depth = 0;
  long rejected_moves = 0;

  std::optional<int> find(const Certificate& c) const {
    const auto it = index.find(c);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
  Cubulation complex(int i) const { return decode_certificate(entries.at(i).certificate); }
};

namespace detail {

inline std::string census_string(const Cubulation& c) {
  const auto h = homology_census(c);
  if (!h.orientable) return "non-orientable";
  const auto [cs, ps] = h.signature();
  std::string s = "contents";
  for (auto x : cs) s += " " + std::to_string(x);
  s += "; pairs";
  for (auto x : ps) s += " " + std::to_string(x);
  return s;
}

inline std::string hex(const std::string& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (unsigned char ch : bytes) {
    s += digits[ch >> 4];
    s += digits[ch & 15];
  }
  return s;
}

inline std::string unhex(const std::string& h) {
  if (h.size() % 2) throw Error("journal: odd hex length");
  std::string s;
  for (std::size_t i = 0; i < h.size(); i += 2) s += static_cast<char>(std::stoi(h.substr(i, 2), nullptr, 16));
  return s;
}

inline int symmetry_index(const CubeSymmetry& g) {
  const auto& syms = symmetries(g.size());
  return static_cast<int>(std::find(syms.begin(), syms.end(), g) - syms.begin());
}

inline std::string site_record(const MoveSite& s) {
  std::ostringstream out;
  out << s.template_index << " " << s.inverse << " " << s.cubes.size();
  for (std::size_t i = 0; i < s.cubes.size(); ++i) out << " " << s.cubes[i] << " " << symmetry_index(s.frames[i]);
  return out.str();
}

inline MoveSite read_site(std::istream& in, int n) {
  MoveSite s;
  std::size_t m = 0;
  int inv = 0;
  in >> s.template_index >> inv >> m;
  s.inverse = inv != 0;
  if (!in || m > 64) throw Error("journal: malformed site");
  for (std::size_t i = 0; i < m; ++i) {
    int q = 0, g = 0;
    in >> q >> g;
    if (!in || g < 0 || g >= static_cast<int>(symmetries(n).size())) throw Error("journal: malformed site");
    s.cubes.push_back(q);
    s.frames.push_back(symmetries(n)[g]);
  }
  return s;
}

/// Journal lines: "state <hex cert> <depth> <parent> <move> <undo>" and
/// "level <d>" once depth d is fully expanded.
inline void journal_state(std::ofstream* j, const OrbitEntry& e) {
  if (!j) return;
  *j << "state " << hex(e.certificate) << " " << e.depth << " " << e.parent;
  if (e.parent >= 0) *j << " " << site_record(e.move) << " " << site_record(e.undo);
  *j << "\n";
  j->flush();
}

}  // namespace detail

inline int add_state(OrbitStore& store, OrbitEntry e, bool track_census) {
  const Cubulation c = decode_certificate(e.certificate);
  e.f = f_vector(c);
  if (track_census && c.dim() == 2) e.census = detail::census_string(c);
  const int id = static_cast<int>(store.entries.size());
  store.index.emplace(e.certificate, id);
  store.entries.push_back(std::move(e));
  return id;
}

/// Rebuild a store from a journal written by bfs_orbit.
inline OrbitStore load_journal(const std::string& path, int dim, bool track_census) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open journal " + path);
  OrbitStore store;
  store.dim = dim;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    if (kind == "level") {
      ls >> store.completed_depth;
    } else if (kind == "state") {
      OrbitEntry e;
      std::string h;
      ls >> h >> e.depth >> e.parent;
      if (!ls) throw Error("journal: malformed state line");
      e.certificate = detail::unhex(h);
      if (e.parent >= 0) {
        e.move = detail::read_site(ls, dim);
        e.undo = detail::read_site(ls, dim);
      }
      if (!store.find(e.certificate)) add_state(store, std::move(e), track_census);
    } else if (!kind.empty()) {
      throw Error("journal: unknown record '" + kind + "'");
    }
  }
  return store;
}

/// Expand one state: every allowed template, both orientations, every site.
template <typename F>
void for_each_move(const Cubulation& state, const std::vector<int>& allowed, long* rejected, F&& f) {
  const CellTable cells(state);
  for (int ti : allowed)
    for (bool inverse : {false, true})
      for (const auto& site : find_sites(state, cells, ti, inverse)) {
        auto r = apply_move(state, site);
        if (!r.ok) {
          if (rejected) ++*rejected;
          continue;
        }
        if (!f(site, r)) return;
      }
}

/// Breadth-first orbit of `seed` up to cfg.max_depth moves, at most
/// cfg.max_states states. With a journal, an interrupted run resumes from
/// the last completed level.
inline OrbitStore bfs_orbit(const Cubulation& seed, const SearchConfig& cfg) {
  const int n = seed.dim();
  const auto allowed = allowed_templates(n, cfg);
  const CanonicalForm root = canonical_form(seed);
  OrbitStore store;
  store.dim = n;
  std::optional<std::ofstream> journal;
  if (!cfg.journal.empty()) {
    if (std::ifstream(cfg.journal).good()) {
      store = load_journal(cfg.journal, n, cfg.track_census);
      if (store.entries.empty() || store.entries[0].certificate != root.certificate)
        throw Error("journal " + cfg.journal + " belongs to a different seed");
    }
    journal.emplace(cfg.journal, std::ios::app);
  }
  std::ofstream* j = journal ? &*journal : nullptr;
  if (store.entries.empty()) {
    OrbitEntry e;
    e.certificate = root.certificate;
    detail::journal_state(j, store.entries.emplace_back(e));
    store.entries.clear();
    add_state(store, e, cfg.track_census);
  }
  for (int depth = store.completed_depth; depth < cfg.max_depth && !store.truncated; ++depth) {
    std::vector<int> frontier;
    for (int i = 0; i < static_cast<int>(store.entries.size()); ++i)
      if (store.entries[i].depth == depth) frontier.push_back(i);
    for (int parent : frontier) {
      const Cubulation state = store.complex(parent);
      for_each_move(state, allowed, &store.rejected_moves, [&](const MoveSite& site, MoveResult& r) {
        const CanonicalForm form = canonical_form(r.complex);
        if (store.find(form.certificate)) return true;
        if (static_cast<long>(store.entries.size()) >= cfg.max_states) {
          store.truncated = true;
          return false;
        }
        OrbitEntry e;
        e.certificate = form.certificate;
        e.depth = depth + 1;
        e.parent = parent;
        e.move = site;
        e.undo = to_canonical(r.inverse_site, form);
        detail::journal_state(j, e);
        add_state(store, std::move(e), cfg.track_census);
        return true;
      });
      if (store.truncated) break;
    }
    if (!store.truncated) {
      store.completed_depth = depth + 1;
      if (j) *j << "level " << depth + 1 << "\n" << std::flush;
    }
  }
  return store;
}

struct MoveStep {
  Certificate source;
  MoveSite site;  // on decode_certificate(source)
};

struct MoveSequence {
  std::vector<MoveStep> steps;
  Certificate target;
};

/// Re-applies every step; true iff each step lands on the next source and
/// the last one on the target.
inline bool replay(const MoveSequence& seq) {
  for (std::size_t i = 0; i < seq.steps.size(); ++i) {
    const auto r = apply_move(decode_certificate(seq.steps[i].source), seq.steps[i].site);
    if (!r.ok) return false;
    const Certificate next = i + 1 < seq.steps.size() ? seq.steps[i + 1].source : seq.target;
    if (canonical_certificate(r.complex) != next) return false;
  }
  return true;
}

enum class PathStatus { found, separated, not_found };

struct PathResult {
  PathStatus status = PathStatus::not_found;
  MoveSequence path;
  std::string reason;
  bool truncated = false;
  long states = 0;
};

namespace detail {

inline std::string describe_difference(const FbClass& a, const FbClass& b) {
  auto show = [](const std::vector<std::int64_t>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
  };
  if (a.residues != b.residues) return "f-vector residues modulo a_i differ: " + show(a.residues) + " vs " + show(b.residues);
  if (a.exact != b.exact) return "exact lattice relations differ: " + show(a.exact) + " vs " + show(b.exact);
  return "extra relation values differ: " + show(a.extras) + " vs " + show(b.extras);
}

}  // namespace detail

/// Bidirectional level-synchronous search. Inequivalence is only reported
/// when an invariant separates the two complexes.
inline PathResult find_path(const Cubulation& a, const Cubulation& b, const SearchConfig& cfg) {
  if (a.dim() != b.dim()) throw Error("find_path: dimensions differ");
  PathResult res;
  const FbClass fa = fb_class(a), fb = fb_class(b);
  if (!(fa == fb)) {
    res.status = PathStatus::separated;
    res.reason = detail::describe_difference(fa, fb);
    return res;
  }
  const int n = a.dim();
  const auto allowed = allowed_templates(n, cfg);
  OrbitStore side[2];
  side[0].dim = side[1].dim = n;
  add_state(side[0], OrbitEntry{canonical_certificate(a)}, false);
  add_state(side[1], OrbitEntry{canonical_certificate(b)}, false);
  int depth[2] = {0, 0};
  auto meet = [&]() -> std::optional<std::pair<int, int>> {
    std::optional<std::pair<int, int>> best;
    int best_len = 0;
    for (int i = 0; i < static_cast<int>(side[0].entries.size()); ++i)
      if (auto k = side[1].find(side[0].entries[i].certificate)) {
        const int len = side[0].entries[i].depth + side[1].entries[*k].depth;
        if (!best || len < best_len ||
            (len == best_len && side[0].entries[i].certificate < side[0].entries[best->first].certificate)) {
          best = std::pair{i, *k};
          best_len = len;
        }
      }
    return best;
  };
  std::optional<std::pair<int, int>> hit = meet();
  while (!hit && depth[0] + depth[1] < cfg.max_depth) {
    auto count_at = [&](int s) {
      return std::count_if(side[s].entries.begin(), side[s].entries.end(),
                           [&](const OrbitEntry& e) { return e.depth == depth[s]; });
    };
    const int s = count_at(0) <= count_at(1) ? 0 : 1;
    OrbitStore& st = side[s];
    std::vector<int> frontier;
    for (int i = 0; i < static_cast<int>(st.entries.size()); ++i)
      if (st.entries[i].depth == depth[s]) frontier.push_back(i);
    for (int parent : frontier) {
      for_each_move(st.complex(parent), allowed, nullptr, [&](const MoveSite& site, MoveResult& r) {
        const CanonicalForm form = canonical_form(r.complex);
        if (st.find(form.certificate)) return true;
        if (static_cast<long>(side[0].entries.size() + side[1].entries.size()) >= cfg.max_states) {
          res.truncated = true;
          return false;
        }
        OrbitEntry e;
        e.certificate = form.certificate;
        e.depth = depth[s] + 1;
        e.parent = parent;
        e.move = site;
        e.undo = to_canonical(r.inverse_site, form);
        add_state(st, std::move(e), false);
        return true;
      });
      if (res.truncated) break;
    }
    ++depth[s];
    hit = meet();
    if (res.truncated) break;
    if (frontier.empty()) break;
  }
  res.states = static_cast<long>(side[0].entries.size() + side[1].entries.size());
  if (!hit) {
    res.reason = res.truncated ? "state budget exhausted" : "no path within the depth bound";
    return res;
  }
  // Forward half: root of a up to the meeting state.
  std::vector<MoveStep> steps;
  for (int i = hit->first; side[0].entries[i].parent >= 0; i = side[0].entries[i].parent)
    steps.push_back({side[0].entries[side[0].entries[i].parent].certificate, side[0].entries[i].move});
  std::reverse(steps.begin(), steps.end());
  // Backward half: undo the moves that led from b to the meeting state.
  for (int i = hit->second; side[1].entries[i].parent >= 0; i = side[1].entries[i].parent)
    steps.push_back({side[1].entries[i].certificate, side[1].entries[i].undo});
  res.path.steps = steps;
  res.path.target = side[1].entries[0].certificate;
  if (!replay(res.path)) throw Error("find_path: internal error, path does not replay");
  res.status = PathStatus::found;
  return res;
}

struct AuditReport {
  long states = 0;
  FbClass fb;
  bool census_tracked = false;
  std::string census;
};

/// fb class (and the circle census, when tracked) must be constant on the
/// orbit; a violation is an implementation error and throws.
inline AuditReport invariant_audit(const OrbitStore& store) {
  AuditReport r;
  if (store.entries.empty()) return r;
  r.states = static_cast<long>(store.entries.size());
  r.fb = fb_class(store.entries[0].f);
  r.census = store.entries[0].census;
  r.census_tracked = !r.census.empty();
  for (const auto& e : store.entries) {
    if (!(fb_class(e.f) == r.fb))
      throw Error("invariant audit: fb class changes along the orbit (state at depth " + std::to_string(e.depth) + ")");
    if (r.census_tracked && e.census != r.census)
      throw Error("invariant audit: circle census changes along the orbit: '" + r.census + "' vs '" + e.census + "'");
  }
  return r;
}

/// A random walk of `steps` accepted moves; returns every visited complex,
/// the seed first.
inline std::vector<Cubulation> random_walk(const Cubulation& seed, int steps, std::uint64_t rng_seed,
                                           const SearchConfig& cfg = {}) {
  std::mt19937_64 rng(rng_seed);
  const auto allowed = allowed_templates(seed.dim(), cfg);
  std::vector<Cubulation> out{seed};
  Cubulation cur = seed;
  for (int s = 0; s < steps; ++s) {
    const CellTable cells(cur);
    std::vector<MoveSite> sites;
    for (int ti : allowed)
      for (bool inverse : {false, true})
        for (auto& site : find_sites(cur, cells, ti, inverse)) sites.push_back(std::move(site));
    std::shuffle(sites.begin(), sites.end(), rng);
    bool moved = false;
    for (const auto& site : sites) {
      auto r = apply_move(cur, site);
      if (!r.ok) continue;
      cur = std::move(r.complex);
      out.push_back(cur);
      moved = true;
      break;
    }
    if (!moved) break;
  }
  return out;
}

}  // namespace cubu
