// cubu: command-line front end. Every command prints one JSON report
// (except `corpus get` and `export-dot`, which print the artifact itself).
// Exit status: 0 success, 1 domain error, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cubu/corpus.hpp"
#include "cubu/cub_io.hpp"
#include "cubu/equivalence.hpp"
#include "cubu/mappability.hpp"
#include "cubu/standard.hpp"
#include "cubu/surgery.hpp"

using nlohmann::ordered_json;
using namespace cubu;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kSchemaVersion = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Input {
  std::string name;
  Cubulation complex;
};

Input load_input(const std::string& spec) {
  if (spec.rfind("corpus:", 0) == 0) {
    try {
      return {spec, corpus_complex(spec.substr(7))};
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }
  return {spec, load_cub(spec)};
}

ordered_json describe(const Input& in) {
  ordered_json j;
  j["name"] = in.name;
  j["digest"] = digest(write_cub(in.complex));
  j["certificate"] = digest(canonical_certificate(in.complex));
  j["dim"] = in.complex.dim();
  j["cubes"] = in.complex.size();
  return j;
}

ordered_json relation_json(const Relation& r) {
  return {{"coeffs", r.coeffs}, {"modulus", r.modulus}, {"text", r.to_string()}};
}

ordered_json fb_json(const FbClass& b, int n) {
  const auto& q = invariants_for(n);
  ordered_json j;
  j["moduli"] = q.moduli;
  j["residues"] = b.residues;
  j["reduced2_moduli"] = reduced2_moduli(n);
  j["reduced2"] = b.reduced2;
  ordered_json extras = ordered_json::array();
  for (std::size_t i = 0; i < q.extra_relations.size(); ++i)
    extras.push_back({{"relation", q.extra_relations[i].to_string()}, {"value", b.extras[i]}});
  j["extra_relations"] = extras;
  ordered_json exact = ordered_json::array();
  for (std::size_t i = 0; i < q.exact_relations.size(); ++i)
    exact.push_back({{"relation", q.exact_relations[i].to_string()}, {"value", b.exact[i]}});
  j["exact_relations"] = exact;
  return j;
}

ordered_json site_json(const MoveSite& s, int n) {
  const auto& t = templates(n)[s.template_index];
  ordered_json frames = ordered_json::array();
  for (const auto& g : s.frames) frames.push_back(g.to_string());
  return {{"template", t.id}, {"inverse", s.inverse}, {"cubes", s.cubes}, {"frames", frames}};
}

ordered_json validation_json(const ValidationReport& r) {
  ordered_json issues = ordered_json::array();
  for (const auto& i : r.issues) issues.push_back({{"code", i.code}, {"message", i.message}});
  return {{"ok", r.ok()}, {"links", r.links}, {"issues", issues}};
}

ordered_json search_json(const PartitionSearch& s) {
  ordered_json j;
  j["found"] = s.found.has_value();
  j["partitions_tried"] = s.tried;
  j["exhausted"] = s.exhausted;
  if (!s.orientation_witness.empty()) j["orientation_witness_edges"] = s.orientation_witness;
  if (s.found) {
    const auto& f = *s.found;
    j["families"] = f.partition.families();
    j["partition"] = f.partition.family;
    j["orientation"] = f.orientation.sign;
    j["mappable"] = f.report.mappable;
    j["mappable_dfs_basis"] = f.report.mappable_dfs;
    j["embeddable"] = f.report.embeddable;
    j["injective"] = f.report.injective;
    j["standard"] = f.report.standard;
    j["simple"] = f.report.simple;
    j["coordinates"] = f.report.coordinates;
  }
  return j;
}

CubeSymmetry parse_twist(const std::string& s, int n) {
  if (s.empty()) return CubeSymmetry::identity(n);
  std::vector<int> axes;
  std::vector<bool> flips;
  std::string tok;
  std::istringstream in(s);
  while (std::getline(in, tok, ',')) {
    if (tok.size() < 2 || (tok[0] != '+' && tok[0] != '-'))
      throw UsageError("twist tokens look like +0,-1,...; got '" + tok + "'");
    flips.push_back(tok[0] == '-');
    axes.push_back(std::stoi(tok.substr(1)));
  }
  if (static_cast<int>(axes.size()) != n) throw UsageError("twist needs " + std::to_string(n) + " tokens");
  try {
    return SignedPerm::from(axes, flips);
  } catch (const Error& e) {
    throw UsageError(std::string("twist: ") + e.what());
  }
}

void emit(const ordered_json& report, const std::string& out_path) {
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw Error("cannot write " + out_path);
  f << text;
}

ordered_json envelope(const std::string& command, std::uint64_t seed) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = "cubu";
  j["tool_version"] = kVersion;
  j["command"] = command;
  j["seed"] = seed;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cubulations of low-dimensional manifolds: moves, invariants, searches"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);
  std::string out_path;
  std::uint64_t seed = 0;
  app.add_option("-o,--output", out_path, "Write the report here instead of stdout");
  app.add_option("--seed", seed, "Seed recorded in the report and used by sampling commands");

  std::string in_a, in_b, mode = "closed";
  int dim = 2, depth = 2, max_families = 6, tube_length = 3, cell_a = 0, cell_b = 0, walk_steps = 5;
  long max_states = 1000000, budget = 200000;
  bool np_only = false, census = false;
  std::string twist, journal, dot_path, cub_out;
  std::vector<std::string> whitelist;

  auto input_opt = [&](CLI::App* c, std::string& target, const char* name) {
    c->add_option(name, target, "Input: a .cub file or corpus:<name>")->required();
  };
  auto search_opts = [&](CLI::App* c) {
    c->add_option("--depth", depth, "Maximum number of moves")->check(CLI::Range(0, 64));
    c->add_option("--max-states", max_states, "State budget")->check(CLI::PositiveNumber);
    c->add_flag("--np-only", np_only, "Use np-bubble moves only");
    c->add_option("--templates", whitelist, "Restrict to these template ids");
  };

  auto* c_validate = app.add_subcommand("validate", "Structural and manifold checks");
  input_opt(c_validate, in_a, "input");
  c_validate->add_option("--mode", mode, "closed | boundary | complex")
      ->check(CLI::IsMember({"closed", "boundary", "complex"}));
  auto* c_fvec = app.add_subcommand("fvec", "f-vector and Euler characteristic");
  input_opt(c_fvec, in_a, "input");
  auto* c_inv = app.add_subcommand("invariants", "Move-invariant residues of the f-vector");
  input_opt(c_inv, in_a, "input");
  auto* c_templates = app.add_subcommand("templates", "Enumerate bubble-move templates");
  c_templates->add_option("--dim", dim, "Dimension n")->check(CLI::Range(1, 4));
  auto* c_lattice = app.add_subcommand("lattice", "Lattice of f-vector changes and its quotient");
  c_lattice->add_option("--dim", dim, "Dimension n")->check(CLI::Range(1, 4));
  auto* c_deriv = app.add_subcommand("derivative", "Derivative complex, traced circles and strata");
  input_opt(c_deriv, in_a, "input");
  c_deriv->add_option("--dot", dot_path, "Also write the image graph as DOT");
  auto* c_classify = app.add_subcommand("classify", "simple / semi-simple / neither (surfaces)");
  input_opt(c_classify, in_a, "input");
  auto* c_map = app.add_subcommand("mappable", "Search a family partition certifying mappability");
  auto* c_emb = app.add_subcommand("embeddable", "Search a family partition certifying an embedding");
  for (auto* c : {c_map, c_emb}) {
    input_opt(c, in_a, "input");
    c->add_option("--max-families", max_families, "Largest number of families tried")->check(CLI::Range(1, 16));
    c->add_option("--budget", budget, "Partitions tried at most")->check(CLI::PositiveNumber);
  }
  auto* c_sum = app.add_subcommand("consum", "Connected sum along a tube");
  input_opt(c_sum, in_a, "first");
  input_opt(c_sum, in_b, "second");
  c_sum->add_option("--cell-a", cell_a, "Removed cube of the first complex");
  c_sum->add_option("--cell-b", cell_b, "Removed cube of the second complex");
  c_sum->add_option("--tube-length", tube_length, "Tube length (>= 3)");
  c_sum->add_option("--twist", twist, "Symmetry at the far end, e.g. -1,+0");
  c_sum->add_option("--cub", cub_out, "Write the sum as .cub");
  auto* c_orbit = app.add_subcommand("orbit", "Breadth-first orbit under bubble moves");
  input_opt(c_orbit, in_a, "input");
  search_opts(c_orbit);
  c_orbit->add_option("--journal", journal, "Append-only store file; resumes if present");
  c_orbit->add_flag("--census", census, "Track the circle homology census (surfaces)");
  auto* c_path = app.add_subcommand("path", "Bidirectional move search between two complexes");
  input_opt(c_path, in_a, "from");
  input_opt(c_path, in_b, "to");
  search_opts(c_path);
  auto* c_walk = app.add_subcommand("sample", "Random walk of accepted moves, seeded by --seed");
  input_opt(c_walk, in_a, "input");
  c_walk->add_option("--steps", walk_steps, "Number of moves")->check(CLI::Range(0, 10000));
  c_walk->add_flag("--np-only", np_only, "Use np-bubble moves only");
  c_walk->add_option("--cub", cub_out, "Write the final complex as .cub");
  auto* c_dot = app.add_subcommand("export-dot", "Image graph of the immersion as DOT (surfaces)");
  input_opt(c_dot, in_a, "input");
  auto* c_corpus = app.add_subcommand("corpus", "Built-in complexes");
  c_corpus->require_subcommand(1);
  auto* c_list = c_corpus->add_subcommand("list", "List corpus names");
  auto* c_get = c_corpus->add_subcommand("get", "Print a corpus complex as .cub");
  std::string corpus_name;
  c_get->add_option("name", corpus_name)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    SearchConfig cfg;
    cfg.max_depth = depth;
    cfg.max_states = max_states;
    cfg.np_only = np_only;
    cfg.template_whitelist = whitelist;
    auto report = envelope(app.get_subcommands().front()->get_name(), seed);

    if (*c_corpus) {
      if (*c_list) {
        report["command"] = "corpus list";
        report["result"] = {{"names", corpus_names()}};
        emit(report, out_path);
      } else {
        Cubulation c;
        try {
          c = corpus_complex(corpus_name);
        } catch (const Error& e) {
          throw UsageError(e.what());
        }
        const std::string text = write_cub(c);
        if (out_path.empty()) std::cout << text;
        else std::ofstream(out_path) << text;
      }
      return 0;
    }
    if (*c_templates || *c_lattice) {
      ordered_json r;
      r["dim"] = dim;
      if (*c_templates) {
        ordered_json list = ordered_json::array();
        for (const auto& t : templates(dim))
          list.push_back({{"id", t.id},
                          {"np", t.np},
                          {"facets_removed", t.B.facets},
                          {"facets_inserted", t.Bp.facets},
                          {"delta_f", t.delta_f}});
        r["templates"] = list;
        int np = 0;
        for (const auto& t : templates(dim)) np += t.np;
        r["np_count"] = np;
        r["non_np_count"] = static_cast<int>(templates(dim).size()) - np;
      } else {
        const auto l = move_lattice(dim);
        const auto& q = invariants_for(dim);
        r["template_ids"] = l.template_ids;
        r["generators"] = l.generators;
        r["basis"] = l.basis;
        r["snf_diagonal"] = q.snf_diagonal;
        r["quotient_invariant_factors"] = q.quotient;
        r["moduli"] = q.moduli;
        r["product_lattice"] = q.product_lattice;
        ordered_json ex = ordered_json::array(), xr = ordered_json::array();
        for (const auto& x : q.exact_relations) ex.push_back(relation_json(x));
        for (const auto& x : q.extra_relations) xr.push_back(relation_json(x));
        r["exact_relations"] = ex;
        r["extra_relations"] = xr;
      }
      report["result"] = r;
      emit(report, out_path);
      return 0;
    }

    const Input a = load_input(in_a);
    report["inputs"] = ordered_json::array({describe(a)});
    const Cubulation& c = a.complex;
    ordered_json r;
    int status = 0;
    auto need_surface = [&](const char* what) {
      if (c.dim() != 2) throw Error(std::string(what) + " needs a surface (dim 2)");
    };

    if (*c_validate) {
      const auto m = mode == "closed"   ? ValidationMode::closed_manifold
                     : mode == "boundary" ? ValidationMode::manifold_with_boundary
                                          : ValidationMode::complex;
      const auto v = validate(c, m);
      r = validation_json(v);
      r["mode"] = mode;
      status = v.ok() ? 0 : 1;
    } else if (*c_fvec) {
      const auto f = f_vector(c);
      r = {{"f_vector", f}, {"euler_characteristic", euler_characteristic(f)}};
    } else if (*c_inv) {
      r = fb_json(fb_class(c), c.dim());
      r["f_vector"] = f_vector(c);
      if (c.dim() == 2 && validate(c, ValidationMode::closed_manifold).ok() && euler_characteristic(c) == 2)
        r["sphere_class"] = bordism_invariant_s2(c);
      const auto b = bordism_group_report(c.dim());
      r["immersion_bordism"] = {{"unoriented", b.immersions.value_or("unknown")},
                                {"oriented", b.oriented_immersions.value_or("unknown")}};
    } else if (*c_deriv) {
      const auto d = derivative_complex(c);
      r["sheets"] = d.sheets;
      r["components"] = d.components.size();
      if (c.dim() == 2) {
        const auto t = trace_circles(c);
        ordered_json comps = ordered_json::array();
        for (const auto& k : t.components)
          comps.push_back({{"length", k.passages.size()}, {"gauss_code", k.gauss_code}, {"ns", k.ns}});
        r["circles"] = comps;
        r["ns_total"] = t.ns_total;
      }
      const auto s = strata(c);
      r["strata_cells"] = s.cells;
      r["strata_euler"] = s.euler;
      r["parity_check"] = babson_chan_check(c);
      if (!dot_path.empty()) {
        need_surface("--dot");
        std::ofstream(dot_path) << image_dot(c);
      }
    } else if (*c_classify) {
      need_surface("classify");
      const auto k = classify_surface(c);
      r = {{"class", to_string(k.kind)}, {"ns", k.ns}};
      if (k.failing_component >= 0) r["failing_circle"] = k.failing_component;
      ordered_json m = ordered_json::array();
      for (const auto& x : k.matchings) m.push_back(x);
      r["cancelling_pairs"] = m;
    } else if (*c_map || *c_emb) {
      const auto s = search_partition(c, max_families, budget);
      r = search_json(s);
      r["standard"] = is_standard(c);
      r["simple_general"] = is_simple_general(c);
      if (*c_emb) r["verdict"] = s.found && s.found->report.embeddable ? "embeddable" : "no certificate found";
      else r["verdict"] = s.found && s.found->report.mappable ? "mappable" : "no certificate found";
    } else if (*c_sum) {
      const Input b = load_input(in_b);
      report["inputs"].push_back(describe(b));
      SumSpec spec;
      spec.cell_c = cell_a;
      spec.cell_d = cell_b;
      spec.length = tube_length;
      spec.twist = parse_twist(twist, c.dim());
      const auto s = connected_sum(c, b.complex, spec);
      r["ok"] = s.ok;
      r["twist"] = spec.twist.to_string();
      r["tube_length"] = tube_length;
      if (!s.ok) {
        r["diagnostic"] = s.diagnostic;
        status = 1;
      } else {
        r["f_vector"] = f_vector(s.complex);
        r["euler_characteristic"] = euler_characteristic(s.complex);
        r["digest"] = digest(write_cub(s.complex));
        if (c.dim() == 2) {
          const auto add = invariant_additivity_check(c, b.complex, spec);
          r["additivity"] = {{"ok", add.ok},
                             {"f0_parity", add.f0_parity},
                             {"components", {add.predicted_components, add.actual_components}},
                             {"ns", {add.predicted_ns, add.actual_ns}},
                             {"merged", add.merged}};
        }
        if (!cub_out.empty()) std::ofstream(cub_out) << write_cub(s.complex);
      }
    } else if (*c_orbit) {
      cfg.journal = journal;
      cfg.track_census = census;
      const auto store = bfs_orbit(c, cfg);
      std::vector<long> per_depth(store.completed_depth + 2, 0);
      for (const auto& e : store.entries) {
        if (e.depth >= static_cast<int>(per_depth.size())) per_depth.resize(e.depth + 1);
        ++per_depth[e.depth];
      }
      while (!per_depth.empty() && per_depth.back() == 0) per_depth.pop_back();
      const auto audit = invariant_audit(store);
      r = {{"states", store.entries.size()},
           {"per_depth", per_depth},
           {"completed_depth", store.completed_depth},
           {"truncated", store.truncated},
           {"rejected_moves", store.rejected_moves},
           {"fb_constant", true},
           {"fb", fb_json(audit.fb, c.dim())}};
      if (audit.census_tracked) r["census"] = audit.census;
    } else if (*c_path) {
      const Input b = load_input(in_b);
      report["inputs"].push_back(describe(b));
      const auto p = find_path(c, b.complex, cfg);
      r["status"] = p.status == PathStatus::found       ? "found"
                    : p.status == PathStatus::separated ? "provably-inequivalent"
                                                        : "not-found-within-bounds";
      r["states"] = p.states;
      r["truncated"] = p.truncated;
      if (!p.reason.empty()) r["reason"] = p.reason;
      if (p.status == PathStatus::found) {
        ordered_json steps = ordered_json::array();
        for (const auto& s : p.path.steps) {
          auto j = site_json(s.site, c.dim());
          j["source"] = digest(s.source);
          steps.push_back(j);
        }
        r["length"] = p.path.steps.size();
        r["steps"] = steps;
        r["replay_verified"] = true;
      }
    } else if (*c_walk) {
      const auto walk = random_walk(c, walk_steps, seed, cfg);
      ordered_json fs = ordered_json::array();
      for (const auto& x : walk) fs.push_back(f_vector(x));
      r = {{"steps", walk.size() - 1}, {"f_vectors", fs}, {"final", digest(write_cub(walk.back()))}};
      if (!cub_out.empty()) std::ofstream(cub_out) << write_cub(walk.back());
    } else if (*c_dot) {
      need_surface("export-dot");
      const std::string dot = image_dot(c);
      if (out_path.empty()) std::cout << dot;
      else std::ofstream(out_path) << dot;
      return 0;
    }
    report["result"] = r;
    emit(report, out_path);
    return status;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
