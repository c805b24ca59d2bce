// The .cub text format.
//
//   CUB 1
//   dim <n>
//   cube <name>
//   glue <a>.<fa> <b>.<fb> [<sign><axis> ...]
//   vcube <v0> ... <v_{2^n-1}>
//
// '#' starts a comment. A file uses either cube/glue lines or vcube lines.
#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cubulation.hpp"

namespace cubu {

struct ParseError : Error {
  int line;
  ParseError(int line_no, const std::string& what)
      : Error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

namespace detail {

inline std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line.substr(0, line.find('#')));
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

inline int parse_int(const std::string& s, int line, const char* what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw ParseError(line, std::string("expected an integer ") + what + ", got '" + s + "'");
  return v;
}

}  // namespace detail

inline Cubulation read_cub(std::istream& in) {
  std::string raw;
  int line = 0;
  int dim = -1;
  bool header = false;
  std::map<std::string, int> names;
  struct Glue {
    int line, a, fa, b, fb;
    AttachingMap map;
  };
  std::vector<Glue> glues;
  std::vector<std::vector<std::string>> vcubes;
  int cubes = 0;

  while (std::getline(in, raw)) {
    ++line;
    const auto t = detail::tokens(raw);
    if (t.empty()) continue;
    if (!header) {
      if (t.size() != 2 || t[0] != "CUB" || t[1] != "1") throw ParseError(line, "expected header 'CUB 1'");
      header = true;
      continue;
    }
    if (dim < 0) {
      if (t.size() != 2 || t[0] != "dim") throw ParseError(line, "expected 'dim <n>'");
      dim = detail::parse_int(t[1], line, "dimension");
      if (dim < 1 || dim > kMaxAxes - 1) throw ParseError(line, "dimension must be in 1..4");
      continue;
    }
    if (t[0] == "cube") {
      if (t.size() != 2) throw ParseError(line, "expected 'cube <name>'");
      if (!vcubes.empty()) throw ParseError(line, "cube lines cannot be mixed with vcube lines");
      if (!names.emplace(t[1], cubes).second) throw ParseError(line, "duplicate cube name '" + t[1] + "'");
      ++cubes;
    } else if (t[0] == "glue") {
      if (!vcubes.empty()) throw ParseError(line, "glue lines cannot be mixed with vcube lines");
      if (t.size() != 3 && t.size() != static_cast<std::size_t>(3 + dim - 1))
        throw ParseError(line, "expected 'glue <a>.<fa> <b>.<fb>' and optionally " + std::to_string(dim - 1) +
                                   " permutation tokens");
      auto slot = [&](const std::string& s) {
        const auto dot = s.rfind('.');
        if (dot == std::string::npos) throw ParseError(line, "expected <cube>.<facet>, got '" + s + "'");
        const auto it = names.find(s.substr(0, dot));
        if (it == names.end()) throw ParseError(line, "unknown cube '" + s.substr(0, dot) + "'");
        const int f = detail::parse_int(s.substr(dot + 1), line, "facet index");
        if (f < 0 || f >= 2 * dim) throw ParseError(line, "facet index out of range in '" + s + "'");
        return std::pair{it->second, f};
      };
      const auto [a, fa] = slot(t[1]);
      const auto [b, fb] = slot(t[2]);
      AttachingMap map = AttachingMap::identity(dim - 1);
      if (t.size() > 3) {
        std::vector<int> axes;
        std::vector<bool> flips;
        for (std::size_t k = 3; k < t.size(); ++k) {
          const std::string& p = t[k];
          if (p.size() < 2 || (p[0] != '+' && p[0] != '-'))
            throw ParseError(line, "permutation token must look like +0 or -1, got '" + p + "'");
          flips.push_back(p[0] == '-');
          axes.push_back(detail::parse_int(p.substr(1), line, "axis"));
        }
        try {
          map = SignedPerm::from(axes, flips);
        } catch (const Error&) {
          throw ParseError(line, "permutation is not a bijection of the facet axes");
        }
      }
      glues.push_back({line, a, fa, b, fb, map});
    } else if (t[0] == "vcube") {
      if (cubes > 0) throw ParseError(line, "vcube lines cannot be mixed with cube/glue lines");
      if (t.size() != 1 + (std::size_t{1} << dim))
        throw ParseError(line, "vcube needs " + std::to_string(1 << dim) + " vertex labels");
      vcubes.emplace_back(t.begin() + 1, t.end());
    } else {
      throw ParseError(line, "unknown directive '" + t[0] + "'");
    }
  }
  if (!header) throw ParseError(line + 1, "missing header 'CUB 1'");
  if (dim < 0) throw ParseError(line + 1, "missing 'dim <n>'");
  if (!vcubes.empty()) {
    try {
      return from_vertex_cubes(dim, vcubes);
    } catch (const Error& e) {
      throw ParseError(line, e.what());
    }
  }
  Cubulation c(dim, cubes);
  for (const auto& g : glues) {
    if (c.gluing(g.a, g.fa).paired() || c.gluing(g.b, g.fb).paired() || (g.a == g.b && g.fa == g.fb))
      throw ParseError(g.line, "facet already appears in another glue line");
    c.glue(g.a, g.fa, g.b, g.fb, g.map);
  }
  return c;
}

inline Cubulation parse_cub(const std::string& text) {
  std::istringstream in(text);
  return read_cub(in);
}

inline Cubulation load_cub(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_cub(in);
}

/// Canonical text: cubes named c0, c1, ...; one glue line per pairing, from
/// the smaller slot; identity maps omitted.
inline std::string write_cub(const Cubulation& c) {
  std::ostringstream out;
  out << "CUB 1\ndim " << c.dim() << "\n";
  for (int q = 0; q < c.size(); ++q) out << "cube c" << q << "\n";
  for (int q = 0; q < c.size(); ++q)
    for (int f = 0; f < c.facets_per_cube(); ++f) {
      const Gluing& g = c.gluing(q, f);
      if (!g.paired() || g.cube < q || (g.cube == q && g.facet < f)) continue;
      out << "glue c" << q << "." << f << " c" << g.cube << "." << int{g.facet};
      if (!g.map.is_identity()) out << " " << g.map.to_string();
      out << "\n";
    }
  return out.str();
}

}  // namespace cubu
