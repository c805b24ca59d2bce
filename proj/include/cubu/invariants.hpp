// The move lattice, its quotient invariants, fb classes and the bordism
// group table.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "moves.hpp"
#include "smith.hpp"

namespace cubu {

struct MoveLattice {
  int n = 0;
  std::vector<std::string> template_ids;
  IntMatrix generators;  // one delta_f per template
  IntMatrix basis;       // Hermite normal form, echelon rows
};

inline MoveLattice move_lattice(int n) {
  MoveLattice l;
  l.n = n;
  for (const auto& t : templates(n)) {
    l.template_ids.push_back(t.id);
    l.generators.push_back(t.delta_f);
  }
  l.basis = hermite_basis(l.generators, static_cast<std::size_t>(n + 1));
  return l;
}

/// sum_i coeffs[i] * f_i == 0 modulo `modulus` (exactly, when modulus is 0).
struct Relation {
  std::vector<std::int64_t> coeffs;
  std::int64_t modulus = 0;

  std::int64_t value(const FVector& f) const {
    std::int64_t v = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) v = checked::axpy(v, coeffs[i], f[i]);
    if (modulus == 0) return v;
    return ((v % modulus) + modulus) % modulus;
  }
  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      const auto c = coeffs[i];
      if (c == 0) continue;
      if (!s.empty()) s += c > 0 ? " + " : " - ";
      else if (c < 0) s += "-";
      if (std::llabs(c) != 1) s += std::to_string(std::llabs(c));
      s += "f" + std::to_string(i);
    }
    return s + (modulus ? " mod " + std::to_string(modulus) : " = const");
  }
  friend bool operator==(const Relation&, const Relation&) = default;
};

struct QuotientInvariants {
  int n = 0;
  std::vector<std::int64_t> snf_diagonal;   // of the generator matrix, zeros last
  std::vector<std::int64_t> quotient;       // invariant factors of Z^{n+1}/Lambda other than 1; 0 = free Z
  std::vector<std::int64_t> moduli;         // a_i(n)
  std::vector<Relation> exact_relations;    // integer functionals vanishing on Lambda
  std::vector<Relation> extra_relations;    // modular functionals not implied by the moduli
  bool product_lattice = false;             // Lambda == prod a_i Z
  IntMatrix unit_preimages;                 // e_i, mapping onto the i-th unit of prod Z/a_i
};

namespace detail {

/// Does the relation hold on every x satisfying all of `known`?
inline bool implied(const std::vector<Relation>& known, const Relation& r, std::size_t dim) {
  // Solutions x of known: kernel of [K | -diag(m)] projected to x.
  const std::size_t k = known.size();
  IntMatrix K(k, std::vector<std::int64_t>(dim + k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < dim; ++j) K[i][j] = known[i].coeffs[j];
    K[i][dim + i] = -known[i].modulus;
  }
  std::vector<std::vector<std::int64_t>> gens;
  if (k == 0) {
    for (std::size_t j = 0; j < dim; ++j) {
      std::vector<std::int64_t> e(dim, 0);
      e[j] = 1;
      gens.push_back(e);
    }
  } else {
    for (auto& v : kernel_basis(K, dim + k)) gens.emplace_back(v.begin(), v.begin() + static_cast<long>(dim));
  }
  for (const auto& x : gens) {
    std::int64_t v = 0;
    for (std::size_t j = 0; j < dim; ++j) v = checked::axpy(v, r.coeffs[j], x[j]);
    if (r.modulus == 0 ? v != 0 : v % r.modulus != 0) return false;
  }
  return true;
}

}  // namespace detail

inline QuotientInvariants quotient_invariants(int n) {
  const MoveLattice l = move_lattice(n);
  const std::size_t dim = static_cast<std::size_t>(n + 1);
  QuotientInvariants q;
  q.n = n;
  const SmithForm s = smith_normal_form(l.generators, dim);
  q.snf_diagonal = s.diagonal;
  for (std::size_t i = 0; i < dim; ++i) {
    const std::int64_t d = i < s.diagonal.size() ? s.diagonal[i] : 0;
    if (d != 1) q.quotient.push_back(d);
  }
  q.moduli.assign(dim, 0);
  for (const auto& g : l.generators)
    for (std::size_t i = 0; i < dim; ++i) q.moduli[i] = std::gcd(q.moduli[i], g[i]);
  q.product_lattice = true;
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<std::int64_t> v(dim, 0);
    v[i] = q.moduli[i];
    q.product_lattice &= in_lattice(l.basis, v);
    std::vector<std::int64_t> e(dim, 0);
    e[i] = 1;
    q.unit_preimages.push_back(e);
  }
  for (auto& v : kernel_basis(l.generators, dim)) q.exact_relations.push_back({hermite_basis({v}, dim)[0], 0});

  std::vector<Relation> known;
  for (std::size_t i = 0; i < dim; ++i) {
    Relation r{std::vector<std::int64_t>(dim, 0), q.moduli[i]};
    r.coeffs[i] = 1;
    known.push_back(r);
  }
  // Candidates: coefficients in -2..2, modulus 2..8, ordered by modulus,
  // support size, support position, coefficients. Reductions of the exact
  // relations carry no new information and are skipped.
  std::vector<Relation> candidates;
  std::vector<std::int64_t> c(dim, -2);
  while (true) {
    for (std::int64_t m = 2; m <= 8; ++m) {
      Relation r{c, m};
      bool trivial = true, kills = true;
      for (auto x : c) trivial &= x % m == 0;
      for (const auto& g : l.generators) kills &= r.value(g) == 0;
      if (!trivial && kills && !detail::implied(known, r, dim) && !detail::implied(q.exact_relations, r, dim))
        candidates.push_back(r);
    }
    std::size_t i = 0;
    while (i < dim && c[i] == 2) c[i++] = -2;
    if (i == dim) break;
    ++c[i];
  }
  auto key = [](const Relation& r) {
    std::vector<std::int64_t> k{r.modulus};
    std::vector<std::int64_t> support;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i)
      if (r.coeffs[i]) support.push_back(static_cast<std::int64_t>(i));
    k.push_back(static_cast<std::int64_t>(support.size()));
    k.insert(k.end(), support.begin(), support.end());
    for (auto x : r.coeffs) k.push_back(x < 0 ? 2 * -x : 2 * x - 1);  // prefer positive, small
    return k;
  };
  std::sort(candidates.begin(), candidates.end(), [&](const Relation& a, const Relation& b) { return key(a) < key(b); });
  for (const auto& r : candidates) {
    if (detail::implied(known, r, dim)) continue;
    q.extra_relations.push_back(r);
    known.push_back(r);
  }
  return q;
}

/// Cached quotient_invariants(n).
inline const QuotientInvariants& invariants_for(int n) {
  static std::array<std::optional<QuotientInvariants>, 5> cache;
  if (n < 1 || n > 4) throw Error("invariants: n must be in 1..4");
  if (!cache[n]) cache[n] = quotient_invariants(n);
  return *cache[n];
}

struct FbClass {
  std::vector<std::int64_t> residues;  // f_i mod a_i
  std::vector<std::int64_t> reduced2;  // f_i mod (2, ..., 2, 2n, 2)
  std::vector<std::int64_t> extras;    // values of the extra relations
  std::vector<std::int64_t> exact;     // values of the exact relations
  friend bool operator==(const FbClass&, const FbClass&) = default;
};

inline std::vector<std::int64_t> reduced2_moduli(int n) {
  std::vector<std::int64_t> m(static_cast<std::size_t>(n + 1), 2);
  if (n >= 1) m[static_cast<std::size_t>(n - 1)] = 2 * n;
  return m;
}

inline FbClass fb_class(const FVector& f) {
  const int n = static_cast<int>(f.size()) - 1;
  const QuotientInvariants& q = invariants_for(n);
  auto mod = [](std::int64_t v, std::int64_t m) { return m == 0 ? v : ((v % m) + m) % m; };
  FbClass b;
  const auto r2 = reduced2_moduli(n);
  for (int i = 0; i <= n; ++i) {
    b.residues.push_back(mod(f[i], q.moduli[i]));
    b.reduced2.push_back(mod(f[i], r2[i]));
  }
  for (const auto& r : q.extra_relations) b.extras.push_back(r.value(f));
  for (const auto& r : q.exact_relations) b.exact.push_back(r.value(f));
  return b;
}

inline FbClass fb_class(const Cubulation& c) { return fb_class(f_vector(c)); }

/// Reduced residues; for surfaces only f_0 mod 2 carries information.
inline std::vector<std::int64_t> fb2_class(const Cubulation& c) { return fb_class(c).reduced2; }

/// Stable homotopy groups as tabulated: pi_n^s for n = 0..8.
inline std::optional<std::string> stable_stem(int n) {
  static const char* table[] = {"Z", "Z/2", "Z/2", "Z/24", "0", "0", "Z/2", "Z/240", "Z/2+Z/2"};
  if (n < 0 || n > 8) return std::nullopt;
  return table[n];
}

/// pi_n^s(RP^inf) for n = 1..3.
inline std::optional<std::string> stable_stem_rp_infinity(int n) {
  static const char* table[] = {"Z/2", "Z/2", "Z/8"};
  if (n < 1 || n > 3) return std::nullopt;
  return table[n - 1];
}

struct BordismReport {
  int n = 0;
  std::optional<std::string> immersions;           // I(S^n) = pi_n^s(RP^inf)
  std::optional<std::string> oriented_immersions;  // I+(S^n) = pi_{n-1}^s
};

inline BordismReport bordism_group_report(int n) {
  return {n, stable_stem_rp_infinity(n), n >= 1 ? stable_stem(n - 1) : std::nullopt};
}

}  // namespace cubu
