#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "cubu/invariants.hpp"
#include "cubu/moves.hpp"

using namespace cubu;

namespace {

// Determinant by cofactor expansion, fine for the tiny matrices used here.
std::int64_t det(const IntMatrix& m) {
  const std::size_t k = m.size();
  if (k == 1) return m[0][0];
  std::int64_t s = 0;
  for (std::size_t j = 0; j < k; ++j) {
    IntMatrix minor;
    for (std::size_t i = 1; i < k; ++i) {
      std::vector<std::int64_t> row;
      for (std::size_t c = 0; c < k; ++c)
        if (c != j) row.push_back(m[i][c]);
      minor.push_back(row);
    }
    s += (j % 2 ? -1 : 1) * m[0][j] * det(minor);
  }
  return s;
}

// Invariant factors from determinantal divisors: d_k = gcd of k x k minors.
std::vector<std::int64_t> naive_factors(const IntMatrix& a, std::size_t cols) {
  const std::size_t r = a.size();
  std::vector<std::int64_t> dk{1};
  for (std::size_t k = 1; k <= std::min(r, cols); ++k) {
    std::int64_t g = 0;
    for (unsigned rm = 0; rm < (1u << r); ++rm) {
      if (static_cast<std::size_t>(std::popcount(rm)) != k) continue;
      for (unsigned cm = 0; cm < (1u << cols); ++cm) {
        if (static_cast<std::size_t>(std::popcount(cm)) != k) continue;
        IntMatrix sub;
        for (std::size_t i = 0; i < r; ++i) {
          if (!((rm >> i) & 1u)) continue;
          std::vector<std::int64_t> row;
          for (std::size_t j = 0; j < cols; ++j)
            if ((cm >> j) & 1u) row.push_back(a[i][j]);
          sub.push_back(row);
        }
        g = std::gcd(g, det(sub));
      }
    }
    if (g == 0) break;
    dk.push_back(g);
  }
  std::vector<std::int64_t> out;
  for (std::size_t k = 1; k < dk.size(); ++k) out.push_back(dk[k] / dk[k - 1]);
  return out;
}

IntMatrix deltas(int n) {
  IntMatrix m;
  for (const auto& t : templates(n)) m.push_back(t.delta_f);
  return m;
}

}  // namespace

TEST(Smith, MatchesDeterminantalDivisors) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    IntMatrix a(r, std::vector<std::int64_t>(c));
    for (auto& row : a)
      for (auto& x : row) x = static_cast<std::int64_t>(rng() % 13) - 6;
    const auto s = smith_normal_form(a, c);
    std::vector<std::int64_t> nonzero;
    for (auto d : s.diagonal)
      if (d) nonzero.push_back(d);
    EXPECT_EQ(nonzero, naive_factors(a, c));
    EXPECT_EQ(multiply(multiply(s.U, a), s.V), s.D);
  }
}

TEST(Smith, LatticeDeltasAgainstOracle) {
  for (int n = 1; n <= 3; ++n) {
    const auto a = deltas(n);
    const auto s = smith_normal_form(a, n + 1);
    std::vector<std::int64_t> nonzero;
    for (auto d : s.diagonal)
      if (d) nonzero.push_back(d);
    EXPECT_EQ(nonzero, naive_factors(a, n + 1)) << n;
  }
}

TEST(Smith, OverflowIsDetected) {
  EXPECT_THROW(checked::mul(std::int64_t{1} << 40, std::int64_t{1} << 40), Error);
}

TEST(Invariants, ModuliFollowClosedForm) {
  // a_n = 2, a_{n-1} = 2n, a_{n-2} = 2, a_0 = 2, a_1 = 3 + (-1)^n.
  EXPECT_EQ(invariants_for(1).moduli, (std::vector<std::int64_t>{2, 2}));
  EXPECT_EQ(invariants_for(2).moduli, (std::vector<std::int64_t>{2, 4, 2}));
  EXPECT_EQ(invariants_for(3).moduli, (std::vector<std::int64_t>{2, 2, 6, 2}));
  for (int n = 2; n <= 3; ++n) {
    const auto& a = invariants_for(n).moduli;
    EXPECT_EQ(a[n], 2);
    EXPECT_EQ(a[n - 1], 2 * n);
    EXPECT_EQ(a[0], 2);
    EXPECT_EQ(a[1], n == 2 ? 4 : 3 + (n % 2 ? -1 : 1));
  }
}

TEST(Invariants, EveryDeltaVanishesModuloModuli) {
  for (int n = 1; n <= 3; ++n) {
    const auto& q = invariants_for(n);
    for (const auto& t : templates(n)) {
      for (int i = 0; i <= n; ++i) EXPECT_EQ(t.delta_f[i] % q.moduli[i], 0) << t.id;
      for (const auto& r : q.extra_relations) EXPECT_EQ(r.value(t.delta_f), 0) << r.to_string();
      for (const auto& r : q.exact_relations) EXPECT_EQ(r.value(t.delta_f), 0) << r.to_string();
    }
  }
}

TEST(Invariants, ExtraRelationInDimensionThree) {
  const auto& q = invariants_for(3);
  bool found = false;
  for (const auto& r : q.extra_relations) found |= r.to_string() == "f0 + f1 mod 4";
  EXPECT_TRUE(found);
  for (const auto& t : templates(3)) EXPECT_EQ((t.delta_f[0] + t.delta_f[1]) % 4, 0) << t.id;
  // Not a consequence of f0 mod 2 and f1 mod 2 alone.
  EXPECT_NE((1 + 1) % 4, 0);
  EXPECT_FALSE(q.product_lattice);
}

TEST(Invariants, FbClassOfCorpus) {
  EXPECT_EQ(fb_class(FVector{8, 12, 6}).residues, (std::vector<std::int64_t>{0, 0, 0}));
  EXPECT_EQ(fb_class(FVector{4, 4, 2}).residues, (std::vector<std::int64_t>{0, 0, 0}));
  EXPECT_EQ(fb_class(FVector{3, 3}).residues, (std::vector<std::int64_t>{1, 1}));
  EXPECT_EQ(reduced2_moduli(3), (std::vector<std::int64_t>{2, 2, 6, 2}));
}

TEST(Invariants, BordismTable) {
  EXPECT_EQ(stable_stem(3).value(), "Z/24");
  EXPECT_EQ(stable_stem_rp_infinity(3).value(), "Z/8");
  EXPECT_EQ(bordism_group_report(4).oriented_immersions.value(), "Z/24");
  EXPECT_EQ(bordism_group_report(3).immersions.value(), "Z/8");
  EXPECT_EQ(bordism_group_report(2).immersions.value(), "Z/2");
}
