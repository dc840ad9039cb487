#include <gtest/gtest.h>

#include <random>

#include "aqcc/convo.hpp"
#include "aqcc/error.hpp"
#include "aqcc/trellis.hpp"

using namespace aqcc;
using namespace aqcc::convo;
using gf::Field;

namespace {

PolyMatrix pm(FieldPtr f, std::size_t r, std::size_t c, const std::vector<std::vector<Elem>>& entries) {
  PolyMatrix m(f, r, c);
  for (std::size_t i = 0; i < r * c; ++i) {
    Poly p(entries[i].begin(), entries[i].end());
    trim(p);
    m.at(i / c, i % c) = p;
  }
  return m;
}

// Every vector of n polynomials of degree <= L, as a callback.
template <class Fn>
void for_each_poly_vector(const gf::Field& f, std::size_t n, int L, Fn fn) {
  const std::size_t slots = n * (L + 1);
  std::vector<Elem> digits(slots, 0);
  while (true) {
    std::size_t i = 0;
    while (i < slots && ++digits[i] == f.q()) digits[i++] = 0;
    if (i == slots) break;
    std::vector<Poly> v(n);
    for (std::size_t c = 0; c < n; ++c) {
      v[c].assign(digits.begin() + c * (L + 1), digits.begin() + (c + 1) * (L + 1));
      trim(v[c]);
    }
    fn(v);
  }
}

// Lightest u G over inputs of degree <= L with some row outside `sub` nonzero.
int brute_free(const PolyMatrix& g, int L, const std::vector<std::size_t>& sub = {}) {
  std::vector<char> in_sub(g.rows(), 0);
  for (auto r : sub) in_sub[r] = 1;
  int best = block::kInfinity;
  for_each_poly_vector(*g.field(), g.rows(), L, [&](const std::vector<Poly>& u) {
    bool outside = false;
    for (std::size_t r = 0; r < g.rows(); ++r) outside |= !in_sub[r] && !u[r].empty();
    if (outside) best = std::min(best, int(weight(encode(g, u))));
  });
  return best;
}

// Lightest v of degree <= L orthogonal (all shifts) to the rows in `sub`
// and, when `sub` is a proper subset, not orthogonal to all of g.
int brute_dual(const PolyMatrix& g, int L, const std::vector<std::size_t>* sub = nullptr) {
  int best = block::kInfinity;
  PolyMatrix w = sub ? g.select_rows(*sub) : g;
  for_each_poly_vector(*g.field(), g.cols(), L, [&](const std::vector<Poly>& v) {
    int wt = int(weight(v));
    if (wt >= best) return;
    if (!orthogonal_to(w, v)) return;
    if (sub && orthogonal_to(g, v)) return;
    best = wt;
  });
  return best;
}

}  // namespace

TEST(FreeDistance, ClassicCodes) {
  auto f = Field::create(2, 1);
  auto g = pm(f, 1, 2, {{1, 1, 1}, {1, 0, 1}});
  auto r = free_distance(g);
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.upper, 5);
  EXPECT_EQ(int(weight(r.witness)), 5);
  EXPECT_EQ(brute_free(g, 4), 5);

  auto g2 = pm(f, 1, 2, {{1}, {1, 1}});
  EXPECT_EQ(free_distance(g2).upper, 3);
}

TEST(FreeDistance, RefusesCatastrophic) {
  auto f = Field::create(2, 1);
  for (auto g : {pm(f, 1, 1, {{1, 1}}), pm(f, 1, 2, {{1, 1}, {1, 0, 1}})}) {
    try {
      free_distance(g);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::CatastrophicEncoder);
    }
  }
}

TEST(FreeDistance, BudgetFallback) {
  auto f = Field::create(2, 1);
  auto g = pm(f, 1, 2, {{1, 1, 1}, {1, 0, 1}});
  SearchBudget tiny;
  tiny.states = 2;
  auto r = free_distance(g, tiny, 3, "dual-distance bound");
  EXPECT_FALSE(r.exact);
  EXPECT_EQ(r.lower, 3);
  EXPECT_EQ(r.lower_provenance, "dual-distance bound");
  EXPECT_EQ(r.upper, 5);
  EXPECT_EQ(int(weight(r.witness)), 5);
}

// Exact search against bounded enumeration, plus invariance under row
// permutation and scaling.
TEST(FreeDistance, RandomAgainstEnumeration) {
  std::mt19937 rng(5);
  int compared = 0;
  for (std::uint32_t q : {2u, 3u}) {
    auto f = Field::of_order(q);
    std::uniform_int_distribution<Elem> d(0, q - 1);
    for (int trial = 0; trial < 40 && compared < 30; ++trial) {
      std::size_t k = 1 + trial % 2, n = k + 1 + trial % 2;
      PolyMatrix g(f, k, n);
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < n; ++c) {
          Poly p{d(rng), r == 0 ? d(rng) : Elem(0)};
          trim(p);
          g.at(r, c) = p;
        }
      if (block::rank(g.evaluate(1)) < k && block::rank(g.coefficient(0)) < k) continue;
      BasicResult b;
      try {
        b = is_basic(g);
      } catch (const Error&) {
        continue;
      }
      if (!b.basic || !is_reduced(g)) continue;
      auto r = free_distance(g);
      ASSERT_TRUE(r.exact);
      int L = q == 2 ? 5 : 3;
      if (std::size_t(L + 1) * k * (q == 2 ? 1 : 2) > 12) L = q == 2 ? 11 / k - 1 : 2;
      EXPECT_LE(r.upper, brute_free(g, L)) << g.to_text();
      EXPECT_EQ(r.upper, brute_free(g, 4 / int(k) + 1)) << g.to_text();
      std::vector<std::size_t> perm(k);
      for (std::size_t i = 0; i < k; ++i) perm[i] = k - 1 - i;
      auto gp = g.select_rows(perm);
      if (q == 3)
        for (std::size_t c = 0; c < n; ++c) gp.at(0, c) = poly_scale(*f, gp.at(0, c), 2);
      EXPECT_EQ(free_distance(gp).upper, r.upper);
      ++compared;
    }
  }
  EXPECT_GE(compared, 10);
}

TEST(DualFreeDistance, MatchesDualGenerator) {
  std::mt19937 rng(9);
  for (std::uint32_t q : {2u, 3u, 4u}) {
    auto f = Field::of_order(q);
    for (int trial = 0; trial < 8; ++trial) {
      std::size_t n = 4 + trial % 3, kappa = 1 + trial % 2;
      block::Matrix hm;
      std::uniform_int_distribution<Elem> d(0, q - 1);
      do {
        hm = block::Matrix(f, kappa + 1, n);
        for (std::size_t i = 0; i < hm.rows(); ++i)
          for (std::size_t j = 0; j < n; ++j) hm(i, j) = d(rng);
      } while (block::rank(hm) < hm.rows());
      auto g = split_to_generator({hm, {kappa, 1}});
      auto viaSyndrome = dual_free_distance(g);
      auto viaEncoder = free_distance(dual_generator(g));
      ASSERT_TRUE(viaSyndrome.exact);
      ASSERT_TRUE(viaEncoder.exact);
      EXPECT_EQ(viaSyndrome.upper, viaEncoder.upper) << g.to_text();
      EXPECT_TRUE(orthogonal_to(g, viaSyndrome.witness));
    }
  }
}

TEST(DualFreeDistance, SmallEnumeration) {
  auto f = Field::create(2, 1);
  auto g = pm(f, 1, 3, {{1, 1}, {1}, {0, 1}});
  auto r = dual_free_distance(g);
  ASSERT_TRUE(r.exact);
  EXPECT_EQ(r.upper, brute_dual(g, 3));
}

TEST(RelativeDistance, AgainstEnumeration) {
  auto f = Field::create(2, 1);
  // Rows: [1+D, 1, D, 1] and [1, 1, 1, 0].
  auto g = pm(f, 2, 4, {{1, 1}, {1}, {0, 1}, {1}, {1}, {1}, {1}, {}});
  ASSERT_TRUE(is_basic(g).basic);
  ASSERT_TRUE(is_reduced(g));
  std::vector<std::size_t> sub{1};
  auto rel = relative_free_distance(g, sub);
  ASSERT_TRUE(rel.exact);
  EXPECT_EQ(rel.upper, brute_free(g, 3, sub));
  EXPECT_GE(rel.upper, free_distance(g).upper);
  std::vector<std::size_t> all{0, 1};
  EXPECT_EQ(relative_free_distance(g, all).upper, block::kInfinity);
  EXPECT_EQ(relative_free_distance(g, {}).upper, free_distance(g).upper);

  auto rd = relative_dual_free_distance(g, sub);
  ASSERT_TRUE(rd.exact);
  EXPECT_EQ(rd.upper, brute_dual(g, 2, &sub));
  auto w = g.select_rows(sub);
  EXPECT_TRUE(orthogonal_to(w, rd.witness));
  EXPECT_FALSE(orthogonal_to(g, rd.witness));
  EXPECT_GE(rd.upper, dual_free_distance(w).upper);
}
