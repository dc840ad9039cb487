#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "aqcc/convo.hpp"
#include "aqcc/error.hpp"

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

// Determinant by cofactor expansion along the first row.
Poly det(const gf::Field& f, const std::vector<std::vector<Poly>>& a) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  Poly total;
  for (std::size_t j = 0; j < n; ++j) {
    if (a[0][j].empty()) continue;
    std::vector<std::vector<Poly>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Poly> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(a[i][c]);
      minor.push_back(row);
    }
    Poly term = poly_mul(f, a[0][j], det(f, minor));
    total = j % 2 ? poly_sub(f, total, term) : poly_add(f, total, term);
  }
  return total;
}

// gcd of all maximal minors; empty when every minor vanishes.
Poly minor_gcd(const PolyMatrix& g) {
  const auto& f = *g.field();
  const std::size_t k = g.rows(), n = g.cols();
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  Poly acc;
  while (true) {
    std::vector<std::vector<Poly>> sub(k);
    for (std::size_t r = 0; r < k; ++r)
      for (auto c : idx) sub[r].push_back(g.at(r, c));
    acc = poly_gcd(f, acc, det(f, sub));
    int i = int(k) - 1;
    while (i >= 0 && idx[i] == n - k + std::size_t(i)) --i;
    if (i < 0) break;
    ++idx[i];
    for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return acc;
}

block::Matrix random_full_rank(FieldPtr f, std::size_t r, std::size_t c, std::mt19937& rng) {
  std::uniform_int_distribution<Elem> d(0, f->q() - 1);
  while (true) {
    block::Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
    if (block::rank(m) == r) return m;
  }
}

}  // namespace

TEST(Poly, Arithmetic) {
  auto f = Field::create(3, 1);
  Poly a{1, 1}, b{1, 0, 1};
  Poly q, r;
  poly_divmod(*f, poly_mul(*f, a, b), a, q, r);
  EXPECT_EQ(q, b);
  EXPECT_TRUE(r.empty());
  EXPECT_EQ(poly_gcd(*f, poly_mul(*f, a, b), poly_mul(*f, a, a)), (Poly{1, 1}));
  EXPECT_EQ(poly_reverse(Poly{1, 2}, 3), (Poly{0, 0, 2, 1}));
  EXPECT_EQ(weight(std::vector<Poly>{{1, 0, 1}, {0, 1}}), 3u);
  EXPECT_EQ(weight(std::vector<Poly>{}), 0u);
}

TEST(PolyMatrix, TextRoundTrip) {
  auto f = Field::create(2, 2);
  auto g = pm(f, 2, 3, {{1, 2}, {}, {3}, {0, 0, 1}, {1}, {2, 3}});
  EXPECT_EQ(PolyMatrix::from_text(g.to_text()), g);
  EXPECT_EQ(g.degree(), 2);
  EXPECT_EQ(g.row_degree(0), 1);
}

TEST(Smith, BasicExamples) {
  auto f = Field::create(2, 1);
  auto g = pm(f, 1, 2, {{1}, {0, 1}});
  auto b = is_basic(g);
  EXPECT_TRUE(b.basic);
  EXPECT_EQ(g * b.right_inverse, PolyMatrix::identity(f, 1));

  auto h = pm(f, 1, 2, {{0, 1}, {0, 0, 1}});
  auto nb = is_basic(h);
  EXPECT_FALSE(nb.basic);
  EXPECT_EQ(nb.obstruction, (Poly{0, 1}));

  auto z = pm(f, 1, 2, {{}, {}});
  try {
    is_basic(z);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::RankDeficient);
  }
}

TEST(Smith, Decomposition) {
  std::mt19937 rng(7);
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    auto f = Field::of_order(q);
    std::uniform_int_distribution<Elem> d(0, q - 1);
    for (int trial = 0; trial < 30; ++trial) {
      std::size_t k = 1 + trial % 3, n = k + 1 + trial % 2;
      PolyMatrix g(f, k, n);
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < n; ++c) {
          Poly p{d(rng), d(rng), d(rng)};
          trim(p);
          g.at(r, c) = p;
        }
      auto s = smith_form(g);
      EXPECT_EQ(s.U * g * s.V, s.S);
      // Invariants multiply to the minor gcd.
      Poly prod{1};
      for (std::size_t i = 0; i < s.rank; ++i) prod = poly_mul(*f, prod, s.invariants[i]);
      Poly oracle = minor_gcd(g);
      if (s.rank < k) {
        EXPECT_TRUE(oracle.empty());
        continue;
      }
      EXPECT_EQ(prod, poly_monic(*f, oracle));
      for (std::size_t i = 1; i < s.rank; ++i) {
        Poly qq, rr;
        poly_divmod(*f, s.invariants[i], s.invariants[i - 1], qq, rr);
        EXPECT_TRUE(rr.empty());
      }
      auto b = is_basic(g);
      EXPECT_EQ(b.basic, deg(oracle) == 0);
      if (b.basic) EXPECT_EQ(g * b.right_inverse, PolyMatrix::identity(f, k));
    }
  }
}

TEST(Reduced, Examples) {
  auto f = Field::create(2, 1);
  EXPECT_FALSE(is_reduced(pm(f, 2, 2, {{1, 1}, {0, 1}, {1}, {1}})));
  EXPECT_TRUE(is_reduced(PolyMatrix::identity(f, 3)));
  auto acc = degree_accounting(pm(f, 2, 2, {{1, 1}, {0, 0, 1}, {1}, {1}}));
  EXPECT_EQ(acc.row_degrees, (std::vector<int>{2, 0}));
  EXPECT_EQ(acc.gamma, 2);
  EXPECT_EQ(acc.memory, 2);
}

TEST(Dual, SimpleAndBlock) {
  auto f = Field::create(3, 1);
  auto g = pm(f, 1, 2, {{1}, {0, 1}});
  auto h = dual_generator(g);
  EXPECT_EQ(h.rows(), 1u);
  EXPECT_TRUE(orthogonality_residual(g, h).is_zero());
  EXPECT_TRUE(is_basic(h).basic);
  EXPECT_TRUE(is_reduced(h));

  auto bg = block::Matrix::from_rows(f, 4, {{1, 0, 1, 2}, {0, 1, 1, 1}});
  auto bh = dual_generator(PolyMatrix::from_constant(bg));
  EXPECT_EQ(bh.degree(), 0);
  EXPECT_TRUE((bg * bh.coefficient(0).transpose()).is_zero());

  auto nb = pm(f, 1, 2, {{0, 1}, {0, 0, 1}});
  try {
    dual_generator(nb);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotBasic);
  }
}

TEST(Dual, RandomSplits) {
  std::mt19937 rng(11);
  for (std::uint32_t q : {2u, 3u, 4u}) {
    auto f = Field::of_order(q);
    for (int trial = 0; trial < 10; ++trial) {
      std::size_t n = 5 + trial % 4, kappa = 1 + trial % 3;
      std::size_t rows = std::min(n - 1, kappa + 1 + trial % kappa);
      auto hm = random_full_rank(f, rows, n, rng);
      auto g = split_to_generator({hm, {kappa, rows - kappa}});
      auto h = dual_generator(g);
      EXPECT_EQ(h.rows(), n - kappa);
      EXPECT_TRUE(orthogonality_residual(g, h).is_zero());
      EXPECT_TRUE(is_basic(h).basic);
      EXPECT_TRUE(is_reduced(h));
    }
  }
}

TEST(Containment, Examples) {
  auto f = Field::create(2, 1);
  auto g = pm(f, 2, 3, {{1}, {1}, {1}, {0, 1}, {1}, {}});
  auto self = contains(g, g);
  EXPECT_TRUE(self.contained);
  EXPECT_EQ(self.witness, PolyMatrix::identity(f, 2));
  auto sub = g.select_rows({1});
  auto c = contains(g, sub);
  EXPECT_TRUE(c.contained);
  EXPECT_EQ(selected_rows(c.witness), (std::vector<std::size_t>{1}));
  EXPECT_FALSE(contains(sub, g).contained);
  // Row sum is in the module but is not a selection.
  PolyMatrix sum(f, 1, 3);
  for (std::size_t j = 0; j < 3; ++j) sum.at(0, j) = poly_add(*f, g.at(0, j), g.at(1, j));
  auto cs = contains(g, sum);
  EXPECT_TRUE(cs.contained);
  EXPECT_FALSE(selected_rows(cs.witness).has_value());
  EXPECT_FALSE(contains(g, pm(f, 1, 3, {{0, 1}, {}, {1}})).contained);
}

TEST(Split, Errors) {
  auto f = Field::create(2, 1);
  auto h = block::Matrix::from_rows(f, 3, {{1, 1, 0}, {1, 1, 0}, {0, 0, 1}});
  try {
    split_to_generator({h, {2, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::RankConditionViolated);
    EXPECT_EQ(e.index(), 0);
  }
  try {
    split_to_generator({h.select_rows(std::vector<std::size_t>{2, 0, 1}), {1, 2}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::RankConditionViolated);
    EXPECT_EQ(e.index(), 1);
  }
  auto g = split_to_generator({h.select_rows(std::vector<std::size_t>{0}), {1}});
  EXPECT_EQ(g.degree(), 0);
}

// Randomized valid splits always give basic reduced generators.
TEST(Split, BasicReducedProperty) {
  std::mt19937 rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint32_t q = std::vector<std::uint32_t>{2, 3, 4, 5}[trial % 4];
    auto f = Field::of_order(q);
    std::size_t n = 3 + rng() % 10;
    std::size_t mu = rng() % 4;
    std::size_t kappa = 1 + rng() % std::max<std::size_t>(1, (n - 1) / (mu + 1));
    std::vector<std::size_t> blocks{kappa};
    std::size_t total = kappa;
    for (std::size_t i = 1; i <= mu && total < n; ++i) {
      std::size_t b = 1 + rng() % std::min(kappa, n - total);
      blocks.push_back(b);
      total += b;
    }
    auto hm = random_full_rank(f, total, n, rng);
    auto g = split_to_generator({hm, blocks});
    ASSERT_TRUE(is_basic(g).basic) << g.to_text();
    ASSERT_TRUE(is_reduced(g)) << g.to_text();
    ++checked;
  }
  EXPECT_EQ(checked, 200);
}
