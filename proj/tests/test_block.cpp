#include <gtest/gtest.h>

#include <numeric>

#include "aqcc/block.hpp"
#include "aqcc/error.hpp"

using namespace aqcc;
using namespace aqcc::block;
using gf::Field;

namespace {

// Plain enumeration of every message, each codeword formed from scratch.
int oracle_min_distance(const Matrix& g) {
  const auto& f = *g.field();
  const std::size_t k = g.rows(), n = g.cols();
  std::vector<Elem> m(k, 0);
  int best = kInfinity;
  while (true) {
    std::size_t i = 0;
    while (i < k && ++m[i] == f.q()) m[i++] = 0;
    if (i == k) break;
    int w = 0;
    for (std::size_t c = 0; c < n; ++c) {
      Elem s = 0;
      for (std::size_t r = 0; r < k; ++r) s = f.add(s, f.mul(m[r], g(r, c)));
      w += s != 0;
    }
    best = std::min(best, w);
  }
  return best;
}

// Smallest number of dependent columns of h, by subset rank tests.
int oracle_dependent_columns(const Matrix& h) {
  const std::size_t n = h.cols();
  for (std::size_t d = 1; d <= n; ++d) {
    std::vector<std::size_t> idx(d);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      if (rank(h.select_cols(idx)) < d) return int(d);
      int i = int(d) - 1;
      while (i >= 0 && idx[i] == n - d + std::size_t(i)) --i;
      if (i < 0) break;
      ++idx[i];
      for (std::size_t j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return kInfinity;
}

}  // namespace

TEST(Rref, Examples) {
  auto f5 = Field::create(5, 1);
  auto id = Matrix::identity(f5, 3);
  auto r = rref(id);
  EXPECT_EQ(r.reduced, id);
  EXPECT_EQ(r.rank, 3u);

  Matrix z(f5, 2, 3);
  EXPECT_EQ(rref(z).rank, 0u);
  EXPECT_EQ(rref(z).reduced, z);

  auto m = Matrix::from_rows(f5, 2, {{1, 2}, {2, 4}});
  auto rm = rref(m);
  EXPECT_EQ(rm.rank, 1u);
  EXPECT_EQ(rm.reduced, Matrix::from_rows(f5, 2, {{1, 2}, {0, 0}}));
  EXPECT_EQ(rm.pivots, std::vector<std::size_t>{0});
}

TEST(Matrix, TextRoundTrip) {
  auto f16 = Field::create(2, 4);
  auto m = Matrix::from_rows(f16, 3, {{0, 15, 7}, {3, 1, 0}});
  auto back = Matrix::from_text(m.to_text());
  EXPECT_EQ(back, m);
  EXPECT_EQ(back.to_text(), m.to_text());
  EXPECT_THROW(Matrix::from_text("16 1 2\n0 16\n"), Error);
}

TEST(RemoveDependentRows, KeepsFirstBasis) {
  auto f3 = Field::create(3, 1);
  auto m = Matrix::from_rows(f3, 3, {{1, 0, 2}, {0, 1, 1}, {1, 0, 2}, {2, 2, 0}, {0, 0, 1}});
  std::vector<std::size_t> kept;
  auto r = remove_dependent_rows(m, &kept);
  EXPECT_EQ(kept, (std::vector<std::size_t>{0, 1, 4}));
  EXPECT_EQ(remove_dependent_rows(r), r);
  EXPECT_EQ(rank(r), rank(m));
}

TEST(Bch, Q16N17ExponentsAtoAminus3) {
  auto f16 = Field::create(2, 4);
  auto ex = expand_power_rows(f16, 17, {8, 7, 6, 5});
  EXPECT_EQ(ex.rows.rows(), 8u);
  EXPECT_EQ(ex.ext->q(), 256u);

  BchSpec spec{16, 17, 5, 5};
  auto code = bch_parity(spec);
  EXPECT_EQ(code.n, 17u);
  EXPECT_EQ(code.k, 9u);
  EXPECT_EQ(code.d_designed, 9);
  auto d = min_distance(code, 1000000);
  EXPECT_EQ(d.lower, 9);
  EXPECT_EQ(d.upper, 9);
  EXPECT_EQ(int(weight(d.witness)), 9);
  // The witness really is a codeword.
  Matrix w(code.parity.field(), 1, 17);
  for (std::size_t j = 0; j < 17; ++j) w(0, j) = d.witness[j];
  EXPECT_TRUE((w * code.parity.transpose()).is_zero());

  auto du = dual(code);
  EXPECT_EQ(du.k, 8u);
  EXPECT_EQ(du.d_designed, 10);
}

TEST(Bch, SingleRootParity) {
  BchSpec spec{3, 8, 0, 2};
  auto code = bch_parity(spec);
  EXPECT_EQ(code.parity.rows(), 1u);
  for (std::size_t j = 0; j < 8; ++j) EXPECT_EQ(code.parity(0, j), 1u);
  EXPECT_EQ(min_distance(code).lower, 2);
}

TEST(Bch, OddQNegativeOneInField) {
  // Exponents a, a-1, a-2 with q = 9, n = 10, a = 5.
  auto f9 = Field::create(3, 2);
  auto ex = expand_power_rows(f9, 10, {5, 4, 3});
  auto code = code_from_parity(ex.rows, bch_bound(10, 9, {5, 4, 3}));
  EXPECT_EQ(code.n - code.k, 5u);
  const int d = oracle_min_distance(code.generator);
  EXPECT_EQ(d, 6);
  EXPECT_EQ(min_distance(code).lower, d);
  EXPECT_EQ(code.d_designed, 6);
}

TEST(Bch, Errors) {
  BchSpec bad{4, 6, 0, 3};
  try {
    bch_parity(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotCoprime);
  }
  BchSpec too_far{2, 2097151, 0, 3};
  try {
    bch_parity(too_far);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::RootOfUnityUnavailable);
  }
}

TEST(ReedSolomon, Examples) {
  auto c11 = rs_parity(11, 1, 8);
  EXPECT_EQ(c11.n, 10u);
  EXPECT_EQ(c11.k, 3u);
  auto d11 = min_distance(c11);
  EXPECT_TRUE(d11.exact);
  EXPECT_EQ(d11.lower, 8);
  EXPECT_EQ(oracle_min_distance(c11.generator), 8);

  auto du = dual(c11);
  EXPECT_EQ(du.k, 7u);
  auto dd = min_distance(du);
  EXPECT_TRUE(dd.exact);
  EXPECT_EQ(dd.lower, 4);
  EXPECT_EQ(dd.provenance, "exact-macwilliams");
  EXPECT_EQ(oracle_dependent_columns(du.parity), 4);
  EXPECT_EQ(int(weight(dd.witness)), 4);

  auto c7 = rs_parity(7, 1, 4);
  EXPECT_EQ(c7.k, 3u);
  EXPECT_EQ(min_distance(c7).lower, 4);
  EXPECT_EQ(oracle_min_distance(c7.generator), 4);

  auto c2 = rs_parity(13, 0, 2);
  EXPECT_EQ(c2.k, 11u);
  EXPECT_EQ(min_distance(c2).lower, 2);

  try {
    rs_parity(7, 0, 7);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidDesignedDistance);
  }
}

TEST(Grs, RepetitionLike) {
  auto f5 = Field::create(5, 1);
  auto g = grs_build(f5, {0, 1, 2, 3, 4}, {1, 1, 1, 1, 1}, 1);
  EXPECT_EQ(g.code.k, 1u);
  EXPECT_EQ(oracle_min_distance(g.code.generator), 5);
  EXPECT_EQ(min_distance(g.code).lower, 5);
  EXPECT_TRUE((g.code.generator * g.code.parity.transpose()).is_zero());
}

TEST(Grs, FullDimensionAndErrors) {
  auto f7 = Field::create(7, 1);
  auto g = grs_build(f7, {1, 2, 3}, {1, 1, 1}, 3);
  EXPECT_EQ(g.code.parity.rows(), 0u);
  try {
    grs_build(f7, {1, 1, 3}, {1, 1, 1}, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DuplicateEvaluationPoint);
  }
  try {
    grs_build(f7, {1, 2, 3}, {1, 0, 1}, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ZeroMultiplier);
  }
}

TEST(Grs, MdsExhaustiveSmall) {
  for (unsigned q : {5u, 7u, 8u, 9u, 11u}) {
    auto f = Field::of_order(q);
    for (std::size_t n = 3; n <= std::min<unsigned>(q, 10); ++n) {
      std::vector<Elem> zeta(n), v(n);
      for (std::size_t j = 0; j < n; ++j) {
        zeta[j] = j == 0 ? 0 : f->exp(j - 1);
        v[j] = f->exp(3 * j);
      }
      for (std::size_t k = 1; k < n; ++k) {
        auto g = grs_build(f, zeta, v, k);
        auto d = min_distance(g.code);
        ASSERT_TRUE(d.exact);
        EXPECT_EQ(d.lower, int(n - k + 1)) << q << " " << n << " " << k;
        auto dd = min_distance(dual(g.code));
        EXPECT_EQ(dd.lower, int(k + 1));
      }
    }
  }
}

TEST(MinDistance, ZeroCode) {
  auto f2 = Field::create(2, 1);
  auto c = code_from_parity(Matrix::identity(f2, 4));
  EXPECT_EQ(c.k, 0u);
  auto d = min_distance(c);
  EXPECT_EQ(d.lower, kInfinity);
  EXPECT_TRUE(d.exact);
}

TEST(MinDistance, MacWilliamsAgreesWithEnumeration) {
  auto f3 = Field::create(3, 1);
  auto h = Matrix::from_rows(f3, 7, {{1, 0, 1, 2, 0, 1, 1}, {0, 1, 1, 0, 2, 2, 1}});
  auto c = code_from_parity(h);
  auto direct = oracle_min_distance(c.generator);
  auto viaw = min_distance(c);
  EXPECT_EQ(viaw.provenance, "exact-macwilliams");
  EXPECT_EQ(viaw.lower, direct);
}

TEST(BchBound, Runs) {
  EXPECT_EQ(bch_bound(17, 16, {8, 7, 6, 5}), 9);
  EXPECT_EQ(bch_bound(10, 11, {1, 2, 3}), 4);
  EXPECT_EQ(bch_bound(15, 2, {1}), 3);
}
