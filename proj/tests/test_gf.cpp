#include <gtest/gtest.h>

#include <random>

#include "aqcc/error.hpp"
#include "aqcc/gf.hpp"

using namespace aqcc;
using namespace aqcc::gf;

namespace {

// Independent check over GF(p)[x]: a polynomial of degree <= 3 is
// irreducible iff it has no root; degree 4 also needs no quadratic factor.
bool oracle_irreducible_deg4_binary(unsigned lower) {
  unsigned f = lower | 0x10;
  auto mod2 = [](unsigned a, unsigned b) {
    int db = 31 - __builtin_clz(b);
    while (a && 31 - __builtin_clz(a) >= db) a ^= b << ((31 - __builtin_clz(a)) - db);
    return a;
  };
  for (unsigned g = 2; g < 8; ++g)
    if (mod2(f, g) == 0) return false;
  return true;
}

}  // namespace

TEST(Field, PrimeFieldTwo) {
  auto f = Field::create(2, 1);
  EXPECT_EQ(f->q(), 2u);
  EXPECT_EQ(f->generator(), 1u);
}

TEST(Field, DefaultModulusGF16) {
  auto f = Field::create(2, 4);
  EXPECT_EQ(f->q(), 16u);
  std::vector<std::uint32_t> expected{1, 1, 0, 0, 1};
  EXPECT_EQ(f->modulus(), expected);
  // The first irreducible in packed order, found by a separate routine.
  unsigned first = 0;
  while (!oracle_irreducible_deg4_binary(first)) ++first;
  EXPECT_EQ(first, 3u);
}

TEST(Field, GeneratorGF11) {
  auto f = Field::create(11, 1);
  EXPECT_EQ(f->generator(), 2u);
  unsigned x = 1, ord = 0;
  do {
    x = x * 2 % 11;
    ++ord;
  } while (x != 1);
  EXPECT_EQ(ord, 10u);
}

TEST(Field, Errors) {
  try {
    Field::create(4, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonPrimeCharacteristic);
  }
  try {
    Field::create(2, 2, std::vector<std::uint32_t>{1, 0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ReducibleModulus);
  }
}

TEST(Field, AxiomsExhaustiveSmall) {
  for (auto [p, l] : std::vector<std::pair<unsigned, unsigned>>{{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}, {5, 1}, {7, 1}, {11, 1}, {13, 1}}) {
    auto f = Field::create(p, l);
    const unsigned q = f->q();
    if (q > 16) continue;
    for (Elem a = 0; a < q; ++a) {
      if (a) EXPECT_EQ(f->mul(a, f->inv(a)), 1u);
      EXPECT_EQ(f->add(a, f->neg(a)), 0u);
      for (Elem b = 0; b < q; ++b) {
        EXPECT_EQ(f->add(a, b), f->add(b, a));
        EXPECT_EQ(f->mul(a, b), f->mul(b, a));
        for (Elem c = 0; c < q; ++c) EXPECT_EQ(f->mul(a, f->add(b, c)), f->add(f->mul(a, b), f->mul(a, c)));
      }
    }
  }
}

TEST(Field, AxiomsSampledLarger) {
  std::mt19937 rng(7);
  for (auto [p, l] : std::vector<std::pair<unsigned, unsigned>>{{2, 8}, {3, 4}, {5, 4}, {2, 10}, {31, 2}, {2, 18}}) {
    auto f = Field::create(p, l);
    std::uniform_int_distribution<Elem> u(0, f->q() - 1);
    for (int s = 0; s < 2000; ++s) {
      Elem a = u(rng), b = u(rng), c = u(rng);
      EXPECT_EQ(f->mul(a, f->add(b, c)), f->add(f->mul(a, b), f->mul(a, c)));
      EXPECT_EQ(f->mul(f->mul(a, b), c), f->mul(a, f->mul(b, c)));
      if (a) EXPECT_EQ(f->mul(a, f->inv(a)), 1u);
    }
    EXPECT_EQ(f->order(f->generator()), f->q() - 1);
  }
}

TEST(Field, PrimitiveRoots) {
  auto f16 = Field::create(2, 4);
  auto a = primitive_root_of_unity(f16, 15);
  EXPECT_EQ(a.value(), f16->generator());

  auto f256 = Field::create(2, 8);
  auto b = primitive_root_of_unity(f256, 17);
  EXPECT_EQ(b.value(), f256->pow(f256->generator(), 15));
  Elem x = 1;
  for (int m = 1; m < 17; ++m) {
    x = f256->mul(x, b.value());
    EXPECT_NE(x, 1u) << m;
  }
  EXPECT_EQ(f256->mul(x, b.value()), 1u);

  auto f11 = Field::create(11, 1);
  EXPECT_EQ(primitive_root_of_unity(f11, 10).order(), 10u);
  try {
    primitive_root_of_unity(f11, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::OrderNotDividing);
  }
}

TEST(Field, OrdMod) {
  EXPECT_EQ(ord_mod(17, 16), 2u);
  EXPECT_EQ(ord_mod(1, 5), 1u);
  EXPECT_EQ(ord_mod(10, 11), 1u);
  EXPECT_EQ(ord_mod(33, 32), 2u);
  try {
    ord_mod(6, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotCoprime);
  }
}

TEST(Subfield, PowerBasisRoundTrip) {
  auto base = Field::create(2, 4);
  auto ext = Field::create(2, 8);
  auto basis = SubfieldBasis::power_basis(base, ext);
  ASSERT_EQ(basis.degree(), 2u);
  for (Elem x = 0; x < ext->q(); ++x) {
    auto c = basis.expand(x);
    EXPECT_EQ(basis.reconstruct(c), x);
  }
  auto zero = basis.expand(0);
  EXPECT_EQ(zero, (std::vector<Elem>{0, 0}));
  EXPECT_EQ(basis.expand(basis.basis()[0]), (std::vector<Elem>{1, 0}));
  // Embedding is a ring homomorphism.
  for (Elem a = 0; a < 16; ++a)
    for (Elem b = 0; b < 16; ++b) {
      EXPECT_EQ(basis.embed(base->mul(a, b)), ext->mul(basis.embed(a), basis.embed(b)));
      EXPECT_EQ(basis.embed(base->add(a, b)), ext->add(basis.embed(a), basis.embed(b)));
    }
}

TEST(Subfield, RoundTripUpTo4096) {
  std::vector<std::tuple<unsigned, unsigned, unsigned>> cases{{2, 1, 12}, {2, 2, 10}, {2, 3, 12}, {3, 1, 6}, {3, 2, 6}, {5, 1, 4}, {2, 5, 10}};
  for (auto [p, lb, le] : cases) {
    auto basis = SubfieldBasis::power_basis(Field::create(p, lb), Field::create(p, le));
    for (Elem x = 0; x < basis.ext()->q(); ++x) ASSERT_EQ(basis.reconstruct(basis.expand(x)), x);
  }
}

TEST(Subfield, FieldElementApi) {
  auto base = Field::create(2, 4);
  auto ext = Field::create(2, 8);
  auto basis = SubfieldBasis::power_basis(base, ext);
  FieldElement x(ext, 200);
  auto c = expand_over_subfield(x, basis);
  ASSERT_EQ(c.size(), 2u);
  FieldElement acc(ext, 0);
  for (std::size_t i = 0; i < 2; ++i) acc = acc + FieldElement(ext, basis.embed(c[i].value())) * FieldElement(ext, basis.basis()[i]);
  EXPECT_EQ(acc, x);
  try {
    expand_over_subfield(FieldElement(base, 3), basis);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::FieldMismatch);
  }
}
