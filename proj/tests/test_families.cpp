#include <gtest/gtest.h>

#include <set>

#include "aqcc/error.hpp"
#include "aqcc/families.hpp"

using namespace aqcc;
using namespace aqcc::families;

namespace {

FamilyParams it(Family f, std::uint32_t q, int i, int t = 0) {
  FamilyParams p;
  p.family = f;
  p.q = q;
  p.i = i;
  p.t = t;
  return p;
}

FamilyParams grs(Family f, std::uint32_t q, int n, int k, int t) {
  FamilyParams p;
  p.family = f;
  p.q = q;
  p.n = n;
  p.k = k;
  p.t = t;
  return p;
}

template <class Fn>
Errc error_of(Fn fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::InvalidArgument;
}

// Minimum weight of the row space of m by listing every combination.
int brute_rowspace_distance(const block::Matrix& m) {
  const auto& f = *m.field();
  std::vector<gf::Elem> coef(m.rows(), 0);
  int best = block::kInfinity;
  while (true) {
    std::size_t i = 0;
    while (i < coef.size() && ++coef[i] == f.q()) coef[i++] = 0;
    if (i == coef.size()) break;
    std::vector<gf::Elem> v(m.cols(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (coef[r]) block::axpy(f, v, m.row(r), coef[r]);
    best = std::min(best, int(block::weight(v)));
  }
  return best;
}

void walk_numbers(const json& j, const std::string& path, std::vector<std::string>& bad) {
  static const std::set<std::string> tags{"formula-from-paper", "exact-computed", "bounded"};
  if (j.is_object()) {
    if (j.contains("value") && j["value"].is_number()) {
      if (!j.contains("provenance") || !tags.count(j["provenance"].get<std::string>())) bad.push_back(path);
    }
    for (auto& [k, v] : j.items()) walk_numbers(v, path + "." + k, bad);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) walk_numbers(j[i], path + "[" + std::to_string(i) + "]", bad);
  }
}

}  // namespace

TEST(Enumerate, Ranges) {
  auto t2 = enumerate_family(Family::T2, 16);
  ASSERT_EQ(t2.size(), 5u);
  std::vector<int> ks;
  for (const auto& x : t2) ks.push_back(x.expected.k);
  EXPECT_EQ(ks, (std::vector<int>{2, 4, 6, 8, 10}));

  auto t6 = enumerate_family(Family::T6, 5);
  ASSERT_EQ(t6.size(), 2u);
  for (const auto& x : t6) {
    EXPECT_EQ(x.params.n, 5);
    EXPECT_EQ(x.params.k, 1);
  }
  EXPECT_FALSE(t6[0].expected.degenerate);
  EXPECT_TRUE(t6[1].expected.degenerate);  // t = 2 leaves k = 0

  EXPECT_TRUE(enumerate_family(Family::T2, 8).empty());
  EXPECT_TRUE(enumerate_family(Family::T4a, 7).empty());
  EXPECT_EQ(error_of([] { enumerate_family(Family::T5a, 12); }), Errc::ParamOutOfRange);

  Ranges r;
  r.i = 5;
  r.t = 1;
  auto one = enumerate_family(Family::T3a, 16, r);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].expected.k, 6);
  EXPECT_EQ(one[0].expected.dz, 6);
  EXPECT_EQ(one[0].expected.dx, 5);
}

TEST(Enumerate, CountsUpTo32) {
  // Range arithmetic: T2 has a-3 values of i; T3a sums i-2 over 3..a-1.
  EXPECT_EQ(enumerate_family(Family::T2, 32).size(), 13u);
  EXPECT_EQ(enumerate_family(Family::T3a, 32).size(), 91u);
  EXPECT_EQ(enumerate_family(Family::T3b, 16).size(), 21u);
  EXPECT_EQ(enumerate_family(Family::T5a, 11).size(), std::size_t(6 * 7 / 2));
  EXPECT_EQ(enumerate_family(Family::T5b, 11).size(), std::size_t(7 * 8 / 2));
}

TEST(Validate, Preconditions) {
  EXPECT_EQ(error_of([] { certify(it(Family::T2, 8, 3)); }), Errc::ParamOutOfRange);
  EXPECT_EQ(error_of([] { validate(it(Family::T3a, 16, 5, 4)); }), Errc::ParamOutOfRange);
  EXPECT_EQ(error_of([] { validate(it(Family::T3b, 16, 8, 1)); }), Errc::ParamOutOfRange);
  EXPECT_EQ(error_of([] { validate(it(Family::T5a, 7, 3, 1)); }), Errc::ParamOutOfRange);
  EXPECT_EQ(error_of([] { validate(grs(Family::T6, 5, 5, 2, 1)); }), Errc::ParamOutOfRange);
  EXPECT_EQ(error_of([] { validate(grs(Family::T8, 7, 7, 1, 6)); }), Errc::ParamOutOfRange);
  EXPECT_NO_THROW(validate(grs(Family::T8, 7, 7, 1, 5)));
  EXPECT_EQ(error_of([] { parse_family("II-T9"); }), Errc::ParamOutOfRange);
  for (auto f : closed_form_families()) EXPECT_EQ(parse_family(family_tag(f)), f);
}

TEST(Expected, SwapRule) {
  auto e = expected_tuple(it(Family::T5a, 11, 7, 2));
  EXPECT_EQ(e.k, 4);
  EXPECT_EQ(e.dz_formula, 3);
  EXPECT_EQ(e.dx_formula, 4);
  EXPECT_TRUE(e.swapped);
  EXPECT_EQ(e.dz, 4);
  EXPECT_EQ(e.dx, 3);

  auto b = expected_tuple(it(Family::T5b, 11, 6, 5));
  EXPECT_EQ(b.k, 1);
  EXPECT_EQ(b.gamma, 2);
  EXPECT_EQ(b.dz_formula, 4);
  EXPECT_EQ(b.dx_formula, 7);
  EXPECT_EQ(b.dz, 7);
  EXPECT_EQ(b.dx, 4);
}

TEST(Certify, PaperExamples) {
  struct Case {
    FamilyParams p;
    const char* tuple;
  };
  const std::vector<Case> cases{
      {it(Family::T3a, 16, 5, 1), "[(17,6,mu*;6,6/5)]_16"},
      {it(Family::T5a, 11, 6, 1), "[(10,4,mu*;3,4/3)]_11"},
      {grs(Family::T6, 5, 5, 1, 1), "[(5,1,mu*;3,3/2)]_5"},
      {grs(Family::T6, 17, 17, 3, 5), "[(17,7,mu*;3,7/4)]_17"},
      {grs(Family::T8, 7, 7, 2, 2), "[(7,2,mu*;2,4/3)]_7"},
  };
  for (const auto& c : cases) {
    auto cert = certify(c.p);
    EXPECT_TRUE(cert.ok) << params_string(c.p) << ": " << cert.failed_section << " " << cert.message;
    EXPECT_EQ(cert.tuple, c.tuple);
  }
}

TEST(Certify, DerivedTuples) {
  BuildOptions o;
  o.effort = Effort::Structure;
  auto c = certify(it(Family::T3b, 32, 8, 1), o);
  ASSERT_TRUE(c.ok) << c.message;
  EXPECT_EQ(c.tuple, "[(33,14,mu*;4,16/5)]_32");
  auto s = certify(it(Family::T5b, 11, 6, 5));
  ASSERT_TRUE(s.ok) << s.message;
  EXPECT_EQ(s.tuple, "[(10,1,mu*;2,7/4)]_11");
  auto t2 = certify(it(Family::T2, 16, 3));
  ASSERT_TRUE(t2.ok) << t2.message;
  EXPECT_EQ(t2.tuple, "[(17,2,mu*;6,10/3)]_16");
}

TEST(Certify, OddCharacteristicLayouts) {
  for (auto f : {Family::T4a, Family::T4b})
    for (const auto& inst : enumerate_family(f, 9)) {
      auto c = certify(inst.params);
      EXPECT_TRUE(c.ok) << params_string(inst.params) << ": " << c.message;
      EXPECT_NE(std::find(c.flags.begin(), c.flags.end(), "layout-reconstructed"), c.flags.end());
    }
}

TEST(Certify, DegenerateIsNegative) {
  auto c = certify(grs(Family::T6, 5, 5, 1, 2));
  EXPECT_FALSE(c.ok);
  ASSERT_TRUE(c.error.has_value());
  EXPECT_EQ(*c.error, Errc::ZeroLogicalDimension);
  EXPECT_EQ(c.doc["status"]["ok"], false);
}

// Block distances in the certificate against a direct enumeration.
TEST(Certify, BlockDistanceAgainstEnumeration) {
  for (const auto& p : {grs(Family::T6, 5, 5, 1, 1), grs(Family::T8, 7, 6, 2, 1), it(Family::T5a, 8, 3, 1)}) {
    auto c = certify(p);
    ASSERT_TRUE(c.ok) << c.message;
    auto h = block::Matrix::from_text(c.doc["matrices"]["source_H"].get<std::string>());
    EXPECT_EQ(c.doc["distances"]["block"]["d_dual"]["value"].get<int>(), brute_rowspace_distance(h))
        << params_string(p);
  }
}

// Exact relative weights never fall below the certified bounds.
TEST(Certify, ExactRelativeWeightsRespectBounds) {
  BuildOptions o;
  o.effort = Effort::Exact;
  int exact = 0;
  for (auto f : {Family::T6, Family::T8})
    for (const auto& inst : enumerate_family(f, 5)) {
      if (inst.expected.degenerate) continue;
      auto c = certify(inst.params, o);
      ASSERT_TRUE(c.ok) << params_string(inst.params) << ": " << c.message;
      ASSERT_TRUE(c.aqcc);
      if (c.aqcc->dz_exact) {
        EXPECT_GE(*c.aqcc->dz_exact, c.aqcc->dz.value);
        ++exact;
      }
      if (c.aqcc->dx_exact) EXPECT_GE(*c.aqcc->dx_exact, c.aqcc->dx.value);
    }
  EXPECT_GE(exact, 1);
}

TEST(Certificate, SchemaAndDeterminism) {
  auto p = it(Family::T3a, 16, 4, 1);
  auto a = certify(p), b = certify(p);
  ASSERT_TRUE(a.ok) << a.message;
  EXPECT_EQ(a.doc.dump(), b.doc.dump());
  std::vector<std::string> keys;
  for (auto& [k, v] : a.doc.items()) keys.push_back(k);
  const std::vector<std::string> want{"family", "q", "params", "field", "matrices", "checks", "distances", "tuple"};
  ASSERT_GE(keys.size(), want.size());
  EXPECT_EQ(std::vector<std::string>(keys.begin(), keys.begin() + want.size()), want);
  for (const char* m : {"source_H", "G1", "G2", "H1", "stabilizer_X", "stabilizer_Z"})
    EXPECT_TRUE(a.doc["matrices"].contains(m)) << m;
  EXPECT_EQ(a.doc["checks"]["symplectic"], "zero");
  std::vector<std::string> bad;
  walk_numbers(a.doc, "", bad);
  EXPECT_TRUE(bad.empty()) << bad.front();
  auto g1 = convo::PolyMatrix::from_text(a.doc["matrices"]["G1"].get<std::string>());
  EXPECT_EQ(convo::degree_accounting(g1).gamma, a.doc["checks"]["degrees"]["gamma1"]["value"].get<int>());
}

TEST(ConstructionI, SpecExample) {
  // mu = 1 with one row in each of H0, H0', H1, H1'.
  auto p = demo_construction_i(5, 6, 1, 3);
  p.partition = {1, 1, 1, 1};
  auto c = certify(p);
  ASSERT_TRUE(c.ok) << c.failed_section << " " << c.message;
  EXPECT_EQ(c.aqcc->k, 1);
  EXPECT_EQ(c.gamma1_g, 2);
  EXPECT_EQ(c.gamma2_g, 1);
  auto f = construction_i_degrees(p.partition);
  EXPECT_EQ(f.gamma1, 2);
  EXPECT_EQ(f.gamma2, 1);
}

TEST(ConstructionI, SeededInstances) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const int mu = 1 + int(seed % 3);
    auto p = demo_construction_i(seed % 2 ? 3 : 4, 10, mu, seed);
    auto c = certify(p);
    ASSERT_TRUE(c.ok) << params_string(p) << ": " << c.failed_section << " " << c.message;
    auto f = construction_i_degrees(p.partition);
    EXPECT_EQ(c.gamma1_g, f.gamma1);
    EXPECT_EQ(c.gamma2_g, f.gamma2);
    EXPECT_EQ(c.aqcc->k, int(p.partition[0]));
  }
}

TEST(ConstructionI, Rejections) {
  auto p = demo_construction_i(5, 6, 1, 3);
  p.partition = {1, 1, 1, 1};

  auto bad = p;
  bad.partition = {1, 1, 1, 2};  // rk H1' > rk H0'
  bad.vectors = block::Matrix(p.vectors.field(), 5, 6);
  for (std::size_t r = 0; r < 5; ++r) bad.vectors(r, r) = 1;
  auto c = certify(bad);
  ASSERT_TRUE(c.error);
  EXPECT_EQ(*c.error, Errc::PartitionInvalid);

  auto mu0 = p;
  mu0.partition = {2, 2};
  c = certify(mu0);
  ASSERT_TRUE(c.error);
  EXPECT_EQ(*c.error, Errc::PartitionInvalid);

  auto dep = p;
  for (std::size_t col = 0; col < 6; ++col) dep.vectors(3, col) = dep.vectors(0, col);
  c = certify(dep);
  ASSERT_TRUE(c.error);
  EXPECT_EQ(*c.error, Errc::IndependenceViolated);
}

TEST(Faults, DesignatedErrors) {
  const std::vector<FamilyParams> hosts{it(Family::T3a, 16, 5, 1), grs(Family::T6, 7, 7, 1, 2),
                                        it(Family::T5a, 11, 6, 2)};
  for (auto fault : {Fault::RowMutation, Fault::RankViolation, Fault::SwappedBlocks})
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      BuildOptions o;
      o.effort = Effort::Structure;
      o.fault = fault;
      o.fault_seed = seed;
      const auto& p = hosts[seed % hosts.size()];
      auto c = certify(p, o);
      EXPECT_FALSE(c.ok);
      ASSERT_TRUE(c.error) << fault_name(fault) << " " << params_string(p);
      EXPECT_EQ(*c.error, designated_error(fault)) << fault_name(fault) << " " << params_string(p) << " " << c.message;
    }
}
