#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aqcc/matrix.hpp"

namespace aqcc::block {

constexpr int kInfinity = std::numeric_limits<int>::max();

struct BlockCode {
  std::size_t n = 0, k = 0;
  Matrix parity;     // (n-k) x n, full rank
  Matrix generator;  // k x n, full rank
  std::optional<int> d;
  std::optional<int> d_designed;
};

// Both factories drop dependent rows, derive the other matrix as a kernel
// and assert generator * parity^T = 0.
BlockCode code_from_parity(const Matrix& h, std::optional<int> d_designed = std::nullopt);
BlockCode code_from_generator(const Matrix& g, std::optional<int> d_designed = std::nullopt);

// Swaps the roles. A designed distance survives only when it certifies MDS,
// since the dual of an MDS code is MDS.
BlockCode dual(const BlockCode& code);

struct DistanceResult {
  int lower = 0;
  int upper = kInfinity;
  bool exact = false;
  std::vector<Elem> witness;  // codeword of weight `upper`, empty if none
  std::string provenance;
};

constexpr std::uint64_t kDefaultEnumBudget = 1000000;

// Exhaustive over the smaller of the code and its dual (the latter through
// the MacWilliams identity), otherwise designed-distance lower bound plus an
// information-set upper bound.
DistanceResult min_distance(const BlockCode& code, std::uint64_t budget = kDefaultEnumBudget);

// Weight distribution of the row space of g by enumeration; empty when
// q^rank exceeds the budget.
std::vector<std::uint64_t> weight_distribution(const Matrix& g, std::uint64_t budget);

// Largest arithmetic run (step coprime to n) in the q-cyclotomic closure of
// `exponents`, plus one: the BCH bound for the cyclic code with those zeros.
int bch_bound(std::uint64_t n, std::uint64_t q, const std::vector<long>& exponents);
std::vector<long> cyclotomic_closure(std::uint64_t n, std::uint64_t q, const std::vector<long>& exponents);

// Rows alpha^(j e) over GF(q^l) for each exponent e, each expanded into l
// consecutive GF(q) rows over the power basis, then dependent rows dropped.
struct PowerRowExpansion {
  Matrix rows;
  std::vector<std::pair<long, std::uint32_t>> origin;  // (exponent, coordinate) per kept row
  FieldPtr ext;
  Elem alpha = 0;
  std::shared_ptr<const gf::SubfieldBasis> basis;
};

PowerRowExpansion expand_power_rows(const FieldPtr& base, std::uint64_t n, const std::vector<long>& exponents);

struct BchSpec {
  std::uint32_t q = 0;
  std::uint64_t n = 0;
  long b = 0;
  std::uint32_t delta = 2;
  Elem alpha = 0;  // filled in by bch_parity
};

BlockCode bch_parity(BchSpec& spec, PowerRowExpansion* expansion = nullptr);
BlockCode rs_parity(std::uint32_t q, long b, std::uint32_t d);

struct GrsSpec {
  FieldPtr field;
  std::vector<Elem> zeta, v, w;
  std::size_t k = 0;
};

struct GrsCode {
  GrsSpec spec;
  BlockCode code;
};

GrsCode grs_build(const FieldPtr& field, const std::vector<Elem>& zeta, const std::vector<Elem>& v, std::size_t k);
// Rows w_j zeta_j^e for the given powers (0^0 = 1).
Matrix grs_power_rows(const GrsSpec& spec, const std::vector<long>& powers);

}  // namespace aqcc::block
