#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aqcc/css.hpp"
#include "aqcc/error.hpp"
#include "json.hpp"

namespace aqcc::families {

using json = nlohmann::ordered_json;

enum class Family { I, T2, T3a, T3b, T4a, T4b, T5a, T5b, T6, T8 };

// Tags used on the command line and in certificates, e.g. "II-T3a".
std::string family_tag(Family f);
// Throws ParamOutOfRange for an unknown tag.
Family parse_family(const std::string& tag);
// Every tag except Construction I.
const std::vector<Family>& closed_form_families();

struct FamilyParams {
  Family family = Family::T2;
  std::uint32_t q = 0;
  int i = 0, t = 0;
  int n = 0, k = 0;  // GRS length and dimension (T6, T8)
  // GRS evaluation points and column multipliers; empty selects the defaults
  // (0, g^0, g^1, ...) and all ones.
  std::vector<gf::Elem> zeta, v;
  // Construction I: the source vectors and the interleaved block sizes
  // rk H0, rk H0', rk H1, rk H1', ..., rk Hmu, rk Hmu'.
  block::Matrix vectors;
  std::vector<std::size_t> partition;
};

std::string params_string(const FamilyParams& p);

struct ExpectedTuple {
  std::size_t n = 0;
  int k = 0;
  int gamma = 0;
  // As printed in the theorem, then ordered so that dz >= dx.
  int dz_formula = 0, dx_formula = 0;
  int dz = 0, dx = 0;
  bool swapped = false;
  // Bounds on d_f(V1)^perp-side and V2^perp-side weights. Zero when the
  // theorem gives none (Construction I).
  int bound_v1 = 0, bound_v2_dual = 0;
  bool degenerate = false;  // k <= 0
};

// Throws ParamOutOfRange naming the violated precondition.
void validate(const FamilyParams& p);
ExpectedTuple expected_tuple(const FamilyParams& p);

struct Ranges {
  std::optional<int> i, t, n, k;
};

struct Instance {
  FamilyParams params;
  ExpectedTuple expected;
};

// Admissible parameters in the family's range; empty when q is outside it.
// Throws ParamOutOfRange when q is not a prime power.
std::vector<Instance> enumerate_family(Family f, std::uint32_t q, const Ranges& ranges = {});

enum class Effort {
  Structure,  // designed bounds only
  Bounds,     // plus block-code oracles within the enumeration budget
  Exact,      // plus trellis searches for free and relative distances
};

enum class Fault { None, RowMutation, RankViolation, SwappedBlocks };

std::string fault_name(Fault f);
Fault parse_fault(const std::string& s);
// The error each fault must raise.
Errc designated_error(Fault f);

struct BuildOptions {
  Effort effort = Effort::Bounds;
  std::uint64_t enum_budget = block::kDefaultEnumBudget;
  convo::SearchBudget search;
  Fault fault = Fault::None;
  std::uint64_t fault_seed = 0;
  std::optional<css::Orientation> orientation;
  bool with_json = true;
};

struct Certificate {
  FamilyParams params;
  ExpectedTuple expected;
  bool ok = false;
  std::optional<Errc> error;
  std::string failed_section, message;
  std::vector<std::string> flags;
  std::optional<css::AqccParams> aqcc;
  int gamma1_g = 0, gamma2_g = 0;  // degree_accounting of G1, G2
  std::string tuple;
  json doc;
};

// Builds and certifies any family. Throws ParamOutOfRange before doing any
// work; every later failure yields a certificate with ok == false.
Certificate certify(const FamilyParams& p, const BuildOptions& opts = {});

// The degree formulas of the general construction for an interleaved
// partition. Throws PartitionInvalid.
struct DegreeFormulas {
  int gamma1 = 0, gamma2 = 0;
};
DegreeFormulas construction_i_degrees(const std::vector<std::size_t>& partition);

// Seeded random independent vectors with a random valid partition of memory mu.
FamilyParams demo_construction_i(std::uint32_t q, std::size_t n, int mu, std::uint64_t seed);

}  // namespace aqcc::families
