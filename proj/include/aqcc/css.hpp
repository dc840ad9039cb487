#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aqcc/convo.hpp"
#include "aqcc/trellis.hpp"

namespace aqcc::css {

using convo::PolyMatrix;
using block::Matrix;

struct StabilizerMatrix {
  PolyMatrix X, Z;  // same row count, n columns each
};

struct SymplecticResult {
  bool zero = false;
  // D^mu (X(D) Z(1/D)^T - Z(D) X(1/D)^T), mu the stabilizer degree.
  PolyMatrix residual;
};

SymplecticResult check_symplectic(const StabilizerMatrix& s);

// Which code feeds which half of the block-diagonal stabilizer.
enum class Orientation {
  DualFirst,       // ( H1 | 0 ; 0 | G2 )
  GeneratorFirst,  // ( G2 | 0 ; 0 | H1 )
};

// V2 inside V1, with H1 generating the dual of V1.
struct NestedPair {
  PolyMatrix g1, g2, h1;
  PolyMatrix witness;  // g2 = witness * g1
};

// Runs contains() and computes the dual. Throws ContainmentUnverified when
// V2 is not inside V1.
NestedPair make_nested_pair(const PolyMatrix& g1, const PolyMatrix& g2);

// Throws SymplecticViolation carrying the residual in its message.
StabilizerMatrix assemble_stabilizer(const NestedPair& pair, Orientation orientation);

struct Expansion {
  Matrix X, Z;                 // frames*(rows) x frames*n each
  std::size_t rank = 0;        // row rank of [X | Z]
  std::size_t boundary_defect = 0;
};

// Banded block-Toeplitz truncation. Throws TooFewFrames when frames <= degree.
Expansion semi_infinite_expand(const StabilizerMatrix& s, std::size_t frames);

// A certified lower bound with its source.
struct Bound {
  int value = 0;
  std::string provenance;
};

struct DistanceEffort {
  bool exact_relative = false;
  convo::SearchBudget budget;
};

struct AqccParams {
  std::uint32_t q = 0;
  std::size_t n = 0;
  int k = 0;
  int mu_star = 0;
  int gamma = 0, gamma1 = 0, gamma2 = 0;
  Bound dz, dx;                      // after the swap
  std::optional<int> dz_exact, dx_exact;
  // Raw relative weights wt(V1 \ V2) and wt(V2^perp \ V1^perp) when searched.
  std::optional<convo::FreeDistanceResult> wt_v1_minus_v2, wt_v2dual_minus_v1dual;
  bool swapped = false;
};

// bound_v1 bounds d_f(V1), bound_v2_dual bounds d_f(V2^perp). The
// orientation decides which of them is the Z distance before the swap that
// makes d_z >= d_x. Throws ZeroLogicalDimension when k1 <= k2.
AqccParams derive_aqcc(const NestedPair& pair, const StabilizerMatrix& s, Orientation orientation,
                       const Bound& bound_v1, const Bound& bound_v2_dual, const DistanceEffort& effort = {});

std::string tuple_string(std::size_t n, int k, int gamma, int dz, int dx, std::uint32_t q);

}  // namespace aqcc::css
