#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aqcc/polymatrix.hpp"

namespace aqcc::convo {

struct SmithForm {
  PolyMatrix U, S, V;  // U * G * V = S, U and V unimodular
  std::vector<Poly> invariants;  // monic, each divides the next
  std::size_t rank = 0;
};

SmithForm smith_form(const PolyMatrix& g);

struct BasicResult {
  bool basic = false;
  PolyMatrix right_inverse;  // G * R = I when basic
  Poly obstruction;          // first non-unit invariant factor otherwise
  SmithForm smith;
};

// Throws RankDeficient when G lacks full row rank.
BasicResult is_basic(const PolyMatrix& g);
bool is_reduced(const PolyMatrix& g);

struct DegreeAccounting {
  std::vector<int> row_degrees;
  int gamma = 0;
  int memory = 0;
};

DegreeAccounting degree_accounting(const PolyMatrix& g);

// Basic reduced H with G(D) H(1/D)^T = 0. Throws NotBasic.
PolyMatrix dual_generator(const PolyMatrix& g);
PolyMatrix dual_generator(const PolyMatrix& g, const SmithForm& smith);
// D^mu G(D) H(1/D)^T with mu = deg H; zero exactly when H generates a
// submodule of the dual.
PolyMatrix orthogonality_residual(const PolyMatrix& g, const PolyMatrix& h);

// Unimodular row operations until the leading-row-coefficient matrix has full rank.
PolyMatrix make_row_reduced(PolyMatrix g);

struct ContainmentResult {
  bool contained = false;
  PolyMatrix witness;  // inner = witness * outer when contained
};

// Throws NotBasic if either matrix is not basic.
ContainmentResult contains(const PolyMatrix& outer, const PolyMatrix& inner);
ContainmentResult contains_with_inverse(const PolyMatrix& outer, const PolyMatrix& outer_right_inverse,
                                        const PolyMatrix& inner);
// Row indices of outer selected by a 0/1 witness, or nullopt if the witness
// is not a row selection.
std::optional<std::vector<std::size_t>> selected_rows(const PolyMatrix& witness);

// Source matrix split into consecutive blocks H0, H1, ..., Hmu.
struct SplitPlan {
  Matrix h;
  std::vector<std::size_t> blocks;
};

// sum_i Hi~ D^i with each Hi (i >= 1) padded by zero rows to kappa = rows(H0).
// Throws RankConditionViolated naming the offending block.
PolyMatrix split_to_generator(const SplitPlan& plan);

}  // namespace aqcc::convo
