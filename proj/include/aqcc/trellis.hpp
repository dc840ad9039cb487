#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aqcc/block.hpp"
#include "aqcc/polymatrix.hpp"

namespace aqcc::convo {

struct SearchBudget {
  std::uint64_t states = 1u << 20;
  std::uint64_t edges = 1ull << 28;
  // Small-support inputs tried for upper bounds when the search is refused.
  int weight_cap = 2;
};

struct FreeDistanceResult {
  int lower = 0;
  std::string lower_provenance;
  int upper = block::kInfinity;
  std::vector<Poly> witness;  // codeword of weight `upper`
  bool exact = false;
};

// Exact minimum weight over nonzero codewords by uniform-cost search on the
// encoder state graph when q^gamma and the edge count fit the budget,
// otherwise bounds. Throws CatastrophicEncoder if G is not basic.
FreeDistanceResult free_distance(const PolyMatrix& g, const SearchBudget& budget = {},
                                 std::optional<int> lower_hint = std::nullopt,
                                 const std::string& hint_provenance = "");

// Minimum weight of the dual code of G, searched on the syndrome-former
// trellis of G (states are pending partial inner products).
FreeDistanceResult dual_free_distance(const PolyMatrix& g, const SearchBudget& budget = {},
                                      std::optional<int> lower_hint = std::nullopt,
                                      const std::string& hint_provenance = "");

// min wt(V \ W) where W is spanned by the listed rows of G.
FreeDistanceResult relative_free_distance(const PolyMatrix& g, const std::vector<std::size_t>& subcode_rows,
                                          const SearchBudget& budget = {},
                                          std::optional<int> lower_hint = std::nullopt,
                                          const std::string& hint_provenance = "");

// min wt(W^perp \ V^perp) where W is spanned by the listed rows of G.
FreeDistanceResult relative_dual_free_distance(const PolyMatrix& g, const std::vector<std::size_t>& subcode_rows,
                                               const SearchBudget& budget = {},
                                               std::optional<int> lower_hint = std::nullopt,
                                               const std::string& hint_provenance = "");

// Encoder output u(D) G(D).
std::vector<Poly> encode(const PolyMatrix& g, const std::vector<Poly>& u);
// True when v(D) H(1/D)^T = 0 for every row of H, i.e. v is orthogonal to the module of H.
bool orthogonal_to(const PolyMatrix& h, const std::vector<Poly>& v);

}  // namespace aqcc::convo
