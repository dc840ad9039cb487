#include "aqcc/trellis.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "aqcc/convo.hpp"
#include "aqcc/error.hpp"

namespace aqcc::convo {
namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();
constexpr std::uint32_t kStart = std::numeric_limits<std::uint32_t>::max();
constexpr std::uint64_t kMaxInputs = 1u << 22;
constexpr std::uint64_t kMaxLeaderTable = 1u << 24;
constexpr std::uint64_t kMaxFallbackTrials = 2000000;

// Q^e, or nullopt when it exceeds `cap`.
std::optional<std::uint64_t> checked_pow(std::uint64_t q, std::size_t e, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (r > cap / q) return std::nullopt;
    r *= q;
  }
  return r;
}

// Distance-indexed buckets; weights are small nonnegative integers.
class BucketQueue {
 public:
  void push(std::uint32_t d, std::uint32_t node) {
    if (d >= buckets_.size()) buckets_.resize(d + 1);
    buckets_[d].push_back(node);
  }
  // Pops from the lowest nonempty bucket below `limit`.
  bool pop(std::uint32_t limit, std::uint32_t& d, std::uint32_t& node) {
    while (cur_ < buckets_.size() && cur_ < limit) {
      if (!buckets_[cur_].empty()) {
        node = buckets_[cur_].back();
        buckets_[cur_].pop_back();
        d = std::uint32_t(cur_);
        return true;
      }
      ++cur_;
    }
    return false;
  }

 private:
  std::vector<std::vector<std::uint32_t>> buckets_;
  std::size_t cur_ = 0;
};

std::vector<char> subcode_mask(std::size_t k, const std::vector<std::size_t>* subcode_rows) {
  std::vector<char> sel(k, 0);
  if (subcode_rows)
    for (auto r : *subcode_rows) {
      if (r >= k) throw Error(Errc::InvalidArgument, "subcode row index out of range");
      sel[r] = 1;
    }
  return sel;
}

std::size_t row_weight_at(const gf::Field& f, const std::vector<Elem>& a, const Elem* b, std::size_t n) {
  std::size_t w = 0;
  for (std::size_t c = 0; c < n; ++c) w += f.add(a[c], b[c]) != 0;
  return w;
}

// Lightest codeword among inputs with few nonzero coefficients in degrees
// 0..2mu. With a subcode mask, inputs confined to the subcode are skipped.
void small_support_upper(const PolyMatrix& g, const std::vector<char>& sel, int cap, FreeDistanceResult& res) {
  const auto& f = *g.field();
  const std::size_t k = g.rows();
  const int span = 2 * std::max(0, g.degree()) + 1;
  std::vector<std::pair<std::size_t, int>> pos;
  for (std::size_t r = 0; r < k; ++r)
    for (int j = 0; j < span; ++j) pos.emplace_back(r, j);
  std::uint64_t trials = 0;
  std::vector<std::size_t> idx;
  std::vector<Elem> coef;

  auto evaluate = [&]() {
    bool outside = false;
    for (auto i : idx) outside |= !sel[pos[i].first];
    if (!outside) return;
    std::vector<Poly> u(k);
    for (std::size_t t = 0; t < idx.size(); ++t) {
      auto [r, j] = pos[idx[t]];
      if (u[r].size() < std::size_t(j + 1)) u[r].resize(j + 1, 0);
      u[r][j] = coef[t];
    }
    for (auto& p : u) trim(p);
    auto v = encode(g, u);
    int w = int(weight(v));
    if (w > 0 && w < res.upper) {
      res.upper = w;
      res.witness = v;
    }
  };

  // Recursive choice of positions (increasing) and nonzero coefficients,
  // the first coefficient fixed to 1.
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (trials >= kMaxFallbackTrials) return;
    if (!idx.empty()) {
      ++trials;
      evaluate();
    }
    if (int(idx.size()) == cap) return;
    for (std::size_t i = start; i < pos.size(); ++i) {
      idx.push_back(i);
      if (idx.size() == 1) {
        coef.push_back(1);
        self(self, i + 1);
        coef.pop_back();
      } else {
        for (Elem a = 1; a < f.q(); ++a) {
          coef.push_back(a);
          self(self, i + 1);
          coef.pop_back();
        }
      }
      idx.pop_back();
    }
  };
  rec(rec, 0);
}

void apply_hint(FreeDistanceResult& res, std::optional<int> hint, const std::string& provenance) {
  if (hint && *hint > 1) {
    res.lower = *hint;
    res.lower_provenance = provenance.empty() ? "supplied" : provenance;
  } else {
    res.lower = 1;
    res.lower_provenance = "trivial";
  }
  if (res.upper != block::kInfinity) res.lower = std::min(res.lower, res.upper);
  res.exact = res.lower == res.upper;
}

// Encoder state graph. A state packs the last nu_r inputs of every row,
// newest at the row's lowest digit. With a subcode, nodes carry one extra
// bit recording whether an input outside the subcode has been nonzero.
std::optional<FreeDistanceResult> encoder_search(const PolyMatrix& g, const std::vector<char>& sel, bool relative,
                                                 const SearchBudget& budget) {
  const auto& f = *g.field();
  const std::size_t k = g.rows(), n = g.cols();
  const std::uint64_t Q = f.q();
  std::vector<int> nu(k);
  std::vector<std::size_t> off(k);
  std::size_t gamma = 0;
  for (std::size_t r = 0; r < k; ++r) {
    nu[r] = std::max(0, g.row_degree(r));
    off[r] = gamma;
    gamma += nu[r];
  }
  const std::uint64_t flags = relative ? 2 : 1;
  auto states = checked_pow(Q, gamma, std::min<std::uint64_t>(budget.states, 1u << 30));
  auto inputs = checked_pow(Q, k, kMaxInputs);
  if (!states || !inputs) return std::nullopt;
  const std::uint64_t nodes = *states * flags;
  if (nodes > budget.edges / *inputs) return std::nullopt;

  std::vector<std::uint64_t> qpow(gamma + 1, 1);
  for (std::size_t i = 1; i <= gamma; ++i) qpow[i] = qpow[i - 1] * Q;
  std::vector<Matrix> coefs;
  for (int j = 0; j <= std::max(0, g.degree()); ++j) coefs.push_back(g.coefficient(j));

  // Input tables.
  const std::uint64_t U = *inputs;
  std::vector<Elem> in_out(U * n, 0);
  std::vector<std::uint64_t> in_state(U, 0);
  std::vector<char> in_flag(U, 0);
  {
    std::vector<Elem> u(k, 0);
    for (std::uint64_t x = 0; x < U; ++x) {
      std::uint64_t t = x;
      for (std::size_t r = 0; r < k; ++r) {
        u[r] = Elem(t % Q);
        t /= Q;
      }
      Elem* out = &in_out[x * n];
      for (std::size_t r = 0; r < k; ++r) {
        if (!u[r]) continue;
        block::axpy(f, {out, n}, coefs[0].row(r), u[r]);
        if (nu[r] > 0) in_state[x] += u[r] * qpow[off[r]];
        in_flag[x] |= relative ? !sel[r] : 1;
      }
    }
  }

  auto state_output = [&](std::uint64_t s, std::vector<Elem>& out) {
    std::fill(out.begin(), out.end(), 0);
    for (std::size_t r = 0; r < k; ++r)
      for (int j = 1; j <= nu[r]; ++j) {
        Elem d = Elem((s / qpow[off[r] + j - 1]) % Q);
        if (d) block::axpy(f, out, coefs[j].row(r), d);
      }
  };
  auto shifted = [&](std::uint64_t s) {
    std::uint64_t ns = 0;
    for (std::size_t r = 0; r < k; ++r) {
      if (nu[r] == 0) continue;
      std::uint64_t old = (s / qpow[off[r]]) % qpow[nu[r]];
      ns += (old % qpow[nu[r] - 1]) * Q * qpow[off[r]];
    }
    return ns;
  };

  std::vector<std::uint32_t> dist(nodes, kUnreached), pred(nodes, kStart), pred_in(nodes, 0);
  BucketQueue queue;
  std::uint32_t best = kUnreached, best_from = kStart, best_in = 0;
  std::vector<Elem> os(n, 0);

  auto expand = [&](std::uint32_t from, std::uint64_t s, std::uint32_t fl, std::uint32_t d) {
    state_output(s, os);
    const std::uint64_t sh = shifted(s);
    const bool at_start = from == kStart;
    for (std::uint64_t x = at_start ? 1 : 0; x < U; ++x) {
      const std::uint32_t nd = d + std::uint32_t(row_weight_at(f, os, &in_out[x * n], n));
      if (nd >= best) continue;
      const std::uint64_t ns = sh + in_state[x];
      const std::uint32_t nfl = fl | std::uint32_t(in_flag[x]);
      if (ns == 0) {
        if (nfl || !relative) {
          best = nd;
          best_from = from;
          best_in = std::uint32_t(x);
        }
        continue;
      }
      const std::uint64_t node = relative ? ns * 2 + nfl : ns;
      if (nd < dist[node]) {
        dist[node] = nd;
        pred[node] = from;
        pred_in[node] = std::uint32_t(x);
        queue.push(nd, std::uint32_t(node));
      }
    }
  };

  expand(kStart, 0, 0, 0);
  std::uint32_t d, node;
  while (queue.pop(best, d, node)) {
    if (d != dist[node]) continue;
    expand(node, relative ? node / 2 : node, relative ? node % 2 : 1, d);
  }

  FreeDistanceResult res;
  if (best == kUnreached) {
    // No codeword outside the subcode.
    res.lower = res.upper = block::kInfinity;
    res.exact = true;
    res.lower_provenance = "search";
    return res;
  }
  // Input sequence, oldest first.
  std::vector<std::uint32_t> seq{best_in};
  for (std::uint32_t cur = best_from; cur != kStart; cur = pred[cur]) seq.push_back(pred_in[cur]);
  std::reverse(seq.begin(), seq.end());
  std::vector<Poly> u(k);
  for (std::size_t t = 0; t < seq.size(); ++t) {
    std::uint64_t x = seq[t];
    for (std::size_t r = 0; r < k; ++r) {
      Elem a = Elem(x % Q);
      x /= Q;
      if (!a) continue;
      u[r].resize(std::max(u[r].size(), t + 1), 0);
      u[r][t] = a;
    }
  }
  res.witness = encode(g, u);
  if (weight(res.witness) != best) throw std::logic_error("encoder search witness weight mismatch");
  res.lower = res.upper = int(best);
  res.exact = true;
  res.lower_provenance = "search";
  return res;
}

// Syndrome-former graph for the dual. Constraint c_{r,s} = sum_j g_{r,j} . v(s+j)
// must vanish for every shift s. At time t the state holds the partial sums
// of c_{r,t-1-i} for i < nu_r. y = phi(v(t)) collects all g_{r,j} . v(t);
// leader[y] is the lightest v(t) with that image.
std::optional<FreeDistanceResult> syndrome_search(const PolyMatrix& g, const std::vector<char>& sel, bool relative,
                                                  const SearchBudget& budget) {
  const auto& f = *g.field();
  const std::size_t k = g.rows(), n = g.cols();
  const std::uint64_t Q = f.q();
  std::vector<int> nu(k);
  std::vector<std::size_t> off(k), base(k);
  std::size_t gamma = 0, m = 0, free_extra = 0;
  for (std::size_t r = 0; r < k; ++r) {
    nu[r] = std::max(0, g.row_degree(r));
    off[r] = gamma;
    base[r] = m;
    gamma += nu[r];
    m += nu[r] + 1;
    if (relative && !sel[r]) ++free_extra;
  }
  const std::uint64_t flags = relative ? 2 : 1;
  auto states = checked_pow(Q, gamma, std::min<std::uint64_t>(budget.states, 1u << 30));
  auto table = checked_pow(Q, m, std::min(kMaxLeaderTable, budget.edges));
  auto branches = checked_pow(Q, gamma + free_extra, budget.edges);
  if (!states || !table || !branches) return std::nullopt;
  const std::uint64_t nodes = *states * flags;
  if (nodes > budget.edges / *branches) return std::nullopt;

  std::vector<std::uint64_t> qpow(m + 1, 1);
  for (std::size_t i = 1; i <= m; ++i) qpow[i] = qpow[i - 1] * Q;
  auto digit = [&](std::uint64_t x, std::size_t i) { return Elem((x / qpow[i]) % Q); };
  auto packed_add = [&](std::uint64_t a, std::uint64_t b) -> std::uint64_t {
    if (f.p() == 2) return a ^ b;
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < m; ++i) r += std::uint64_t(f.add(digit(a, i), digit(b, i))) * qpow[i];
    return r;
  };

  // phi as an m x n matrix; rows ordered (r, j).
  Matrix phi(g.field(), m, n);
  for (std::size_t r = 0; r < k; ++r)
    for (int j = 0; j <= nu[r]; ++j)
      for (std::size_t c = 0; c < n; ++c) {
        const Poly& e = g.at(r, c);
        phi(base[r] + j, c) = j < int(e.size()) ? e[j] : 0;
      }
  // Scaled column images, indexed c * (Q-1) + (a-1).
  std::vector<std::uint64_t> img(n * (Q - 1), 0);
  for (std::size_t c = 0; c < n; ++c)
    for (Elem a = 1; a < Q; ++a) {
      std::uint64_t x = 0;
      for (std::size_t i = 0; i < m; ++i) x += std::uint64_t(f.mul(a, phi(i, c))) * qpow[i];
      img[c * (Q - 1) + a - 1] = x;
    }
  const std::uint64_t T = *table;
  std::vector<std::uint8_t> leader(T, 255);
  {
    std::vector<std::uint64_t> frontier{0}, next;
    leader[0] = 0;
    for (std::uint8_t w = 1; !frontier.empty() && w < 255; ++w) {
      next.clear();
      for (auto y : frontier)
        for (auto im : img) {
          auto z = packed_add(y, im);
          if (leader[z] == 255) {
            leader[z] = w;
            next.push_back(z);
          }
        }
      frontier.swap(next);
    }
  }

  FreeDistanceResult res;
  std::uint32_t best = kUnreached;
  std::vector<Poly> best_single;
  if (!relative) {
    // Codewords living in one time slot: the block code ker(phi).
    auto kc = block::code_from_parity(phi);
    if (kc.k > 0) {
      auto dr = block::min_distance(kc, std::max<std::uint64_t>(block::kDefaultEnumBudget, T));
      if (!dr.exact) return std::nullopt;
      best = std::uint32_t(dr.upper);
      best_single.resize(n);
      for (std::size_t c = 0; c < n; ++c)
        if (dr.witness[c]) best_single[c] = Poly{dr.witness[c]};
    }
  }

  std::vector<std::uint32_t> dist(nodes, kUnreached), pred(nodes, kStart);
  std::vector<std::uint64_t> pred_y(nodes, 0);
  BucketQueue queue;
  std::uint32_t best_from = kStart;
  std::uint64_t best_y = 0;

  const std::size_t F = gamma + free_extra;
  std::vector<Elem> fr(F, 0), pend(gamma, 0), npend(gamma, 0);

  auto expand = [&](std::uint32_t from, std::uint64_t s, std::uint32_t fl, std::uint32_t d) {
    for (std::size_t i = 0; i < gamma; ++i) pend[i] = digit(s, i);
    std::fill(fr.begin(), fr.end(), 0);
    while (true) {
      // Assemble y and the next state from the free digits.
      std::uint64_t y = 0, ns = 0;
      std::uint32_t nfl = fl;
      std::size_t fi = 0;
      for (std::size_t r = 0; r < k; ++r) {
        for (int j = 0; j < nu[r]; ++j) {
          Elem yj = fr[fi++];
          y += std::uint64_t(yj) * qpow[base[r] + j];
          Elem p = j == 0 ? yj : f.add(pend[off[r] + j - 1], yj);
          ns += std::uint64_t(p) * qpow[off[r] + j];
        }
        Elem carry = nu[r] > 0 ? pend[off[r] + nu[r] - 1] : 0;
        Elem ylast;
        if (relative && !sel[r]) {
          ylast = fr[fi++];
          nfl |= f.add(carry, ylast) != 0;
        } else {
          ylast = f.neg(carry);
        }
        y += std::uint64_t(ylast) * qpow[base[r] + nu[r]];
      }
      const std::uint8_t lw = leader[y];
      if (lw != 255 && !(from == kStart && y == 0)) {
        const std::uint32_t nd = d + lw;
        if (nd < best) {
          if (ns == 0) {
            if (nfl || !relative) {
              best = nd;
              best_from = from;
              best_y = y;
              best_single.clear();
            }
          } else {
            const std::uint64_t node = relative ? ns * 2 + nfl : ns;
            if (nd < dist[node]) {
              dist[node] = nd;
              pred[node] = from;
              pred_y[node] = y;
              queue.push(nd, std::uint32_t(node));
            }
          }
        }
      }
      std::size_t i = 0;
      while (i < F && ++fr[i] == Q) fr[i++] = 0;
      if (i == F) break;
    }
  };

  expand(kStart, 0, 0, 0);
  std::uint32_t d, node;
  while (queue.pop(best, d, node)) {
    if (d != dist[node]) continue;
    expand(node, relative ? node / 2 : node, relative ? node % 2 : 1, d);
  }

  if (best == kUnreached) {
    res.lower = res.upper = block::kInfinity;
    res.exact = true;
    res.lower_provenance = "search";
    return res;
  }
  if (!best_single.empty()) {
    res.witness = best_single;
  } else {
    std::vector<std::uint64_t> ys{best_y};
    for (std::uint32_t cur = best_from; cur != kStart; cur = pred[cur]) ys.push_back(pred_y[cur]);
    std::reverse(ys.begin(), ys.end());
    std::vector<Poly> v(n);
    for (std::size_t t = 0; t < ys.size(); ++t) {
      // Greedy descent through the leader table.
      std::uint64_t y = ys[t];
      while (leader[y] > 0) {
        bool moved = false;
        for (std::size_t c = 0; c < n && !moved; ++c)
          for (Elem a = 1; a < Q && !moved; ++a) {
            auto z = packed_add(y, img[c * (Q - 1) + a - 1]);
            if (leader[z] + 1 == leader[y]) {
              // y = z + (-a) phi_c, so coordinate c carries -a.
              v[c].resize(std::max(v[c].size(), t + 1), 0);
              v[c][t] = f.add(v[c][t], f.neg(a));
              y = z;
              moved = true;
            }
          }
        if (!moved) throw std::logic_error("leader table descent failed");
      }
    }
    for (auto& p : v) trim(p);
    res.witness = v;
  }
  if (weight(res.witness) != best) throw std::logic_error("syndrome search witness weight mismatch");
  res.lower = res.upper = int(best);
  res.exact = true;
  res.lower_provenance = "search";
  return res;
}

void require_basic(const PolyMatrix& g) {
  if (!is_basic(g).basic)
    throw Error(Errc::CatastrophicEncoder, "generator is not basic; free distance search refused");
}

}  // namespace

std::vector<Poly> encode(const PolyMatrix& g, const std::vector<Poly>& u) {
  const auto& f = *g.field();
  std::vector<Poly> v(g.cols());
  for (std::size_t r = 0; r < g.rows(); ++r) {
    if (u[r].empty()) continue;
    for (std::size_t c = 0; c < g.cols(); ++c)
      if (!g.at(r, c).empty()) poly_submul(f, v[c], poly_scale(f, u[r], f.neg(1)), g.at(r, c));
  }
  return v;
}

bool orthogonal_to(const PolyMatrix& h, const std::vector<Poly>& v) {
  const auto& f = *h.field();
  int L = 0;
  for (auto& p : v) L = std::max(L, deg(p));
  for (std::size_t r = 0; r < h.rows(); ++r) {
    Poly acc;
    for (std::size_t c = 0; c < h.cols(); ++c)
      if (!v[c].empty() && !h.at(r, c).empty())
        poly_submul(f, acc, h.at(r, c), poly_scale(f, poly_reverse(v[c], L), f.neg(1)));
    if (!acc.empty()) return false;
  }
  return true;
}

FreeDistanceResult free_distance(const PolyMatrix& g, const SearchBudget& budget, std::optional<int> lower_hint,
                                 const std::string& hint_provenance) {
  require_basic(g);
  auto sel = subcode_mask(g.rows(), nullptr);
  if (auto r = encoder_search(g, sel, false, budget)) return *r;
  FreeDistanceResult res;
  small_support_upper(g, sel, budget.weight_cap, res);
  apply_hint(res, lower_hint, hint_provenance);
  return res;
}

FreeDistanceResult relative_free_distance(const PolyMatrix& g, const std::vector<std::size_t>& subcode_rows,
                                          const SearchBudget& budget, std::optional<int> lower_hint,
                                          const std::string& hint_provenance) {
  require_basic(g);
  auto sel = subcode_mask(g.rows(), &subcode_rows);
  if (auto r = encoder_search(g, sel, true, budget)) return *r;
  FreeDistanceResult res;
  small_support_upper(g, sel, budget.weight_cap, res);
  apply_hint(res, lower_hint, hint_provenance);
  return res;
}

FreeDistanceResult dual_free_distance(const PolyMatrix& g, const SearchBudget& budget, std::optional<int> lower_hint,
                                      const std::string& hint_provenance) {
  require_basic(g);
  auto sel = subcode_mask(g.rows(), nullptr);
  if (auto r = syndrome_search(g, sel, false, budget)) return *r;
  FreeDistanceResult res;
  auto h = dual_generator(g);
  small_support_upper(h, subcode_mask(h.rows(), nullptr), budget.weight_cap, res);
  apply_hint(res, lower_hint, hint_provenance);
  return res;
}

FreeDistanceResult relative_dual_free_distance(const PolyMatrix& g, const std::vector<std::size_t>& subcode_rows,
                                               const SearchBudget& budget, std::optional<int> lower_hint,
                                               const std::string& hint_provenance) {
  require_basic(g);
  auto sel = subcode_mask(g.rows(), &subcode_rows);
  if (auto r = syndrome_search(g, sel, true, budget)) return *r;
  // Upper bound: light words of the subcode's dual that fail some outer check.
  FreeDistanceResult res;
  auto w = g.select_rows(subcode_rows);
  auto hw = dual_generator(w);
  FreeDistanceResult cand;
  small_support_upper(hw, subcode_mask(hw.rows(), nullptr), budget.weight_cap, cand);
  if (cand.upper != block::kInfinity && !orthogonal_to(g, cand.witness)) {
    res.upper = cand.upper;
    res.witness = cand.witness;
  }
  apply_hint(res, lower_hint, hint_provenance);
  return res;
}

}  // namespace aqcc::convo
