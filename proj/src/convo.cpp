#include "aqcc/convo.hpp"

#include <algorithm>

#include "aqcc/error.hpp"

namespace aqcc::convo {

namespace {

// Constant column transform T with G(0) T = [I | 0], or nullopt when G(0)
// lacks full row rank.
std::optional<Matrix> constant_precondition(const PolyMatrix& g) {
  const std::size_t k = g.rows(), n = g.cols();
  if (k == 0 || k > n) return std::nullopt;
  const auto& f = *g.field();
  Matrix aug(g.field(), k, n + k);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const Poly& p = g.at(r, c);
      aug(r, c) = p.empty() ? 0 : p[0];
    }
    aug(r, n + r) = 1;
  }
  auto rr = block::rref(aug);
  if (rr.rank < k || rr.pivots[k - 1] >= n) return std::nullopt;
  std::vector<bool> is_pivot(n, false);
  for (std::size_t j = 0; j < k; ++j) is_pivot[rr.pivots[j]] = true;
  Matrix t(g.field(), n, n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) t(rr.pivots[j], i) = rr.reduced(j, n + i);
  std::size_t col = k;
  for (std::size_t fc = 0; fc < n; ++fc) {
    if (is_pivot[fc]) continue;
    t(fc, col) = 1;
    for (std::size_t j = 0; j < k; ++j) t(rr.pivots[j], col) = f.neg(rr.reduced(j, fc));
    ++col;
  }
  return t;
}

class SmithWork {
 public:
  SmithWork(const PolyMatrix& g) : f_(*g.field()), k_(g.rows()), n_(g.cols()) {
    U = PolyMatrix::identity(g.field(), k_);
    auto t = constant_precondition(g);
    if (!t) {
      A = g;
      V = PolyMatrix::identity(g.field(), n_);
      return;
    }
    // G T = [I | 0] + (G - G(0)) T; only rows with higher-degree terms need a product.
    V = PolyMatrix::from_constant(*t);
    A = PolyMatrix(g.field(), k_, n_);
    for (std::size_t r = 0; r < k_; ++r) {
      A.at(r, r) = Poly{1};
      if (g.row_degree(r) <= 0) continue;
      for (std::size_t c = 0; c < n_; ++c) {
        const Poly& p = g.at(r, c);
        if (p.size() < 2) continue;
        Poly hi(p.begin(), p.end());
        hi[0] = 0;
        Poly nhi = poly_scale(f_, hi, f_.neg(1));
        for (std::size_t j = 0; j < n_; ++j) {
          Elem tv = (*t)(c, j);
          if (tv) poly_submul(f_, A.at(r, j), nhi, Poly{tv});
        }
      }
    }
  }

  void run() {
    const std::size_t steps = std::min(k_, n_);
    for (std::size_t s = 0; s < steps; ++s) {
      if (!choose_pivot(s)) break;
      reduce_pivot(s);
      const Poly& piv = A.at(s, s);
      Elem lead = piv.back();
      if (lead != 1) {
        Elem inv = f_.inv(lead);
        for (std::size_t c = 0; c < n_; ++c)
          if (!A.at(s, c).empty()) A.at(s, c) = poly_scale(f_, A.at(s, c), inv);
        for (std::size_t c = 0; c < k_; ++c)
          if (!U.at(s, c).empty()) U.at(s, c) = poly_scale(f_, U.at(s, c), inv);
      }
      invariants.push_back(A.at(s, s));
    }
  }

  PolyMatrix A, U, V;
  std::vector<Poly> invariants;

 private:
  bool choose_pivot(std::size_t s) {
    int best_deg = -1;
    std::size_t best_nnz = 0, bi = 0, bj = 0;
    for (std::size_t i = s; i < k_; ++i) {
      std::size_t nnz = 0;
      int row_min = -1;
      std::size_t row_j = 0;
      for (std::size_t j = s; j < n_; ++j) {
        const Poly& p = A.at(i, j);
        if (p.empty()) continue;
        ++nnz;
        if (row_min < 0 || deg(p) < row_min) {
          row_min = deg(p);
          row_j = j;
        }
      }
      if (row_min < 0) continue;
      if (best_deg < 0 || row_min < best_deg || (row_min == best_deg && nnz < best_nnz)) {
        best_deg = row_min;
        best_nnz = nnz;
        bi = i;
        bj = row_j;
      }
    }
    if (best_deg < 0) return false;
    swap_rows(s, bi);
    swap_cols(s, bj);
    return true;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < n_; ++c) std::swap(A.at(a, c), A.at(b, c));
    for (std::size_t c = 0; c < k_; ++c) std::swap(U.at(a, c), U.at(b, c));
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < k_; ++r) std::swap(A.at(r, a), A.at(r, b));
    for (std::size_t r = 0; r < n_; ++r) std::swap(V.at(r, a), V.at(r, b));
  }

  // row_i -= q row_s
  void row_op(std::size_t i, std::size_t s, const Poly& q) {
    for (std::size_t c = 0; c < n_; ++c)
      if (!A.at(s, c).empty()) poly_submul(f_, A.at(i, c), q, A.at(s, c));
    for (std::size_t c = 0; c < k_; ++c)
      if (!U.at(s, c).empty()) poly_submul(f_, U.at(i, c), q, U.at(s, c));
  }

  // col_j -= q col_s
  void col_op(std::size_t j, std::size_t s, const Poly& q) {
    for (std::size_t r = 0; r < k_; ++r)
      if (!A.at(r, s).empty()) poly_submul(f_, A.at(r, j), q, A.at(r, s));
    for (std::size_t r = 0; r < n_; ++r)
      if (!V.at(r, s).empty()) poly_submul(f_, V.at(r, j), q, V.at(r, s));
  }

  void reduce_pivot(std::size_t s) {
    Poly q, r;
    while (true) {
      bool clean = true;
      for (std::size_t i = s + 1; i < k_; ++i) {
        if (A.at(i, s).empty()) continue;
        poly_divmod(f_, A.at(i, s), A.at(s, s), q, r);
        row_op(i, s, q);
        if (!A.at(i, s).empty()) clean = false;
      }
      for (std::size_t j = s + 1; j < n_; ++j) {
        if (A.at(s, j).empty()) continue;
        poly_divmod(f_, A.at(s, j), A.at(s, s), q, r);
        col_op(j, s, q);
        if (!A.at(s, j).empty()) clean = false;
      }
      if (!clean) {
        int best = deg(A.at(s, s));
        std::size_t bi = s, bj = s;
        for (std::size_t i = s + 1; i < k_; ++i)
          if (!A.at(i, s).empty() && deg(A.at(i, s)) < best) {
            best = deg(A.at(i, s));
            bi = i;
            bj = s;
          }
        for (std::size_t j = s + 1; j < n_; ++j)
          if (!A.at(s, j).empty() && deg(A.at(s, j)) < best) {
            best = deg(A.at(s, j));
            bi = s;
            bj = j;
          }
        swap_rows(s, bi);
        swap_cols(s, bj);
        continue;
      }
      if (deg(A.at(s, s)) == 0) return;
      // Enforce divisibility of the remaining block by the pivot.
      bool fixed = false;
      for (std::size_t i = s + 1; i < k_ && !fixed; ++i)
        for (std::size_t j = s + 1; j < n_ && !fixed; ++j) {
          if (A.at(i, j).empty()) continue;
          poly_divmod(f_, A.at(i, j), A.at(s, s), q, r);
          if (!r.empty()) {
            row_op(s, i, Poly{f_.neg(1)});
            fixed = true;
          }
        }
      if (!fixed) return;
    }
  }

  const gf::Field& f_;
  std::size_t k_, n_;
};

}  // namespace

SmithForm smith_form(const PolyMatrix& g) {
  SmithWork w(g);
  w.run();
  SmithForm out;
  out.U = std::move(w.U);
  out.S = std::move(w.A);
  out.V = std::move(w.V);
  out.invariants = std::move(w.invariants);
  out.rank = out.invariants.size();
  return out;
}

BasicResult is_basic(const PolyMatrix& g) {
  BasicResult res;
  res.smith = smith_form(g);
  const std::size_t k = g.rows();
  if (res.smith.rank < k)
    throw Error(Errc::RankDeficient, "generator has rank " + std::to_string(res.smith.rank) + " < " + std::to_string(k));
  res.basic = true;
  for (const auto& d : res.smith.invariants)
    if (deg(d) > 0) {
      res.basic = false;
      res.obstruction = d;
      break;
    }
  if (res.basic) {
    std::vector<std::size_t> first(k);
    for (std::size_t i = 0; i < k; ++i) first[i] = i;
    res.right_inverse = res.smith.V.select_cols(first) * res.smith.U;
  }
  return res;
}

bool is_reduced(const PolyMatrix& g) { return block::rank(g.leading_row_matrix()) == g.rows(); }

DegreeAccounting degree_accounting(const PolyMatrix& g) {
  DegreeAccounting a;
  for (std::size_t r = 0; r < g.rows(); ++r) {
    int d = std::max(0, g.row_degree(r));
    a.row_degrees.push_back(d);
    a.gamma += d;
    a.memory = std::max(a.memory, d);
  }
  return a;
}

PolyMatrix make_row_reduced(PolyMatrix g) {
  const auto& f = *g.field();
  while (true) {
    Matrix lead = g.leading_row_matrix();
    Matrix dep = block::kernel(lead.transpose());
    if (dep.rows() == 0) return g;
    int top = -1;
    std::size_t star = 0;
    for (std::size_t r = 0; r < g.rows(); ++r)
      if (dep(0, r) && g.row_degree(r) > top) {
        top = g.row_degree(r);
        star = r;
      }
    if (top < 0) throw Error(Errc::RankDeficient, "zero row in matrix being reduced");
    std::vector<Poly> row(g.cols());
    for (std::size_t r = 0; r < g.rows(); ++r) {
      Elem c = dep(0, r);
      if (!c) continue;
      Poly mult(top - g.row_degree(r) + 1, 0);
      mult.back() = f.neg(c);
      for (std::size_t j = 0; j < g.cols(); ++j) poly_submul(f, row[j], mult, g.at(r, j));
    }
    for (std::size_t j = 0; j < g.cols(); ++j) g.at(star, j) = row[j];
  }
}

PolyMatrix dual_generator(const PolyMatrix& g, const SmithForm& smith) {
  const std::size_t k = g.rows(), n = g.cols();
  if (smith.rank < k) throw Error(Errc::NotBasic, "generator is rank deficient");
  for (const auto& d : smith.invariants)
    if (deg(d) > 0) throw Error(Errc::NotBasic, "invariant factor " + poly_to_string(d));
  std::vector<std::size_t> rest;
  for (std::size_t j = k; j < n; ++j) rest.push_back(j);
  PolyMatrix kernel = smith.V.select_cols(rest).transpose();
  // A reduced kernel basis reverses into a basic reduced dual generator.
  return make_row_reduced(std::move(kernel)).row_reversed();
}

PolyMatrix dual_generator(const PolyMatrix& g) { return dual_generator(g, smith_form(g)); }

PolyMatrix orthogonality_residual(const PolyMatrix& g, const PolyMatrix& h) {
  const int mu = std::max(0, h.degree());
  return g * h.reversed(mu).transpose();
}

ContainmentResult contains_with_inverse(const PolyMatrix& outer, const PolyMatrix& outer_right_inverse,
                                        const PolyMatrix& inner) {
  if (outer.cols() != inner.cols()) throw Error(Errc::InvalidArgument, "codes differ in length");
  ContainmentResult res;
  res.witness = inner * outer_right_inverse;
  res.contained = res.witness * outer == inner;
  return res;
}

ContainmentResult contains(const PolyMatrix& outer, const PolyMatrix& inner) {
  auto bo = is_basic(outer);
  if (!bo.basic) throw Error(Errc::NotBasic, "outer generator is not basic");
  if (!is_basic(inner).basic) throw Error(Errc::NotBasic, "inner generator is not basic");
  return contains_with_inverse(outer, bo.right_inverse, inner);
}

std::optional<std::vector<std::size_t>> selected_rows(const PolyMatrix& witness) {
  std::vector<std::size_t> sel;
  for (std::size_t r = 0; r < witness.rows(); ++r) {
    std::optional<std::size_t> hit;
    for (std::size_t c = 0; c < witness.cols(); ++c) {
      const Poly& p = witness.at(r, c);
      if (p.empty()) continue;
      if (hit || p.size() != 1 || p[0] != 1) return std::nullopt;
      hit = c;
    }
    if (!hit) return std::nullopt;
    sel.push_back(*hit);
  }
  return sel;
}

PolyMatrix split_to_generator(const SplitPlan& plan) {
  std::size_t total = 0;
  for (auto b : plan.blocks) total += b;
  if (plan.blocks.empty() || total != plan.h.rows())
    throw Error(Errc::InvalidArgument, "block sizes do not cover the source matrix");
  const std::size_t kappa = plan.blocks[0];
  std::vector<Matrix> coeffs;
  std::size_t start = 0;
  for (std::size_t i = 0; i < plan.blocks.size(); ++i) {
    std::vector<std::size_t> idx;
    for (std::size_t r = 0; r < plan.blocks[i]; ++r) idx.push_back(start + r);
    start += plan.blocks[i];
    Matrix hi = plan.h.select_rows(idx);
    const std::size_t rk = block::rank(hi);
    if (i == 0 && rk != kappa)
      throw Error(Errc::RankConditionViolated, "block 0 is not of full rank", 0);
    if (i > 0 && (plan.blocks[i] > kappa || rk > kappa))
      throw Error(Errc::RankConditionViolated, "block " + std::to_string(i) + " exceeds kappa rows", int(i));
    Matrix padded(plan.h.field(), kappa, plan.h.cols());
    for (std::size_t r = 0; r < hi.rows(); ++r)
      for (std::size_t c = 0; c < hi.cols(); ++c) padded(r, c) = hi(r, c);
    coeffs.push_back(std::move(padded));
  }
  return PolyMatrix::from_coefficients(coeffs);
}

}  // namespace aqcc::convo
