#include "aqcc/css.hpp"

#include <algorithm>

#include "aqcc/error.hpp"

namespace aqcc::css {

using convo::Poly;

SymplecticResult check_symplectic(const StabilizerMatrix& s) {
  if (s.X.rows() != s.Z.rows() || s.X.cols() != s.Z.cols())
    throw Error(Errc::InvalidArgument, "X and Z blocks differ in shape");
  const int mu = std::max({0, s.X.degree(), s.Z.degree()});
  SymplecticResult res;
  res.residual = s.X * s.Z.reversed(mu).transpose() - s.Z * s.X.reversed(mu).transpose();
  res.zero = res.residual.is_zero();
  return res;
}

NestedPair make_nested_pair(const PolyMatrix& g1, const PolyMatrix& g2) {
  auto b1 = convo::is_basic(g1);
  if (!b1.basic) throw Error(Errc::NotBasic, "V1 generator is not basic");
  if (!convo::is_basic(g2).basic) throw Error(Errc::NotBasic, "V2 generator is not basic");
  auto c = convo::contains_with_inverse(g1, b1.right_inverse, g2);
  if (!c.contained) throw Error(Errc::ContainmentUnverified, "V2 is not contained in V1");
  NestedPair p;
  p.g1 = g1;
  p.g2 = g2;
  p.h1 = convo::dual_generator(g1, b1.smith);
  p.witness = std::move(c.witness);
  return p;
}

StabilizerMatrix assemble_stabilizer(const NestedPair& pair, Orientation orientation) {
  const auto& f = pair.g1.field();
  const std::size_t n = pair.g1.cols();
  const PolyMatrix zh(f, pair.h1.rows(), n), zg(f, pair.g2.rows(), n);
  StabilizerMatrix s;
  if (orientation == Orientation::DualFirst) {
    s.X = pair.h1.vstack(zg);
    s.Z = zh.vstack(pair.g2);
  } else {
    s.X = pair.g2.vstack(zh);
    s.Z = zg.vstack(pair.h1);
  }
  auto chk = check_symplectic(s);
  if (!chk.zero)
    throw Error(Errc::SymplecticViolation, "nonzero symplectic residual\n" + chk.residual.to_text());
  return s;
}

Expansion semi_infinite_expand(const StabilizerMatrix& s, std::size_t frames) {
  const int mu = std::max({0, s.X.degree(), s.Z.degree()});
  if (frames < std::size_t(mu) + 1)
    throw Error(Errc::TooFewFrames, std::to_string(frames) + " frames for memory " + std::to_string(mu));
  const std::size_t r = s.X.rows(), n = s.X.cols();
  const auto& f = s.X.field();
  Expansion e{Matrix(f, frames * r, frames * n), Matrix(f, frames * r, frames * n)};
  for (int j = 0; j <= mu; ++j) {
    Matrix xj = s.X.coefficient(j), zj = s.Z.coefficient(j);
    for (std::size_t fr = 0; fr + j < frames; ++fr)
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          e.X(fr * r + a, (fr + j) * n + b) = xj(a, b);
          e.Z(fr * r + a, (fr + j) * n + b) = zj(a, b);
        }
  }
  Matrix both(f, frames * r, 2 * frames * n);
  for (std::size_t a = 0; a < frames * r; ++a)
    for (std::size_t b = 0; b < frames * n; ++b) {
      both(a, b) = e.X(a, b);
      both(a, frames * n + b) = e.Z(a, b);
    }
  e.rank = block::rank(both);
  e.boundary_defect = frames * r - e.rank;
  return e;
}

AqccParams derive_aqcc(const NestedPair& pair, const StabilizerMatrix& s, Orientation orientation,
                       const Bound& bound_v1, const Bound& bound_v2_dual, const DistanceEffort& effort) {
  const int k1 = int(pair.g1.rows()), k2 = int(pair.g2.rows());
  if (k1 <= k2) throw Error(Errc::ZeroLogicalDimension, "k1 - k2 = " + std::to_string(k1 - k2));
  AqccParams p;
  p.q = pair.g1.field()->q();
  p.n = pair.g1.cols();
  p.k = k1 - k2;
  p.mu_star = std::max({0, s.X.degree(), s.Z.degree()});
  p.gamma1 = convo::degree_accounting(pair.h1).gamma;
  p.gamma2 = convo::degree_accounting(pair.g2).gamma;
  p.gamma = p.gamma1 + p.gamma2;

  Bound b_v1 = bound_v1, b_v2d = bound_v2_dual;
  std::optional<int> e_v1, e_v2d;
  if (effort.exact_relative) {
    if (auto sel = convo::selected_rows(pair.witness)) {
      auto r1 = convo::relative_free_distance(pair.g1, *sel, effort.budget, bound_v1.value, bound_v1.provenance);
      auto r2 = convo::relative_dual_free_distance(pair.g1, *sel, effort.budget, bound_v2_dual.value,
                                                   bound_v2_dual.provenance);
      if (r1.exact) e_v1 = r1.upper;
      if (r2.exact) e_v2d = r2.upper;
      p.wt_v1_minus_v2 = std::move(r1);
      p.wt_v2dual_minus_v1dual = std::move(r2);
    }
  }
  // Undetected Z errors lie in the module orthogonal to the X checks.
  const bool z_is_v1 = orientation == Orientation::DualFirst;
  p.dz = z_is_v1 ? b_v1 : b_v2d;
  p.dx = z_is_v1 ? b_v2d : b_v1;
  p.dz_exact = z_is_v1 ? e_v1 : e_v2d;
  p.dx_exact = z_is_v1 ? e_v2d : e_v1;
  if (p.dx.value > p.dz.value) {
    std::swap(p.dz, p.dx);
    std::swap(p.dz_exact, p.dx_exact);
    p.swapped = true;
  }
  return p;
}

std::string tuple_string(std::size_t n, int k, int gamma, int dz, int dx, std::uint32_t q) {
  return "[(" + std::to_string(n) + "," + std::to_string(k) + ",mu*;" + std::to_string(gamma) + "," +
         std::to_string(dz) + "/" + std::to_string(dx) + ")]_" + std::to_string(q);
}

}  // namespace aqcc::css
