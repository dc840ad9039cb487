#include "aqcc/block.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>
#include <random>
#include <set>

#include "aqcc/error.hpp"

namespace aqcc::block {

namespace {

void check_orthogonal(const Matrix& g, const Matrix& h) {
  if (g.rows() == 0 || h.rows() == 0) return;
  if (!(g * h.transpose()).is_zero()) throw Error(Errc::InvalidArgument, "generator and parity are not orthogonal");
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t e, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

// Calls visit(codeword) for every nonzero codeword in the row space of the
// full-rank matrix g, stepping one message digit at a time.
template <class Visit>
void for_each_codeword(const Matrix& g, Visit&& visit) {
  const auto& f = *g.field();
  const std::uint32_t q = f.q();
  const std::size_t k = g.rows(), n = g.cols();
  std::vector<Elem> step(q);
  for (Elem a = 0; a + 1 < q; ++a) step[a] = f.sub(a + 1, a);
  step[q - 1] = f.neg(q - 1);
  std::vector<Elem> msg(k, 0), c(n, 0);
  while (true) {
    std::size_t i = 0;
    while (i < k) {
      Elem a = msg[i];
      axpy(f, c, g.row(i), step[a]);
      msg[i] = (a + 1 == q) ? 0 : a + 1;
      if (msg[i] != 0) break;
      ++i;
    }
    if (i == k) return;
    visit(std::span<const Elem>(c));
  }
}

boost::multiprecision::cpp_int binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  boost::multiprecision::cpp_int r = 1;
  for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// Codeword of weight d in ker(h), found as the first column subset of size
// d whose columns are dependent.
std::vector<Elem> witness_from_parity(const Matrix& h, int d, std::uint64_t budget) {
  const std::size_t n = h.cols();
  if (d <= 0 || std::size_t(d) > n) return {};
  std::vector<std::size_t> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  std::uint64_t tried = 0;
  while (tried++ < budget) {
    Matrix sub = h.select_cols(idx);
    Matrix ker = kernel(sub);
    if (ker.rows() > 0) {
      std::vector<Elem> w(n, 0);
      for (std::size_t i = 0; i < idx.size(); ++i) w[idx[i]] = ker(0, i);
      return w;
    }
    int i = d - 1;
    while (i >= 0 && idx[i] == n - d + std::size_t(i)) --i;
    if (i < 0) break;
    ++idx[i];
    for (std::size_t j = i + 1; j < std::size_t(d); ++j) idx[j] = idx[j - 1] + 1;
  }
  return {};
}

}  // namespace

BlockCode code_from_parity(const Matrix& h, std::optional<int> d_designed) {
  BlockCode c;
  c.parity = remove_dependent_rows(h);
  c.n = h.cols();
  c.k = c.n - c.parity.rows();
  c.generator = kernel(c.parity);
  check_orthogonal(c.generator, c.parity);
  c.d_designed = d_designed;
  return c;
}

BlockCode code_from_generator(const Matrix& g, std::optional<int> d_designed) {
  BlockCode c;
  c.generator = remove_dependent_rows(g);
  c.n = g.cols();
  c.k = c.generator.rows();
  c.parity = kernel(c.generator);
  check_orthogonal(c.generator, c.parity);
  c.d_designed = d_designed;
  return c;
}

BlockCode dual(const BlockCode& code) {
  BlockCode d;
  d.n = code.n;
  d.k = code.n - code.k;
  d.generator = code.parity;
  d.parity = code.generator;
  const int singleton = int(code.n - code.k) + 1;
  if ((code.d && *code.d == singleton) || (code.d_designed && *code.d_designed >= singleton && code.k > 0))
    d.d_designed = int(code.k) + 1;
  return d;
}

std::vector<std::uint64_t> weight_distribution(const Matrix& g, std::uint64_t budget) {
  Matrix basis = remove_dependent_rows(g);
  const std::uint64_t size = checked_pow(g.field()->q(), basis.rows(), budget);
  if (size > budget) return {};
  std::vector<std::uint64_t> dist(g.cols() + 1, 0);
  dist[0] = 1;
  for_each_codeword(basis, [&](std::span<const Elem> c) { ++dist[weight(c)]; });
  return dist;
}

DistanceResult min_distance(const BlockCode& code, std::uint64_t budget) {
  DistanceResult res;
  if (code.k == 0) {
    res.lower = res.upper = kInfinity;
    res.exact = true;
    res.provenance = "zero-code";
    return res;
  }
  const std::uint32_t q = code.generator.field()->q();
  const std::uint64_t side_code = checked_pow(q, code.k, budget);
  const std::uint64_t side_dual = checked_pow(q, code.n - code.k, budget);

  if (side_code <= budget && side_code <= side_dual) {
    int best = kInfinity;
    std::vector<Elem> wit;
    for_each_codeword(code.generator, [&](std::span<const Elem> c) {
      int w = int(weight(c));
      if (w < best) {
        best = w;
        wit.assign(c.begin(), c.end());
      }
    });
    res.lower = res.upper = best;
    res.exact = true;
    res.witness = std::move(wit);
    res.provenance = "exact-enumeration";
    return res;
  }
  if (side_dual <= budget) {
    using boost::multiprecision::cpp_int;
    auto b = weight_distribution(code.parity, budget);
    const std::size_t n = code.n;
    cpp_int qm1 = q - 1;
    int d = kInfinity;
    for (std::size_t j = 1; j <= n && d == kInfinity; ++j) {
      cpp_int acc = 0;
      for (std::size_t i = 0; i <= n; ++i) {
        if (b[i] == 0) continue;
        cpp_int kr = 0;
        for (std::size_t s = 0; s <= std::min(i, j); ++s) {
          cpp_int term = boost::multiprecision::pow(qm1, unsigned(j - s)) * binom(i, s) * binom(n - i, j - s);
          kr += (s % 2) ? cpp_int(-term) : term;
        }
        acc += kr * b[i];
      }
      if (acc != 0) d = int(j);
    }
    res.lower = res.upper = d;
    res.exact = true;
    res.witness = witness_from_parity(code.parity, d, budget);
    res.provenance = "exact-macwilliams";
    return res;
  }

  // Over budget: designed bound below, information sets above.
  res.lower = code.d_designed.value_or(1);
  const auto& f = *code.generator.field();
  const std::size_t n = code.n, k = code.k;
  std::mt19937_64 rng(0x5eed);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  int best = kInfinity;
  std::vector<Elem> wit;
  std::uint64_t spent = 0;
  auto consider = [&](std::span<const Elem> c, const std::vector<std::size_t>& p) {
    int w = int(weight(c));
    if (w > 0 && w < best) {
      best = w;
      wit.assign(n, 0);
      for (std::size_t i = 0; i < n; ++i) wit[p[i]] = c[i];
    }
  };
  for (int trial = 0; trial < 16 && spent < budget && best > res.lower; ++trial) {
    if (trial > 0) std::shuffle(perm.begin(), perm.end(), rng);
    auto sys = rref(code.generator.select_cols(perm)).reduced;
    for (std::size_t i = 0; i < k; ++i) consider(sys.row(i), perm);
    std::vector<Elem> tmp(n);
    for (std::size_t i = 0; i < k && spent < budget; ++i)
      for (std::size_t j = i + 1; j < k && spent < budget; ++j)
        for (Elem a = 1; a < f.q(); ++a) {
          std::copy(sys.row(j).begin(), sys.row(j).end(), tmp.begin());
          axpy(f, tmp, sys.row(i), a);
          consider(tmp, perm);
          ++spent;
        }
  }
  res.upper = best;
  res.witness = std::move(wit);
  res.exact = res.lower == res.upper;
  res.provenance = res.exact ? "designed-bound-met-by-witness" : "bounded";
  return res;
}

std::vector<long> cyclotomic_closure(std::uint64_t n, std::uint64_t q, const std::vector<long>& exponents) {
  std::set<long> z;
  for (long e : exponents) {
    long x = ((e % long(n)) + long(n)) % long(n);
    while (z.insert(x).second) x = long((std::uint64_t(x) * (q % n)) % n);
  }
  return {z.begin(), z.end()};
}

int bch_bound(std::uint64_t n, std::uint64_t q, const std::vector<long>& exponents) {
  auto z = cyclotomic_closure(n, q, exponents);
  if (z.empty()) return 1;
  if (z.size() == n) return kInfinity;
  std::vector<bool> in(n, false);
  for (long e : z) in[e] = true;
  std::size_t best = 1;
  for (std::uint64_t s = 1; s < n; ++s) {
    if (std::gcd(s, n) != 1) continue;
    for (long b : z) {
      // Count only from run starts.
      if (in[(b + n - s % n) % n]) continue;
      std::size_t len = 0;
      std::uint64_t x = b;
      while (in[x] && len < n) {
        ++len;
        x = (x + s) % n;
      }
      best = std::max(best, len);
    }
  }
  return int(best) + 1;
}

PowerRowExpansion expand_power_rows(const FieldPtr& base, std::uint64_t n, const std::vector<long>& exponents) {
  const std::uint32_t q = base->q();
  if (std::gcd(std::uint64_t(q), n) != 1) throw Error(Errc::NotCoprime, "gcd(q, n) != 1");
  const std::uint32_t l = gf::ord_mod(n, q);
  std::uint64_t ext_order = 1;
  for (std::uint32_t i = 0; i < l; ++i) {
    ext_order *= q;
    if (ext_order > (1u << 20)) throw Error(Errc::RootOfUnityUnavailable, "GF(q^l) exceeds 2^20");
  }
  PowerRowExpansion out;
  out.ext = gf::Field::create(base->p(), base->l() * l);
  out.alpha = gf::primitive_root_of_unity(out.ext, n).value();
  out.basis = std::make_shared<const gf::SubfieldBasis>(gf::SubfieldBasis::power_basis(base, out.ext));
  const auto& ext = *out.ext;
  Matrix raw(base, exponents.size() * l, n);
  std::vector<std::pair<long, std::uint32_t>> origin;
  for (std::size_t r = 0; r < exponents.size(); ++r) {
    const long e = exponents[r];
    const std::uint64_t em = std::uint64_t(((e % long(n)) + long(n)) % long(n));
    const Elem step = ext.pow(out.alpha, em);
    Elem x = 1;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::uint32_t c = 0; c < l; ++c) raw(r * l + c, j) = out.basis->expand_coord(x, c);
      x = ext.mul(x, step);
    }
    for (std::uint32_t c = 0; c < l; ++c) origin.emplace_back(e, c);
  }
  std::vector<std::size_t> kept;
  out.rows = remove_dependent_rows(raw, &kept);
  for (auto i : kept) out.origin.push_back(origin[i]);
  return out;
}

BlockCode bch_parity(BchSpec& spec, PowerRowExpansion* expansion) {
  if (spec.delta < 2 || spec.delta > spec.n)
    throw Error(Errc::InvalidDesignedDistance, "designed distance must satisfy 2 <= delta <= n");
  auto base = gf::Field::of_order(spec.q);
  std::vector<long> exps;
  for (std::uint32_t r = 0; r + 1 < spec.delta; ++r) exps.push_back(spec.b + long(r));
  auto ex = expand_power_rows(base, spec.n, exps);
  spec.alpha = ex.alpha;
  const int bound = std::max<int>(int(spec.delta), bch_bound(spec.n, spec.q, exps));
  BlockCode code = code_from_parity(ex.rows, bound);
  if (expansion) *expansion = std::move(ex);
  return code;
}

BlockCode rs_parity(std::uint32_t q, long b, std::uint32_t d) {
  auto field = gf::Field::of_order(q);
  const std::uint32_t n = q - 1;
  if (d < 2 || d > n) throw Error(Errc::InvalidDesignedDistance, "RS distance must satisfy 2 <= d <= q-1");
  std::vector<long> exps;
  for (std::uint32_t r = 0; r + 1 < d; ++r) exps.push_back(b + long(r));
  auto ex = expand_power_rows(field, n, exps);
  return code_from_parity(ex.rows, int(d));
}

GrsCode grs_build(const FieldPtr& field, const std::vector<Elem>& zeta, const std::vector<Elem>& v, std::size_t k) {
  const auto& f = *field;
  const std::size_t n = zeta.size();
  if (v.size() != n) throw Error(Errc::InvalidArgument, "zeta and v differ in length");
  if (n == 0 || n > f.q()) throw Error(Errc::ParamOutOfRange, "GRS length must satisfy 1 <= n <= q");
  if (k < 1 || k > n) throw Error(Errc::ParamOutOfRange, "GRS dimension must satisfy 1 <= k <= n");
  std::set<Elem> seen;
  for (auto z : zeta) {
    if (z >= f.q()) throw Error(Errc::InvalidArgument, "evaluation point outside field");
    if (!seen.insert(z).second) throw Error(Errc::DuplicateEvaluationPoint, "evaluation points must be distinct");
  }
  for (auto x : v)
    if (x == 0 || x >= f.q()) throw Error(Errc::ZeroMultiplier, "column multipliers must be nonzero");

  GrsCode out;
  out.spec.field = field;
  out.spec.zeta = zeta;
  out.spec.v = v;
  out.spec.k = k;
  out.spec.w.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    Elem prod = v[j];
    for (std::size_t i = 0; i < n; ++i)
      if (i != j) prod = f.mul(prod, f.sub(zeta[j], zeta[i]));
    out.spec.w[j] = f.inv(prod);
  }
  Matrix g(field, k, n), h(field, n - k, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < k; ++i) g(i, j) = f.mul(v[j], f.pow(zeta[j], i));
    for (std::size_t i = 0; i < n - k; ++i) h(i, j) = f.mul(out.spec.w[j], f.pow(zeta[j], i));
  }
  if (h.rows() > 0 && !(g * h.transpose()).is_zero())
    throw Error(Errc::InvalidArgument, "GRS dual multipliers failed the orthogonality check");
  if (rank(g) != k || rank(h) != n - k) throw Error(Errc::InvalidArgument, "GRS matrices are not full rank");
  out.code.n = n;
  out.code.k = k;
  out.code.generator = g;
  out.code.parity = h;
  out.code.d_designed = int(n - k) + 1;
  return out;
}

Matrix grs_power_rows(const GrsSpec& spec, const std::vector<long>& powers) {
  const auto& f = *spec.field;
  const std::size_t n = spec.zeta.size();
  Matrix m(spec.field, powers.size(), n);
  for (std::size_t r = 0; r < powers.size(); ++r) {
    if (powers[r] < 0) throw Error(Errc::InvalidArgument, "negative GRS power");
    for (std::size_t j = 0; j < n; ++j) m(r, j) = f.mul(spec.w[j], f.pow(spec.zeta[j], std::uint64_t(powers[r])));
  }
  return m;
}

}  // namespace aqcc::block
