#include "aqcc/families.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace aqcc::families {

using block::Matrix;
using convo::Poly;
using convo::PolyMatrix;
using gf::Elem;
using gf::FieldPtr;

namespace {

struct TagEntry {
  Family f;
  const char* tag;
};
constexpr TagEntry kTags[] = {
    {Family::I, "I"},          {Family::T2, "II-T2"},    {Family::T3a, "II-T3a"}, {Family::T3b, "II-T3b"},
    {Family::T4a, "II-T4a"},   {Family::T4b, "II-T4b"},  {Family::T5a, "III-T5a"}, {Family::T5b, "III-T5b"},
    {Family::T6, "III-T6"},    {Family::T8, "III-T8"},
};

bool is_bch(Family f) {
  return f == Family::T2 || f == Family::T3a || f == Family::T3b || f == Family::T4a || f == Family::T4b;
}
bool is_rs(Family f) { return f == Family::T5a || f == Family::T5b; }
bool is_grs(Family f) { return f == Family::T6 || f == Family::T8; }
bool is_t4(Family f) { return f == Family::T4a || f == Family::T4b; }
bool variant_a(Family f) { return f == Family::T3a || f == Family::T4a || f == Family::T5a; }

[[noreturn]] void out_of_range(const std::string& msg) { throw Error(Errc::ParamOutOfRange, msg); }

void require(bool ok, const std::string& msg) {
  if (!ok) out_of_range(msg);
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> pp(std::uint32_t q) {
  if (q < 2) return std::nullopt;
  return gf::prime_power(q);
}

// Whether q meets the family's field condition, with the condition's text.
bool field_ok(Family f, std::uint32_t q, std::string* why) {
  auto fp = pp(q);
  if (!fp) {
    if (why) *why = "q must be a prime power";
    return false;
  }
  auto [p, l] = *fp;
  switch (f) {
    case Family::T2:
    case Family::T3a:
    case Family::T3b:
      if (why) *why = "II-T2 and II-T3 require q = 2^s with s >= 4";
      return p == 2 && l >= 4;
    case Family::T4a:
    case Family::T4b:
      if (why) *why = "II-T4 requires q = p^l with p odd and l >= 2";
      return p != 2 && l >= 2;
    case Family::T5a:
    case Family::T5b:
      if (why) *why = "II-T5 requires q >= 8";
      return q >= 8;
    case Family::T6:
    case Family::T8:
      if (why) *why = "III-T6 and III-T8 require q >= 5";
      return q >= 5;
    case Family::I:
      return true;
  }
  return false;
}

// Upper end of i: a-1 for the BCH families, q-3 for RS.
int i_max(Family f, std::uint32_t q) {
  if (f == Family::T2 || f == Family::T3a || f == Family::T3b) return int(q / 2) - 1;
  if (is_t4(f)) return int((q + 1) / 2) - 1;
  return int(q) - 3;
}

int i_min(Family f) { return f == Family::T3b || f == Family::T4b || f == Family::T5b ? 2 : 3; }

// t <= i - 2 for the (a) variants, i - 1 for (b).
int t_max_it(Family f, int i) { return variant_a(f) ? i - 2 : i - 1; }

int t_max_grs(Family f, int n, int k) { return f == Family::T6 ? n - k - 2 : n - k - 1; }

// ---------------------------------------------------------------------------
// Source matrices and generator layouts.

using Label = std::pair<long, std::uint32_t>;  // (exponent or power, coordinate)
using LRow = std::vector<Label>;               // source row per degree

enum class SourceKind { Cyclic, Grs, Generic };

struct Source {
  SourceKind kind = SourceKind::Generic;
  FieldPtr field;
  std::size_t n = 0;
  Matrix rows;
  std::vector<Label> labels;
  std::map<Label, std::size_t> index;
  std::map<long, std::size_t> per_exponent;  // kept rows per exponent
  std::vector<Elem> zeta;
  bool zeta_has_zero = false;
  json info;

  std::size_t at(const Label& l) const {
    auto it = index.find(l);
    if (it == index.end())
      throw std::logic_error("layout refers to a missing source row (" + std::to_string(l.first) + "," +
                             std::to_string(l.second) + ")");
    return it->second;
  }
  void finish() {
    for (std::size_t r = 0; r < labels.size(); ++r) {
      index[labels[r]] = r;
      ++per_exponent[labels[r].first];
    }
  }
};

json modulus_json(const gf::Field& f) { return json(f.modulus()); }

Source cyclic_source(std::uint32_t q, std::size_t n, const std::vector<long>& exps) {
  Source s;
  s.kind = SourceKind::Cyclic;
  s.field = gf::Field::of_order(q);
  s.n = n;
  auto ex = block::expand_power_rows(s.field, n, exps);
  s.rows = ex.rows;
  s.labels = ex.origin;
  s.finish();
  s.info = json::object();
  s.info["extension"] = {{"order", ex.ext->q()}, {"modulus", modulus_json(*ex.ext)}, {"alpha", ex.alpha}};
  s.info["exponents"] = exps;
  return s;
}

Source grs_source(const FamilyParams& p) {
  Source s;
  s.kind = SourceKind::Grs;
  s.field = gf::Field::of_order(p.q);
  s.n = std::size_t(p.n);
  std::vector<Elem> zeta = p.zeta, v = p.v;
  if (zeta.empty()) {
    zeta.push_back(0);
    for (int j = 0; j + 1 < p.n; ++j) zeta.push_back(s.field->exp(std::uint64_t(j)));
  }
  if (v.empty()) v.assign(s.n, 1);
  if (zeta.size() != s.n || v.size() != s.n)
    throw Error(Errc::InvalidArgument, "zeta and v must have n entries");
  auto code = block::grs_build(s.field, zeta, v, std::size_t(p.k));
  const int m = p.n - p.k;
  std::vector<long> powers(static_cast<std::size_t>(m));
  std::iota(powers.begin(), powers.end(), 0L);
  s.rows = block::grs_power_rows(code.spec, powers);
  for (long e : powers) s.labels.push_back({e, 0});
  s.finish();
  s.zeta = zeta;
  s.zeta_has_zero = std::find(zeta.begin(), zeta.end(), Elem(0)) != zeta.end();
  s.info = {{"zeta", zeta}, {"v", v}, {"w", code.spec.w}};
  return s;
}

struct Layout {
  std::vector<LRow> g1, g2;
};

// Rows with coordinate-wise pairing: the constant part from exponent c and
// the D part from exponent d.
struct LayoutBuilder {
  std::uint32_t coords;
  std::vector<LRow> pair(long c, long d) const {
    std::vector<LRow> out;
    for (std::uint32_t x = 0; x < coords; ++x) out.push_back({{c, x}, {d, x}});
    return out;
  }
  // Constant rows for exponents from..to in steps of +-1 (empty if the
  // range runs the wrong way).
  std::vector<LRow> sym(long from, long to) const {
    std::vector<LRow> out;
    if (from >= to)
      for (long e = from; e >= to; --e)
        for (std::uint32_t x = 0; x < coords; ++x) out.push_back({{e, x}});
    return out;
  }
  std::vector<LRow> sym_up(long from, long to) const {
    std::vector<LRow> out;
    for (long e = from; e <= to; ++e)
      for (std::uint32_t x = 0; x < coords; ++x) out.push_back({{e, x}});
    return out;
  }
};

void append(std::vector<LRow>& dst, const std::vector<LRow>& src) { dst.insert(dst.end(), src.begin(), src.end()); }

// Shared by II-T3 and II-T5: G2 holds the a..a-t+1 rows with a-t in its
// D part; the (a) variant adds a row carrying a-i in the D part.
Layout t3_layout(Family f, long a, int i, int t, std::uint32_t coords) {
  LayoutBuilder b{coords};
  Layout L;
  append(L.g2, b.pair(a, a - t));
  append(L.g2, b.sym(a - 1, a - t + 1));
  if (variant_a(f)) {
    append(L.g1, b.pair(a - t - 1, a - i));
    append(L.g1, L.g2);
    append(L.g1, b.sym(a - t - 2, a - i + 1));
  } else {
    L.g1 = L.g2;
    append(L.g1, b.sym(a - t - 1, a - i));
  }
  return L;
}

Layout t2_layout(long a, int i) {
  LayoutBuilder b{2};
  Layout L;
  L.g2 = b.pair(a - i + 2, a - i + 1);
  L.g1 = L.g2;
  append(L.g1, b.pair(a, a - i));
  append(L.g1, b.sym(a - 1, a - i + 3));
  return L;
}

// II-T4 (odd q): alpha^a = -1 lies in GF(q), so exponent a contributes a
// single row and the even-q pairing of a with a-t cannot be copied.
Layout t4_layout(Family f, const Source& s, long a, int i, int t) {
  LayoutBuilder b{2};
  Layout L;
  if (t >= 2) {
    L.g2 = {{{a, 0}, {a - t, 0}}, {{a - 1, 0}, {a - t, 1}}, {{a - 1, 1}}};
    append(L.g2, b.sym(a - 2, a - t + 1));
    if (f == Family::T4a) {
      append(L.g1, b.pair(a - t - 1, a - i));
      append(L.g1, L.g2);
      append(L.g1, b.sym(a - t - 2, a - i + 1));
    } else {
      L.g1 = L.g2;
      append(L.g1, b.sym(a - t - 1, a - i));
    }
    return L;
  }
  // t = 1: one row of memory 2. Its top coefficient must have no zero entry
  // so that the single-row kernel has distance 2.
  auto wt = [&](std::uint32_t c) { return block::weight(s.rows.row(s.at({a - 1, c}))); };
  const std::size_t w0 = wt(0), w1 = wt(1);
  std::uint32_t y = 1;
  if (w0 > w1) y = 0;
  const std::uint32_t x = 1 - y;
  LRow m2{{a, 0}, {a - 1, x}, {a - 1, y}};
  L.g2 = {m2};
  L.g1 = {m2};
  if (f == Family::T4a) {
    append(L.g1, b.pair(a - 2, a - i));
    append(L.g1, b.sym(a - 3, a - i + 1));
  } else {
    append(L.g1, b.sym(a - 2, a - i));
  }
  return L;
}

Layout grs_layout(Family f, int n, int k, int t) {
  LayoutBuilder b{1};
  const long m = n - k;
  Layout L;
  L.g2 = b.pair(0, t);
  append(L.g2, b.sym_up(1, t - 1));
  if (f == Family::T6) {
    // The leading constant row is zeta^(m-3); when that row is already in
    // the t-block it moves to zeta^(m-2).
    const long r = m - 3 > t ? m - 3 : m - 2;
    append(L.g1, b.pair(r, m - 1));
    append(L.g1, L.g2);
    for (long e = t + 1; e <= m - 2; ++e)
      if (e != r) L.g1.push_back({{e, 0}});
  } else {
    L.g1 = L.g2;
    for (long e = t + 1; e <= m - 1; ++e) L.g1.push_back({{e, 0}});
  }
  return L;
}

// Stacks [H0; H1; ...] for split_to_generator. Rows must be sorted by
// nonincreasing degree.
convo::SplitPlan plan_of(const Source& s, const std::vector<LRow>& rows, std::vector<std::vector<std::size_t>>* idx) {
  for (std::size_t r = 1; r < rows.size(); ++r)
    if (rows[r].size() > rows[r - 1].size()) throw std::logic_error("layout rows are not sorted by degree");
  convo::SplitPlan plan;
  const std::size_t depth = rows.empty() ? 1 : rows.front().size();
  std::vector<std::size_t> all;
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<std::size_t> block;
    for (const auto& row : rows)
      if (row.size() > d) block.push_back(s.at(row[d]));
    plan.blocks.push_back(block.size());
    all.insert(all.end(), block.begin(), block.end());
    if (idx) idx->push_back(block);
  }
  plan.h = s.rows.select_rows(all);
  return plan;
}

// ---------------------------------------------------------------------------
// Distance claims.

struct Claim {
  int value = 1;
  std::string provenance = "bounded";
  std::string method = "trivial";

  json to_json() const { return {{"value", value}, {"provenance", provenance}, {"method", method}}; }
};

// Distance guaranteed for the kernel of the given source rows.
int designed_kernel(const Source& s, const std::vector<std::size_t>& idx) {
  if (idx.empty()) return 1;
  Matrix sub = s.rows.select_rows(idx);
  int floor = 2;
  for (std::size_t c = 0; c < sub.cols() && floor == 2; ++c) {
    bool zero = true;
    for (std::size_t r = 0; r < sub.rows() && zero; ++r) zero = sub(r, c) == 0;
    if (zero) floor = 1;
  }
  int d = 1;
  if (s.kind == SourceKind::Cyclic) {
    std::map<long, std::size_t> present;
    for (auto r : idx) ++present[s.labels[r].first];
    std::vector<long> full;
    for (auto [e, cnt] : present)
      if (cnt == s.per_exponent.at(e)) full.push_back(e);
    if (!full.empty()) d = block::bch_bound(s.n, s.field->q(), full);
  } else if (s.kind == SourceKind::Grs) {
    std::set<long> powers;
    for (auto r : idx) powers.insert(s.labels[r].first);
    long run = 0, start = 0, prev = -2;
    for (long e : powers) {
      if (e != prev + 1) {
        run = 0;
        start = e;
      }
      ++run;
      prev = e;
      // A run not starting at 0 is a GRS parity check with multipliers
      // w_j zeta_j^start, valid only if no zeta_j vanishes.
      if (start == 0 || !s.zeta_has_zero) d = std::max(d, int(run) + 1);
    }
  }
  return std::max(d, floor);
}

Claim kernel_claim(const Source& s, const std::vector<std::size_t>& idx, const BuildOptions& o) {
  Claim c;
  c.value = designed_kernel(s, idx);
  c.method = s.kind == SourceKind::Cyclic ? "bch-bound" : s.kind == SourceKind::Grs ? "grs-designed" : "no-zero-column";
  if (c.value <= 1) c.method = "trivial";
  if (o.effort != Effort::Structure && !idx.empty()) {
    auto code = block::code_from_parity(s.rows.select_rows(idx), c.value);
    auto r = block::min_distance(code, o.enum_budget);
    if (r.exact) {
      c = {r.upper, "exact-computed", r.provenance};
    } else if (r.lower > c.value) {
      c = {r.lower, "bounded", r.provenance};
    }
  }
  return c;
}

// Distance of the row space of the given source rows.
Claim rowspace_claim(const Source& s, const std::vector<std::size_t>& idx, const BuildOptions& o) {
  Claim c;
  const int rank = int(idx.size());
  const int dk = designed_kernel(s, idx);
  const int n = int(s.n);
  if (dk >= rank + 1) {
    // The kernel is MDS, hence so is its dual.
    c = {n - rank + 1, "exact-computed", "mds-dual"};
    return c;
  }
  if (o.effort != Effort::Structure) {
    auto code = block::code_from_generator(s.rows.select_rows(idx));
    auto r = block::min_distance(code, o.enum_budget);
    if (r.exact)
      c = {r.upper, "exact-computed", r.provenance};
    else if (r.lower > 1)
      c = {r.lower, "bounded", r.provenance};
  }
  return c;
}

struct SplitBound {
  Claim d0, dmu, dstar;
  Claim value;
};

// min{d0 + dmu, d*} for the code generated by a split plan.
SplitBound split_bound(const Source& s, const std::vector<std::vector<std::size_t>>& blocks, const BuildOptions& o) {
  SplitBound b;
  std::vector<std::size_t> all;
  for (const auto& blk : blocks) all.insert(all.end(), blk.begin(), blk.end());
  b.dstar = kernel_claim(s, all, o);
  if (blocks.size() == 1) {
    b.value = b.dstar;
    b.value.method = "kernel of constant code";
    return b;
  }
  b.d0 = kernel_claim(s, blocks.front(), o);
  b.dmu = kernel_claim(s, blocks.back(), o);
  const int sum = b.d0.value + b.dmu.value;
  b.value.value = std::min(sum, b.dstar.value);
  b.value.provenance = "bounded";
  b.value.method = "min{d0+dmu, d*}";
  return b;
}

json split_json(const SplitBound& b) {
  json j;
  j["bound"] = b.value.to_json();
  if (b.d0.method != "trivial" || b.d0.value > 1) j["d0"] = b.d0.to_json();
  if (b.dmu.method != "trivial" || b.dmu.value > 1) j["dmu"] = b.dmu.to_json();
  j["dstar"] = b.dstar.to_json();
  return j;
}

json num(int v, const char* provenance) { return {{"value", v}, {"provenance", provenance}}; }

json poly_list(const std::vector<Poly>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(convo::poly_to_string(p));
  return a;
}

// ---------------------------------------------------------------------------
// Construction I.

struct PartitionInfo {
  int mu = 0;
  std::vector<std::size_t> h, hp;  // rk Hi and rk Hi'
};

PartitionInfo check_partition(const std::vector<std::size_t>& partition) {
  if (partition.size() < 4 || partition.size() % 2)
    throw Error(Errc::PartitionInvalid, "need blocks H0, H0', ..., Hmu, Hmu' with mu >= 1");
  PartitionInfo p;
  p.mu = int(partition.size() / 2) - 1;
  for (std::size_t j = 0; j < partition.size(); j += 2) {
    p.h.push_back(partition[j]);
    p.hp.push_back(partition[j + 1]);
  }
  for (std::size_t i = 0; i < p.h.size(); ++i)
    if (p.h[i] != p.h[0] || p.h[i] == 0)
      throw Error(Errc::PartitionInvalid, "blocks H0..Hmu must share one nonzero rank", int(i));
  if (p.hp[0] == 0) throw Error(Errc::PartitionInvalid, "H0' must be nonempty", 0);
  for (std::size_t i = 1; i < p.hp.size(); ++i)
    if (p.hp[i] > p.hp[i - 1])
      throw Error(Errc::PartitionInvalid, "rk H" + std::to_string(i) + "' exceeds rk H" + std::to_string(i - 1) + "'",
                  int(i));
  return p;
}

Source generic_source(const FamilyParams& p) {
  Source s;
  s.kind = SourceKind::Generic;
  s.field = p.vectors.field();
  s.n = p.vectors.cols();
  s.rows = p.vectors;
  for (std::size_t r = 0; r < p.vectors.rows(); ++r) s.labels.push_back({long(r), 0});
  s.finish();
  s.info = json::object();
  return s;
}

Layout construction_i_layout(const PartitionInfo& pi) {
  Layout L;
  const std::size_t r0 = pi.h[0];
  std::vector<std::size_t> start;  // first row of each block in the stacked vectors
  std::size_t off = 0;
  for (std::size_t i = 0; i < pi.h.size(); ++i) {
    start.push_back(off);
    off += pi.h[i];
    start.push_back(off);
    off += pi.hp[i];
  }
  for (std::size_t j = 0; j < r0; ++j) {
    LRow row;
    for (std::size_t i = 0; i < pi.h.size(); ++i) row.push_back({long(start[2 * i] + j), 0});
    L.g1.push_back(row);
  }
  for (std::size_t j = 0; j < pi.hp[0]; ++j) {
    LRow row;
    for (std::size_t i = 0; i < pi.hp.size() && pi.hp[i] > j; ++i) row.push_back({long(start[2 * i + 1] + j), 0});
    L.g2.push_back(row);
  }
  append(L.g1, L.g2);
  return L;
}

std::mt19937_64 fault_rng(const BuildOptions& o) { return std::mt19937_64(o.fault_seed * 0x9e3779b97f4a7c15ULL + 17); }

struct Failure {
  Errc code;
  std::string section, message;
};

}  // namespace

// ---------------------------------------------------------------------------

std::string family_tag(Family f) {
  for (const auto& t : kTags)
    if (t.f == f) return t.tag;
  return "?";
}

Family parse_family(const std::string& tag) {
  for (const auto& t : kTags)
    if (tag == t.tag) return t.f;
  out_of_range("unknown construction tag '" + tag + "'");
}

const std::vector<Family>& closed_form_families() {
  static const std::vector<Family> all{Family::T2,  Family::T3a, Family::T3b, Family::T4a, Family::T4b,
                                       Family::T5a, Family::T5b, Family::T6,  Family::T8};
  return all;
}

std::string params_string(const FamilyParams& p) {
  std::string s = family_tag(p.family) + " q=" + std::to_string(p.q);
  if (p.family == Family::I) {
    s += " partition=";
    for (std::size_t j = 0; j < p.partition.size(); ++j) s += (j ? "," : "") + std::to_string(p.partition[j]);
  } else if (is_grs(p.family)) {
    s += " n=" + std::to_string(p.n) + " k=" + std::to_string(p.k) + " t=" + std::to_string(p.t);
  } else {
    s += " i=" + std::to_string(p.i);
    if (p.family != Family::T2) s += " t=" + std::to_string(p.t);
  }
  return s;
}

void validate(const FamilyParams& p) {
  std::string why;
  if (!field_ok(p.family, p.q, &why)) out_of_range(why + " (got q=" + std::to_string(p.q) + ")");
  const std::string tag = family_tag(p.family);
  if (p.family == Family::I) {
    require(p.vectors.field() && p.vectors.field()->q() == p.q, "Construction I vectors must lie in GF(q)");
    return;
  }
  if (is_grs(p.family)) {
    require(p.n >= 5 && p.n <= int(p.q), tag + " requires 5 <= n <= q");
    require(p.k >= 1 && p.k <= p.n - 4, tag + " requires 1 <= k <= n-4");
    require(p.t >= 1 && p.t <= t_max_grs(p.family, p.n, p.k),
            tag + (p.family == Family::T6 ? " requires 1 <= t <= n-k-2" : " requires 1 <= t <= n-k-1"));
    return;
  }
  const int lo = i_min(p.family), hi = i_max(p.family, p.q);
  const std::string upper = is_rs(p.family) ? "q-3" : "a-1";
  require(p.i >= lo && p.i <= hi, tag + " requires " + std::to_string(lo) + " <= i <= " + upper);
  if (p.family == Family::T2) return;
  require(p.t >= 1 && p.t <= t_max_it(p.family, p.i),
          tag + (variant_a(p.family) ? " requires 1 <= t <= i-2" : " requires 1 <= t <= i-1"));
}

ExpectedTuple expected_tuple(const FamilyParams& p) {
  validate(p);
  ExpectedTuple e;
  const int i = p.i, t = p.t;
  // raw (dz, dx) as printed, and which of them bounds the V1 side
  bool dz_is_v1 = true;
  switch (p.family) {
    case Family::T2:
      e.n = p.q + 1;
      e.k = 2 * i - 4;
      e.gamma = 6;
      e.dz_formula = int(e.n) - 2 * i - 1;
      e.dx_formula = 3;
      break;
    case Family::T3a:
    case Family::T3b:
      e.n = p.q + 1;
      e.k = p.family == Family::T3a ? 2 * i - 2 * t - 2 : 2 * i - 2 * t;
      e.gamma = p.family == Family::T3a ? 6 : 4;
      e.dz_formula = int(e.n) - 2 * i - 1;
      e.dx_formula = 2 * t + 3;
      break;
    case Family::T4a:
    case Family::T4b:
      e.n = p.q + 1;
      e.k = p.family == Family::T4a ? 2 * i - 2 * t - 2 : 2 * i - 2 * t;
      e.gamma = p.family == Family::T4a ? 6 : 4;
      e.dz_formula = int(e.n) - 2 * i;
      e.dx_formula = 2 * t + 2;
      break;
    case Family::T5a:
    case Family::T5b:
      e.n = p.q - 1;
      e.k = p.family == Family::T5a ? i - t - 1 : i - t;
      e.gamma = p.family == Family::T5a ? 3 : 2;
      e.dz_formula = int(p.q) - i - 1;
      e.dx_formula = t + 2;
      break;
    case Family::T6:
    case Family::T8:
      e.n = std::size_t(p.n);
      e.k = p.family == Family::T6 ? p.n - t - p.k - 2 : p.n - t - p.k - 1;
      e.gamma = p.family == Family::T6 ? 3 : 2;
      e.dz_formula = t + 2;
      e.dx_formula = p.k + 1;
      dz_is_v1 = false;
      break;
    case Family::I: {
      auto pi = check_partition(p.partition);
      auto g = construction_i_degrees(p.partition);
      e.n = p.vectors.cols();
      e.k = int(pi.h[0]);
      e.gamma = g.gamma1 + g.gamma2;
      return e;
    }
  }
  e.bound_v1 = dz_is_v1 ? e.dz_formula : e.dx_formula;
  e.bound_v2_dual = dz_is_v1 ? e.dx_formula : e.dz_formula;
  e.dz = std::max(e.dz_formula, e.dx_formula);
  e.dx = std::min(e.dz_formula, e.dx_formula);
  e.swapped = e.dz_formula < e.dx_formula;
  e.degenerate = e.k <= 0;
  return e;
}

std::vector<Instance> enumerate_family(Family f, std::uint32_t q, const Ranges& r) {
  if (!pp(q)) out_of_range("q must be a prime power (got q=" + std::to_string(q) + ")");
  if (f == Family::I) out_of_range("Construction I has no closed-form parameter range");
  std::vector<Instance> out;
  if (!field_ok(f, q, nullptr)) return out;
  auto keep = [](const std::optional<int>& want, int v) { return !want || *want == v; };
  auto push = [&](FamilyParams p) { out.push_back({p, expected_tuple(p)}); };
  if (is_grs(f)) {
    for (int n = 5; n <= int(q); ++n)
      for (int k = 1; k <= n - 4; ++k)
        for (int t = 1; t <= t_max_grs(f, n, k); ++t)
          if (keep(r.n, n) && keep(r.k, k) && keep(r.t, t)) push({f, q, 0, t, n, k, {}, {}, {}, {}});
    return out;
  }
  for (int i = i_min(f); i <= i_max(f, q); ++i) {
    if (!keep(r.i, i)) continue;
    if (f == Family::T2) {
      push({f, q, i, 0, 0, 0, {}, {}, {}, {}});
      continue;
    }
    for (int t = 1; t <= t_max_it(f, i); ++t)
      if (keep(r.t, t)) push({f, q, i, t, 0, 0, {}, {}, {}, {}});
  }
  return out;
}

std::string fault_name(Fault f) {
  switch (f) {
    case Fault::None: return "none";
    case Fault::RowMutation: return "row-mutation";
    case Fault::RankViolation: return "rank-violation";
    case Fault::SwappedBlocks: return "swapped-blocks";
  }
  return "?";
}

Fault parse_fault(const std::string& s) {
  for (auto f : {Fault::None, Fault::RowMutation, Fault::RankViolation, Fault::SwappedBlocks})
    if (s == fault_name(f)) return f;
  throw Error(Errc::InvalidArgument, "unknown fault '" + s + "'");
}

Errc designated_error(Fault f) {
  switch (f) {
    case Fault::RowMutation: return Errc::SymplecticViolation;
    case Fault::RankViolation: return Errc::RankConditionViolated;
    case Fault::SwappedBlocks: return Errc::ContainmentFailed;
    case Fault::None: break;
  }
  throw Error(Errc::InvalidArgument, "no fault selected");
}

DegreeFormulas construction_i_degrees(const std::vector<std::size_t>& partition) {
  auto pi = check_partition(partition);
  const int mu = pi.mu;
  auto hp = [&](int i) { return int(pi.hp[std::size_t(i)]); };
  int tail = 0;
  for (int i = 1; i <= mu - 1; ++i) tail += (mu - i) * (hp(mu - i) - hp(mu - i + 1));
  DegreeFormulas d;
  d.gamma1 = mu * (int(pi.h[std::size_t(mu)]) + hp(mu)) + tail;
  d.gamma2 = mu * hp(mu) + tail;
  return d;
}

FamilyParams demo_construction_i(std::uint32_t q, std::size_t n, int mu, std::uint64_t seed) {
  if (mu < 1) throw Error(Errc::PartitionInvalid, "mu must be at least 1");
  std::mt19937_64 rng(seed);
  const std::size_t blocks = std::size_t(mu) + 1;
  if (n <= blocks + 1) throw Error(Errc::PartitionInvalid, "n too small for memory " + std::to_string(mu));
  // rk Hi = h for every i; rk Hi' nonincreasing from rk H0' >= 1; fewer than n rows.
  std::vector<std::size_t> partition;
  do {
    partition.clear();
    const std::size_t h = 1 + rng() % 2;
    std::size_t prev = 1 + rng() % 2;
    for (std::size_t i = 0; i < blocks; ++i) {
      partition.push_back(h);
      partition.push_back(prev);
      prev = rng() % (prev + 1);
    }
  } while (std::accumulate(partition.begin(), partition.end(), std::size_t(0)) >= n);
  const std::size_t m = std::accumulate(partition.begin(), partition.end(), std::size_t(0));
  auto f = gf::Field::of_order(q);
  std::uniform_int_distribution<Elem> d(0, q - 1);
  Matrix v;
  do {
    v = Matrix(f, m, n);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < n; ++c) v(r, c) = d(rng);
  } while (block::rank(v) < m);
  FamilyParams p;
  p.family = Family::I;
  p.q = q;
  p.vectors = v;
  p.partition = partition;
  return p;
}

// ---------------------------------------------------------------------------

Certificate certify(const FamilyParams& p, const BuildOptions& o) {
  validate(p);
  Certificate cert;
  cert.params = p;
  const bool J = o.with_json;
  json& doc = cert.doc;
  if (J) {
    doc["family"] = family_tag(p.family);
    doc["q"] = p.q;
    json params = json::object();
    if (p.family == Family::I) {
      params["partition"] = p.partition;
      params["mu"] = p.partition.size() / 2 - 1;
    } else if (is_grs(p.family)) {
      params = {{"n", p.n}, {"k", p.k}, {"t", p.t}};
    } else {
      params["i"] = p.i;
      if (p.family != Family::T2) params["t"] = p.t;
    }
    doc["params"] = params;
    doc["field"] = json::object();
    doc["matrices"] = json::object();
    doc["checks"] = json::object();
    doc["distances"] = json::object();
    doc["tuple"] = nullptr;
    doc["expected"] = json::object();
    doc["flags"] = json::array();
    doc["status"] = json::object();
  }

  std::optional<Failure> fail;
  auto finish = [&]() -> Certificate& {
    if (fail) {
      cert.ok = false;
      cert.error = fail->code;
      cert.failed_section = fail->section;
      cert.message = fail->message;
    }
    if (J) {
      doc["flags"] = cert.flags;
      json st = {{"ok", cert.ok}};
      if (!cert.ok) {
        st["section"] = cert.failed_section;
        if (cert.error) st["error"] = errc_name(*cert.error);
        st["message"] = cert.message;
      }
      doc["status"] = st;
    }
    return cert;
  };
  std::string section;

  try {
    section = "params";
    Source src;
    Layout layout;
    PartitionInfo pinfo;
    if (p.family == Family::I) {
      pinfo = check_partition(p.partition);
      const std::size_t m = std::accumulate(p.partition.begin(), p.partition.end(), std::size_t(0));
      if (m != p.vectors.rows())
        throw Error(Errc::PartitionInvalid, "partition sizes sum to " + std::to_string(m) + ", expected " +
                                                std::to_string(p.vectors.rows()));
      if (m >= p.vectors.cols()) throw Error(Errc::PartitionInvalid, "need fewer than n vectors");
      if (block::rank(p.vectors) < m) throw Error(Errc::IndependenceViolated, "source vectors are dependent");
    }
    cert.expected = expected_tuple(p);
    if (J) {
      json ex = {{"n", cert.expected.n},
                 {"k", num(cert.expected.k, "formula-from-paper")},
                 {"gamma", num(cert.expected.gamma, "formula-from-paper")}};
      if (p.family != Family::I) {
        ex["dz"] = num(cert.expected.dz, "formula-from-paper");
        ex["dx"] = num(cert.expected.dx, "formula-from-paper");
        ex["swapped"] = cert.expected.swapped;
      }
      doc["expected"] = ex;
    }
    if (p.family != Family::I && cert.expected.degenerate)
      throw Error(Errc::ZeroLogicalDimension, "the formula gives k = " + std::to_string(cert.expected.k));

    section = "source";
    if (p.family == Family::I) {
      src = generic_source(p);
      layout = construction_i_layout(pinfo);
    } else if (is_bch(p.family)) {
      const long a = is_t4(p.family) ? long(p.q + 1) / 2 : long(p.q) / 2;
      std::vector<long> exps;
      for (long e = a; e >= a - p.i; --e) exps.push_back(e);
      src = cyclic_source(p.q, p.q + 1, exps);
      if (p.family == Family::T2)
        layout = t2_layout(a, p.i);
      else if (is_t4(p.family))
        layout = t4_layout(p.family, src, a, p.i, p.t);
      else
        layout = t3_layout(p.family, a, p.i, p.t, 2);
      if (is_t4(p.family)) cert.flags.push_back("layout-reconstructed");
    } else if (is_rs(p.family)) {
      const long a = p.i + 1;
      std::vector<long> exps;
      for (long e = a; e >= a - p.i; --e) exps.push_back(e);
      src = cyclic_source(p.q, p.q - 1, exps);
      layout = t3_layout(p.family, a, p.i, p.t, 1);
    } else {
      src = grs_source(p);
      layout = grs_layout(p.family, p.n, p.k, p.t);
    }
    if (J) {
      const auto& f = *src.field;
      doc["field"] = {{"p", f.p()}, {"l", f.l()}, {"modulus", f.modulus()}, {"provenance", "default-modulus"}};
      for (auto& [k, v] : src.info.items()) doc["field"][k] = v;
      doc["matrices"]["source_H"] = src.rows.to_text();
    }

    section = "checks.ranks";
    std::vector<std::vector<std::size_t>> idx1, idx2;
    auto plan1 = plan_of(src, layout.g1, &idx1);
    auto plan2 = plan_of(src, layout.g2, &idx2);
    if (o.fault == Fault::RankViolation && plan1.blocks[0] >= 2) {
      auto rng = fault_rng(o);
      const std::size_t r1 = rng() % plan1.blocks[0];
      std::size_t r2 = rng() % (plan1.blocks[0] - 1);
      if (r2 >= r1) ++r2;
      for (std::size_t c = 0; c < plan1.h.cols(); ++c) plan1.h(r2, c) = plan1.h(r1, c);
      cert.flags.push_back("fault:" + fault_name(o.fault));
    }
    const std::size_t src_rank = block::rank(src.rows);
    if (J) {
      auto block_ranks = [](const convo::SplitPlan& pl) {
        json a = json::array();
        std::size_t off = 0;
        for (auto b : pl.blocks) {
          std::vector<std::size_t> ix(b);
          std::iota(ix.begin(), ix.end(), off);
          off += b;
          a.push_back({{"rows", b}, {"rank", block::rank(pl.h.select_rows(ix))}});
        }
        return a;
      };
      doc["checks"]["ranks"] = {{"source", num(int(src_rank), "exact-computed")},
                                {"G1_blocks", block_ranks(plan1)},
                                {"G2_blocks", block_ranks(plan2)}};
    }
    if (src_rank < src.rows.rows()) throw Error(Errc::IndependenceViolated, "source rows are dependent");
    PolyMatrix g1 = convo::split_to_generator(plan1);
    PolyMatrix g2 = convo::split_to_generator(plan2);

    if (o.fault == Fault::SwappedBlocks) {
      // Exchange the constant and D parts of G2's first row.
      for (std::size_t c = 0; c < g2.cols(); ++c) {
        Poly& e = g2.at(0, c);
        e.resize(std::max<std::size_t>(e.size(), 2), 0);
        std::swap(e[0], e[1]);
        convo::trim(e);
      }
      cert.flags.push_back("fault:" + fault_name(o.fault));
    }
    if (J) {
      doc["matrices"]["G1"] = g1.to_text();
      doc["matrices"]["G2"] = g2.to_text();
    }

    section = "checks.basic";
    auto b1 = convo::is_basic(g1);
    auto basic_json = [&](const convo::BasicResult& b) {
      json j = {{"value", b.basic}, {"provenance", "exact-computed"}};
      json inv = json::array();
      for (const auto& x : b.smith.invariants) inv.push_back(convo::poly_to_string(x));
      j["smith_invariants"] = inv;
      if (b.basic) j["right_inverse"] = b.right_inverse.to_text();
      return j;
    };
    if (J) doc["checks"]["basic"] = {{"G1", basic_json(b1)}};
    if (!b1.basic) throw Error(Errc::NotBasic, "G1 is not basic");

    section = "checks.containment";
    PolyMatrix witness = g2 * b1.right_inverse;
    const bool contained = witness * g1 == g2;
    auto sel = contained ? convo::selected_rows(witness) : std::nullopt;
    if (J) {
      json c = {{"value", contained}, {"provenance", "exact-computed"}};
      if (contained) {
        c["witness"] = witness.to_text();
        if (sel) c["row_selection"] = *sel;
      }
      doc["checks"]["containment"] = c;
    }
    if (!contained) throw Error(Errc::ContainmentFailed, "G2 is not in the row module of G1");

    section = "checks.basic";
    auto b2 = convo::is_basic(g2);
    if (J) doc["checks"]["basic"]["G2"] = basic_json(b2);
    if (!b2.basic) throw Error(Errc::NotBasic, "G2 is not basic");

    section = "checks.dual";
    PolyMatrix h1 = convo::dual_generator(g1, b1.smith);
    if (J) doc["matrices"]["H1"] = h1.to_text();
    if (o.effort != Effort::Structure) {
      auto bh = convo::is_basic(h1);
      if (J) doc["checks"]["basic"]["H1"] = basic_json(bh);
      if (!bh.basic) throw Error(Errc::NotBasic, "H1 is not basic");
    }

    section = "checks.reduced";
    auto red = [&](const PolyMatrix& g) {
      const std::size_t r = block::rank(g.leading_row_matrix());
      return std::pair<bool, std::size_t>(r == g.rows(), r);
    };
    auto r1 = red(g1), r2 = red(g2), rh = red(h1);
    if (J) {
      auto rj = [](std::pair<bool, std::size_t> r) {
        return json{{"value", r.first}, {"leading_row_rank", r.second}, {"provenance", "exact-computed"}};
      };
      doc["checks"]["reduced"] = {{"G1", rj(r1)}, {"G2", rj(r2)}, {"H1", rj(rh)}};
    }
    if (!r1.first || !r2.first || !rh.first) throw Error(Errc::NotBasic, "a generator is not reduced");

    if (o.fault == Fault::RowMutation) {
      auto rng = fault_rng(o);
      const gf::Field& f = *g2.field();
      for (int tries = 0; tries < 1000; ++tries) {
        const std::size_t r = rng() % g2.rows(), c = rng() % g2.cols();
        const int d = int(rng() % std::size_t(std::max(1, g2.row_degree(r) + 1)));
        const Elem a = Elem(1 + rng() % (f.q() - 1));
        PolyMatrix cand = g2;
        Poly mono(std::size_t(d) + 1, 0);
        mono[std::size_t(d)] = a;
        cand.at(r, c) = convo::poly_add(f, cand.at(r, c), mono);
        if (!convo::orthogonality_residual(cand, h1).is_zero()) {
          g2 = cand;
          break;
        }
      }
      cert.flags.push_back("fault:" + fault_name(o.fault));
      if (J) doc["matrices"]["G2"] = g2.to_text();
    }

    section = "checks.symplectic";
    css::NestedPair pair{g1, g2, h1, witness};
    const auto orient = o.orientation.value_or(p.family == Family::I ? css::Orientation::GeneratorFirst
                                                                       : css::Orientation::DualFirst);
    css::StabilizerMatrix stab = css::assemble_stabilizer(pair, orient);
    if (J) {
      doc["matrices"]["stabilizer_X"] = stab.X.to_text();
      doc["matrices"]["stabilizer_Z"] = stab.Z.to_text();
      doc["checks"]["symplectic"] = "zero";
    }

    section = "checks.degrees";
    auto da1 = convo::degree_accounting(g1), da2 = convo::degree_accounting(g2), dh = convo::degree_accounting(h1);
    cert.gamma1_g = da1.gamma;
    cert.gamma2_g = da2.gamma;
    const int mu_star = std::max({0, stab.X.degree(), stab.Z.degree()});
    if (J) {
      json dg = {{"gamma1", num(da1.gamma, "exact-computed")},
                 {"gamma1_dual", num(dh.gamma, "exact-computed")},
                 {"gamma2", num(da2.gamma, "exact-computed")},
                 {"gamma", num(da1.gamma + da2.gamma, "exact-computed")},
                 {"mu", num(da1.memory, "exact-computed")},
                 {"mu_star", num(mu_star, "exact-computed")}};
      if (p.family == Family::I) {
        auto fm = construction_i_degrees(p.partition);
        dg["gamma1_formula"] = num(fm.gamma1, "formula-from-paper");
        dg["gamma2_formula"] = num(fm.gamma2, "formula-from-paper");
      }
      doc["checks"]["degrees"] = dg;
    }
    if (dh.gamma != da1.gamma)
      throw Error(Errc::InvalidArgument, "degree of H1 differs from degree of G1");
    if (p.family == Family::I) {
      auto fm = construction_i_degrees(p.partition);
      if (fm.gamma1 != da1.gamma || fm.gamma2 != da2.gamma)
        throw Error(Errc::InvalidArgument, "degree formulas disagree with the constructed generators");
    }

    section = "distances";
    std::vector<std::size_t> all_rows(src.rows.rows());
    std::iota(all_rows.begin(), all_rows.end(), 0);
    Claim dblock = kernel_claim(src, all_rows, o);
    Claim d1 = rowspace_claim(src, all_rows, o);
    SplitBound b2s = split_bound(src, idx2, o);
    Claim dv1 = d1, dv2 = b2s.value;
    json convo_j;
    std::optional<convo::FreeDistanceResult> f1, f2;
    if (o.effort == Effort::Exact) {
      f1 = convo::free_distance(g1, o.search, d1.value, d1.method);
      f2 = convo::dual_free_distance(g2, o.search, b2s.value.value, b2s.value.method);
      if (f1->exact) dv1 = {f1->upper, "exact-computed", "trellis"};
      else if (f1->lower > dv1.value) dv1 = {f1->lower, "bounded", f1->lower_provenance};
      if (f2->exact) dv2 = {f2->upper, "exact-computed", "syndrome-trellis"};
      else if (f2->lower > dv2.value) dv2 = {f2->lower, "bounded", f2->lower_provenance};
    }
    if (J) {
      doc["distances"]["block"] = {{"d", dblock.to_json()}, {"d_dual", d1.to_json()}};
      json cj = {{"d1f", dv1.to_json()}, {"d2f_dual", dv2.to_json()}, {"d2f_dual_split", split_json(b2s)}};
      auto fd = [](const convo::FreeDistanceResult& r) {
        json j = {{"lower", r.lower}, {"exact", r.exact}};
        if (r.upper != block::kInfinity) j["upper"] = r.upper;
        if (!r.witness.empty()) j["witness"] = poly_list(r.witness);
        return j;
      };
      if (f1) cj["d1f_search"] = fd(*f1);
      if (f2) cj["d2f_dual_search"] = fd(*f2);
      doc["distances"]["convo"] = cj;
    }

    section = "distances.aqcc";
    css::DistanceEffort eff;
    eff.exact_relative = o.effort == Effort::Exact;
    eff.budget = o.search;
    auto ap = css::derive_aqcc(pair, stab, orient, {dv1.value, dv1.provenance + ":" + dv1.method},
                               {dv2.value, dv2.provenance + ":" + dv2.method}, eff);
    cert.aqcc = ap;
    if (J) {
      auto bj = [](const css::Bound& b) {
        const auto colon = b.provenance.find(':');
        return json{{"value", b.value},
                    {"provenance", b.provenance.substr(0, colon)},
                    {"method", colon == std::string::npos ? "" : b.provenance.substr(colon + 1)}};
      };
      json aj = {{"dz_bound", bj(ap.dz)}, {"dx_bound", bj(ap.dx)}};
      if (ap.dz_exact) aj["dz_exact"] = num(*ap.dz_exact, "exact-computed");
      if (ap.dx_exact) aj["dx_exact"] = num(*ap.dx_exact, "exact-computed");
      aj["swapped"] = ap.swapped;
      aj["orientation"] = orient == css::Orientation::DualFirst ? "dual-first" : "generator-first";
      doc["distances"]["aqcc"] = aj;
    }

    section = "tuple";
    const auto& e = cert.expected;
    std::string mismatch;
    if (ap.n != e.n) mismatch += " n";
    if (ap.k != e.k) mismatch += " k";
    if (ap.gamma != e.gamma) mismatch += " gamma";
    if (p.family != Family::I) {
      if (dv1.value < e.bound_v1) mismatch += " V1-side bound";
      if (dv2.value < e.bound_v2_dual) mismatch += " V2-dual-side bound";
    }
    if (!mismatch.empty()) {
      cert.failed_section = section;
      cert.message = "certificate disagrees with the closed-form tuple in:" + mismatch;
      return finish();
    }
    cert.tuple = p.family == Family::I ? css::tuple_string(ap.n, ap.k, ap.gamma, ap.dz.value, ap.dx.value, p.q)
                                       : css::tuple_string(e.n, e.k, e.gamma, e.dz, e.dx, p.q);
    if (J) doc["tuple"] = cert.tuple;
    cert.ok = true;
  } catch (const Error& err) {
    Errc code = err.code();
    if (code == Errc::ParamOutOfRange) throw;
    fail = Failure{code, section, err.what()};
  }
  return finish();
}

}  // namespace aqcc::families
