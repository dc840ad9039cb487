// Command-line front end: enumerate, certify, distance, table, selftest.
//
// Exit codes: 0 success, 2 parameter error, 3 certification failure,
// 4 distance computation refused (catastrophic encoder).

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "aqcc/families.hpp"
#include "aqcc/trellis.hpp"
#include "selftest.hpp"

using namespace aqcc;
using families::Family;
using families::FamilyParams;

namespace {

constexpr int kExitParam = 2;
constexpr int kExitCertify = 3;
constexpr int kExitDistance = 4;

struct Options {
  std::string family;
  std::uint32_t q = 0;
  std::optional<int> i, t, n, k;
  int mu = 1;
  std::uint64_t state_budget = 1u << 20;
  std::uint64_t enum_budget = block::kDefaultEnumBudget;
  std::string format = "csv";
  std::string out;
  std::string effort = "bounds";
  std::string fault = "none";
  std::uint64_t fault_seed = 0;
  std::string matrix;
  bool dual = false;
  std::string tier = "desk";
  std::vector<std::uint32_t> qs;
};

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw Error(Errc::InvalidArgument, "cannot write " + o.out);
  f << text;
}

std::uint64_t demo_seed() {
  const char* s = std::getenv("AQCC_SEED");
  if (!s || !*s) return 1;
  char* end = nullptr;
  const auto v = std::strtoull(s, &end, 10);
  if (*end) throw Error(Errc::ParamOutOfRange, "AQCC_SEED must be a decimal integer");
  return v;
}

FamilyParams params_from(const Options& o) {
  FamilyParams p;
  p.family = families::parse_family(o.family);
  p.q = o.q;
  if (p.family == Family::I) {
    if (!o.n) throw Error(Errc::ParamOutOfRange, "Construction I needs --n");
    return families::demo_construction_i(o.q, std::size_t(*o.n), o.mu, demo_seed());
  }
  auto need = [&](const std::optional<int>& v, const char* flag) {
    if (!v) throw Error(Errc::ParamOutOfRange, family_tag(p.family) + " needs " + flag);
    return *v;
  };
  if (p.family == Family::T6 || p.family == Family::T8) {
    p.n = need(o.n, "--n");
    p.k = need(o.k, "--k");
    p.t = need(o.t, "--t");
  } else {
    p.i = need(o.i, "--i");
    if (p.family != Family::T2) p.t = need(o.t, "--t");
  }
  return p;
}

std::string param_cell(const FamilyParams& p) {
  std::ostringstream os;
  if (p.family == Family::T6 || p.family == Family::T8)
    os << "n=" << p.n << " k=" << p.k << " t=" << p.t;
  else if (p.family == Family::T2)
    os << "i=" << p.i;
  else
    os << "i=" << p.i << " t=" << p.t;
  return os.str();
}

std::string rows_out(const std::vector<families::Instance>& rows, const std::string& format) {
  if (format == "json") {
    families::json a = families::json::array();
    for (const auto& r : rows) {
      const auto& e = r.expected;
      a.push_back({{"family", families::family_tag(r.params.family)},
                   {"q", r.params.q},
                   {"params", param_cell(r.params)},
                   {"n", e.n},
                   {"k", e.k},
                   {"gamma", e.gamma},
                   {"dz_bound", e.dz},
                   {"dx_bound", e.dx},
                   {"swapped", e.swapped},
                   {"degenerate", e.degenerate},
                   {"tuple", e.degenerate ? "" : css::tuple_string(e.n, e.k, e.gamma, e.dz, e.dx, r.params.q)}});
    }
    return a.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "family,q,params,n,k,gamma,dz_bound,dx_bound,swapped,degenerate,tuple\n";
  for (const auto& r : rows) {
    const auto& e = r.expected;
    os << families::family_tag(r.params.family) << ',' << r.params.q << ',' << param_cell(r.params) << ',' << e.n
       << ',' << e.k << ',' << e.gamma << ',' << e.dz << ',' << e.dx << ',' << e.swapped << ',' << e.degenerate << ','
       << (e.degenerate ? "" : css::tuple_string(e.n, e.k, e.gamma, e.dz, e.dx, r.params.q)) << '\n';
  }
  return os.str();
}

families::Ranges ranges_of(const Options& o) { return {o.i, o.t, o.n, o.k}; }

int cmd_enumerate(const Options& o) {
  auto rows = families::enumerate_family(families::parse_family(o.family), o.q, ranges_of(o));
  emit(o, rows_out(rows, o.format));
  return 0;
}

int cmd_table(const Options& o) {
  // Defaults: every closed-form family over the fields used in the
  // worked examples.
  std::vector<Family> fams;
  if (o.family.empty())
    fams = families::closed_form_families();
  else
    fams = {families::parse_family(o.family)};
  std::vector<std::uint32_t> qs = o.qs;
  if (qs.empty()) qs = {5, 7, 8, 9, 11, 16, 17, 32};
  std::vector<families::Instance> rows;
  for (auto f : fams)
    for (auto q : qs) {
      auto part = families::enumerate_family(f, q, ranges_of(o));
      rows.insert(rows.end(), part.begin(), part.end());
    }
  emit(o, rows_out(rows, o.format));
  return 0;
}

families::Effort parse_effort(const std::string& s) {
  if (s == "structure") return families::Effort::Structure;
  if (s == "bounds") return families::Effort::Bounds;
  if (s == "exact") return families::Effort::Exact;
  throw Error(Errc::ParamOutOfRange, "unknown effort '" + s + "'");
}

int cmd_certify(const Options& o) {
  auto p = params_from(o);
  families::validate(p);
  families::BuildOptions b;
  b.effort = parse_effort(o.effort);
  b.enum_budget = o.enum_budget;
  b.search.states = o.state_budget;
  b.fault = families::parse_fault(o.fault);
  b.fault_seed = o.fault_seed;
  auto c = families::certify(p, b);
  emit(o, c.doc.dump(2) + "\n");
  if (!c.ok) {
    std::cerr << "certification failed in " << c.failed_section;
    if (c.error) std::cerr << " (" << errc_name(*c.error) << ")";
    std::cerr << ": " << c.message << "\n";
    if (c.doc["checks"].contains(c.failed_section.substr(c.failed_section.find('.') + 1)))
      std::cerr << c.doc["checks"][c.failed_section.substr(c.failed_section.find('.') + 1)].dump(2) << "\n";
    return kExitCertify;
  }
  if (!o.out.empty()) std::cout << "ok " << c.tuple << "\n";
  return 0;
}

int cmd_distance(const Options& o) {
  std::ifstream f(o.matrix);
  if (!f) throw Error(Errc::ParamOutOfRange, "cannot read " + o.matrix);
  std::stringstream ss;
  ss << f.rdbuf();
  auto g = convo::PolyMatrix::from_text(ss.str());
  convo::SearchBudget budget;
  budget.states = o.state_budget;
  auto r = o.dual ? convo::dual_free_distance(g, budget) : convo::free_distance(g, budget);
  std::ostringstream os;
  if (r.exact) {
    os << "exact " << r.upper;
  } else {
    os << "bounds " << r.lower << " (" << r.lower_provenance << ") <= d <= ";
    if (r.upper == block::kInfinity)
      os << "inf";
    else
      os << r.upper;
  }
  if (!r.witness.empty()) os << ", witness " << convo::poly_vector_to_string(r.witness);
  os << "\n";
  emit(o, os.str());
  return 0;
}

int cmd_selftest(const Options& o) {
  selftest::Tier tier;
  if (o.tier == "quick")
    tier = selftest::Tier::Quick;
  else if (o.tier == "desk")
    tier = selftest::Tier::Desk;
  else if (o.tier == "full")
    tier = selftest::Tier::Full;
  else
    throw Error(Errc::ParamOutOfRange, "unknown tier '" + o.tier + "'");
  auto results = selftest::run_acceptance(tier, std::cerr);
  int passed = 0;
  std::ostringstream os;
  for (const auto& r : results) {
    os << selftest::format_result(r) << "\n";
    passed += r.pass;
  }
  os << passed << "/" << results.size() << " criteria passed (tier " << o.tier << ")\n";
  emit(o, os.str());
  return passed == int(results.size()) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymmetric quantum convolutional code families and certificates"};
  app.require_subcommand(1);
  Options o;

  auto family_opts = [&](CLI::App* s, bool need_family) {
    auto* fo = s->add_option("--family", o.family, "construction tag, e.g. II-T3a");
    if (need_family) fo->required();
    s->add_option("--i", o.i);
    s->add_option("--t", o.t);
    s->add_option("--n", o.n);
    s->add_option("--k", o.k);
    s->add_option("--out", o.out, "write output to this file");
  };

  auto* en = app.add_subcommand("enumerate", "list admissible parameters with predicted tuples");
  family_opts(en, true);
  en->add_option("--q", o.q)->required();
  en->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));

  auto* ce = app.add_subcommand("certify", "build one instance and write its certificate");
  family_opts(ce, true);
  ce->add_option("--q", o.q)->required();
  ce->add_option("--mu", o.mu, "memory for Construction I demo vectors");
  ce->add_option("--state-budget", o.state_budget);
  ce->add_option("--enum-budget", o.enum_budget);
  ce->add_option("--effort", o.effort)->check(CLI::IsMember({"structure", "bounds", "exact"}));
  ce->add_option("--inject-fault", o.fault)
      ->check(CLI::IsMember({"none", "row-mutation", "rank-violation", "swapped-blocks"}));
  ce->add_option("--fault-seed", o.fault_seed);
  ce->add_option("--format", o.format)->check(CLI::IsMember({"json"}));

  auto* di = app.add_subcommand("distance", "free distance of a polynomial generator matrix file");
  di->add_option("matrix", o.matrix)->required();
  di->add_flag("--dual", o.dual, "distance of the dual code instead");
  di->add_option("--state-budget", o.state_budget);
  di->add_option("--enum-budget", o.enum_budget);
  di->add_option("--out", o.out);

  auto* ta = app.add_subcommand("table", "expected tuples for several families and fields");
  family_opts(ta, false);
  ta->add_option("--q", o.qs, "field sizes (repeatable)");
  ta->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));

  auto* st = app.add_subcommand("selftest", "run the acceptance criteria");
  st->add_option("--tier", o.tier)->check(CLI::IsMember({"quick", "desk", "full"}));
  st->add_option("--out", o.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitParam;
  }

  try {
    if (*en) return cmd_enumerate(o);
    if (*ce) return cmd_certify(o);
    if (*di) return cmd_distance(o);
    if (*ta) return cmd_table(o);
    if (*st) return cmd_selftest(o);
  } catch (const Error& e) {
    std::cerr << errc_name(e.code()) << ": " << e.what() << "\n";
    switch (e.code()) {
      case Errc::CatastrophicEncoder:
        return kExitDistance;
      case Errc::ParamOutOfRange:
      case Errc::InvalidArgument:
      case Errc::ParseError:
      case Errc::PartitionInvalid:
      case Errc::DuplicateEvaluationPoint:
      case Errc::ZeroMultiplier:
        return kExitParam;
      default:
        return kExitCertify;
    }
  }
  return 0;
}
