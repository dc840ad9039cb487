#include "aqcc/gf.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <tuple>

#include "aqcc/error.hpp"

namespace aqcc::gf {

namespace {

constexpr std::uint64_t kMaxOrder = 1u << 20;
constexpr std::uint32_t kTableLimit = 1u << 16;

using Coeffs = std::vector<std::uint32_t>;

// Remainder of a modulo monic-or-not b over GF(p); both low-to-high.
Coeffs poly_mod(Coeffs a, const Coeffs& b, std::uint32_t p) {
  const std::size_t db = b.size() - 1;
  std::uint32_t lead_inv = 1;
  for (std::uint32_t x = 1; x < p; ++x)
    if ((std::uint64_t(x) * b.back()) % p == 1) lead_inv = x;
  while (a.size() > db && !a.empty()) {
    std::uint32_t c = a.back();
    if (c != 0) {
      std::uint32_t f = std::uint32_t((std::uint64_t(c) * lead_inv) % p);
      std::size_t shift = a.size() - 1 - db;
      for (std::size_t i = 0; i <= db; ++i) {
        std::uint64_t s = (std::uint64_t(f) * b[i]) % p;
        a[shift + i] = std::uint32_t((a[shift + i] + p - s) % p);
      }
    }
    a.pop_back();
  }
  return a;
}

std::mutex cache_mutex;
std::map<std::tuple<std::uint32_t, std::uint32_t, Coeffs>, FieldPtr>& field_cache() {
  static std::map<std::tuple<std::uint32_t, std::uint32_t, Coeffs>, FieldPtr> cache;
  return cache;
}

Coeffs default_modulus(std::uint32_t p, std::uint32_t l) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < l; ++i) count *= p;
  Coeffs f(l + 1, 0);
  f[l] = 1;
  for (std::uint64_t v = 0; v < count; ++v) {
    std::uint64_t x = v;
    for (std::uint32_t i = 0; i < l; ++i) {
      f[i] = std::uint32_t(x % p);
      x /= p;
    }
    if (is_irreducible(p, f)) return f;
  }
  throw Error(Errc::ReducibleModulus, "no irreducible polynomial found");
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  auto f = prime_factors(q);
  if (f.size() != 1) return std::nullopt;
  std::uint32_t l = 0;
  while (q > 1) {
    q /= f[0];
    ++l;
  }
  return std::make_pair(std::uint32_t(f[0]), l);
}

bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly) {
  if (poly.size() < 2 || poly.back() == 0) return false;
  const std::size_t deg = poly.size() - 1;
  if (deg == 1) return true;
  // Trial division by every monic polynomial of degree <= deg/2.
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    Coeffs g(d + 1, 0);
    g[d] = 1;
    for (std::uint64_t v = 0; v < count; ++v) {
      std::uint64_t x = v;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = std::uint32_t(x % p);
        x /= p;
      }
      Coeffs r = poly_mod(poly, g, p);
      bool zero = true;
      for (auto c : r) zero = zero && c == 0;
      if (zero) return false;
    }
  }
  return true;
}

FieldPtr Field::create(std::uint32_t p, std::uint32_t l, std::optional<std::vector<std::uint32_t>> modulus) {
  if (!is_prime(p)) throw Error(Errc::NonPrimeCharacteristic, std::to_string(p) + " is not prime");
  if (l < 1) throw Error(Errc::InvalidArgument, "extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < l; ++i) {
    q *= p;
    if (q > kMaxOrder) throw Error(Errc::ParamOutOfRange, "field order exceeds 2^20");
  }
  Coeffs mod;
  if (modulus) {
    mod = *modulus;
    if (mod.size() != l + 1 || mod.back() != 1)
      throw Error(Errc::InvalidArgument, "modulus must be monic of degree l");
    for (auto c : mod)
      if (c >= p) throw Error(Errc::InvalidArgument, "modulus coefficient out of range");
    if (!is_irreducible(p, mod)) throw Error(Errc::ReducibleModulus, "supplied modulus is reducible");
  }
  std::lock_guard<std::mutex> lock(cache_mutex);
  if (!modulus) {
    static std::map<std::pair<std::uint32_t, std::uint32_t>, Coeffs> defaults;
    auto it = defaults.find({p, l});
    if (it == defaults.end()) it = defaults.emplace(std::make_pair(p, l), default_modulus(p, l)).first;
    mod = it->second;
  }
  auto key = std::make_tuple(p, l, mod);
  auto& cache = field_cache();
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto field = std::make_shared<const Field>(p, l, mod);
  cache.emplace(key, field);
  return field;
}

FieldPtr Field::of_order(std::uint32_t q) {
  auto pp = prime_power(q);
  if (!pp) throw Error(Errc::ParamOutOfRange, std::to_string(q) + " is not a prime power");
  return create(pp->first, pp->second);
}

Field::Field(std::uint32_t p, std::uint32_t l, std::vector<std::uint32_t> modulus)
    : p_(p), l_(l), q_(1), modulus_(std::move(modulus)) {
  for (std::uint32_t i = 0; i < l; ++i) q_ *= p;
  if (l_ > 1 && p_ != 2) {
    neg_table_.resize(q_);
    for (Elem a = 0; a < q_; ++a) {
      auto c = coords(a);
      for (auto& x : c) x = x ? p_ - x : 0;
      neg_table_[a] = from_coords(c);
    }
    if (q_ <= 256) {
      add_table_.resize(std::size_t(q_) * q_);
      for (Elem a = 0; a < q_; ++a)
        for (Elem b = 0; b < q_; ++b) add_table_[a * q_ + b] = add_digits(a, b);
    }
  }
  // Smallest element whose order is exactly q-1.
  const std::uint64_t n = q_ - 1;
  const auto factors = prime_factors(n);
  for (Elem g = 1; g < q_; ++g) {
    bool ok = pow_poly(g, n) == 1;
    for (auto r : factors) ok = ok && pow_poly(g, n / r) != 1;
    if (ok) {
      generator_ = g;
      break;
    }
  }
  if (q_ <= kTableLimit) {
    exp_.resize(2 * std::size_t(n) + 1);
    log_.assign(q_, 0);
    Elem x = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
      exp_[i] = x;
      exp_[i + n] = x;
      log_[x] = std::uint32_t(i);
      x = mul_poly(x, generator_);
    }
    exp_[2 * n] = 1;
  }
}

Elem Field::add_digits(Elem a, Elem b) const {
  Elem out = 0, scale = 1;
  for (std::uint32_t i = 0; i < l_; ++i) {
    Elem s = (a % p_ + b % p_) % p_;
    out += s * scale;
    scale *= p_;
    a /= p_;
    b /= p_;
  }
  return out;
}

Elem Field::mul_poly(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  auto ca = coords(a), cb = coords(b);
  Coeffs prod(2 * l_ - 1, 0);
  for (std::uint32_t i = 0; i < l_; ++i) {
    if (!ca[i]) continue;
    for (std::uint32_t j = 0; j < l_; ++j)
      prod[i + j] = std::uint32_t((prod[i + j] + std::uint64_t(ca[i]) * cb[j]) % p_);
  }
  Coeffs r = poly_mod(prod, modulus_, p_);
  r.resize(l_, 0);
  return from_coords(r);
}

Elem Field::pow_poly(Elem a, std::uint64_t e) const {
  Elem r = 1;
  while (e) {
    if (e & 1) r = mul_poly(r, a);
    a = mul_poly(a, a);
    e >>= 1;
  }
  return r;
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw Error(Errc::InvalidArgument, "inverse of zero");
  if (!log_.empty()) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  return pow_poly(a, q_ - 2);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  if (!log_.empty()) return exp_[(std::uint64_t(log_[a]) * (e % (q_ - 1))) % (q_ - 1)];
  return pow_poly(a, e);
}

Elem Field::exp(std::uint64_t e) const {
  if (!exp_.empty()) return exp_[e % (q_ - 1)];
  return pow_poly(generator_, e % (q_ - 1));
}

std::uint32_t Field::log(Elem a) const {
  if (a == 0) throw Error(Errc::InvalidArgument, "log of zero");
  if (!log_.empty()) return log_[a];
  Elem x = 1;
  for (std::uint32_t i = 0; i + 1 < q_; ++i) {
    if (x == a) return i;
    x = mul_poly(x, generator_);
  }
  throw Error(Errc::InvalidArgument, "element outside field");
}

std::uint64_t Field::order(Elem a) const {
  if (a == 0) throw Error(Errc::InvalidArgument, "order of zero");
  std::uint64_t n = q_ - 1;
  std::uint64_t ord = n;
  for (auto r : prime_factors(n))
    while (ord % r == 0 && pow(a, ord / r) == 1) ord /= r;
  return ord;
}

std::vector<std::uint32_t> Field::coords(Elem a) const {
  std::vector<std::uint32_t> c(l_);
  for (std::uint32_t i = 0; i < l_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

Elem Field::from_coords(std::span<const std::uint32_t> c) const {
  if (c.size() != l_) throw Error(Errc::InvalidArgument, "coordinate vector has wrong length");
  Elem out = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] >= p_) throw Error(Errc::InvalidArgument, "coordinate out of range");
    out = out * p_ + c[i];
  }
  return out;
}

Elem Field::from_int(std::int64_t v) const {
  std::int64_t r = v % std::int64_t(p_);
  if (r < 0) r += p_;
  return Elem(r);
}

FieldElement::FieldElement(FieldPtr field, Elem value) : field_(std::move(field)), value_(value) {
  if (value_ >= field_->q()) throw Error(Errc::InvalidArgument, "element index out of range");
}

void FieldElement::check_same(const FieldElement& o) const {
  if (!field_->same_as(*o.field_)) throw Error(Errc::FieldMismatch, "operands belong to different fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->add(value_, o.value_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->sub(value_, o.value_)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->mul(value_, o.value_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->div(value_, o.value_)};
}
bool FieldElement::operator==(const FieldElement& o) const {
  return field_->same_as(*o.field_) && value_ == o.value_;
}

std::uint32_t ord_mod(std::uint64_t n, std::uint64_t q) {
  if (n == 0 || std::gcd(n, q) != 1) throw Error(Errc::NotCoprime, "gcd(n, q) != 1");
  if (n == 1) return 1;
  std::uint64_t x = q % n;
  for (std::uint32_t l = 1;; ++l) {
    if (x == 1) return l;
    x = (x * (q % n)) % n;
  }
}

FieldElement primitive_root_of_unity(const FieldPtr& field, std::uint64_t n) {
  const std::uint64_t m = field->q() - 1;
  if (n == 0 || m % n != 0)
    throw Error(Errc::OrderNotDividing, std::to_string(n) + " does not divide " + std::to_string(m));
  return {field, field->exp(m / n)};
}

SubfieldBasis::SubfieldBasis(FieldPtr base, FieldPtr ext, std::vector<Elem> basis)
    : base_(std::move(base)), ext_(std::move(ext)), basis_(std::move(basis)) {
  if (base_->p() != ext_->p() || ext_->l() % base_->l() != 0)
    throw Error(Errc::FieldMismatch, "base is not a subfield of ext");
  degree_ = ext_->l() / base_->l();
  if (basis_.size() != degree_) throw Error(Errc::InvalidArgument, "basis has wrong size");

  auto embed = std::make_shared<std::vector<Elem>>(base_->q());
  if (base_->l() == 1) {
    for (Elem c = 0; c < base_->q(); ++c) (*embed)[c] = ext_->from_int(c);
  } else {
    // A root of base's modulus inside ext fixes the embedding.
    const auto& f = base_->modulus();
    Elem root = 0;
    for (Elem x = 1; x < ext_->q() && root == 0; ++x) {
      Elem acc = 0;
      for (std::size_t i = f.size(); i-- > 0;) acc = ext_->add(ext_->mul(acc, x), ext_->from_int(f[i]));
      if (acc == 0) root = x;
    }
    if (root == 0) throw Error(Errc::FieldMismatch, "no embedding of base into ext");
    for (Elem c = 0; c < base_->q(); ++c) {
      auto digits = base_->coords(c);
      Elem acc = 0, power = 1;
      for (auto d : digits) {
        acc = ext_->add(acc, ext_->mul(ext_->from_int(d), power));
        power = ext_->mul(power, root);
      }
      (*embed)[c] = acc;
    }
  }
  embed_ = embed;

  const std::size_t total = ext_->q();
  auto coords = std::make_shared<std::vector<Elem>>(total * degree_, 0);
  std::vector<bool> seen(total, false);
  std::vector<Elem> c(degree_, 0);
  const Elem bq = base_->q();
  for (std::size_t step = 0; step < total; ++step) {
    Elem x = reconstruct(c);
    if (seen[x]) throw Error(Errc::InvalidArgument, "basis elements are linearly dependent");
    seen[x] = true;
    for (std::uint32_t i = 0; i < degree_; ++i) (*coords)[std::size_t(x) * degree_ + i] = c[i];
    for (std::uint32_t i = 0; i < degree_; ++i) {
      if (++c[i] < bq) break;
      c[i] = 0;
    }
  }
  coords_ = coords;
}

SubfieldBasis SubfieldBasis::power_basis(FieldPtr base, FieldPtr ext) {
  if (base->p() != ext->p() || ext->l() % base->l() != 0)
    throw Error(Errc::FieldMismatch, "base is not a subfield of ext");
  const std::uint32_t deg = ext->l() / base->l();
  // The modulus root is the element with coordinates (0, 1, 0, ...).
  const Elem beta = ext->l() > 1 ? ext->p() : ext->generator();
  std::vector<Elem> basis(deg);
  Elem x = 1;
  for (std::uint32_t i = 0; i < deg; ++i) {
    basis[i] = x;
    x = ext->mul(x, beta);
  }
  return SubfieldBasis(std::move(base), std::move(ext), std::move(basis));
}

std::vector<Elem> SubfieldBasis::expand(Elem x) const {
  std::vector<Elem> out(degree_);
  for (std::uint32_t i = 0; i < degree_; ++i) out[i] = expand_coord(x, i);
  return out;
}

Elem SubfieldBasis::reconstruct(std::span<const Elem> c) const {
  if (c.size() != degree_) throw Error(Errc::InvalidArgument, "coordinate vector has wrong length");
  Elem acc = 0;
  for (std::uint32_t i = 0; i < degree_; ++i) acc = ext_->add(acc, ext_->mul(embed(c[i]), basis_[i]));
  return acc;
}

std::vector<FieldElement> expand_over_subfield(const FieldElement& x, const SubfieldBasis& basis) {
  if (!x.field()->same_as(*basis.ext())) throw Error(Errc::FieldMismatch, "element is not in the extension field");
  std::vector<FieldElement> out;
  for (auto c : basis.expand(x.value())) out.emplace_back(basis.base(), c);
  return out;
}

}  // namespace aqcc::gf
