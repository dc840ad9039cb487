#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace aqcc::gf {

// A field element is stored as its power-basis coordinates over GF(p),
// packed little-endian in base p. 0 is zero and 1 is one in every field.
using Elem = std::uint32_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
 public:
  // Fields are cached: equal (p, l, modulus) requests return the same object.
  // Without a modulus the irreducible whose lower coefficients, packed as a
  // base-p integer, are smallest is used (x^4+x+1 for GF(16)).
  static FieldPtr create(std::uint32_t p, std::uint32_t l,
                         std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);
  // GF(q) with the default modulus; q must be a prime power.
  static FieldPtr of_order(std::uint32_t q);

  std::uint32_t p() const { return p_; }
  std::uint32_t l() const { return l_; }
  std::uint32_t q() const { return q_; }
  // Coefficients low-to-high including the leading 1.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  Elem generator() const { return generator_; }

  Elem add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    if (l_ == 1) {
      Elem s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (!add_table_.empty()) return add_table_[a * q_ + b];
    return add_digits(a, b);
  }
  Elem neg(Elem a) const {
    if (p_ == 2 || a == 0) return a;
    if (l_ == 1) return p_ - a;
    return neg_table_[a];
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (!log_.empty()) return exp_[log_[a] + log_[b]];
    return mul_poly(a, b);
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  // g^e for the stored generator g.
  Elem exp(std::uint64_t e) const;
  // Discrete log base the generator; a must be nonzero.
  std::uint32_t log(Elem a) const;
  std::uint64_t order(Elem a) const;

  std::vector<std::uint32_t> coords(Elem a) const;
  Elem from_coords(std::span<const std::uint32_t> c) const;
  // Image of an integer in the prime subfield.
  Elem from_int(std::int64_t v) const;

  bool same_as(const Field& other) const {
    return this == &other || (p_ == other.p_ && l_ == other.l_ && modulus_ == other.modulus_);
  }

  Field(std::uint32_t p, std::uint32_t l, std::vector<std::uint32_t> modulus);

 private:
  Elem add_digits(Elem a, Elem b) const;
  Elem mul_poly(Elem a, Elem b) const;
  Elem pow_poly(Elem a, std::uint64_t e) const;

  std::uint32_t p_, l_, q_;
  std::vector<std::uint32_t> modulus_;
  Elem generator_ = 1;
  std::vector<Elem> exp_;            // length 2(q-1), empty for large fields
  std::vector<std::uint32_t> log_;   // length q
  std::vector<Elem> add_table_;      // q*q for small odd-characteristic extensions
  std::vector<Elem> neg_table_;
};

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
// Returns (p, l) with q = p^l, or nullopt when q is not a prime power.
std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q);
bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly);

class FieldElement {
 public:
  FieldElement(FieldPtr field, Elem value);

  const FieldPtr& field() const { return field_; }
  Elem value() const { return value_; }
  std::vector<std::uint32_t> coeffs() const { return field_->coords(value_); }
  bool is_zero() const { return value_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const { return {field_, field_->neg(value_)}; }
  FieldElement inverse() const { return {field_, field_->inv(value_)}; }
  FieldElement pow(std::uint64_t e) const { return {field_, field_->pow(value_, e)}; }
  std::uint64_t order() const { return field_->order(value_); }
  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

 private:
  void check_same(const FieldElement& o) const;
  FieldPtr field_;
  Elem value_;
};

// Smallest l >= 1 with q^l = 1 mod n.
std::uint32_t ord_mod(std::uint64_t n, std::uint64_t q);

// g^((q-1)/n); throws OrderNotDividing unless n | q-1.
FieldElement primitive_root_of_unity(const FieldPtr& field, std::uint64_t n);

// GF(q^l) viewed as an l-dimensional GF(q)-space.
class SubfieldBasis {
 public:
  SubfieldBasis(FieldPtr base, FieldPtr ext, std::vector<Elem> basis);
  // {1, b, ..., b^(l-1)} with b the root of ext's modulus.
  static SubfieldBasis power_basis(FieldPtr base, FieldPtr ext);

  const FieldPtr& base() const { return base_; }
  const FieldPtr& ext() const { return ext_; }
  std::uint32_t degree() const { return degree_; }
  const std::vector<Elem>& basis() const { return basis_; }

  Elem embed(Elem b) const { return (*embed_)[b]; }
  Elem expand_coord(Elem x, std::uint32_t i) const { return (*coords_)[std::size_t(x) * degree_ + i]; }
  std::vector<Elem> expand(Elem x) const;
  Elem reconstruct(std::span<const Elem> c) const;

 private:
  FieldPtr base_, ext_;
  std::uint32_t degree_;
  std::vector<Elem> basis_;
  std::shared_ptr<const std::vector<Elem>> embed_;
  std::shared_ptr<const std::vector<Elem>> coords_;
};

std::vector<FieldElement> expand_over_subfield(const FieldElement& x, const SubfieldBasis& basis);

}  // namespace aqcc::gf
