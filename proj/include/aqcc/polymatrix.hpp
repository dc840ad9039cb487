#pragma once

#include <boost/container/small_vector.hpp>
#include <cstddef>
#include <string>
#include <vector>

#include "aqcc/matrix.hpp"

namespace aqcc::convo {

using block::Matrix;
using gf::Elem;
using gf::FieldPtr;

// Coefficients low-to-high with no trailing zeros; the zero polynomial is empty.
using Poly = boost::container::small_vector<Elem, 3>;

inline int deg(const Poly& a) { return int(a.size()) - 1; }
void trim(Poly& a);
Poly poly_add(const gf::Field& f, const Poly& a, const Poly& b);
Poly poly_sub(const gf::Field& f, const Poly& a, const Poly& b);
Poly poly_mul(const gf::Field& f, const Poly& a, const Poly& b);
Poly poly_scale(const gf::Field& f, const Poly& a, Elem s);
// dst -= a*b
void poly_submul(const gf::Field& f, Poly& dst, const Poly& a, const Poly& b);
// a = q*b + r with deg r < deg b; b nonzero.
void poly_divmod(const gf::Field& f, const Poly& a, const Poly& b, Poly& q, Poly& r);
Poly poly_gcd(const gf::Field& f, Poly a, Poly b);  // monic
Poly poly_monic(const gf::Field& f, const Poly& a);
// D^d a(1/D); requires d >= deg a.
Poly poly_reverse(const Poly& a, int d);
std::string poly_to_string(const Poly& a);

class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(FieldPtr field, std::size_t rows, std::size_t cols);
  static PolyMatrix identity(FieldPtr field, std::size_t n);
  static PolyMatrix from_constant(const Matrix& m);
  // sum_j coeffs[j] D^j; all matrices share a shape.
  static PolyMatrix from_coefficients(const std::vector<Matrix>& coeffs);

  const FieldPtr& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Poly& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Poly& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  // Max entry degree; -1 for the zero matrix.
  int degree() const;
  int row_degree(std::size_t r) const;
  Matrix coefficient(int j) const;
  Matrix evaluate(Elem x) const;
  // Leading-row-coefficient matrix: row r holds the D^{row_degree(r)} coefficients.
  Matrix leading_row_matrix() const;

  PolyMatrix operator*(const PolyMatrix& o) const;
  PolyMatrix operator-(const PolyMatrix& o) const;
  PolyMatrix transpose() const;
  // Entrywise D^d M(1/D); d >= degree().
  PolyMatrix reversed(int d) const;
  // Row r replaced by D^{row_degree(r)} row_r(1/D).
  PolyMatrix row_reversed() const;
  PolyMatrix select_rows(const std::vector<std::size_t>& idx) const;
  PolyMatrix select_cols(const std::vector<std::size_t>& idx) const;
  PolyMatrix vstack(const PolyMatrix& below) const;
  PolyMatrix hstack(const PolyMatrix& right) const;

  bool is_zero() const;
  bool operator==(const PolyMatrix& o) const;
  bool operator!=(const PolyMatrix& o) const { return !(*this == o); }

  // "q rows cols", then "r c : c0 c1 ... c_deg" per entry in row-major order.
  std::string to_text() const;
  static PolyMatrix from_text(const std::string& text);

 private:
  FieldPtr field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Poly> data_;
};

// Total number of nonzero coefficients.
std::size_t weight(const std::vector<Poly>& v);
std::string poly_vector_to_string(const std::vector<Poly>& v);

}  // namespace aqcc::convo
