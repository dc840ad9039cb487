#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "aqcc/gf.hpp"

namespace aqcc::block {

using gf::Elem;
using gf::FieldPtr;

// Dense row-major matrix over one finite field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);
  static Matrix identity(FieldPtr field, std::size_t n);
  static Matrix from_rows(FieldPtr field, std::size_t cols, const std::vector<std::vector<Elem>>& rows);

  const FieldPtr& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::vector<Elem> row_vector(std::size_t r) const;

  Matrix transpose() const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix select_rows(std::span<const std::size_t> idx) const;
  Matrix select_cols(std::span<const std::size_t> idx) const;
  Matrix vstack(const Matrix& below) const;
  void append_row(std::span<const Elem> r);

  bool is_zero() const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  // "q rows cols" then one line per row of element indices.
  std::string to_text() const;
  static Matrix from_text(const std::string& text);

 private:
  FieldPtr field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Elem> data_;
};

struct RrefResult {
  Matrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);
// First maximal independent subset of rows, in original order. `kept`
// receives the surviving row indices.
Matrix remove_dependent_rows(const Matrix& m, std::vector<std::size_t>* kept = nullptr);
// Rows spanning {x : m x^T = 0}.
Matrix kernel(const Matrix& m);
// True when row vector v lies in the row space of m.
bool in_row_space(const Matrix& m, std::span<const Elem> v);

// dst += s * src over the field.
void axpy(const gf::Field& f, std::span<Elem> dst, std::span<const Elem> src, Elem s);
std::size_t weight(std::span<const Elem> v);

}  // namespace aqcc::block
