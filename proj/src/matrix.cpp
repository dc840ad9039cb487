#include "aqcc/matrix.hpp"

#include <sstream>

#include "aqcc/error.hpp"

namespace aqcc::block {

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix Matrix::identity(FieldPtr field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(FieldPtr field, std::size_t cols, const std::vector<std::vector<Elem>>& rows) {
  Matrix m(std::move(field), rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(Errc::InvalidArgument, "ragged row list");
    for (std::size_t c = 0; c < cols; ++c) {
      if (rows[r][c] >= m.field_->q()) throw Error(Errc::InvalidArgument, "entry outside field");
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

std::vector<Elem> Matrix::row_vector(std::size_t r) const {
  auto s = row(r);
  return {s.begin(), s.end()};
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw Error(Errc::InvalidArgument, "dimension mismatch in product");
  Matrix out(field_, rows_, o.cols_);
  const auto& f = *field_;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t i = 0; i < cols_; ++i) {
      Elem a = (*this)(r, i);
      if (a) axpy(f, out.row(r), o.row(i), a);
    }
  return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(Errc::InvalidArgument, "dimension mismatch in sum");
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_->add(data_[i], o.data_[i]);
  return out;
}

Matrix Matrix::select_rows(std::span<const std::size_t> idx) const {
  Matrix out(field_, idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    auto src = row(idx[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

Matrix Matrix::select_cols(std::span<const std::size_t> idx) const {
  Matrix out(field_, rows_, idx.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t i = 0; i < idx.size(); ++i) out(r, i) = (*this)(r, idx[i]);
  return out;
}

Matrix Matrix::vstack(const Matrix& below) const {
  if (rows_ == 0 && !field_) return below;
  if (below.cols_ != cols_) throw Error(Errc::InvalidArgument, "column mismatch in vstack");
  Matrix out = *this;
  out.data_.insert(out.data_.end(), below.data_.begin(), below.data_.end());
  out.rows_ += below.rows_;
  return out;
}

void Matrix::append_row(std::span<const Elem> r) {
  if (r.size() != cols_) throw Error(Errc::InvalidArgument, "row length mismatch");
  data_.insert(data_.end(), r.begin(), r.end());
  ++rows_;
}

bool Matrix::is_zero() const {
  for (auto x : data_)
    if (x) return false;
  return true;
}

bool Matrix::operator==(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  if ((field_ == nullptr) != (o.field_ == nullptr)) return false;
  if (field_ && !field_->same_as(*o.field_)) return false;
  return data_ == o.data_;
}

std::string Matrix::to_text() const {
  std::ostringstream os;
  os << field_->q() << ' ' << rows_ << ' ' << cols_ << '\n';
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << (*this)(r, c);
    os << '\n';
  }
  return os.str();
}

Matrix Matrix::from_text(const std::string& text) {
  std::istringstream is(text);
  long long q, rows, cols;
  if (!(is >> q >> rows >> cols) || q < 2 || rows < 0 || cols < 0)
    throw Error(Errc::ParseError, "bad matrix header");
  Matrix m(gf::Field::of_order(std::uint32_t(q)), std::size_t(rows), std::size_t(cols));
  for (std::size_t i = 0; i < m.data_.size(); ++i) {
    long long v;
    if (!(is >> v) || v < 0 || v >= q) throw Error(Errc::ParseError, "bad matrix entry");
    m.data_[i] = Elem(v);
  }
  std::string extra;
  if (is >> extra) throw Error(Errc::ParseError, "trailing data after matrix");
  return m;
}

void axpy(const gf::Field& f, std::span<Elem> dst, std::span<const Elem> src, Elem s) {
  if (s == 0) return;
  const std::size_t n = dst.size();
  if (f.p() == 2 && s == 1) {
    for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
    return;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (src[i]) dst[i] = f.add(dst[i], f.mul(s, src[i]));
}

std::size_t weight(std::span<const Elem> v) {
  std::size_t w = 0;
  for (auto x : v) w += x != 0;
  return w;
}

RrefResult rref(const Matrix& m) {
  RrefResult res{m, 0, {}};
  Matrix& a = res.reduced;
  if (!m.field()) return res;
  const auto& f = *m.field();
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = r;
    while (piv < a.rows() && a(piv, c) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(r, j));
    Elem inv = f.inv(a(r, c));
    if (inv != 1)
      for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) = f.mul(a(r, j), inv);
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (i != r && a(i, c)) axpy(f, a.row(i), a.row(r), f.neg(a(i, c)));
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  return res;
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

Matrix remove_dependent_rows(const Matrix& m, std::vector<std::size_t>* kept) {
  // Incremental echelon basis; a row survives when it is not in the span of
  // the rows already kept.
  const auto& f = *m.field();
  std::vector<std::vector<Elem>> basis;
  std::vector<std::size_t> pivot_col;
  std::vector<std::size_t> keep;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<Elem> v = m.row_vector(r);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      Elem x = v[pivot_col[b]];
      if (x) axpy(f, v, basis[b], f.neg(x));
    }
    std::size_t c = 0;
    while (c < v.size() && v[c] == 0) ++c;
    if (c == v.size()) continue;
    Elem inv = f.inv(v[c]);
    for (auto& x : v) x = f.mul(x, inv);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      Elem x = basis[b][c];
      if (x) axpy(f, basis[b], v, f.neg(x));
    }
    basis.push_back(std::move(v));
    pivot_col.push_back(c);
    keep.push_back(r);
  }
  if (kept) *kept = keep;
  return m.select_rows(keep);
}

Matrix kernel(const Matrix& m) {
  const auto& f = *m.field();
  auto rr = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : rr.pivots) is_pivot[c] = true;
  Matrix out(m.field(), m.cols() - rr.rank, m.cols());
  std::size_t k = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    out(k, free) = 1;
    for (std::size_t i = 0; i < rr.rank; ++i) out(k, rr.pivots[i]) = f.neg(rr.reduced(i, free));
    ++k;
  }
  return out;
}

bool in_row_space(const Matrix& m, std::span<const Elem> v) {
  Matrix ext = m;
  ext.append_row(v);
  return rank(ext) == rank(m);
}

}  // namespace aqcc::block
