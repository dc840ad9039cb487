#include "aqcc/polymatrix.hpp"

#include <sstream>

#include "aqcc/error.hpp"

namespace aqcc::convo {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_add(const gf::Field& f, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = f.add(r[i], b[i]);
  trim(r);
  return r;
}

Poly poly_sub(const gf::Field& f, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = f.sub(r[i], b[i]);
  trim(r);
  return r;
}

Poly poly_mul(const gf::Field& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

Poly poly_scale(const gf::Field& f, const Poly& a, Elem s) {
  if (s == 0) return {};
  Poly r(a);
  for (auto& x : r) x = f.mul(x, s);
  return r;
}

void poly_submul(const gf::Field& f, Poly& dst, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return;
  const std::size_t need = a.size() + b.size() - 1;
  if (dst.size() < need) dst.resize(need, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    const Elem na = f.neg(a[i]);
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j]) dst[i + j] = f.add(dst[i + j], f.mul(na, b[j]));
  }
  trim(dst);
}

void poly_divmod(const gf::Field& f, const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.empty()) throw Error(Errc::InvalidArgument, "polynomial division by zero");
  r = a;
  q.clear();
  const int db = deg(b);
  if (deg(r) < db) return;
  q.assign(r.size() - b.size() + 1, 0);
  const Elem inv = f.inv(b.back());
  while (!r.empty() && deg(r) >= db) {
    const int shift = deg(r) - db;
    const Elem c = f.mul(r.back(), inv);
    q[shift] = c;
    for (int j = 0; j <= db; ++j) r[shift + j] = f.sub(r[shift + j], f.mul(c, b[j]));
    trim(r);
  }
  trim(q);
}

Poly poly_monic(const gf::Field& f, const Poly& a) {
  if (a.empty()) return a;
  return poly_scale(f, a, f.inv(a.back()));
}

Poly poly_gcd(const gf::Field& f, Poly a, Poly b) {
  while (!b.empty()) {
    Poly q, r;
    poly_divmod(f, a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(f, a);
}

Poly poly_reverse(const Poly& a, int d) {
  if (a.empty()) return a;
  if (d < deg(a)) throw Error(Errc::InvalidArgument, "reversal degree below polynomial degree");
  Poly r(d + 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[d - i] = a[i];
  trim(r);
  return r;
}

std::string poly_to_string(const Poly& a) {
  if (a.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0) {
      os << a[i];
    } else {
      if (a[i] != 1) os << a[i];
      os << 'D';
      if (i > 1) os << '^' << i;
    }
  }
  return os.str();
}

PolyMatrix::PolyMatrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols) {}

PolyMatrix PolyMatrix::identity(FieldPtr field, std::size_t n) {
  PolyMatrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Poly{1};
  return m;
}

PolyMatrix PolyMatrix::from_constant(const Matrix& m) {
  PolyMatrix out(m.field(), m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c)) out.at(r, c) = Poly{m(r, c)};
  return out;
}

PolyMatrix PolyMatrix::from_coefficients(const std::vector<Matrix>& coeffs) {
  if (coeffs.empty()) throw Error(Errc::InvalidArgument, "no coefficient matrices");
  const std::size_t rows = coeffs[0].rows(), cols = coeffs[0].cols();
  PolyMatrix out(coeffs[0].field(), rows, cols);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j].rows() != rows || coeffs[j].cols() != cols)
      throw Error(Errc::InvalidArgument, "coefficient matrices differ in shape");
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        Elem x = coeffs[j](r, c);
        if (!x) continue;
        Poly& p = out.at(r, c);
        if (p.size() <= j) p.resize(j + 1, 0);
        p[j] = x;
      }
  }
  return out;
}

int PolyMatrix::degree() const {
  int d = -1;
  for (const auto& p : data_) d = std::max(d, convo::deg(p));
  return d;
}

int PolyMatrix::row_degree(std::size_t r) const {
  int d = -1;
  for (std::size_t c = 0; c < cols_; ++c) d = std::max(d, convo::deg(at(r, c)));
  return d;
}

Matrix PolyMatrix::coefficient(int j) const {
  Matrix m(field_, rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) {
      const Poly& p = at(r, c);
      if (j >= 0 && std::size_t(j) < p.size()) m(r, c) = p[j];
    }
  return m;
}

Matrix PolyMatrix::evaluate(Elem x) const {
  const auto& f = *field_;
  Matrix m(field_, rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) {
      const Poly& p = at(r, c);
      Elem acc = 0;
      for (std::size_t i = p.size(); i-- > 0;) acc = f.add(f.mul(acc, x), p[i]);
      m(r, c) = acc;
    }
  return m;
}

Matrix PolyMatrix::leading_row_matrix() const {
  Matrix m(field_, rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    const int d = row_degree(r);
    if (d < 0) continue;
    for (std::size_t c = 0; c < cols_; ++c)
      if (convo::deg(at(r, c)) == d) m(r, c) = at(r, c).back();
  }
  return m;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
  if (cols_ != o.rows_) throw Error(Errc::InvalidArgument, "dimension mismatch in polynomial product");
  const auto& f = *field_;
  PolyMatrix out(field_, rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t i = 0; i < cols_; ++i) {
      const Poly& a = at(r, i);
      if (a.empty()) continue;
      Poly na = poly_scale(f, a, f.neg(1));
      for (std::size_t c = 0; c < o.cols_; ++c) {
        const Poly& b = o.at(i, c);
        if (!b.empty()) poly_submul(f, out.at(r, c), na, b);
      }
    }
  return out;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(Errc::InvalidArgument, "dimension mismatch in difference");
  PolyMatrix out(field_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = poly_sub(*field_, data_[i], o.data_[i]);
  return out;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

PolyMatrix PolyMatrix::reversed(int d) const {
  PolyMatrix out(field_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = poly_reverse(data_[i], d);
  return out;
}

PolyMatrix PolyMatrix::row_reversed() const {
  PolyMatrix out(field_, rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    const int d = row_degree(r);
    for (std::size_t c = 0; c < cols_; ++c) out.at(r, c) = poly_reverse(at(r, c), std::max(d, 0));
  }
  return out;
}

PolyMatrix PolyMatrix::select_rows(const std::vector<std::size_t>& idx) const {
  PolyMatrix out(field_, idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t c = 0; c < cols_; ++c) out.at(i, c) = at(idx[i], c);
  return out;
}

PolyMatrix PolyMatrix::select_cols(const std::vector<std::size_t>& idx) const {
  PolyMatrix out(field_, rows_, idx.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t i = 0; i < idx.size(); ++i) out.at(r, i) = at(r, idx[i]);
  return out;
}

PolyMatrix PolyMatrix::vstack(const PolyMatrix& below) const {
  if (below.cols_ != cols_) throw Error(Errc::InvalidArgument, "column mismatch in vstack");
  PolyMatrix out = *this;
  out.data_.insert(out.data_.end(), below.data_.begin(), below.data_.end());
  out.rows_ += below.rows_;
  return out;
}

PolyMatrix PolyMatrix::hstack(const PolyMatrix& right) const {
  if (right.rows_ != rows_) throw Error(Errc::InvalidArgument, "row mismatch in hstack");
  PolyMatrix out(field_, rows_, cols_ + right.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out.at(r, c) = at(r, c);
    for (std::size_t c = 0; c < right.cols_; ++c) out.at(r, cols_ + c) = right.at(r, c);
  }
  return out;
}

bool PolyMatrix::is_zero() const {
  for (const auto& p : data_)
    if (!p.empty()) return false;
  return true;
}

bool PolyMatrix::operator==(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  if (field_ && o.field_ && !field_->same_as(*o.field_)) return false;
  return data_ == o.data_;
}

std::string PolyMatrix::to_text() const {
  std::ostringstream os;
  os << field_->q() << ' ' << rows_ << ' ' << cols_ << '\n';
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) {
      os << r << ' ' << c << " :";
      for (auto x : at(r, c)) os << ' ' << x;
      os << '\n';
    }
  return os.str();
}

PolyMatrix PolyMatrix::from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  long long q, rows, cols;
  if (!std::getline(is, line)) throw Error(Errc::ParseError, "empty polynomial matrix text");
  {
    std::istringstream hs(line);
    if (!(hs >> q >> rows >> cols) || q < 2 || rows < 0 || cols < 0)
      throw Error(Errc::ParseError, "bad polynomial matrix header");
  }
  PolyMatrix m(gf::Field::of_order(std::uint32_t(q)), std::size_t(rows), std::size_t(cols));
  std::vector<bool> seen(m.data_.size(), false);
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    long long r, c;
    std::string colon;
    if (!(ls >> r >> c >> colon) || colon != ":" || r < 0 || c < 0 || r >= rows || c >= cols)
      throw Error(Errc::ParseError, "bad entry line: " + line);
    Poly p;
    long long v;
    while (ls >> v) {
      if (v < 0 || v >= q) throw Error(Errc::ParseError, "coefficient outside field: " + line);
      p.push_back(Elem(v));
    }
    if (!ls.eof()) throw Error(Errc::ParseError, "bad coefficient list: " + line);
    trim(p);
    const std::size_t idx = std::size_t(r) * m.cols_ + std::size_t(c);
    if (seen[idx]) throw Error(Errc::ParseError, "duplicate entry line: " + line);
    seen[idx] = true;
    m.data_[idx] = std::move(p);
  }
  return m;
}

std::size_t weight(const std::vector<Poly>& v) {
  std::size_t w = 0;
  for (const auto& p : v)
    for (auto x : p) w += x != 0;
  return w;
}

std::string poly_vector_to_string(const std::vector<Poly>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + poly_to_string(v[i]);
  return s + ")";
}

}  // namespace aqcc::convo
