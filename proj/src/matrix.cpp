#include "dsupp/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace dsupp {

Matrix::Matrix(FieldPtr f, int rows, int cols)
    : f_(std::move(f)), rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, 0) {}

Matrix Matrix::identity(FieldPtr f, int n) {
  Matrix m(std::move(f), n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::from_columns(FieldPtr f, int rows, const std::vector<Vec>& cols) {
  Matrix m(std::move(f), rows, int(cols.size()));
  for (int c = 0; c < int(cols.size()); ++c) m.set_column(c, cols[c]);
  return m;
}

Matrix Matrix::from_rows(FieldPtr f, int cols, const std::vector<Vec>& rows) {
  Matrix m(std::move(f), int(rows.size()), cols);
  for (int r = 0; r < int(rows.size()); ++r) std::copy(rows[r].begin(), rows[r].end(), m.row(r));
  return m;
}

Vec Matrix::column(int c) const {
  Vec v(rows_);
  for (int r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Vec Matrix::row_vec(int r) const { return Vec(row(r), row(r) + cols_); }

void Matrix::set_column(int c, const Vec& v) {
  require(int(v.size()) == rows_, Errc::DimensionMismatch, "set_column");
  for (int r = 0; r < rows_; ++r) at(r, c) = v[r];
}

Matrix Matrix::operator*(const Matrix& o) const {
  require(cols_ == o.rows_, Errc::DimensionMismatch, "matrix product");
  require_same_field(f_, o.f_);
  Matrix c(f_, rows_, o.cols_);
  const Field& F = *f_;
  for (int i = 0; i < rows_; ++i) {
    const Elem* ai = row(i);
    Elem* ci = c.row(i);
    for (int k = 0; k < cols_; ++k)
      if (ai[k]) F.axpy(ci, ai[k], o.row(k), std::size_t(o.cols_));
  }
  return c;
}

Matrix Matrix::operator+(const Matrix& o) const {
  Matrix c = *this;
  c.add_scaled(o, 1);
  return c;
}

Matrix Matrix::operator-(const Matrix& o) const {
  Matrix c = *this;
  c.add_scaled(o, f_->neg(1));
  return c;
}

Vec Matrix::apply(const Vec& v) const {
  require(int(v.size()) == cols_, Errc::DimensionMismatch, "apply");
  Vec out(rows_, 0);
  const Field& F = *f_;
  for (int i = 0; i < rows_; ++i) {
    const Elem* ai = row(i);
    Elem acc = 0;
    for (int k = 0; k < cols_; ++k)
      if (ai[k] && v[k]) acc = F.add(acc, F.mul(ai[k], v[k]));
    out[i] = acc;
  }
  return out;
}

Matrix Matrix::scaled(Elem c) const {
  Matrix m = *this;
  f_->scale(m.a_.data(), c, m.a_.size());
  return m;
}

void Matrix::add_scaled(const Matrix& o, Elem c) {
  require(rows_ == o.rows_ && cols_ == o.cols_, Errc::DimensionMismatch, "matrix sum");
  require_same_field(f_, o.f_);
  f_->axpy(a_.data(), c, o.a_.data(), a_.size());
}

Matrix Matrix::transpose() const {
  Matrix t(f_, cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.at(c, r) = (*this)(r, c);
  return t;
}

bool Matrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](Elem x) { return x == 0; });
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && same_field(f_, o.f_) && a_ == o.a_;
}

Matrix Matrix::block(int r0, int c0, int nr, int nc) const {
  Matrix b(f_, nr, nc);
  for (int r = 0; r < nr; ++r)
    for (int c = 0; c < nc; ++c) b.at(r, c) = (*this)(r0 + r, c0 + c);
  return b;
}

void Matrix::set_block(int r0, int c0, const Matrix& b) {
  for (int r = 0; r < b.rows(); ++r)
    for (int c = 0; c < b.cols(); ++c) at(r0 + r, c0 + c) = b(r, c);
}

Matrix Matrix::over(const FieldPtr& K) const {
  if (same_field(f_, K)) return *this;
  Matrix m(K, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = embed(*f_, *K, a_[i]);
  return m;
}

RowEchelon rref(const Matrix& m) {
  RowEchelon out{m, {}};
  Matrix& R = out.R;
  const Field& F = R.F();
  int rows = R.rows(), cols = R.cols();
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (R(i, c)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) std::swap_ranges(R.row(piv), R.row(piv) + cols, R.row(r));
    F.scale(R.row(r), F.inv(R(r, c)), std::size_t(cols));
    for (int i = 0; i < rows; ++i)
      if (i != r && R(i, c)) F.axpy(R.row(i) + c, F.neg(R(i, c)), R.row(r) + c, std::size_t(cols - c));
    out.pivots.push_back(c);
    ++r;
  }
  return out;
}

int rank(const Matrix& m) {
  Matrix R = m;
  const Field& F = R.F();
  int rows = R.rows(), cols = R.cols();
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (R(i, c)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) std::swap_ranges(R.row(piv), R.row(piv) + cols, R.row(r));
    Elem inv = F.inv(R(r, c));
    for (int i = r + 1; i < rows; ++i)
      if (R(i, c)) F.axpy(R.row(i) + c, F.neg(F.mul(R(i, c), inv)), R.row(r) + c, std::size_t(cols - c));
    ++r;
  }
  return r;
}

Matrix nullspace(const Matrix& m) {
  RowEchelon e = rref(m);
  const Field& F = m.F();
  int n = m.cols();
  std::vector<char> is_piv(n, 0);
  for (int c : e.pivots) is_piv[c] = 1;
  std::vector<Vec> basis;
  for (int f = 0; f < n; ++f) {
    if (is_piv[f]) continue;
    Vec v(n, 0);
    v[f] = 1;
    for (int i = 0; i < int(e.pivots.size()); ++i) v[e.pivots[i]] = F.neg(e.R(i, f));
    basis.push_back(std::move(v));
  }
  return Matrix::from_columns(m.field(), n, basis);
}

LinearSolution solve_linear(const Matrix& A, const Matrix& B) {
  require(A.rows() == B.rows(), Errc::DimensionMismatch, "solve_linear");
  require_same_field(A.field(), B.field());
  int n = A.cols(), k = B.cols();
  Matrix aug(A.field(), A.rows(), n + k);
  aug.set_block(0, 0, A);
  aug.set_block(0, n, B);
  RowEchelon e = rref(aug);
  Matrix X(A.field(), n, k);
  for (int i = 0; i < int(e.pivots.size()); ++i) {
    int c = e.pivots[i];
    if (c >= n) fail(Errc::NoSolution, "inconsistent system");
    for (int j = 0; j < k; ++j) X.at(c, j) = e.R(i, n + j);
  }
  return {X, nullspace(A)};
}

std::optional<Vec> solve_vector(const Matrix& A, const Vec& b) {
  Matrix B = Matrix::from_columns(A.field(), A.rows(), {b});
  try {
    return solve_linear(A, B).particular.column(0);
  } catch (const Error& err) {
    if (err.code() == Errc::NoSolution) return std::nullopt;
    throw;
  }
}

Matrix inverse(const Matrix& m) {
  require(m.rows() == m.cols(), Errc::DimensionMismatch, "inverse of non-square matrix");
  LinearSolution s = solve_linear(m, Matrix::identity(m.field(), m.rows()));
  require(s.kernel.cols() == 0, Errc::NoSolution, "singular matrix");
  return s.particular;
}

Matrix power(const Matrix& m, int k) {
  Matrix r = Matrix::identity(m.field(), m.rows());
  for (int i = 0; i < k; ++i) r = r * m;
  return r;
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field());
  const Field& F = a.F();
  Matrix k(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      Elem x = a(i, j);
      if (!x) continue;
      for (int r = 0; r < b.rows(); ++r)
        for (int c = 0; c < b.cols(); ++c) k.at(i * b.rows() + r, j * b.cols() + c) = F.mul(x, b(r, c));
    }
  return k;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix m(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

void Subspace::reduce(Vec& v) const {
  const Field& F = *f_;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Elem c = v[piv_[i]];
    if (c) F.axpy(v.data(), F.neg(c), rows_[i].data(), std::size_t(n_));
  }
}

bool Subspace::contains(const Vec& v) const {
  Vec w = v;
  reduce(w);
  return dsupp::is_zero(w);
}

bool Subspace::add(const Vec& v) {
  require(int(v.size()) == n_, Errc::DimensionMismatch, "Subspace::add");
  Vec w = v;
  reduce(w);
  int p = -1;
  for (int i = 0; i < n_; ++i)
    if (w[i]) {
      p = i;
      break;
    }
  if (p < 0) return false;
  const Field& F = *f_;
  F.scale(w.data(), F.inv(w[p]), std::size_t(n_));
  for (auto& r : rows_)
    if (r[p]) F.axpy(r.data(), F.neg(r[p]), w.data(), std::size_t(n_));
  auto pos = std::lower_bound(piv_.begin(), piv_.end(), p) - piv_.begin();
  piv_.insert(piv_.begin() + pos, p);
  rows_.insert(rows_.begin() + pos, std::move(w));
  return true;
}

Vec Subspace::coordinates(const Vec& v) const {
  Vec c(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) c[i] = v[piv_[i]];
  return c;
}

std::vector<int> Subspace::complement_columns() const {
  std::vector<int> out;
  std::size_t j = 0;
  for (int c = 0; c < n_; ++c) {
    if (j < piv_.size() && piv_[j] == c) {
      ++j;
      continue;
    }
    out.push_back(c);
  }
  return out;
}

bool JordanType::all_blocks_equal(int p) const {
  for (int b : partition)
    if (b != p) return false;
  return true;
}

std::string JordanType::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < partition.size(); ++i) os << (i ? "," : "") << partition[i];
  os << "]";
  return os.str();
}

JordanType jordan_type(const Matrix& n) {
  require(n.rows() == n.cols(), Errc::DimensionMismatch, "jordan_type");
  int d = n.rows();
  std::vector<int> ranks{d};
  Matrix pw = n;
  while (true) {
    int r = rank(pw);
    ranks.push_back(r);
    if (r == 0) break;
    if (int(ranks.size()) > d + 1 || r == ranks[ranks.size() - 2]) fail(Errc::NotNilpotent, "matrix is not nilpotent");
    pw = pw * n;
  }
  // number of blocks of size >= k is ranks[k-1] - ranks[k]
  JordanType jt;
  jt.ambient_dim = d;
  int kmax = int(ranks.size()) - 1;
  for (int k = kmax; k >= 1; --k) {
    int ge_k = ranks[k - 1] - ranks[k];
    int ge_k1 = k + 1 <= kmax ? ranks[k] - ranks[k + 1] : 0;
    for (int i = 0; i < ge_k - ge_k1; ++i) jt.partition.push_back(k);
  }
  return jt;
}

bool acts_freely(const Matrix& n, int p) {
  int d = n.rows();
  if (d % p) return false;
  Matrix pw = power(n, p - 1);
  if (!(pw * n).is_zero()) fail(Errc::NotNilpotent, "operator is not p-nilpotent");
  return rank(pw) == d / p;
}

}  // namespace dsupp
