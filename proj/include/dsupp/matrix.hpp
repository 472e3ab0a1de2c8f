#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dsupp/gf.hpp"

namespace dsupp {

class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr f, int rows, int cols);

  static Matrix identity(FieldPtr f, int n);
  static Matrix zero(FieldPtr f, int rows, int cols) { return Matrix(std::move(f), rows, cols); }
  // Columns of the result are the given vectors.
  static Matrix from_columns(FieldPtr f, int rows, const std::vector<Vec>& cols);
  static Matrix from_rows(FieldPtr f, int cols, const std::vector<Vec>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const FieldPtr& field() const { return f_; }
  const Field& F() const { return *f_; }

  Elem operator()(int r, int c) const { return a_[std::size_t(r) * cols_ + c]; }
  Elem& at(int r, int c) { return a_[std::size_t(r) * cols_ + c]; }
  Elem* row(int r) { return a_.data() + std::size_t(r) * cols_; }
  const Elem* row(int r) const { return a_.data() + std::size_t(r) * cols_; }
  const std::vector<Elem>& data() const { return a_; }

  Vec column(int c) const;
  Vec row_vec(int r) const;
  void set_column(int c, const Vec& v);

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Vec apply(const Vec& v) const;  // this * v
  Matrix scaled(Elem c) const;
  void add_scaled(const Matrix& o, Elem c);  // this += c*o
  Matrix transpose() const;
  bool is_zero() const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix block(int r0, int c0, int nr, int nc) const;
  void set_block(int r0, int c0, const Matrix& b);

  // Reinterprets entries over an extension field.  Entries must be prime-field
  // codes unless the fields coincide; otherwise they are embedded.
  Matrix over(const FieldPtr& K) const;

 private:
  FieldPtr f_;
  int rows_ = 0, cols_ = 0;
  std::vector<Elem> a_;
};

struct RowEchelon {
  Matrix R;                 // reduced row echelon form (pivots normalized to 1)
  std::vector<int> pivots;  // pivot column of each nonzero row
};

RowEchelon rref(const Matrix& m);
int rank(const Matrix& m);
// Columns form the standard RREF basis of ker(m).
Matrix nullspace(const Matrix& m);

struct LinearSolution {
  Matrix particular;  // A * particular = B
  Matrix kernel;      // columns span ker(A)
};
// Errors: NoSolution, DimensionMismatch.
LinearSolution solve_linear(const Matrix& A, const Matrix& B);
std::optional<Vec> solve_vector(const Matrix& A, const Vec& b);
Matrix inverse(const Matrix& m);
Matrix power(const Matrix& m, int k);
Matrix kronecker(const Matrix& a, const Matrix& b);
Matrix direct_sum(const Matrix& a, const Matrix& b);

// Incrementally maintained subspace of F^n in reduced echelon form.
class Subspace {
 public:
  Subspace() = default;
  Subspace(FieldPtr f, int n) : f_(std::move(f)), n_(n) {}
  int ambient() const { return n_; }
  int dim() const { return int(rows_.size()); }
  // Reduces v modulo the subspace in place.
  void reduce(Vec& v) const;
  bool contains(const Vec& v) const;
  // Returns true if v was independent and has been added.
  bool add(const Vec& v);
  const std::vector<Vec>& basis() const { return rows_; }
  const std::vector<int>& pivots() const { return piv_; }
  // Coordinates of v in terms of basis() (v must lie in the subspace).
  Vec coordinates(const Vec& v) const;
  // Sorted list of non-pivot columns: a complement of the subspace.
  std::vector<int> complement_columns() const;

 private:
  FieldPtr f_;
  int n_ = 0;
  std::vector<Vec> rows_;  // kept fully reduced against each other
  std::vector<int> piv_;
};

struct JordanType {
  std::vector<int> partition;  // non-increasing block sizes
  int ambient_dim = 0;
  bool all_blocks_equal(int p) const;
  std::string str() const;
  bool operator==(const JordanType& o) const { return partition == o.partition; }
};

// Errors: NotNilpotent.
JordanType jordan_type(const Matrix& n);
// True when N^p = 0 and N acts freely as K[t]/t^p (rank N^{p-1} = dim/p).
bool acts_freely(const Matrix& n, int p);

}  // namespace dsupp
