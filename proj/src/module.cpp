#include "dsupp/module.hpp"

#include <deque>

#include "dsupp/sparse.hpp"

namespace dsupp {

Module::Module(AlgebraPtr A, int dim, std::vector<Matrix> act) : A_(std::move(A)), dim_(dim), act_(std::move(act)) {
  require(int(act_.size()) == A_->dim(), Errc::DimensionMismatch, "module needs one matrix per basis element");
  for (const Matrix& m : act_) {
    require(m.rows() == dim_ && m.cols() == dim_, Errc::DimensionMismatch, "module action size");
    require_same_field(m.field(), A_->field());
  }
}

Matrix Module::action(const Vec& x) const {
  Matrix r = Matrix::zero(field(), dim_, dim_);
  for (int k = 0; k < A_->dim(); ++k)
    if (x[k]) r.add_scaled(act_[k], x[k]);
  return r;
}

Vec Module::apply(const Vec& x, const Vec& v) const {
  Vec out(dim_, 0);
  const Field& F = A_->F();
  for (int k = 0; k < A_->dim(); ++k) {
    if (!x[k]) continue;
    Vec w = act_[k].apply(v);
    F.axpy(out.data(), x[k], w.data(), out.size());
  }
  return out;
}

bool check_module(const Module& M) {
  const Algebra& A = *M.algebra();
  if (M.action(A.unit()) != Matrix::identity(M.field(), M.dim())) return false;
  for (const Vec& g : algebra_generators(A)) {
    Matrix rg = M.action(g);
    for (int y = 0; y < A.dim(); ++y) {
      Vec gy(A.dim(), 0);
      for (int i = 0; i < A.dim(); ++i)
        if (g[i]) A.add_basis_product(gy, i, y, g[i]);
      if (rg * M.act(y) != M.action(gy)) return false;
    }
  }
  return true;
}

Module regular_module(const AlgebraPtr& A) {
  int n = A->dim();
  require(n <= 1000, Errc::DimensionTooLarge, "regular module of a large algebra");
  std::vector<Matrix> act(n, Matrix(A->field(), n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto r = A->table().get(i, j);
      for (std::size_t t = 0; t < r.size; ++t) act[i].at(r.idx[t], j) = r.val[t];
    }
  return Module(A, n, std::move(act));
}

Module trivial_module(const AlgebraPtr& A) {
  require(A->augmentation().has_value(), Errc::InvalidArgument, "trivial module needs an augmentation");
  std::vector<Matrix> act;
  for (int k = 0; k < A->dim(); ++k) {
    Matrix m(A->field(), 1, 1);
    m.at(0, 0) = (*A->augmentation())[k];
    act.push_back(m);
  }
  return Module(A, 1, std::move(act));
}

Module free_module(const AlgebraPtr& A, int copies) {
  Module R = regular_module(A);
  Module M = zero_module(A);
  for (int i = 0; i < copies; ++i) M = direct_sum(M, R);
  return M;
}

Module zero_module(const AlgebraPtr& A) {
  return Module(A, 0, std::vector<Matrix>(A->dim(), Matrix(A->field(), 0, 0)));
}

SubmoduleResult submodule(const Module& M, const Subspace& W) {
  int d = W.dim();
  Matrix inc = Matrix::from_columns(M.field(), M.dim(), W.basis());
  const auto& piv = W.pivots();
  std::vector<Matrix> act;
  act.reserve(M.algebra()->dim());
  for (int k = 0; k < M.algebra()->dim(); ++k) {
    Matrix img = M.act(k) * inc;
    Matrix a(M.field(), d, d);
    for (int i = 0; i < d; ++i) std::copy(img.row(piv[i]), img.row(piv[i]) + d, a.row(i));
    act.push_back(std::move(a));
  }
  return {Module(M.algebra(), d, std::move(act)), inc};
}

QuotientResult quotient_module(const Module& M, const Subspace& W) {
  std::vector<int> cols = W.complement_columns();
  int d = int(cols.size());
  std::vector<Matrix> act;
  act.reserve(M.algebra()->dim());
  for (int k = 0; k < M.algebra()->dim(); ++k) {
    Matrix a(M.field(), d, d);
    for (int j = 0; j < d; ++j) {
      Vec v = M.act(k).column(cols[j]);
      W.reduce(v);
      for (int i = 0; i < d; ++i) a.at(i, j) = v[cols[i]];
    }
    act.push_back(std::move(a));
  }
  return {Module(M.algebra(), d, std::move(act)), cols};
}

Subspace spin(const Module& M, const std::vector<Vec>& vs) {
  Subspace W(M.field(), M.dim());
  std::vector<Matrix> gens;
  for (const Vec& g : algebra_generators(*M.algebra())) gens.push_back(M.action(g));
  std::deque<Vec> queue;
  for (const Vec& v : vs)
    if (W.add(v)) queue.push_back(v);
  while (!queue.empty() && W.dim() < M.dim()) {
    Vec v = std::move(queue.front());
    queue.pop_front();
    for (const Matrix& g : gens) {
      Vec w = g.apply(v);
      if (W.add(w)) queue.push_back(std::move(w));
    }
  }
  return W;
}

Module direct_sum(const Module& a, const Module& b) {
  require(a.algebra() == b.algebra() || a.algebra()->dim() == b.algebra()->dim(), Errc::DimensionMismatch,
          "direct sum over different algebras");
  std::vector<Matrix> act;
  for (int k = 0; k < a.algebra()->dim(); ++k) act.push_back(direct_sum(a.act(k), b.act(k)));
  return Module(a.algebra(), a.dim() + b.dim(), std::move(act));
}

Module base_change(const Module& M, const FieldPtr& K) {
  if (same_field(M.field(), K)) return M;
  std::vector<Matrix> act;
  for (const Matrix& m : M.actions()) act.push_back(m.over(K));
  return Module(M.algebra()->over(K), M.dim(), std::move(act));
}

Module restrict_along(const Module& M, const AlgebraPtr& B, const Matrix& phi) {
  require(phi.rows() == M.algebra()->dim() && phi.cols() == B->dim(), Errc::DimensionMismatch, "restrict_along");
  std::vector<Matrix> act;
  for (int j = 0; j < B->dim(); ++j) act.push_back(M.action(phi.column(j)));
  return Module(B, M.dim(), std::move(act));
}

Matrix hom_space(const Module& M, const Module& N) {
  const Field& F = *M.field();
  int m = M.dim(), n = N.dim();
  const auto& gens = algebra_generators(*M.algebra());
  Matrix sys(M.field(), int(gens.size()) * n * m, n * m);
  int row = 0;
  for (const Vec& g : gens) {
    Matrix Mg = M.action(g), Ng = N.action(g);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < m; ++c, ++row) {
        for (int s = 0; s < n; ++s)
          if (Ng(r, s)) sys.at(row, s * m + c) = F.add(sys(row, s * m + c), Ng(r, s));
        for (int s = 0; s < m; ++s)
          if (Mg(s, c)) sys.at(row, r * m + s) = F.sub(sys(row, r * m + s), Mg(s, c));
      }
  }
  return nullspace(sys);
}

bool isomorphic(const Module& M, const Module& N, std::mt19937_64& rng) {
  if (M.dim() != N.dim()) return false;
  if (M.dim() == 0) return true;
  Matrix H = hom_space(M, N);
  if (H.cols() == 0) return false;
  const Field& F = *M.field();
  std::uniform_int_distribution<int> d(0, F.order() - 1);
  for (int t = 0; t < 64; ++t) {
    Vec x(H.rows(), 0);
    for (int c = 0; c < H.cols(); ++c) {
      Elem a = Elem(d(rng));
      for (int r = 0; r < H.rows(); ++r)
        if (H(r, c)) x[r] = F.add(x[r], F.mul(a, H(r, c)));
    }
    Matrix X(M.field(), N.dim(), M.dim());
    for (int r = 0; r < N.dim(); ++r)
      for (int c = 0; c < M.dim(); ++c) X.at(r, c) = x[r * M.dim() + c];
    if (rank(X) == M.dim()) return true;
  }
  return false;
}

namespace {

Vec random_vec(const Field& F, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, F.order() - 1);
  Vec v(n);
  for (auto& x : v) x = Elem(d(rng));
  return v;
}

}  // namespace

Module random_cyclic_quotient(const AlgebraPtr& A, int copies, int relations, std::mt19937_64& rng) {
  Module P = free_module(A, copies);
  std::vector<Vec> rel;
  for (int i = 0; i < relations; ++i) {
    Vec v = random_vec(A->F(), P.dim(), rng);
    // sparsify to keep relations away from generic (often free) position
    std::uniform_int_distribution<int> keep(0, 3);
    for (auto& x : v)
      if (keep(rng)) x = 0;
    rel.push_back(v);
  }
  return quotient_module(P, spin(P, rel)).module;
}

Module random_cyclic_submodule(const AlgebraPtr& A, int copies, std::mt19937_64& rng) {
  Module P = free_module(A, copies);
  Vec v = random_vec(A->F(), P.dim(), rng);
  std::uniform_int_distribution<int> keep(0, 2);
  for (auto& x : v)
    if (keep(rng)) x = 0;
  return submodule(P, spin(P, {v})).module;
}

}  // namespace dsupp
