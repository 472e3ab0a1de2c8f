#pragma once

#include <random>
#include <vector>

#include "dsupp/algebra.hpp"

namespace dsupp {

// Left module given by the action of every basis element.
class Module {
 public:
  Module() = default;
  Module(AlgebraPtr A, int dim, std::vector<Matrix> act);

  const AlgebraPtr& algebra() const { return A_; }
  int dim() const { return dim_; }
  const FieldPtr& field() const { return A_->field(); }
  const Matrix& act(int k) const { return act_[k]; }
  const std::vector<Matrix>& actions() const { return act_; }
  Matrix action(const Vec& x) const;
  Vec apply(const Vec& x, const Vec& v) const;

 private:
  AlgebraPtr A_;
  int dim_ = 0;
  std::vector<Matrix> act_;
};

// Module law check: rho(1) = id and rho(g y) = rho(g) rho(y) for generators g
// and basis y (exact given spanning generators).  Returns false on failure.
bool check_module(const Module& M);

Module regular_module(const AlgebraPtr& A);
Module trivial_module(const AlgebraPtr& A);  // via the augmentation
Module free_module(const AlgebraPtr& A, int copies);
Module zero_module(const AlgebraPtr& A);

// Submodule spanned by an invariant subspace (basis taken in reduced echelon form).
struct SubmoduleResult {
  Module module;
  Matrix inclusion;  // columns: basis of the subspace in ambient coordinates
};
SubmoduleResult submodule(const Module& M, const Subspace& W);
// Quotient by an invariant subspace; basis = complement columns.
struct QuotientResult {
  Module module;
  std::vector<int> columns;
};
QuotientResult quotient_module(const Module& M, const Subspace& W);

// Smallest submodule containing the given vectors.
Subspace spin(const Module& M, const std::vector<Vec>& vs);
// rad(A) * M.
Subspace radical_submodule(const Module& M);

Module direct_sum(const Module& a, const Module& b);
Module base_change(const Module& M, const FieldPtr& K);
// Pulls back along an algebra map phi: B -> A given as a dim(A) x dim(B) matrix.
Module restrict_along(const Module& M, const AlgebraPtr& B, const Matrix& phi);

// Hom_A(M, N) as a subspace of dim(N) x dim(M) matrices (row-major vectors).
Matrix hom_space(const Module& M, const Module& N);
bool isomorphic(const Module& M, const Module& N, std::mt19937_64& rng);

// Random modules for property tests.
Module random_cyclic_quotient(const AlgebraPtr& A, int copies, int relations, std::mt19937_64& rng);
Module random_cyclic_submodule(const AlgebraPtr& A, int copies, std::mt19937_64& rng);

}  // namespace dsupp
