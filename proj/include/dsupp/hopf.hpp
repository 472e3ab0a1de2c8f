#pragma once

#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "dsupp/module.hpp"

namespace dsupp {

// Comultiplication in compressed form: Delta(b_i) = sum c * b_a (x) b_b.
class Coproduct {
 public:
  struct Term {
    std::uint16_t a, b;
    Elem c;
  };
  explicit Coproduct(int n) : off_(1, 0) { off_.reserve(std::size_t(n) + 1); }
  void push_row(const std::vector<Term>& terms);  // rows appended in basis order
  int n() const { return int(off_.size()) - 1; }
  const Term* begin(int i) const { return terms_.data() + off_[i]; }
  const Term* end(int i) const { return terms_.data() + off_[i + 1]; }
  std::size_t size(int i) const { return off_[i + 1] - off_[i]; }
  std::size_t nnz() const { return terms_.size(); }

 private:
  std::vector<std::uint64_t> off_;
  std::vector<Term> terms_;
};

class HopfAlgebra;
using HopfPtr = std::shared_ptr<const HopfAlgebra>;

class HopfAlgebra {
 public:
  HopfAlgebra(AlgebraPtr A, std::shared_ptr<const Coproduct> comult, Vec counit, Matrix antipode);

  const AlgebraPtr& algebra() const { return A_; }
  const Algebra& alg() const { return *A_; }
  int dim() const { return A_->dim(); }
  const FieldPtr& field() const { return A_->field(); }
  const Coproduct& comult() const { return *D_; }
  std::shared_ptr<const Coproduct> comult_ptr() const { return D_; }
  const Vec& counit() const { return eps_; }
  const Matrix& antipode() const { return S_; }
  Elem counit_of(const Vec& x) const;

  HopfPtr over(const FieldPtr& K) const;

 private:
  AlgebraPtr A_;
  std::shared_ptr<const Coproduct> D_;
  Vec eps_;
  Matrix S_;
};

struct AxiomResult {
  std::string name;
  bool ok = true;
  std::string witness;
};

struct HopfCheckReport {
  std::vector<AxiomResult> axioms;
  bool ok() const;
  std::string summary() const;
};

struct HopfCheckOptions {
  // Verify every axiom on all basis elements instead of reducing to generators.
  bool exhaustive = false;
  std::uint64_t seed = 1;
};

HopfCheckReport check_hopf(const HopfAlgebra& H, const HopfCheckOptions& opt = {});

// Linear dual with transposed structure maps.
HopfPtr dual_hopf(const HopfAlgebra& H);

// H acting on an algebra A: act[h] is the matrix of b_h on A.
struct ModuleAlgebraAction {
  HopfPtr H;
  AlgebraPtr A;
  std::vector<Matrix> act;
};
// Module law, unit law and h.(ab) = sum (h1.a)(h2.b), exhaustively.
// Errors: ActionNotModuleAlgebra.
void check_module_algebra(const ModuleAlgebraAction& act);

// A # H with basis index i * dim(H) + j.
AlgebraPtr smash_product(const ModuleAlgebraAction& act);
// A # H with the tensor-product coalgebra and antipode (1#S(h))(S(a)#1).
HopfPtr smash_hopf(const ModuleAlgebraAction& act, const HopfAlgebra& Ahopf);

constexpr int kMaxDoubleDim = 5000;
// O(G) #_ad kG.  Errors: ActionNotModuleAlgebra, HopfAxiomFailure, DimensionTooLarge.
HopfPtr drinfeld_double(const ModuleAlgebraAction& adjoint, const HopfAlgebra& OG);
// S # kG for a Hopf algebra S generated by primitives.  Errors: NotGeneratedByPrimitives, HopfAxiomFailure.
HopfPtr bosonize(const ModuleAlgebraAction& action, const HopfAlgebra& S);

struct TruncatedSymmetric {
  HopfPtr S;
  ModuleAlgebraAction action;
  int r = 1;
  std::vector<std::vector<int>> exponents;  // exponent vector of each monomial
  int index(const std::vector<int>& exps) const;
};
// S(V) / (v^{p^r}) with primitive generators and the induced H-action.
TruncatedSymmetric truncated_symmetric(const Module& V, const HopfPtr& H, int r,
                                       const std::vector<std::string>& names);

// Columns: basis of the space of primitive elements.
Matrix primitive_space(const HopfAlgebra& H);

// Tensor and dual modules through the Hopf structure.
Module tensor(const Module& M, const Module& N, const HopfAlgebra& H);
Module dual(const Module& M, const HopfAlgebra& H);

// phi: dim(B) x dim(A) matrix of a linear map A -> B.
// Checks phi(1) = 1 and phi(g y) = phi(g) phi(y) on generators of A.
bool is_algebra_map(const Matrix& phi, const Algebra& A, const Algebra& B, std::string* witness = nullptr);
// Algebra map plus Delta and counit compatibility on generators.
bool is_hopf_map(const Matrix& phi, const HopfAlgebra& A, const HopfAlgebra& B, std::string* witness = nullptr);
// (phi (x) phi) Delta_A = Delta_B phi and eps_B phi = eps_A on all basis elements.
bool is_coalgebra_map(const Matrix& phi, const HopfAlgebra& A, const HopfAlgebra& B, std::string* witness = nullptr);

}  // namespace dsupp
