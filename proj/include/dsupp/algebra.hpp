#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "dsupp/matrix.hpp"

namespace dsupp {

// Structure constants in compressed-row form over ordered basis pairs (i, j).
class MultTable {
 public:
  struct Row {
    const std::uint16_t* idx;
    const Elem* val;
    std::size_t size;
  };
  int n() const { return n_; }
  Row get(int i, int j) const {
    std::size_t p = std::size_t(i) * std::size_t(n_) + std::size_t(j);
    std::size_t a = off_[p], b = off_[p + 1];
    return {idx_.data() + a, val_.data() + a, b - a};
  }
  std::size_t nnz() const { return idx_.size(); }

 private:
  friend class MultTableBuilder;
  int n_ = 0;
  std::vector<std::uint64_t> off_;
  std::vector<std::uint16_t> idx_;
  std::vector<Elem> val_;
};

// Pairs must be supplied in increasing order of i*n + j; missing pairs are zero.
class MultTableBuilder {
 public:
  explicit MultTableBuilder(int n);
  void set(int i, int j, const Vec& dense);
  void set_sparse(int i, int j, const std::vector<std::pair<int, Elem>>& terms);
  std::shared_ptr<const MultTable> finish();

 private:
  void advance_to(std::size_t pair);
  std::shared_ptr<MultTable> t_;
  std::size_t next_ = 0;
};

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

struct RadicalData;
struct PimData;

// Records that an algebra is a smash product left # right with basis index
// i * dim(right) + j; used for structural shortcuts.
struct SmashInfo {
  AlgebraPtr left, right;
};

class Algebra : public std::enable_shared_from_this<Algebra> {
 public:
  Algebra(FieldPtr F, std::vector<std::string> labels, std::shared_ptr<const MultTable> mult, Vec unit,
          std::optional<Vec> augmentation);

  int dim() const { return n_; }
  const FieldPtr& field() const { return F_; }
  const Field& F() const { return *F_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const MultTable& table() const { return *mult_; }
  std::shared_ptr<const MultTable> table_ptr() const { return mult_; }
  const Vec& unit() const { return unit_; }
  const std::optional<Vec>& augmentation() const { return aug_; }
  Elem augment(const Vec& x) const;

  // out += c * b_i * b_j
  void add_basis_product(Vec& out, int i, int j, Elem c) const;
  Vec mul(const Vec& x, const Vec& y) const;
  Vec pow(const Vec& x, int k) const;
  Matrix left_mult(const Vec& x) const;   // y -> x*y
  Matrix right_mult(const Vec& x) const;  // y -> y*x
  Vec basis(int i) const { return unit_vector(n_, i); }

  // Algebra generators: right-normed words in them span the algebra.
  const std::vector<Vec>& generators() const { return gens_; }
  void set_generators(std::vector<Vec> g) const { gens_ = std::move(g); }
  const std::optional<SmashInfo>& smash() const { return smash_; }
  void set_smash(SmashInfo s) { smash_ = std::move(s); }

  // Base change to an extension field (structure constants are prime-field).
  AlgebraPtr over(const FieldPtr& K) const;

  // Lazily computed structure caches.
  std::shared_ptr<const RadicalData> cached_radical() const;
  void store_radical(std::shared_ptr<const RadicalData> r) const;
  std::shared_ptr<const PimData> cached_pims() const;
  void store_pims(std::shared_ptr<const PimData> p) const;

 private:
  FieldPtr F_;
  int n_;
  std::vector<std::string> labels_;
  std::shared_ptr<const MultTable> mult_;
  Vec unit_;
  std::optional<Vec> aug_;
  mutable std::vector<Vec> gens_;
  std::optional<SmashInfo> smash_;
  mutable std::mutex cache_mu_;
  mutable std::shared_ptr<const RadicalData> radical_;
  mutable std::shared_ptr<const PimData> pims_;
};

struct StructureTriple {
  int i, j, k;
  Elem c;  // b_i * b_j contains c * b_k
};

struct ValidationOptions {
  int exhaustive_limit = 200;  // full triple check up to this dimension
  int random_triples = 2000;
  std::uint64_t seed = 1;
};

// Builds and validates.  Errors: NotAssociative, BadUnit, AugmentationNotMultiplicative.
AlgebraPtr build_algebra(FieldPtr F, std::vector<std::string> labels, const std::vector<StructureTriple>& mult,
                         Vec unit, std::optional<Vec> augmentation, const ValidationOptions& opt = {});

// Validation of an already assembled algebra.  When generators are attached and
// span, associativity is verified exactly through (g y) z = g (y z).
void validate_algebra(const Algebra& A, const ValidationOptions& opt = {});

// Span of right-normed words in gens applied to 1 (the subalgebra they generate).
Subspace generated_subalgebra(const Algebra& A, const std::vector<Vec>& gens);
bool generators_span(const Algebra& A, const std::vector<Vec>& gens);
// Greedy generating set among basis vectors.
std::vector<Vec> find_generators(const Algebra& A);
// Ensures generators are attached (computing them greedily if needed).
const std::vector<Vec>& algebra_generators(const Algebra& A);

// Quotient algebra A / I for a two-sided ideal I.  Basis = complement columns of I.
struct QuotientAlgebra {
  AlgebraPtr algebra;
  std::vector<int> columns;  // lift of basis vector c is the standard basis vector columns[c]
  Subspace ideal;
  Vec project(const Vec& x) const;
  Vec lift(const Vec& x) const;
};
QuotientAlgebra quotient_algebra(const AlgebraPtr& A, const Subspace& ideal);

AlgebraPtr tensor_algebra(const AlgebraPtr& A, const AlgebraPtr& B);
AlgebraPtr matrix_algebra(const FieldPtr& F, int n);
// k[x]/(x^n)
AlgebraPtr truncated_polynomial_algebra(const FieldPtr& F, int n);

}  // namespace dsupp
