#include "dsupp/algebra.hpp"

#include <algorithm>
#include <deque>
#include <random>

#include "dsupp/sparse.hpp"

namespace dsupp {

MultTableBuilder::MultTableBuilder(int n) : t_(std::make_shared<MultTable>()) {
  t_->n_ = n;
  t_->off_.reserve(std::size_t(n) * n + 1);
  t_->off_.push_back(0);
}

void MultTableBuilder::advance_to(std::size_t pair) {
  require(pair >= next_, Errc::InvalidArgument, "structure constants out of order");
  while (next_ < pair) {
    t_->off_.push_back(t_->idx_.size());
    ++next_;
  }
}

void MultTableBuilder::set(int i, int j, const Vec& dense) {
  advance_to(std::size_t(i) * t_->n_ + j);
  for (int k = 0; k < int(dense.size()); ++k)
    if (dense[k]) {
      t_->idx_.push_back(std::uint16_t(k));
      t_->val_.push_back(dense[k]);
    }
  t_->off_.push_back(t_->idx_.size());
  ++next_;
}

void MultTableBuilder::set_sparse(int i, int j, const std::vector<std::pair<int, Elem>>& terms) {
  advance_to(std::size_t(i) * t_->n_ + j);
  for (auto [k, c] : terms)
    if (c) {
      t_->idx_.push_back(std::uint16_t(k));
      t_->val_.push_back(c);
    }
  t_->off_.push_back(t_->idx_.size());
  ++next_;
}

std::shared_ptr<const MultTable> MultTableBuilder::finish() {
  advance_to(std::size_t(t_->n_) * t_->n_);
  t_->idx_.shrink_to_fit();
  t_->val_.shrink_to_fit();
  return t_;
}

Algebra::Algebra(FieldPtr F, std::vector<std::string> labels, std::shared_ptr<const MultTable> mult, Vec unit,
                 std::optional<Vec> augmentation)
    : F_(std::move(F)),
      n_(mult->n()),
      labels_(std::move(labels)),
      mult_(std::move(mult)),
      unit_(std::move(unit)),
      aug_(std::move(augmentation)) {
  require(n_ <= 65535, Errc::DimensionTooLarge, "algebra dimension");
  require(int(labels_.size()) == n_ && int(unit_.size()) == n_, Errc::DimensionMismatch, "algebra data");
  require(!aug_ || int(aug_->size()) == n_, Errc::DimensionMismatch, "augmentation");
}

Elem Algebra::augment(const Vec& x) const {
  require(aug_.has_value(), Errc::InvalidArgument, "algebra has no augmentation");
  Elem acc = 0;
  for (int i = 0; i < n_; ++i)
    if (x[i] && (*aug_)[i]) acc = F_->add(acc, F_->mul(x[i], (*aug_)[i]));
  return acc;
}

void Algebra::add_basis_product(Vec& out, int i, int j, Elem c) const {
  auto r = mult_->get(i, j);
  const Elem* m = F_->mul_row(c);
  for (std::size_t t = 0; t < r.size; ++t) {
    Elem v = m[r.val[t]];
    out[r.idx[t]] = F_->add(out[r.idx[t]], v);
  }
}

Vec Algebra::mul(const Vec& x, const Vec& y) const {
  Vec out(n_, 0);
  std::vector<int> nzy;
  for (int j = 0; j < n_; ++j)
    if (y[j]) nzy.push_back(j);
  for (int i = 0; i < n_; ++i) {
    if (!x[i]) continue;
    for (int j : nzy) add_basis_product(out, i, j, F_->mul(x[i], y[j]));
  }
  return out;
}

Vec Algebra::pow(const Vec& x, int k) const {
  Vec r = unit_;
  for (int i = 0; i < k; ++i) r = mul(r, x);
  return r;
}

Matrix Algebra::left_mult(const Vec& x) const {
  Matrix L(F_, n_, n_);
  Vec col(n_);
  for (int j = 0; j < n_; ++j) {
    std::fill(col.begin(), col.end(), 0);
    for (int i = 0; i < n_; ++i)
      if (x[i]) add_basis_product(col, i, j, x[i]);
    L.set_column(j, col);
  }
  return L;
}

Matrix Algebra::right_mult(const Vec& x) const {
  Matrix R(F_, n_, n_);
  Vec col(n_);
  for (int j = 0; j < n_; ++j) {
    std::fill(col.begin(), col.end(), 0);
    for (int i = 0; i < n_; ++i)
      if (x[i]) add_basis_product(col, j, i, x[i]);
    R.set_column(j, col);
  }
  return R;
}

AlgebraPtr Algebra::over(const FieldPtr& K) const {
  if (same_field(F_, K)) return shared_from_this();
  auto B = std::make_shared<Algebra>(K, labels_, mult_, unit_, aug_);
  B->gens_ = gens_;
  if (smash_) B->smash_ = SmashInfo{smash_->left->over(K), smash_->right->over(K)};
  return B;
}

std::shared_ptr<const RadicalData> Algebra::cached_radical() const {
  std::lock_guard<std::mutex> l(cache_mu_);
  return radical_;
}
void Algebra::store_radical(std::shared_ptr<const RadicalData> r) const {
  std::lock_guard<std::mutex> l(cache_mu_);
  radical_ = std::move(r);
}
std::shared_ptr<const PimData> Algebra::cached_pims() const {
  std::lock_guard<std::mutex> l(cache_mu_);
  return pims_;
}
void Algebra::store_pims(std::shared_ptr<const PimData> p) const {
  std::lock_guard<std::mutex> l(cache_mu_);
  pims_ = std::move(p);
}

AlgebraPtr build_algebra(FieldPtr F, std::vector<std::string> labels, const std::vector<StructureTriple>& mult,
                         Vec unit, std::optional<Vec> augmentation, const ValidationOptions& opt) {
  int n = int(labels.size());
  std::vector<StructureTriple> t = mult;
  std::sort(t.begin(), t.end(), [](const StructureTriple& a, const StructureTriple& b) {
    return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
  });
  MultTableBuilder b(n);
  std::size_t pos = 0;
  while (pos < t.size()) {
    int i = t[pos].i, j = t[pos].j;
    require(i >= 0 && i < n && j >= 0 && j < n, Errc::InvalidArgument, "structure constant index");
    Vec dense(n, 0);
    while (pos < t.size() && t[pos].i == i && t[pos].j == j) {
      require(t[pos].k >= 0 && t[pos].k < n, Errc::InvalidArgument, "structure constant index");
      dense[t[pos].k] = F->add(dense[t[pos].k], t[pos].c);
      ++pos;
    }
    b.set(i, j, dense);
  }
  auto A = std::make_shared<Algebra>(F, std::move(labels), b.finish(), std::move(unit), std::move(augmentation));
  validate_algebra(*A, opt);
  return A;
}

namespace {

Vec basis_times(const Algebra& A, const Vec& x, int j) {
  Vec out(A.dim(), 0);
  for (int i = 0; i < A.dim(); ++i)
    if (x[i]) A.add_basis_product(out, i, j, x[i]);
  return out;
}

}  // namespace

void validate_algebra(const Algebra& A, const ValidationOptions& opt) {
  int n = A.dim();
  const Field& F = A.F();
  const Vec& one = A.unit();
  for (int i = 0; i < n; ++i) {
    Vec b = A.basis(i);
    require(A.mul(one, b) == b && A.mul(b, one) == b, Errc::BadUnit, "unit fails on " + A.labels()[i]);
  }
  if (A.augmentation()) {
    const Vec& eps = *A.augmentation();
    require(A.augment(one) == 1, Errc::AugmentationNotMultiplicative, "augmentation of unit");
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        auto r = A.table().get(i, j);
        Elem acc = 0;
        for (std::size_t t = 0; t < r.size; ++t) acc = F.add(acc, F.mul(r.val[t], eps[r.idx[t]]));
        require(acc == F.mul(eps[i], eps[j]), Errc::AugmentationNotMultiplicative,
                "on " + A.labels()[i] + "*" + A.labels()[j]);
      }
    }
  }
  auto check_triple = [&](int i, int j, int k) {
    Vec ij = basis_times(A, A.basis(i), j);
    Vec lhs = basis_times(A, ij, k);
    Vec jk = basis_times(A, A.basis(j), k);
    Vec rhs(n, 0);
    for (int m = 0; m < n; ++m)
      if (jk[m]) A.add_basis_product(rhs, i, m, jk[m]);
    require(lhs == rhs, Errc::NotAssociative,
            "(" + A.labels()[i] + "*" + A.labels()[j] + ")*" + A.labels()[k]);
  };
  const auto& gens = A.generators();
  if (!gens.empty() && generators_span(A, gens)) {
    SparseAcc acc(F, n);
    for (const Vec& g : gens) {
      std::vector<SparseVec> gy(n);
      for (int y = 0; y < n; ++y) {
        Vec v(n, 0);
        for (int i = 0; i < n; ++i)
          if (g[i]) A.add_basis_product(v, i, y, g[i]);
        gy[y] = sparse_of(v);
      }
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          for (auto [i, c] : gy[y]) {
            auto r = A.table().get(i, z);
            for (std::size_t t = 0; t < r.size; ++t) acc.add(r.idx[t], F.mul(c, r.val[t]));
          }
          auto r = A.table().get(y, z);
          for (std::size_t t = 0; t < r.size; ++t) {
            Elem c = F.neg(r.val[t]);
            for (auto [k, d] : gy[r.idx[t]]) acc.add(k, F.mul(c, d));
          }
          bool ok = acc.all_zero();
          acc.clear();
          require(ok, Errc::NotAssociative, "(g*" + A.labels()[y] + ")*" + A.labels()[z]);
        }
    }
    return;
  }
  if (n <= opt.exhaustive_limit) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) check_triple(i, j, k);
  } else {
    std::mt19937_64 rng(opt.seed);
    for (int t = 0; t < opt.random_triples; ++t)
      check_triple(int(rng() % std::uint64_t(n)), int(rng() % std::uint64_t(n)), int(rng() % std::uint64_t(n)));
  }
}

Subspace generated_subalgebra(const Algebra& A, const std::vector<Vec>& gens) {
  Subspace W(A.field(), A.dim());
  std::deque<Vec> queue;
  if (W.add(A.unit())) queue.push_back(A.unit());
  while (!queue.empty()) {
    Vec v = std::move(queue.front());
    queue.pop_front();
    for (const Vec& g : gens) {
      Vec w = A.mul(g, v);
      if (W.add(w)) queue.push_back(std::move(w));
    }
    if (W.dim() == A.dim()) break;
  }
  return W;
}

bool generators_span(const Algebra& A, const std::vector<Vec>& gens) {
  return generated_subalgebra(A, gens).dim() == A.dim();
}

std::vector<Vec> find_generators(const Algebra& A) {
  std::vector<Vec> gens;
  Subspace W = generated_subalgebra(A, gens);
  for (int i = 0; i < A.dim() && W.dim() < A.dim(); ++i) {
    Vec b = A.basis(i);
    if (W.contains(b)) continue;
    gens.push_back(b);
    W = generated_subalgebra(A, gens);
  }
  return gens;
}

const std::vector<Vec>& algebra_generators(const Algebra& A) {
  if (A.generators().empty()) A.set_generators(find_generators(A));
  return A.generators();
}

Vec QuotientAlgebra::project(const Vec& x) const {
  Vec r = x;
  ideal.reduce(r);
  Vec out(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) out[c] = r[columns[c]];
  return out;
}

Vec QuotientAlgebra::lift(const Vec& x) const {
  Vec out(ideal.ambient(), 0);
  for (std::size_t c = 0; c < columns.size(); ++c) out[columns[c]] = x[c];
  return out;
}

QuotientAlgebra quotient_algebra(const AlgebraPtr& A, const Subspace& ideal) {
  QuotientAlgebra Q{nullptr, ideal.complement_columns(), ideal};
  int m = int(Q.columns.size());
  MultTableBuilder b(m);
  std::vector<std::string> labels;
  for (int c : Q.columns) labels.push_back(A->labels()[c]);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Vec prod(A->dim(), 0);
      A->add_basis_product(prod, Q.columns[i], Q.columns[j], 1);
      b.set(i, j, Q.project(prod));
    }
  std::optional<Vec> aug;
  if (A->augmentation()) {
    bool ok = true;
    for (const Vec& r : ideal.basis())
      if (A->augment(r)) ok = false;
    if (ok) {
      Vec a(m);
      for (int c = 0; c < m; ++c) a[c] = (*A->augmentation())[Q.columns[c]];
      aug = a;
    }
  }
  Q.algebra = std::make_shared<Algebra>(A->field(), labels, b.finish(), Q.project(A->unit()), aug);
  return Q;
}

AlgebraPtr tensor_algebra(const AlgebraPtr& A, const AlgebraPtr& B) {
  require_same_field(A->field(), B->field());
  const Field& F = A->F();
  int na = A->dim(), nb = B->dim(), n = na * nb;
  MultTableBuilder b(n);
  std::vector<std::pair<int, Elem>> terms;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      terms.clear();
      auto ra = A->table().get(i / nb, j / nb);
      auto rb = B->table().get(i % nb, j % nb);
      for (std::size_t s = 0; s < ra.size; ++s)
        for (std::size_t t = 0; t < rb.size; ++t)
          terms.emplace_back(ra.idx[s] * nb + rb.idx[t], F.mul(ra.val[s], rb.val[t]));
      std::sort(terms.begin(), terms.end());
      b.set_sparse(i, j, terms);
    }
  std::vector<std::string> labels;
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) labels.push_back(A->labels()[i] + "(x)" + B->labels()[j]);
  Vec unit(n, 0);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) unit[i * nb + j] = F.mul(A->unit()[i], B->unit()[j]);
  std::optional<Vec> aug;
  if (A->augmentation() && B->augmentation()) {
    Vec a(n);
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < nb; ++j) a[i * nb + j] = F.mul((*A->augmentation())[i], (*B->augmentation())[j]);
    aug = a;
  }
  auto T = std::make_shared<Algebra>(A->field(), labels, b.finish(), unit, aug);
  std::vector<Vec> gens;
  for (const Vec& g : algebra_generators(*A)) {
    Vec v(n, 0);
    for (int i = 0; i < na; ++i)
      if (g[i])
        for (int j = 0; j < nb; ++j) v[i * nb + j] = F.mul(g[i], B->unit()[j]);
    gens.push_back(v);
  }
  for (const Vec& g : algebra_generators(*B)) {
    Vec v(n, 0);
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < nb; ++j) v[i * nb + j] = F.mul(A->unit()[i], g[j]);
    gens.push_back(v);
  }
  T->set_generators(gens);
  return T;
}

AlgebraPtr matrix_algebra(const FieldPtr& F, int n) {
  std::vector<StructureTriple> t;
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
      for (int k = 0; k < n; ++k) t.push_back({i * n + j, j * n + k, i * n + k, 1});
    }
  Vec unit(n * n, 0);
  for (int i = 0; i < n; ++i) unit[i * n + i] = 1;
  return build_algebra(F, labels, t, unit, std::nullopt);
}

AlgebraPtr truncated_polynomial_algebra(const FieldPtr& F, int n) {
  std::vector<StructureTriple> t;
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) {
    labels.push_back(i == 0 ? "1" : (i == 1 ? "x" : "x^" + std::to_string(i)));
    for (int j = 0; i + j < n; ++j) t.push_back({i, j, i + j, 1});
  }
  Vec aug(n, 0);
  aug[0] = 1;
  auto A = build_algebra(F, labels, t, unit_vector(n, 0), aug);
  if (n > 1) A->set_generators({unit_vector(n, 1)});
  return A;
}

}  // namespace dsupp
