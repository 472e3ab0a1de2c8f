#include "dsupp/hopf.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "dsupp/sparse.hpp"

namespace dsupp {

void Coproduct::push_row(const std::vector<Term>& terms) {
  terms_.insert(terms_.end(), terms.begin(), terms.end());
  off_.push_back(terms_.size());
}

HopfAlgebra::HopfAlgebra(AlgebraPtr A, std::shared_ptr<const Coproduct> comult, Vec counit, Matrix antipode)
    : A_(std::move(A)), D_(std::move(comult)), eps_(std::move(counit)), S_(std::move(antipode)) {
  int n = A_->dim();
  require(D_->n() == n && int(eps_.size()) == n && S_.rows() == n && S_.cols() == n, Errc::DimensionMismatch,
          "Hopf structure maps do not match the algebra dimension");
}

Elem HopfAlgebra::counit_of(const Vec& x) const {
  const Field& F = A_->F();
  Elem s = 0;
  for (int i = 0; i < dim(); ++i)
    if (x[i] && eps_[i]) s = F.add(s, F.mul(x[i], eps_[i]));
  return s;
}

HopfPtr HopfAlgebra::over(const FieldPtr& K) const {
  if (same_field(field(), K)) return std::make_shared<HopfAlgebra>(*this);
  return std::make_shared<HopfAlgebra>(A_->over(K), D_, eps_, S_.over(K));
}

bool HopfCheckReport::ok() const {
  for (auto& a : axioms)
    if (!a.ok) return false;
  return true;
}

std::string HopfCheckReport::summary() const {
  std::ostringstream os;
  for (auto& a : axioms) {
    os << a.name << ": " << (a.ok ? "ok" : "FAILED");
    if (!a.ok) os << " (" << a.witness << ")";
    os << "\n";
  }
  return os.str();
}

namespace {

std::string describe(const Algebra& A, const Vec& v) {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < A.dim(); ++i) {
    if (!v[i]) continue;
    if (!first) os << " + ";
    first = false;
    if (v[i] != 1) os << v[i] << "*";
    os << A.labels()[i];
  }
  if (first) os << "0";
  return os.str();
}

// Sparse product of sparse elements, accumulated into acc (scaled by c).
void mul_into(const Algebra& A, SparseAcc& acc, const SparseVec& x, const SparseVec& y, Elem c) {
  const Field& F = A.F();
  for (auto [i, a] : x)
    for (auto [j, b] : y) {
      Elem ab = F.mul(c, F.mul(a, b));
      auto r = A.table().get(i, j);
      for (std::size_t s = 0; s < r.size; ++s) acc.add(r.idx[s], F.mul(ab, r.val[s]));
    }
}

SparseVec sparse_product(const Algebra& A, const SparseVec& x, const SparseVec& y, SparseAcc& scratch) {
  scratch.clear();
  mul_into(A, scratch, x, y, 1);
  SparseVec out;
  std::vector<int> t = scratch.touched();
  std::sort(t.begin(), t.end());
  for (int k : t)
    if (scratch.get(k)) out.emplace_back(k, scratch.get(k));
  scratch.clear();
  return out;
}

SparseVec acc_take(SparseAcc& acc) {
  std::vector<int> t = acc.touched();
  std::sort(t.begin(), t.end());
  SparseVec out;
  for (int k : t)
    if (acc.get(k)) out.emplace_back(k, acc.get(k));
  acc.clear();
  return out;
}

// Delta(x) added into an n^2 accumulator with scale c.
void comult_into(const HopfAlgebra& H, SparseAcc& acc, const SparseVec& x, Elem c) {
  const Field& F = H.alg().F();
  int n = H.dim();
  for (auto [i, a] : x) {
    Elem ca = F.mul(c, a);
    for (auto* t = H.comult().begin(i); t != H.comult().end(i); ++t) acc.add(t->a * n + t->b, F.mul(ca, t->c));
  }
}

std::vector<SparseVec> sparse_columns(const Matrix& m) {
  std::vector<SparseVec> cols(m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (m(r, c)) cols[c].emplace_back(r, m(r, c));
  return cols;
}

SparseVec apply_sparse(const std::vector<SparseVec>& cols, const SparseVec& x, SparseAcc& scratch, const Field& F) {
  scratch.clear();
  for (auto [i, a] : x)
    for (auto [r, v] : cols[i]) scratch.add(r, F.mul(a, v));
  return acc_take(scratch);
}

Vec dense_of(const SparseVec& x, int n) {
  Vec v(n, 0);
  for (auto [i, a] : x) v[i] = a;
  return v;
}

bool equal_sparse(const SparseVec& a, const SparseVec& b) { return a == b; }

using Triple = std::map<std::tuple<int, int, int>, Elem>;

void triple_add(Triple& t, int a, int b, int c, Elem v, const Field& F) {
  if (!v) return;
  Elem& e = t[{a, b, c}];
  e = F.add(e, v);
  if (!e) t.erase({a, b, c});
}

}  // namespace

HopfCheckReport check_hopf(const HopfAlgebra& H, const HopfCheckOptions& opt) {
  HopfCheckReport rep;
  const Algebra& A = H.alg();
  const Field& F = A.F();
  int n = A.dim();
  const Coproduct& D = H.comult();

  AxiomResult assoc{"associativity", true, ""};
  try {
    ValidationOptions vo;
    vo.seed = opt.seed;
    if (opt.exhaustive) vo.exhaustive_limit = n;
    validate_algebra(A, vo);
  } catch (const Error& e) {
    assoc.ok = false;
    assoc.witness = e.what();
  }
  rep.axioms.push_back(assoc);

  // Elements on the left of each product check: generators or the full basis.
  std::vector<SparseVec> left;
  if (opt.exhaustive) {
    for (int i = 0; i < n; ++i) left.push_back({{i, 1}});
  } else {
    for (const Vec& g : algebra_generators(A)) left.push_back(sparse_of(g));
    left.push_back(sparse_of(A.unit()));
  }
  SparseVec one = sparse_of(A.unit());
  SparseAcc s1(F, n), s2(F, n);
  std::vector<SparseVec> Scols = sparse_columns(H.antipode());
  auto eps = [&](const SparseVec& x) {
    Elem s = 0;
    for (auto [i, a] : x) s = F.add(s, F.mul(a, H.counit()[i]));
    return s;
  };

  AxiomResult cm{"counit_multiplicative", true, ""};
  if (eps(one) != 1) {
    cm.ok = false;
    cm.witness = "eps(1) != 1";
  }
  for (std::size_t g = 0; g < left.size() && cm.ok; ++g)
    for (int y = 0; y < n && cm.ok; ++y) {
      SparseVec gy = sparse_product(A, left[g], {{y, 1}}, s1);
      if (eps(gy) != F.mul(eps(left[g]), H.counit()[y])) {
        cm.ok = false;
        cm.witness = "x=" + describe(A, dense_of(left[g], n)) + " y=" + A.labels()[y];
      }
    }
  rep.axioms.push_back(cm);

  AxiomResult dm{"comultiplication_multiplicative", true, ""};
  {
    SparseAcc t1(F, n * n), t2(F, n * n);
    comult_into(H, t1, one, 1);
    // Delta(1) = 1 (x) 1
    for (auto [i, a] : one)
      for (auto [j, b] : one) t2.add(i * n + j, F.neg(F.mul(a, b)));
    for (int k : t2.touched()) t1.add(k, t2.get(k));
    t2.clear();
    if (!t1.all_zero()) {
      dm.ok = false;
      dm.witness = "Delta(1) != 1(x)1";
    }
    t1.clear();
    for (std::size_t g = 0; g < left.size() && dm.ok; ++g) {
      // Delta(g) as list of (a, b, c)
      std::vector<Coproduct::Term> dg;
      for (auto [i, a] : left[g])
        for (auto* t = D.begin(i); t != D.end(i); ++t) dg.push_back({t->a, t->b, F.mul(a, t->c)});
      for (int y = 0; y < n && dm.ok; ++y) {
        SparseVec gy = sparse_product(A, left[g], {{y, 1}}, s1);
        comult_into(H, t1, gy, 1);
        for (auto& u : dg)
          for (auto* t = D.begin(y); t != D.end(y); ++t) {
            Elem c = F.neg(F.mul(u.c, t->c));
            auto ra = A.table().get(u.a, t->a);
            auto rb = A.table().get(u.b, t->b);
            for (std::size_t s = 0; s < ra.size; ++s) {
              Elem ca = F.mul(c, ra.val[s]);
              for (std::size_t r = 0; r < rb.size; ++r) t1.add(ra.idx[s] * n + rb.idx[r], F.mul(ca, rb.val[r]));
            }
          }
        if (!t1.all_zero()) {
          dm.ok = false;
          dm.witness = "x=" + describe(A, dense_of(left[g], n)) + " y=" + A.labels()[y];
        }
        t1.clear();
      }
    }
  }
  rep.axioms.push_back(dm);

  AxiomResult ca{"coassociativity", true, ""};
  AxiomResult cu{"counit_axiom", true, ""};
  for (std::size_t g = 0; g < left.size(); ++g) {
    Triple lhs;
    SparseAcc l(F, n), r(F, n);
    for (auto [i, a] : left[g])
      for (auto* t = D.begin(i); t != D.end(i); ++t) {
        Elem c = F.mul(a, t->c);
        // (Delta (x) id) and (id (x) Delta)
        for (auto* u = D.begin(t->a); u != D.end(t->a); ++u) triple_add(lhs, u->a, u->b, t->b, F.mul(c, u->c), F);
        for (auto* u = D.begin(t->b); u != D.end(t->b); ++u)
          triple_add(lhs, t->a, u->a, u->b, F.neg(F.mul(c, u->c)), F);
        l.add(t->b, F.mul(c, H.counit()[t->a]));
        r.add(t->a, F.mul(c, H.counit()[t->b]));
      }
    Vec v = dense_of(left[g], n);
    if (ca.ok && !lhs.empty()) {
      ca.ok = false;
      ca.witness = "x=" + describe(A, v);
    }
    for (auto [i, a] : left[g]) {
      l.add(i, F.neg(a));
      r.add(i, F.neg(a));
    }
    if (cu.ok && !(l.all_zero() && r.all_zero())) {
      cu.ok = false;
      cu.witness = "x=" + describe(A, v);
    }
  }
  rep.axioms.push_back(ca);
  rep.axioms.push_back(cu);

  AxiomResult am{"antipode_antimultiplicative", true, ""};
  {
    SparseVec s_one = apply_sparse(Scols, one, s1, F);
    if (s_one != one) {
      am.ok = false;
      am.witness = "S(1) != 1";
    }
    for (std::size_t g = 0; g < left.size() && am.ok; ++g) {
      SparseVec sg = apply_sparse(Scols, left[g], s1, F);
      for (int y = 0; y < n && am.ok; ++y) {
        SparseVec gy = sparse_product(A, left[g], {{y, 1}}, s1);
        SparseVec lhs = apply_sparse(Scols, gy, s1, F);
        SparseVec rhs = sparse_product(A, Scols[y], sg, s2);
        if (!equal_sparse(lhs, rhs)) {
          am.ok = false;
          am.witness = "x=" + describe(A, dense_of(left[g], n)) + " y=" + A.labels()[y];
        }
      }
    }
  }
  rep.axioms.push_back(am);

  AxiomResult ax{"antipode_axiom", true, ""};
  for (std::size_t g = 0; g < left.size() && ax.ok; ++g) {
    s1.clear();
    s2.clear();
    for (auto [i, a] : left[g])
      for (auto* t = D.begin(i); t != D.end(i); ++t) {
        Elem c = F.mul(a, t->c);
        mul_into(A, s1, Scols[t->a], {{t->b, 1}}, c);
        mul_into(A, s2, {{t->a, 1}}, Scols[t->b], c);
      }
    Elem e = eps(left[g]);
    for (auto [i, a] : one) {
      s1.add(i, F.neg(F.mul(e, a)));
      s2.add(i, F.neg(F.mul(e, a)));
    }
    if (!(s1.all_zero() && s2.all_zero())) {
      ax.ok = false;
      ax.witness = "x=" + describe(A, dense_of(left[g], n));
    }
    s1.clear();
    s2.clear();
  }
  rep.axioms.push_back(ax);
  return rep;
}

HopfPtr dual_hopf(const HopfAlgebra& H) {
  const Algebra& A = H.alg();
  const Field& F = A.F();
  int n = A.dim();
  const Coproduct& D = H.comult();
  // delta_i delta_j = sum_k [coefficient of b_i (x) b_j in Delta(b_k)] delta_k
  std::vector<std::vector<std::pair<int, Elem>>> bucket(std::size_t(n) * n);
  for (int k = 0; k < n; ++k)
    for (auto* t = D.begin(k); t != D.end(k); ++t) bucket[std::size_t(t->a) * n + t->b].emplace_back(k, t->c);
  MultTableBuilder b(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto& v = bucket[std::size_t(i) * n + j];
      if (v.empty()) continue;
      std::sort(v.begin(), v.end());
      b.set_sparse(i, j, v);
    }
  bucket.clear();
  // Delta*(delta_k) = sum_{i,j} [coefficient of b_k in b_i b_j] delta_i (x) delta_j
  std::vector<std::vector<Coproduct::Term>> rows(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto r = A.table().get(i, j);
      for (std::size_t s = 0; s < r.size; ++s)
        rows[r.idx[s]].push_back({std::uint16_t(i), std::uint16_t(j), r.val[s]});
    }
  auto D2 = std::make_shared<Coproduct>(n);
  for (auto& r : rows) D2->push_row(r);
  std::vector<std::string> labels;
  for (auto& l : A.labels()) labels.push_back("d[" + l + "]");
  Vec unit = H.counit();
  Vec eps = A.unit();
  auto B = std::make_shared<Algebra>(A.field(), labels, b.finish(), unit, eps);
  (void)F;
  return std::make_shared<HopfAlgebra>(B, D2, eps, H.antipode().transpose());
}

void check_module_algebra(const ModuleAlgebraAction& act) {
  const HopfAlgebra& H = *act.H;
  const Algebra& A = *act.A;
  const Field& F = A.F();
  int nh = H.dim(), na = A.dim();
  require_same_field(H.field(), A.field());
  require(int(act.act.size()) == nh, Errc::ActionNotModuleAlgebra, "wrong number of action matrices");
  for (auto& m : act.act)
    require(m.rows() == na && m.cols() == na, Errc::ActionNotModuleAlgebra, "action matrix has wrong shape");
  Module M(act.H->algebra(), na, act.act);
  require(check_module(M), Errc::ActionNotModuleAlgebra, "action is not a module structure");
  std::vector<std::vector<SparseVec>> cols(nh);
  for (int h = 0; h < nh; ++h) cols[h] = sparse_columns(act.act[h]);
  SparseVec one = sparse_of(A.unit());
  SparseAcc s(F, na), acc(F, na);
  for (int h = 0; h < nh; ++h) {
    // h.1 = eps(h) 1
    SparseVec h1 = apply_sparse(cols[h], one, s, F);
    for (auto [i, a] : h1) acc.add(i, a);
    for (auto [i, a] : one) acc.add(i, F.neg(F.mul(H.counit()[h], a)));
    require(acc.all_zero(), Errc::ActionNotModuleAlgebra, "h.1 != eps(h) 1 for h = " + H.alg().labels()[h]);
    acc.clear();
  }
  for (int h = 0; h < nh; ++h)
    for (int x = 0; x < na; ++x)
      for (int y = 0; y < na; ++y) {
        auto r = A.table().get(x, y);
        for (std::size_t t = 0; t < r.size; ++t)
          for (auto [i, a] : cols[h][r.idx[t]]) acc.add(i, F.mul(r.val[t], a));
        for (auto* t = H.comult().begin(h); t != H.comult().end(h); ++t) {
          mul_into(A, acc, cols[t->a][x], cols[t->b][y], F.neg(t->c));
        }
        require(acc.all_zero(), Errc::ActionNotModuleAlgebra,
                "h.(xy) != (h1.x)(h2.y) for h = " + H.alg().labels()[h] + ", x = " + A.labels()[x] +
                    ", y = " + A.labels()[y]);
        acc.clear();
      }
}

namespace {

Vec kron_vec(const Field& F, const Vec& x, const Vec& y) {
  Vec out(x.size() * y.size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i])
      for (std::size_t j = 0; j < y.size(); ++j) out[i * y.size() + j] = F.mul(x[i], y[j]);
  return out;
}

}  // namespace

AlgebraPtr smash_product(const ModuleAlgebraAction& act) {
  const Algebra& A = *act.A;
  const HopfAlgebra& H = *act.H;
  const Algebra& HA = H.alg();
  const Field& F = A.F();
  require_same_field(A.field(), HA.field());
  int na = A.dim(), nh = H.dim(), n = na * nh;
  require(n <= 65535, Errc::DimensionTooLarge, "smash product dimension exceeds index range");
  std::vector<std::vector<SparseVec>> cols(nh);
  for (int h = 0; h < nh; ++h) cols[h] = sparse_columns(act.act[h]);
  // T[j][k] = sum_{(h1,h2) in Delta(h_j)} (h1.a_k) # h2 as (a, h2) -> coefficient
  std::vector<std::vector<std::vector<std::tuple<int, int, Elem>>>> T(nh, std::vector<std::vector<std::tuple<int, int, Elem>>>(na));
  {
    std::map<std::pair<int, int>, Elem> m;
    for (int j = 0; j < nh; ++j)
      for (int k = 0; k < na; ++k) {
        m.clear();
        for (auto* t = H.comult().begin(j); t != H.comult().end(j); ++t)
          for (auto [a, v] : cols[t->a][k]) {
            Elem& e = m[{a, t->b}];
            e = F.add(e, F.mul(t->c, v));
          }
        for (auto& [key, v] : m)
          if (v) T[j][k].emplace_back(key.first, key.second, v);
      }
  }
  MultTableBuilder b(n);
  SparseAcc acc(F, n);
  std::vector<std::pair<int, Elem>> terms;
  std::map<std::pair<int, int>, Elem> U;
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nh; ++j)
      for (int k = 0; k < na; ++k) {
        // U = a_i (h1.a_k) # h2
        U.clear();
        for (auto& [a, h2, v] : T[j][k]) {
          auto r = A.table().get(i, a);
          for (std::size_t s = 0; s < r.size; ++s) {
            Elem& e = U[{r.idx[s], h2}];
            e = F.add(e, F.mul(v, r.val[s]));
          }
        }
        for (int l = 0; l < nh; ++l) {
          for (auto& [key, v] : U) {
            if (!v) continue;
            auto r = HA.table().get(key.second, l);
            for (std::size_t s = 0; s < r.size; ++s) acc.add(key.first * nh + r.idx[s], F.mul(v, r.val[s]));
          }
          terms.clear();
          std::vector<int> t = acc.touched();
          std::sort(t.begin(), t.end());
          for (int x : t)
            if (acc.get(x)) terms.emplace_back(x, acc.get(x));
          acc.clear();
          if (!terms.empty()) b.set_sparse(i * nh + j, k * nh + l, terms);
        }
      }
  std::vector<std::string> labels;
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nh; ++j) labels.push_back(A.labels()[i] + "#" + HA.labels()[j]);
  Vec unit = kron_vec(F, A.unit(), HA.unit());
  std::optional<Vec> aug;
  if (A.augmentation() && HA.augmentation()) aug = kron_vec(F, *A.augmentation(), *HA.augmentation());
  auto S = std::make_shared<Algebra>(A.field(), labels, b.finish(), unit, aug);
  std::vector<Vec> gens;
  for (const Vec& g : algebra_generators(A)) gens.push_back(kron_vec(F, g, HA.unit()));
  for (const Vec& g : algebra_generators(HA)) gens.push_back(kron_vec(F, A.unit(), g));
  S->set_generators(gens);
  S->set_smash(SmashInfo{act.A, H.algebra()});
  validate_algebra(*S);
  return S;
}

HopfPtr smash_hopf(const ModuleAlgebraAction& act, const HopfAlgebra& Ahopf) {
  require(Ahopf.algebra().get() == act.A.get() || Ahopf.dim() == act.A->dim(), Errc::DimensionMismatch,
          "coalgebra structure does not belong to the acted-on algebra");
  AlgebraPtr S = smash_product(act);
  const HopfAlgebra& H = *act.H;
  const Field& F = S->F();
  int na = Ahopf.dim(), nh = H.dim(), n = na * nh;
  auto D = std::make_shared<Coproduct>(n);
  std::vector<Coproduct::Term> row;
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nh; ++j) {
      row.clear();
      for (auto* s = Ahopf.comult().begin(i); s != Ahopf.comult().end(i); ++s)
        for (auto* t = H.comult().begin(j); t != H.comult().end(j); ++t)
          row.push_back({std::uint16_t(s->a * nh + t->a), std::uint16_t(s->b * nh + t->b), F.mul(s->c, t->c)});
      D->push_row(row);
    }
  Vec eps = kron_vec(F, Ahopf.counit(), H.counit());
  Matrix Sant(S->field(), n, n);
  for (int i = 0; i < na; ++i) {
    Vec sa = kron_vec(F, Ahopf.antipode().column(i), H.alg().unit());
    for (int j = 0; j < nh; ++j) {
      Vec sh = kron_vec(F, Ahopf.alg().unit(), H.antipode().column(j));
      Sant.set_column(i * nh + j, S->mul(sh, sa));
    }
  }
  return std::make_shared<HopfAlgebra>(S, D, eps, Sant);
}

namespace {

HopfPtr checked(HopfPtr D) {
  HopfCheckReport r = check_hopf(*D);
  require(r.ok(), Errc::HopfAxiomFailure, r.summary());
  return D;
}

}  // namespace

HopfPtr drinfeld_double(const ModuleAlgebraAction& adjoint, const HopfAlgebra& OG) {
  long long n = (long long)adjoint.A->dim() * adjoint.H->dim();
  require(n <= kMaxDoubleDim, Errc::DimensionTooLarge, "double of dimension " + std::to_string(n));
  check_module_algebra(adjoint);
  return checked(smash_hopf(adjoint, OG));
}

HopfPtr bosonize(const ModuleAlgebraAction& action, const HopfAlgebra& S) {
  long long n = (long long)action.A->dim() * action.H->dim();
  require(n <= kMaxDoubleDim, Errc::DimensionTooLarge, "bosonization of dimension " + std::to_string(n));
  Matrix P = primitive_space(S);
  std::vector<Vec> prims;
  for (int c = 0; c < P.cols(); ++c) prims.push_back(P.column(c));
  require(generated_subalgebra(S.alg(), prims).dim() == S.dim(), Errc::NotGeneratedByPrimitives,
          "primitives generate a proper subalgebra");
  check_module_algebra(action);
  return checked(smash_hopf(action, S));
}

Matrix primitive_space(const HopfAlgebra& H) {
  const Algebra& A = H.alg();
  const Field& F = A.F();
  int n = A.dim();
  // Columns: Delta(b_i) - b_i (x) 1 - 1 (x) b_i, restricted to touched rows.
  std::map<std::size_t, int> rowid;
  std::vector<std::vector<std::pair<std::size_t, Elem>>> cols(n);
  SparseAcc acc(F, n * n);
  SparseVec one = sparse_of(A.unit());
  for (int i = 0; i < n; ++i) {
    for (auto* t = H.comult().begin(i); t != H.comult().end(i); ++t) acc.add(t->a * n + t->b, t->c);
    for (auto [u, a] : one) {
      acc.add(i * n + u, F.neg(a));
      acc.add(u * n + i, F.neg(a));
    }
    for (int k : acc.touched())
      if (acc.get(k)) {
        cols[i].emplace_back(k, acc.get(k));
        rowid.emplace(k, 0);
      }
    acc.clear();
  }
  require((long long)rowid.size() * n <= 50000000LL, Errc::DimensionTooLarge, "primitive space system too large");
  int r = 0;
  for (auto& [k, id] : rowid) id = r++;
  Matrix M(A.field(), std::max(r, 1), n);
  for (int i = 0; i < n; ++i)
    for (auto [k, v] : cols[i]) M.at(rowid[k], i) = v;
  return nullspace(M);
}

Module tensor(const Module& M, const Module& N, const HopfAlgebra& H) {
  require(M.algebra()->dim() == H.dim() && N.algebra()->dim() == H.dim(), Errc::DimensionMismatch,
          "modules are not over the Hopf algebra");
  const Field& F = *M.field();
  int dm = M.dim(), dn = N.dim(), d = dm * dn;
  std::vector<Matrix> act;
  act.reserve(H.dim());
  for (int k = 0; k < H.dim(); ++k) {
    Matrix R(M.field(), d, d);
    for (auto* t = H.comult().begin(k); t != H.comult().end(k); ++t) {
      const Matrix& a = M.act(t->a);
      const Matrix& b = N.act(t->b);
      if (b.is_zero()) continue;
      for (int r = 0; r < dm; ++r)
        for (int s = 0; s < dm; ++s) {
          Elem c = a(r, s);
          if (!c) continue;
          c = F.mul(c, t->c);
          for (int u = 0; u < dn; ++u) F.axpy(R.row(r * dn + u) + s * dn, c, b.row(u), dn);
        }
    }
    act.push_back(std::move(R));
  }
  return Module(M.algebra(), d, std::move(act));
}

Module dual(const Module& M, const HopfAlgebra& H) {
  const Field& F = *M.field();
  int d = M.dim();
  std::vector<Matrix> act;
  for (int k = 0; k < H.dim(); ++k) {
    Matrix R(M.field(), d, d);
    for (int j = 0; j < H.dim(); ++j) {
      Elem c = H.antipode()(j, k);
      if (c) R.add_scaled(M.act(j), c);
    }
    act.push_back(R.transpose());
  }
  (void)F;
  return Module(M.algebra(), d, std::move(act));
}

bool is_algebra_map(const Matrix& phi, const Algebra& A, const Algebra& B, std::string* witness) {
  if (phi.rows() != B.dim() || phi.cols() != A.dim()) {
    if (witness) *witness = "shape mismatch";
    return false;
  }
  if (phi.apply(A.unit()) != B.unit()) {
    if (witness) *witness = "phi(1) != 1";
    return false;
  }
  std::vector<Vec> img(A.dim());
  for (int y = 0; y < A.dim(); ++y) img[y] = phi.column(y);
  for (const Vec& g : algebra_generators(A)) {
    Vec pg = phi.apply(g);
    for (int y = 0; y < A.dim(); ++y) {
      Vec gy(A.dim(), 0);
      for (int i = 0; i < A.dim(); ++i)
        if (g[i]) A.add_basis_product(gy, i, y, g[i]);
      if (phi.apply(gy) != B.mul(pg, img[y])) {
        if (witness) *witness = "g=" + describe(A, g) + " y=" + A.labels()[y];
        return false;
      }
    }
  }
  return true;
}

namespace {

// Compares Delta_B(phi x) with (phi (x) phi) Delta_A(x) and the counits.
bool coalgebra_compatible(const Matrix& phi, const HopfAlgebra& A, const HopfAlgebra& B, const Vec& x,
                          const std::vector<SparseVec>& pc) {
  const Field& F = A.alg().F();
  int nb = B.dim();
  std::map<std::pair<int, int>, Elem> diff;
  auto put = [&](int a, int b, Elem v) {
    if (!v) return;
    Elem& e = diff[{a, b}];
    e = F.add(e, v);
    if (!e) diff.erase({a, b});
  };
  Vec px = phi.apply(x);
  for (int i = 0; i < nb; ++i)
    if (px[i])
      for (auto* t = B.comult().begin(i); t != B.comult().end(i); ++t) put(t->a, t->b, F.mul(px[i], t->c));
  for (int i = 0; i < A.dim(); ++i)
    if (x[i])
      for (auto* t = A.comult().begin(i); t != A.comult().end(i); ++t) {
        Elem c = F.neg(F.mul(x[i], t->c));
        for (auto [u, a] : pc[t->a])
          for (auto [v, b] : pc[t->b]) put(u, v, F.mul(c, F.mul(a, b)));
      }
  if (!diff.empty()) return false;
  return B.counit_of(px) == A.counit_of(x);
}

}  // namespace

bool is_coalgebra_map(const Matrix& phi, const HopfAlgebra& A, const HopfAlgebra& B, std::string* witness) {
  auto pc = sparse_columns(phi);
  for (int i = 0; i < A.dim(); ++i)
    if (!coalgebra_compatible(phi, A, B, unit_vector(A.dim(), i), pc)) {
      if (witness) *witness = "x=" + A.alg().labels()[i];
      return false;
    }
  return true;
}

bool is_hopf_map(const Matrix& phi, const HopfAlgebra& A, const HopfAlgebra& B, std::string* witness) {
  if (!is_algebra_map(phi, A.alg(), B.alg(), witness)) return false;
  auto pc = sparse_columns(phi);
  for (const Vec& g : algebra_generators(A.alg()))
    if (!coalgebra_compatible(phi, A, B, g, pc)) {
      if (witness) *witness = "Delta or eps fails at g=" + describe(A.alg(), g);
      return false;
    }
  return true;
}

int TruncatedSymmetric::index(const std::vector<int>& e) const {
  int N = 1;
  for (int i = 0; i < r; ++i) N *= S->field()->p();
  int idx = 0;
  for (int x : e) {
    if (x < 0 || x >= N) return -1;
    idx = idx * N + x;
  }
  return idx;
}

namespace {

// Binomial coefficient mod p by Lucas.
int binom_mod(int n, int k, int p) {
  int r = 1;
  while (n || k) {
    int a = n % p, b = k % p;
    if (b > a) return 0;
    int c = 1;
    for (int i = 0; i < b; ++i) c = c * (a - i);
    int f = 1;
    for (int i = 1; i <= b; ++i) f *= i;
    c /= f;
    r = (r * (c % p)) % p;
    n /= p;
    k /= p;
  }
  return r;
}

}  // namespace

TruncatedSymmetric truncated_symmetric(const Module& V, const HopfPtr& H, int r, const std::vector<std::string>& names) {
  const FieldPtr& K = V.field();
  const Field& F = *K;
  int p = F.p(), d = V.dim();
  require(r >= 1, Errc::InvalidArgument, "height must be positive");
  require(int(names.size()) == d, Errc::InvalidArgument, "one name per coordinate required");
  require(V.algebra()->dim() == H->dim(), Errc::DimensionMismatch, "module is not over the Hopf algebra");
  int N = 1;
  for (int i = 0; i < r; ++i) N *= p;
  long long nn = 1;
  for (int i = 0; i < d; ++i) nn *= N;
  require(nn <= 4096, Errc::DimensionTooLarge, "truncated symmetric algebra too large");
  int n = int(nn);
  std::vector<std::vector<int>> ex(n, std::vector<int>(d));
  for (int m = 0; m < n; ++m) {
    int x = m;
    for (int i = d - 1; i >= 0; --i) {
      ex[m][i] = x % N;
      x /= N;
    }
  }
  auto idx = [&](const std::vector<int>& e) {
    int k = 0;
    for (int x : e) k = k * N + x;
    return k;
  };
  std::vector<std::string> labels;
  for (int m = 0; m < n; ++m) {
    std::string s;
    for (int i = 0; i < d; ++i) {
      if (!ex[m][i]) continue;
      if (!s.empty()) s += " ";
      s += names[i];
      if (ex[m][i] > 1) s += "^" + std::to_string(ex[m][i]);
    }
    labels.push_back(s.empty() ? "1" : s);
  }
  MultTableBuilder b(n);
  std::vector<int> e(d);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      bool ok = true;
      for (int i = 0; i < d && ok; ++i) {
        e[i] = ex[x][i] + ex[y][i];
        ok = e[i] < N;
      }
      if (ok) b.set_sparse(x, y, {{idx(e), 1}});
    }
  std::vector<Vec> gens;
  for (int i = 0; i < d; ++i) {
    std::vector<int> u(d, 0);
    u[i] = 1;
    gens.push_back(unit_vector(n, idx(u)));
  }
  auto A = std::make_shared<Algebra>(K, labels, b.finish(), unit_vector(n, 0), unit_vector(n, 0));
  A->set_generators(gens);
  validate_algebra(*A);

  auto D = std::make_shared<Coproduct>(n);
  std::vector<Coproduct::Term> row;
  std::vector<int> j(d);
  for (int m = 0; m < n; ++m) {
    row.clear();
    std::fill(j.begin(), j.end(), 0);
    while (true) {
      int c = 1;
      for (int i = 0; i < d && c; ++i) c = c * binom_mod(ex[m][i], j[i], p) % p;
      if (c) {
        std::vector<int> rest(d);
        for (int i = 0; i < d; ++i) rest[i] = ex[m][i] - j[i];
        row.push_back({std::uint16_t(idx(j)), std::uint16_t(idx(rest)), F.from_int(c)});
      }
      int i = d - 1;
      while (i >= 0 && j[i] == ex[m][i]) j[i--] = 0;
      if (i < 0) break;
      ++j[i];
    }
    std::sort(row.begin(), row.end(), [](auto& a, auto& b) { return std::tie(a.a, a.b) < std::tie(b.a, b.b); });
    D->push_row(row);
  }
  Matrix Sant(K, n, n);
  for (int m = 0; m < n; ++m) {
    int deg = 0;
    for (int x : ex[m]) deg += x;
    Sant.at(m, m) = deg % 2 ? F.neg(1) : 1;
  }
  auto SH = std::make_shared<HopfAlgebra>(A, D, unit_vector(n, 0), Sant);

  // h.(x_i m') = sum (h1.x_i)(h2.m'), monomials processed by total degree.
  int nh = H->dim();
  std::vector<Matrix> act(nh, Matrix(K, n, n));
  std::vector<int> order(n);
  for (int m = 0; m < n; ++m) order[m] = m;
  std::vector<int> tdeg(n, 0);
  for (int m = 0; m < n; ++m)
    for (int x : ex[m]) tdeg[m] += x;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b2) { return tdeg[a] < tdeg[b2]; });
  for (int h = 0; h < nh; ++h) act[h].at(0, 0) = H->counit()[h];
  for (int m : order) {
    if (m == 0) continue;
    int i = 0;
    while (ex[m][i] == 0) ++i;
    std::vector<int> rest = ex[m];
    --rest[i];
    int mr = idx(rest);
    for (int h = 0; h < nh; ++h) {
      for (auto* t = H->comult().begin(h); t != H->comult().end(h); ++t) {
        const Matrix& vx = V.act(t->a);
        const Matrix& am = act[t->b];
        for (int jv = 0; jv < d; ++jv) {
          Elem c = F.mul(t->c, vx(jv, i));
          if (!c) continue;
          // x_jv * (h2.m')
          for (int q = 0; q < n; ++q) {
            Elem w = am(q, mr);
            if (!w) continue;
            std::vector<int> e2 = ex[q];
            if (++e2[jv] >= N) continue;
            Elem& dst = act[h].at(idx(e2), m);
            dst = F.add(dst, F.mul(c, w));
          }
        }
      }
    }
  }
  TruncatedSymmetric T;
  T.S = SH;
  T.r = r;
  T.exponents = ex;
  T.action = ModuleAlgebraAction{H, A, std::move(act)};
  return T;
}

}  // namespace dsupp
