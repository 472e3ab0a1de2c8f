#include "dsupp/structure.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "dsupp/poly.hpp"

namespace dsupp {

namespace {

// Least k with I^k = 0, or -1 when I is not nilpotent.  Uses I^{k+1} = sum_i g_i I^k
// for right-ideal generators g_i of the two-sided ideal I.
int nilpotency_index(const Algebra& A, const Subspace& I, const std::vector<Vec>& right_gens) {
  if (I.dim() == 0) return 1;
  std::vector<Vec> cur = I.basis();
  int k = 1, prev = I.dim();
  while (true) {
    Subspace next(A.field(), A.dim());
    for (const Vec& v : cur)
      for (const Vec& g : right_gens) next.add(A.mul(g, v));
    ++k;
    if (next.dim() == 0) return k;
    if (next.dim() >= prev) return -1;
    prev = next.dim();
    cur = next.basis();
  }
}

std::vector<Vec> right_ideal_generators(const Algebra& A, const Subspace& I) {
  Subspace U(A.field(), A.dim());
  std::vector<Vec> gens;
  for (const Vec& v : I.basis()) {
    if (U.contains(v)) continue;
    gens.push_back(v);
    for (int k = 0; k < A.dim(); ++k) {
      Vec w(A.dim(), 0);
      for (int i = 0; i < A.dim(); ++i)
        if (v[i]) A.add_basis_product(w, i, k, v[i]);
      U.add(w);
    }
    if (U.dim() == I.dim()) break;
  }
  return gens;
}

std::shared_ptr<RadicalData> try_augmentation(const AlgebraPtr& A) {
  if (!A->augmentation()) return nullptr;
  const auto& gens = algebra_generators(*A);
  const Field& F = A->F();
  Subspace I(A->field(), A->dim());
  for (int k = 0; k < A->dim(); ++k) {
    Vec v = A->basis(k);
    F.axpy(v.data(), F.neg((*A->augmentation())[k]), A->unit().data(), v.size());
    I.add(v);
  }
  std::vector<Vec> rg;
  for (const Vec& g : gens) {
    Vec v = g;
    F.axpy(v.data(), F.neg(A->augment(g)), A->unit().data(), v.size());
    if (!is_zero(v)) rg.push_back(v);
  }
  int k = nilpotency_index(*A, I, rg);
  if (k < 0) return nullptr;
  auto r = std::make_shared<RadicalData>(RadicalData{I, rg, k, "augmentation"});
  return r;
}

bool ideal_closed(const Algebra& A, const Subspace& R) {
  for (const Vec& g : algebra_generators(A))
    for (const Vec& v : R.basis())
      if (!R.contains(A.mul(g, v)) || !R.contains(A.mul(v, g))) return false;
  return true;
}

std::shared_ptr<RadicalData> try_smash(const AlgebraPtr& A, std::uint64_t seed) {
  if (!A->smash()) return nullptr;
  const AlgebraPtr& L = A->smash()->left;
  const AlgebraPtr& H = A->smash()->right;
  if (!is_local(L)) return nullptr;
  auto rl = radical(L, seed);
  auto rh = radical(H, seed);
  int nL = L->dim(), nH = H->dim();
  Subspace R(A->field(), A->dim());
  for (const Vec& m : rl->space.basis())
    for (int j = 0; j < nH; ++j) {
      Vec v(A->dim(), 0);
      for (int i = 0; i < nL; ++i) v[i * nH + j] = m[i];
      R.add(v);
    }
  for (int i = 0; i < nL; ++i)
    for (const Vec& r : rh->space.basis()) {
      Vec v(A->dim(), 0);
      for (int j = 0; j < nH; ++j) v[i * nH + j] = r[j];
      R.add(v);
    }
  int expected = A->dim() - (nH - rh->space.dim());
  if (R.dim() != expected || !ideal_closed(*A, R)) return nullptr;
  auto rg = right_ideal_generators(*A, R);
  int k = nilpotency_index(*A, R, rg);
  if (k < 0) return nullptr;
  return std::make_shared<RadicalData>(RadicalData{R, rg, k, "smash"});
}

std::shared_ptr<RadicalData> radical_meataxe(const AlgebraPtr& A, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Module reg = regular_module(A);
  std::vector<Module> simples;
  try {
    simples = composition_factors(reg, rng);
  } catch (const Error& e) {
    fail(Errc::RadicalNotComputable, e.what());
  }
  int rows = 0;
  for (const Module& S : simples) rows += S.dim() * S.dim();
  Matrix sys(A->field(), rows, A->dim());
  int off = 0;
  for (const Module& S : simples) {
    for (int k = 0; k < A->dim(); ++k)
      for (int r = 0; r < S.dim(); ++r)
        for (int c = 0; c < S.dim(); ++c) sys.at(off + r * S.dim() + c, k) = S.act(k)(r, c);
    off += S.dim() * S.dim();
  }
  Matrix K = nullspace(sys);
  Subspace R(A->field(), A->dim());
  for (int c = 0; c < K.cols(); ++c) R.add(K.column(c));
  auto rg = right_ideal_generators(*A, R);
  int k = nilpotency_index(*A, R, rg);
  require(k >= 0, Errc::RadicalNotComputable, "intersection of annihilators is not nilpotent");
  return std::make_shared<RadicalData>(RadicalData{R, rg, k, "meataxe"});
}

}  // namespace

std::shared_ptr<const RadicalData> radical(const AlgebraPtr& A, std::uint64_t seed) {
  if (auto c = A->cached_radical()) return c;
  std::shared_ptr<RadicalData> r = try_augmentation(A);
  if (!r) r = try_smash(A, seed);
  if (!r) r = radical_meataxe(A, seed);
  A->store_radical(r);
  return r;
}

bool is_local(const AlgebraPtr& A) { return radical(A)->space.dim() == A->dim() - 1; }

Subspace radical_submodule(const Module& M) {
  auto R = radical(M.algebra());
  Subspace W(M.field(), M.dim());
  for (const Vec& g : R->right_gens) {
    Matrix m = M.action(g);
    for (int c = 0; c < m.cols(); ++c) W.add(m.column(c));
  }
  return W;
}

namespace {

Subspace spin_mats(const FieldPtr& F, int n, const std::vector<Matrix>& gens, const Vec& v) {
  Subspace W(F, n);
  std::deque<Vec> q;
  if (W.add(v)) q.push_back(v);
  while (!q.empty() && W.dim() < n) {
    Vec x = std::move(q.front());
    q.pop_front();
    for (const Matrix& g : gens) {
      Vec y = g.apply(x);
      if (W.add(y)) q.push_back(std::move(y));
    }
  }
  return W;
}

}  // namespace

SplitResult meataxe_split(const Module& M, std::mt19937_64& rng) {
  int d = M.dim();
  SplitResult res;
  if (d <= 1) {
    res.irreducible = true;
    return res;
  }
  const FieldPtr& F = M.field();
  std::vector<Matrix> gens;
  for (const Vec& g : algebra_generators(*M.algebra())) gens.push_back(M.action(g));
  if (gens.empty()) gens.push_back(Matrix::identity(F, d));
  std::vector<Matrix> gensT;
  for (const Matrix& g : gens) gensT.push_back(g.transpose());
  std::vector<Matrix> pool = gens;
  std::uniform_int_distribution<int> coef(0, F->order() - 1);
  for (int attempt = 0; attempt < 400; ++attempt) {
    std::size_t a = rng() % pool.size(), b = rng() % pool.size();
    if (pool.size() < 24) pool.push_back(pool[a] * pool[b]);
    else pool[rng() % pool.size()] = pool[a] * pool[b];
    Matrix theta = Matrix::zero(F, d, d);
    for (const Matrix& m : pool) theta.add_scaled(m, Elem(coef(rng)));
    auto fac = factor(F, charpoly(theta), rng);
    for (const auto& [f, mult] : fac) {
      Matrix N = poly_eval_matrix(f, theta);
      Matrix K = nullspace(N);
      if (K.cols() == 0) continue;
      Subspace W = spin_mats(F, d, gens, K.column(0));
      if (W.dim() < d) {
        res.sub = W;
        return res;
      }
      Matrix KT = nullspace(N.transpose());
      Subspace WT = spin_mats(F, d, gensT, KT.column(0));
      if (WT.dim() < d) {
        Matrix ann = nullspace(Matrix::from_rows(F, d, WT.basis()));
        Subspace S(F, d);
        for (int c = 0; c < ann.cols(); ++c) S.add(ann.column(c));
        res.sub = S;
        return res;
      }
      if (K.cols() == poly_deg(f)) {
        res.irreducible = true;
        return res;
      }
    }
  }
  fail(Errc::DecompositionFailed, "MeatAxe attempt budget exhausted");
}

std::vector<Module> composition_factors(const Module& M, std::mt19937_64& rng) {
  std::vector<Module> out;
  std::vector<Module> work{M};
  while (!work.empty()) {
    Module X = std::move(work.back());
    work.pop_back();
    if (X.dim() == 0) continue;
    SplitResult s = meataxe_split(X, rng);
    if (s.irreducible) {
      out.push_back(std::move(X));
      continue;
    }
    work.push_back(quotient_module(X, s.sub).module);
    work.push_back(submodule(X, s.sub).module);
  }
  return out;
}

namespace {

// Minimal polynomial of x in the corner algebra with identity e.
Poly minimal_poly(const Algebra& A, const Vec& e, const Vec& x) {
  const FieldPtr& F = A.field();
  std::vector<Vec> powers{e};
  while (true) {
    Vec next = A.mul(powers.back(), x);
    Matrix P = Matrix::from_columns(F, A.dim(), powers);
    if (auto c = solve_vector(P, next)) {
      Poly mu(powers.size() + 1);
      for (std::size_t i = 0; i < powers.size(); ++i) mu[i] = F->neg((*c)[i]);
      mu.back() = 1;
      return mu;
    }
    powers.push_back(next);
  }
}

Vec eval_in(const Algebra& A, const Poly& f, const Vec& e, const Vec& x) {
  const Field& F = A.F();
  Vec acc(A.dim(), 0);
  for (int i = poly_deg(f); i >= 0; --i) {
    acc = A.mul(acc, x);
    F.axpy(acc.data(), f[i], e.data(), acc.size());
  }
  return acc;
}

Subspace corner(const Algebra& A, const Vec& e) {
  Subspace C(A.field(), A.dim());
  for (int k = 0; k < A.dim(); ++k) C.add(A.mul(A.mul(e, A.basis(k)), e));
  return C;
}

std::vector<Vec> primitive_idempotents(const Algebra& A, std::mt19937_64& rng) {
  const FieldPtr& F = A.field();
  std::vector<Vec> work{A.unit()}, out;
  std::uniform_int_distribution<int> coef(0, F->order() - 1);
  while (!work.empty()) {
    Vec e = work.back();
    work.pop_back();
    Subspace C = corner(A, e);
    if (C.dim() == 1) {
      out.push_back(e);
      continue;
    }
    bool done = false;
    for (int attempt = 0; attempt < 200 && !done; ++attempt) {
      Vec r(A.dim(), 0);
      for (const Vec& b : C.basis()) F->axpy(r.data(), Elem(coef(rng)), b.data(), r.size());
      Poly mu = minimal_poly(A, e, r);
      auto fac = factor(F, mu, rng);
      if (fac.size() >= 2) {
        Poly f1{1};
        for (int i = 0; i < fac[0].second; ++i) f1 = poly_mul(*F, f1, fac[0].first);
        Poly g, rem;
        poly_divmod(*F, mu, f1, g, rem);
        Poly u, v;
        poly_xgcd(*F, g, f1, u, v);  // u g + v f1 = 1
        Poly idem = poly_mod(*F, poly_mul(*F, u, g), mu);
        Vec eps = eval_in(A, idem, e, r);
        Vec rest = e;
        F->axpy(rest.data(), F->neg(1), eps.data(), rest.size());
        work.push_back(rest);
        work.push_back(eps);
        done = true;
      } else if (fac[0].second == 1 && poly_deg(mu) == C.dim()) {
        out.push_back(e);
        done = true;
      }
    }
    if (!done) fail(Errc::DecompositionFailed, "could not split idempotent");
  }
  return out;
}

Vec lift_idempotent(const Algebra& A, Vec x) {
  const Field& F = A.F();
  for (int it = 0; it < 64; ++it) {
    Vec x2 = A.mul(x, x);
    if (x2 == x) return x;
    Vec x3 = A.mul(x2, x);
    Vec y(A.dim(), 0);
    F.axpy(y.data(), F.from_int(3), x2.data(), y.size());
    F.axpy(y.data(), F.from_int(-2), x3.data(), y.size());
    x = std::move(y);
  }
  fail(Errc::LiftDiverged, "idempotent lifting did not converge");
}

}  // namespace

std::shared_ptr<const PimData> pims(const AlgebraPtr& A, std::uint64_t seed) {
  if (auto c = A->cached_pims()) return c;
  auto data = std::make_shared<PimData>();
  auto R = radical(A, seed);
  Module reg = regular_module(A);
  if (R->space.dim() == A->dim() - 1 && A->augmentation()) {
    data->local = true;
    PimClass c;
    c.idempotent = A->unit();
    c.space = Subspace(A->field(), A->dim());
    for (int k = 0; k < A->dim(); ++k) c.space.add(A->basis(k));
    c.pim = reg;
    c.simple = trivial_module(A);
    data->classes.push_back(std::move(c));
    A->store_pims(data);
    return data;
  }
  std::mt19937_64 rng(seed);
  QuotientAlgebra Q = quotient_algebra(A, R->space);
  const Algebra& Ab = *Q.algebra;
  std::vector<Vec> prim = primitive_idempotents(Ab, rng);
  std::vector<std::vector<Vec>> groups;
  for (const Vec& e : prim) {
    bool placed = false;
    for (auto& g : groups) {
      Subspace link(Ab.field(), Ab.dim());
      for (int k = 0; k < Ab.dim() && link.dim() == 0; ++k) link.add(Ab.mul(Ab.mul(g[0], Ab.basis(k)), e));
      if (link.dim() > 0) {
        g.push_back(e);
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({e});
  }
  int total = 0;
  for (auto& g : groups) {
    PimClass c;
    c.idempotent = lift_idempotent(*A, Q.lift(g[0]));
    c.space = Subspace(A->field(), A->dim());
    for (int k = 0; k < A->dim(); ++k) c.space.add(A->mul(A->basis(k), c.idempotent));
    c.pim = submodule(reg, c.space).module;
    Subspace rp = radical_submodule(c.pim);
    c.simple = quotient_module(c.pim, rp).module;
    c.end_dim = corner(Ab, g[0]).dim();
    c.multiplicity = int(g.size());
    total += c.multiplicity * c.pim.dim();
    data->classes.push_back(std::move(c));
  }
  require(total == A->dim(), Errc::DecompositionFailed, "PIM dimensions do not add up");
  std::stable_sort(data->classes.begin(), data->classes.end(), [](const PimClass& a, const PimClass& b) {
    if (a.simple.dim() != b.simple.dim()) return a.simple.dim() < b.simple.dim();
    return a.pim.dim() < b.pim.dim();
  });
  A->store_pims(data);
  return data;
}

std::vector<SimpleModule> simple_tops(const AlgebraPtr& A) {
  std::vector<SimpleModule> out;
  for (const PimClass& c : pims(A)->classes) out.push_back({c.simple, c.end_dim, c.multiplicity});
  return out;
}

TopResult top(const Module& M) {
  Subspace R = radical_submodule(M);
  QuotientResult q = quotient_module(M, R);
  return {q.module, q.columns, R};
}

namespace {

// Number of copies of each simple in a semisimple module T.
std::vector<int> top_multiplicities(const PimData& P, const Module& T) {
  std::vector<int> c;
  for (const PimClass& cl : P.classes) {
    int r = rank(T.action(cl.idempotent));
    require(r % cl.end_dim == 0, Errc::DecompositionFailed, "top multiplicity");
    c.push_back(r / cl.end_dim);
  }
  return c;
}

}  // namespace

bool is_projective(const Module& M) {
  if (M.dim() == 0) return true;
  const AlgebraPtr& A = M.algebra();
  auto P = pims(A);
  TopResult t = top(M);
  if (P->local) return M.dim() == A->dim() * t.top.dim();
  auto c = top_multiplicities(*P, t.top);
  long long cover = 0;
  for (std::size_t i = 0; i < c.size(); ++i) cover += (long long)c[i] * P->classes[i].pim.dim();
  return cover == M.dim();
}

std::vector<int> Resolution::betti() const {
  std::vector<int> b;
  for (const auto& s : steps) b.push_back(int(s.summand_class.size()));
  return b;
}

std::vector<std::vector<int>> Resolution::betti_by_class() const {
  auto P = pims(algebra);
  std::vector<std::vector<int>> out;
  for (const auto& s : steps) {
    std::vector<int> c(P->classes.size(), 0);
    for (int k : s.summand_class) ++c[k];
    out.push_back(c);
  }
  return out;
}

Matrix Resolution::differential(int i) const {
  require(i >= 1 && i < int(steps.size()), Errc::InvalidArgument, "differential degree");
  return steps[i - 1].kernel * steps[i].cover;
}

namespace {

// The kernel W inside the direct sum of PIMs as a module, acting block by block
// so the sum itself is never materialized.
Module kernel_module(const PimData& P, const std::vector<int>& cls, const std::vector<int>& offsets,
                     const Subspace& W) {
  const AlgebraPtr& A = P.classes.at(cls.at(0)).pim.algebra();
  const FieldPtr& F = A->field();
  int d = W.dim(), total = W.ambient();
  Matrix inc = Matrix::from_columns(F, total, W.basis());
  const auto& piv = W.pivots();
  std::vector<Matrix> act;
  act.reserve(A->dim());
  for (int k = 0; k < A->dim(); ++k) {
    Matrix img(F, total, d);
    for (std::size_t j = 0; j < cls.size(); ++j) {
      const Matrix& a = P.classes[cls[j]].pim.act(k);
      int o = offsets[j], n = a.rows();
      Matrix blk = a * inc.block(o, 0, n, d);
      for (int i = 0; i < n; ++i) std::copy(blk.row(i), blk.row(i) + d, img.row(o + i));
    }
    Matrix m(F, d, d);
    for (int i = 0; i < d; ++i) std::copy(img.row(piv[i]), img.row(piv[i]) + d, m.row(i));
    act.push_back(std::move(m));
  }
  return Module(A, d, std::move(act));
}

}  // namespace

Resolution minimal_resolution(const Module& M, int n_max) {
  require(n_max >= 0 && n_max <= kMaxResolutionDepth, Errc::DepthBudgetExceeded,
          "n_max = " + std::to_string(n_max));
  const AlgebraPtr& A = M.algebra();
  auto P = pims(A);
  Resolution res;
  res.algebra = A;
  Module cur = M;
  for (int deg = 0; deg <= n_max; ++deg) {
    ResolutionStep st;
    st.syzygy = cur;
    // choose generators of the top, class by class
    Subspace U = radical_submodule(cur);
    std::vector<Vec> gens;
    std::vector<int> cls;
    if (P->local) {
      for (int c : U.complement_columns()) {
        gens.push_back(unit_vector(cur.dim(), c));
        cls.push_back(0);
      }
    } else {
      for (int k = 0; k < int(P->classes.size()) && U.dim() < cur.dim(); ++k) {
        Matrix E = cur.action(P->classes[k].idempotent);
        for (int c = 0; c < E.cols() && U.dim() < cur.dim(); ++c) {
          Vec v = E.column(c);
          if (U.contains(v)) continue;
          gens.push_back(v);
          cls.push_back(k);
          Subspace S = spin(cur, {v});
          for (const Vec& w : S.basis()) U.add(w);
        }
      }
      require(U.dim() == cur.dim(), Errc::DecompositionFailed, "projective cover generators");
    }
    int total = 0;
    for (int k : cls) {
      st.offsets.push_back(total);
      total += P->classes[k].pim.dim();
    }
    Matrix cover(A->field(), cur.dim(), total);
    for (std::size_t j = 0; j < cls.size(); ++j) {
      const PimClass& pc = P->classes[cls[j]];
      const auto& basis = pc.space.basis();
      for (std::size_t b = 0; b < basis.size(); ++b) cover.set_column(st.offsets[j] + int(b), cur.apply(basis[b], gens[j]));
    }
    st.summand_class = cls;
    st.generators = gens;
    st.cover = cover;
    Matrix K = nullspace(cover);
    Subspace W(A->field(), total);
    for (int c = 0; c < K.cols(); ++c) W.add(K.column(c));
    st.kernel = Matrix::from_columns(A->field(), total, W.basis());
    if (deg < n_max) {
      double bytes = double(A->dim()) * W.dim() * W.dim() * sizeof(Elem);
      require(bytes <= kResolutionStorageBytes, Errc::DepthBudgetExceeded,
              "syzygy " + std::to_string(deg + 1) + " of dimension " + std::to_string(W.dim()) +
                  " exceeds the storage budget");
      cur = kernel_module(*P, cls, st.offsets, W);
    }
    res.steps.push_back(std::move(st));
  }
  return res;
}

}  // namespace dsupp
