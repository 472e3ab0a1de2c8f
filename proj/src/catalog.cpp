#include "dsupp/catalog.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "dsupp/structure.hpp"

namespace dsupp {

int MonomialBasis::index(const std::vector<int>& e) const {
  int idx = 0;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (e[i] < 0 || e[i] >= bounds[i]) return -1;
    idx = idx * bounds[i] + e[i];
  }
  return idx;
}

int MonomialBasis::generator(int i) const {
  std::vector<int> e(bounds.size(), 0);
  e[i] = 1;
  return index(e);
}

MonomialBasis monomial_basis(const std::vector<int>& bounds) {
  MonomialBasis mb;
  mb.bounds = bounds;
  int n = 1;
  for (int b : bounds) n *= b;
  mb.exps.assign(n, std::vector<int>(bounds.size()));
  for (int m = 0; m < n; ++m) {
    int x = m;
    for (int i = int(bounds.size()) - 1; i >= 0; --i) {
      mb.exps[m][i] = x % bounds[i];
      x /= bounds[i];
    }
  }
  return mb;
}

AlgebraPtr monomial_algebra(const FieldPtr& F, const std::vector<std::string>& names, const std::vector<int>& bounds) {
  MonomialBasis mb = monomial_basis(bounds);
  int n = mb.size(), d = int(bounds.size());
  std::vector<std::string> labels;
  for (int m = 0; m < n; ++m) {
    std::string s;
    for (int i = 0; i < d; ++i) {
      if (!mb.exps[m][i]) continue;
      if (!s.empty()) s += " ";
      s += names[i];
      if (mb.exps[m][i] > 1) s += "^" + std::to_string(mb.exps[m][i]);
    }
    labels.push_back(s.empty() ? "1" : s);
  }
  MultTableBuilder b(n);
  std::vector<int> e(d);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      for (int i = 0; i < d; ++i) e[i] = mb.exps[x][i] + mb.exps[y][i];
      int k = mb.index(e);
      if (k >= 0) b.set_sparse(x, y, {{k, 1}});
    }
  auto A = std::make_shared<Algebra>(F, labels, b.finish(), unit_vector(n, 0), unit_vector(n, 0));
  std::vector<Vec> gens;
  for (int i = 0; i < d; ++i) gens.push_back(unit_vector(n, mb.generator(i)));
  A->set_generators(gens);
  return A;
}

namespace {

using Tensor = std::map<std::pair<int, int>, Elem>;

void tensor_add(Tensor& t, int a, int b, Elem c, const Field& F) {
  if (!c) return;
  Elem& e = t[{a, b}];
  e = F.add(e, c);
  if (!e) t.erase({a, b});
}

Tensor tensor_mul(const Algebra& A, const Tensor& x, const Tensor& y) {
  const Field& F = A.F();
  Tensor out;
  for (auto& [k1, c1] : x)
    for (auto& [k2, c2] : y) {
      auto ra = A.table().get(k1.first, k2.first);
      auto rb = A.table().get(k1.second, k2.second);
      Elem c = F.mul(c1, c2);
      for (std::size_t s = 0; s < ra.size; ++s)
        for (std::size_t t = 0; t < rb.size; ++t) tensor_add(out, ra.idx[s], rb.idx[t], F.mul(c, F.mul(ra.val[s], rb.val[t])), F);
    }
  return out;
}

// sum of u (x) v
std::vector<Coproduct::Term> outer(const Vec& u, const Vec& v, const Field& F, Elem scale = 1) {
  std::vector<Coproduct::Term> t;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i])
      for (std::size_t j = 0; j < v.size(); ++j)
        if (v[j]) t.push_back({std::uint16_t(i), std::uint16_t(j), F.mul(scale, F.mul(u[i], v[j]))});
  return t;
}

void append(std::vector<Coproduct::Term>& a, const std::vector<Coproduct::Term>& b) { a.insert(a.end(), b.begin(), b.end()); }

}  // namespace

HopfPtr coordinate_hopf(const FieldPtr& Fp, const CoordinateRingSpec& spec) {
  const Field& F = *Fp;
  AlgebraPtr O = monomial_algebra(Fp, spec.names, spec.bounds);
  MonomialBasis mb = monomial_basis(spec.bounds);
  int n = mb.size(), d = int(spec.bounds.size());
  std::vector<Tensor> gdelta(d);
  for (int i = 0; i < d; ++i)
    for (auto& t : spec.delta[i]) tensor_add(gdelta[i], t.a, t.b, t.c, F);
  std::vector<Tensor> delta(n);
  std::vector<Vec> S(n);
  delta[0][{0, 0}] = 1;
  S[0] = unit_vector(n, 0);
  for (int m = 1; m < n; ++m) {
    int i = 0;
    while (mb.exps[m][i] == 0) ++i;
    std::vector<int> rest = mb.exps[m];
    --rest[i];
    int mr = mb.index(rest);
    delta[m] = tensor_mul(*O, gdelta[i], delta[mr]);
    S[m] = O->mul(spec.antipode[i], S[mr]);
  }
  auto D = std::make_shared<Coproduct>(n);
  for (int m = 0; m < n; ++m) {
    std::vector<Coproduct::Term> row;
    for (auto& [k, c] : delta[m]) row.push_back({std::uint16_t(k.first), std::uint16_t(k.second), c});
    D->push_row(row);
  }
  return std::make_shared<HopfAlgebra>(O, D, unit_vector(n, 0), Matrix::from_columns(Fp, n, S));
}

HopfPtr additive_coordinate_ring(const FieldPtr& F, int s) {
  int N = 1;
  for (int i = 0; i < s; ++i) N *= F->p();
  CoordinateRingSpec spec;
  spec.names = {"t"};
  spec.bounds = {N};
  spec.delta = {{{1, 0, 1}, {0, 1, 1}}};
  Vec st(N, 0);
  st[1] = F->neg(1);
  spec.antipode = {st};
  return coordinate_hopf(F, spec);
}

HopfPtr additive_group_algebra(const FieldPtr& F, int s) { return dual_hopf(*additive_coordinate_ring(F, s)); }

std::string canonical_group_name(const std::string& g) {
  std::string s;
  for (char c : g) s += char(std::tolower(static_cast<unsigned char>(c)));
  if (s == "ga" || s == "ga_r" || s == "ga1" || s == "ga2" || s == "ga_1" || s == "ga_2") return "Ga";
  if (s == "sl2" || s == "sl2_1") return "SL2";
  if (s == "borel" || s == "b" || s == "borel2_1" || s == "b1") return "Borel";
  if (s == "u" || s == "u2_1" || s == "u1" || s == "unipotent") return "U";
  fail(Errc::UnsupportedCatalogEntry, "unknown group '" + g + "'");
}

std::string GroupSchemeBundle::id() const { return name + "/p" + std::to_string(p) + "/" + F->name(); }

namespace {

ModuleAlgebraAction action_over(const ModuleAlgebraAction& a, const HopfPtr& H, const AlgebraPtr& A, const FieldPtr& K) {
  ModuleAlgebraAction r{H, A, {}};
  for (auto& m : a.act) r.act.push_back(m.over(K));
  return r;
}

}  // namespace

BundlePtr GroupSchemeBundle::over(const FieldPtr& K) const {
  require(K->p() == p, Errc::FieldMismatch, "characteristic mismatch");
  if (same_field(F, K)) return shared_from_this();
  std::lock_guard<std::mutex> l(over_cache_->mu);
  auto it = over_cache_->by_degree.find(K->degree());
  if (it != over_cache_->by_degree.end()) return it->second;
  auto b = std::make_shared<GroupSchemeBundle>();
  b->name = name;
  b->kind = kind;
  b->p = p;
  b->r = r;
  b->F = K;
  b->monomials = monomials;
  b->OG = OG->over(K);
  b->kG = kG->over(K);
  b->adjoint = action_over(adjoint, b->kG, b->OG->algebra(), K);
  b->lie = lie;
  b->dual_names = dual_names;
  b->coadjoint = base_change(coadjoint, K);
  b->coadjoint = Module(b->kG->algebra(), b->coadjoint.dim(), b->coadjoint.actions());
  b->seed = seed.over(K);
  b->S.S = S.S->over(K);
  b->S.r = S.r;
  b->S.exponents = S.exponents;
  b->S.action = action_over(S.action, b->kG, b->S.S->algebra(), K);
  b->a0 = a0.over(K);
  b->sigma = sigma->over(K);
  b->D = D->over(K);
  b->al = al.over(K);
  over_cache_->by_degree[K->degree()] = b;
  return b;
}

namespace {

Vec scaled(const Field& F, const Vec& v, Elem c) {
  Vec r(v);
  F.scale(r.data(), c, r.size());
  return r;
}
Vec added(const Field& F, const Vec& a, const Vec& b, Elem c = 1) {
  Vec r(a);
  F.axpy(r.data(), c, b.data(), r.size());
  return r;
}

// Derivation of the commutative monomial algebra with given values on generators.
Matrix derivation_matrix(const Algebra& O, const MonomialBasis& mb, const std::vector<Vec>& on_gens) {
  const Field& F = O.F();
  int n = O.dim(), d = int(mb.bounds.size());
  Matrix D(O.field(), n, n);
  for (int m = 0; m < n; ++m) {
    Vec out(n, 0);
    for (int i = 0; i < d; ++i) {
      int ei = mb.exps[m][i];
      if (!ei) continue;
      std::vector<int> rest = mb.exps[m];
      --rest[i];
      Vec t = O.mul(unit_vector(n, mb.index(rest)), on_gens[i]);
      F.axpy(out.data(), F.from_int(ei), t.data(), n);
    }
    D.set_column(m, out);
  }
  return D;
}

}  // namespace

BundlePtr build_bundle(const std::string& group, int p, int r) {
  std::string g = canonical_group_name(group);
  auto b = std::make_shared<GroupSchemeBundle>();
  b->p = p;
  b->r = r;
  bool ok = false;
  if (g == "Ga") ok = (p == 2 || p == 3 || p == 5) && (r == 1 || r == 2);
  if (g == "SL2") ok = (p == 3 || p == 5) && r == 1;
  if (g == "Borel" || g == "U") ok = (p == 3 || p == 5) && r == 1;
  require(ok, Errc::UnsupportedCatalogEntry, g + " at p=" + std::to_string(p) + ", r=" + std::to_string(r));
  if (g == "SL2") {
    long long dimD = 1;
    for (int i = 0; i < 6; ++i) dimD *= p;
    require(dimD <= kMaxDoubleDim, Errc::DimensionTooLarge, "double of SL2 at p=" + std::to_string(p) + " has dimension " + std::to_string(dimD));
  }
  FieldPtr Fp = make_field(p, 1);
  const Field& F = *Fp;
  b->F = Fp;
  CoordinateRingSpec spec;
  if (g == "Ga") {
    b->kind = GroupKind::Ga;
    b->name = "Ga_" + std::to_string(r);
    int N = r == 1 ? p : p * p;
    spec.names = {"x"};
    spec.bounds = {N};
    b->lie = {{"u"}, {}};
    b->dual_names = {"xi"};
  } else if (g == "U") {
    b->kind = GroupKind::Unipotent;
    b->name = "U2_1";
    spec.names = {"b"};
    spec.bounds = {p};
    b->lie = {{"e"}, {}};
    b->dual_names = {"xi_e"};
  } else if (g == "Borel") {
    b->kind = GroupKind::Borel;
    b->name = "Borel2_1";
    spec.names = {"z", "b"};
    spec.bounds = {p, p};
    b->lie = {{"h", "e"}, {}};
    b->dual_names = {"xi_h", "xi_e"};
  } else {
    b->kind = GroupKind::SL2;
    b->name = "SL2_1";
    spec.names = {"z", "b", "c"};
    spec.bounds = {p, p, p};
    b->lie = {{"h", "e", "f"}, {}};
    b->dual_names = {"xi_h", "xi_e", "xi_f"};
  }
  b->monomials = monomial_basis(spec.bounds);
  const MonomialBasis& mb = b->monomials;
  AlgebraPtr O0 = monomial_algebra(Fp, spec.names, spec.bounds);
  int n = O0->dim(), d = int(spec.bounds.size());
  Vec one = unit_vector(n, 0);
  auto gen = [&](int i) { return unit_vector(n, mb.generator(i)); };
  // a = 1 + z, a^{-1} = a^{p-1}, d = a^{-1}(1 + bc)
  Vec a, ainv, dd;
  if (b->kind == GroupKind::Borel || b->kind == GroupKind::SL2) {
    a = added(F, one, gen(0));
    ainv = O0->pow(a, p - 1);
    if (b->kind == GroupKind::SL2) dd = O0->mul(ainv, added(F, one, O0->mul(gen(1), gen(2))));
  }
  Elem m1 = F.neg(1);
  switch (b->kind) {
    case GroupKind::Ga:
    case GroupKind::Unipotent:
      spec.delta = {{{std::uint16_t(mb.generator(0)), 0, 1}, {0, std::uint16_t(mb.generator(0)), 1}}};
      spec.antipode = {scaled(F, gen(0), m1)};
      break;
    case GroupKind::Borel: {
      std::vector<Coproduct::Term> dz = outer(a, a, F);
      append(dz, outer(one, one, F, m1));
      std::vector<Coproduct::Term> db = outer(a, gen(1), F);
      append(db, outer(gen(1), ainv, F));
      spec.delta = {dz, db};
      spec.antipode = {added(F, ainv, one, m1), scaled(F, gen(1), m1)};
      break;
    }
    case GroupKind::SL2: {
      std::vector<Coproduct::Term> dz = outer(a, a, F);
      append(dz, outer(gen(1), gen(2), F));
      append(dz, outer(one, one, F, m1));
      std::vector<Coproduct::Term> db = outer(a, gen(1), F);
      append(db, outer(gen(1), dd, F));
      std::vector<Coproduct::Term> dc = outer(gen(2), a, F);
      append(dc, outer(dd, gen(2), F));
      spec.delta = {dz, db, dc};
      spec.antipode = {added(F, dd, one, m1), scaled(F, gen(1), m1), scaled(F, gen(2), m1)};
      break;
    }
  }
  b->OG = coordinate_hopf(Fp, spec);
  {
    HopfCheckReport rep = check_hopf(*b->OG);
    require(rep.ok(), Errc::HopfAxiomFailure, "O(G): " + rep.summary());
  }
  const Algebra& O = b->OG->alg();
  b->kG = dual_hopf(*b->OG);
  const Algebra& kGa = b->kG->alg();
  int nk = kGa.dim();
  for (int i = 0; i < d; ++i) b->lie.basis.push_back(unit_vector(nk, mb.generator(i)));
  if (r == 1) kGa.set_generators(b->lie.basis);

  // Adjoint action: Lie elements act by derivations, extended along PBW monomials.
  std::vector<Matrix> act;
  if (b->kind == GroupKind::Ga) {
    for (int h = 0; h < nk; ++h) act.push_back(Matrix::identity(Fp, n).scaled(b->kG->counit()[h]));
  } else {
    Elem two = F.from_int(2);
    std::vector<std::vector<Vec>> vals;  // vals[X][generator]
    Vec zero(n, 0);
    if (b->kind == GroupKind::Unipotent) {
      vals = {{zero}};  // e.b = a - d = 0
    } else if (b->kind == GroupKind::Borel) {
      vals = {{zero, scaled(F, gen(1), F.neg(two))},  // h
              {zero, added(F, a, ainv, m1)}};         // e
    } else {
      vals = {{zero, scaled(F, gen(1), F.neg(two)), scaled(F, gen(2), two)},  // h
              {scaled(F, gen(2), m1), added(F, a, dd, m1), zero},              // e
              {gen(1), zero, added(F, dd, a, m1)}};                            // f
    }
    std::vector<Matrix> Dx;
    for (auto& v : vals) Dx.push_back(derivation_matrix(O, mb, v));
    // PBW monomials X_1^{i_1} ... X_d^{i_d}, i_k < p
    MonomialBasis pbw = monomial_basis(std::vector<int>(d, p));
    std::vector<Vec> cols;
    std::vector<Matrix> ops;
    for (int m = 0; m < pbw.size(); ++m) {
      Vec w = kGa.unit();
      Matrix op = Matrix::identity(Fp, n);
      for (int i = d - 1; i >= 0; --i)
        for (int k = 0; k < pbw.exps[m][i]; ++k) {
          w = kGa.mul(b->lie.basis[i], w);
          op = Dx[i] * op;
        }
      cols.push_back(w);
      ops.push_back(op);
    }
    Matrix P = Matrix::from_columns(Fp, nk, cols);
    require(rank(P) == nk, Errc::EquivarianceFailure, "PBW monomials do not span kG");
    Matrix Pinv = inverse(P);
    for (int h = 0; h < nk; ++h) {
      Matrix M(Fp, n, n);
      for (int k = 0; k < nk; ++k)
        if (Pinv(k, h)) M.add_scaled(ops[k], Pinv(k, h));
      act.push_back(M);
    }
  }
  b->adjoint = ModuleAlgebraAction{b->kG, b->OG->algebra(), act};
  check_module_algebra(b->adjoint);
  for (int h = 0; h < nk; ++h)
    for (int f = 0; f < n; ++f)
      require(b->OG->counit_of(act[h].column(f)) == F.mul(b->kG->counit()[h], b->OG->counit()[f]),
              Errc::ActionNotModuleAlgebra, "adjoint action does not fix the counit");

  // g^* = m / m^2, spanned by the classes of the coordinate generators
  {
    std::vector<Matrix> ca;
    for (int h = 0; h < nk; ++h) {
      Matrix M(Fp, d, d);
      for (int i = 0; i < d; ++i) {
        Vec v = act[h].column(mb.generator(i));
        for (int j = 0; j < d; ++j) M.at(j, i) = v[mb.generator(j)];
      }
      ca.push_back(M);
    }
    b->coadjoint = Module(b->kG->algebra(), d, ca);
    require(check_module(b->coadjoint), Errc::ActionNotModuleAlgebra, "coadjoint action");
  }

  // quasi-logarithm seed g^* -> m
  std::vector<Vec> seed;
  switch (b->kind) {
    case GroupKind::Ga:
    case GroupKind::Unipotent:
      seed = {gen(0)};
      break;
    case GroupKind::Borel:
      seed = {scaled(F, added(F, a, ainv, m1), F.inv(F.from_int(2))), gen(1)};
      break;
    case GroupKind::SL2:
      seed = {scaled(F, added(F, a, dd, m1), F.inv(F.from_int(2))), gen(1), gen(2)};
      break;
  }
  for (int i = 0; i < d; ++i) {
    require(seed[i][0] == 0, Errc::EquivarianceFailure, "seed leaves the augmentation ideal");
    for (int j = 0; j < d; ++j)
      require(seed[i][mb.generator(j)] == (i == j ? 1 : 0), Errc::EquivarianceFailure,
              "seed does not split m -> m/m^2");
  }
  b->seed = Matrix::from_columns(Fp, n, seed);

  b->S = truncated_symmetric(b->coadjoint, b->kG, r, b->dual_names);
  const Algebra& Sa = b->S.S->alg();
  require(Sa.dim() == n, Errc::DimensionMismatch, "dim S_r(g^*) != dim O(G)");
  {
    std::vector<Vec> cols;
    for (auto& e : b->S.exponents) {
      Vec v = one;
      for (int i = 0; i < d; ++i)
        for (int k = 0; k < e[i]; ++k) v = O.mul(v, seed[i]);
      cols.push_back(v);
    }
    b->a0 = Matrix::from_columns(Fp, n, cols);
  }
  std::string why;
  require(is_algebra_map(b->a0, Sa, O, &why), Errc::NotAlgebraMap, "a0: " + why);
  require(rank(b->a0) == n, Errc::NotAlgebraMap, "a0 is not bijective");
  for (int h = 0; h < nk; ++h)
    require(act[h] * b->a0 == b->a0 * b->S.action.act[h], Errc::EquivarianceFailure,
            "a0 is not equivariant at " + kGa.labels()[h]);

  b->sigma = bosonize(b->S.action, *b->S.S);
  b->D = drinfeld_double(b->adjoint, *b->OG);
  b->al = kronecker(b->a0, Matrix::identity(Fp, nk));
  require(is_algebra_map(b->al, b->sigma->alg(), b->D->alg(), &why), Errc::NotAlgebraMap, "a(l): " + why);
  return b;
}

Matrix inclusion_O(const GroupSchemeBundle& b) {
  return kronecker(Matrix::identity(b.F, b.OG->dim()), Matrix::from_columns(b.F, b.kG->dim(), {b.kG->alg().unit()}));
}

Matrix inclusion_kG(const GroupSchemeBundle& b) {
  return kronecker(Matrix::from_columns(b.F, b.OG->dim(), {b.OG->alg().unit()}), Matrix::identity(b.F, b.kG->dim()));
}

std::string OneParamSubgroup::label() const {
  std::string s = K->name() + ":s" + std::to_string(this->s) + ":[";
  for (std::size_t i = 0; i < data.size(); ++i) s += (i ? "," : "") + std::to_string(data[i]);
  return s + "]";
}

OneParamSubgroup make_one_param(const GroupSchemeBundle& b, const FieldPtr& K, int s, const Vec& data) {
  require(K->p() == b.p, Errc::FieldMismatch, "characteristic mismatch");
  require(!is_zero(data), Errc::InvalidArgument, "zero one-parameter data");
  BundlePtr bK = b.over(K);
  const Field& F = *K;
  OneParamSubgroup o;
  o.s = s;
  o.K = K;
  o.data = data;
  o.source = additive_group_algebra(K, s);
  int ns = o.source->dim(), nk = bK->kG->dim();
  if (b.kind == GroupKind::Ga) {
    require(s >= 1 && s <= b.r && int(data.size()) == s, Errc::InvalidArgument, "additive embedding data");
    require(data[0] != 0, Errc::InvalidArgument, "additive embedding needs a nonzero linear term");
    // x -> l0 t + l1 t^p in K[t]/(t^{p^s}); psi is the transpose on duals
    HopfPtr Os = additive_coordinate_ring(K, s);
    const Algebra& A = Os->alg();
    Vec img(ns, 0);
    img[1] = data[0];
    if (s == 2) img[b.p] = data[1];
    Matrix phi(K, ns, nk);
    Vec pw = A.unit();
    for (int k = 0; k < nk; ++k) {
      phi.set_column(k, pw);
      pw = A.mul(pw, img);
    }
    o.psi = phi.transpose();
  } else {
    require(s == 1 && data.size() == b.lie.basis.size(), Errc::InvalidArgument, "Lie coefficient vector");
    const Algebra& kG = bK->kG->alg();
    Vec X(nk, 0);
    for (std::size_t i = 0; i < data.size(); ++i) F.axpy(X.data(), data[i], b.lie.basis[i].data(), nk);
    require(is_zero(kG.pow(X, b.p)), Errc::NotNilpotent, "X^[p] != 0");
    Matrix psi(K, nk, ns);
    Vec pw = kG.unit();
    Elem fact = 1;
    for (int i = 0; i < ns; ++i) {
      if (i > 0) fact = F.mul(fact, F.from_int(i));
      Vec c = pw;
      F.scale(c.data(), F.inv(fact), nk);
      psi.set_column(i, c);
      pw = kG.mul(pw, X);
    }
    o.psi = psi;
  }
  std::string why;
  require(is_hopf_map(o.psi, *o.source, *bK->kG, &why), Errc::NotAlgebraMap, "psi is not a Hopf map: " + why);
  require(rank(o.psi) == ns, Errc::NotAlgebraMap, "psi is not injective");
  return o;
}

std::vector<Vec> vectors_of_degree(const Field& K, int len, bool up_to_scalar, int first_nonzero_pos) {
  std::vector<Vec> out;
  int q = K.order();
  Vec v(len, 0);
  while (true) {
    // degree of the field generated by the coordinates (lcm of their degrees)
    int gen = 1;
    for (Elem x : v) {
      int dx = subfield_degree(K, x);
      int a = gen, c = dx;
      while (c) {
        int t = a % c;
        a = c;
        c = t;
      }
      gen = gen / a * dx;
    }
    bool keep = !is_zero(v) && gen == K.degree();
    if (keep && up_to_scalar) {
      int f = 0;
      while (v[f] == 0) ++f;
      keep = v[f] == 1;
    }
    if (keep && first_nonzero_pos >= 0) keep = v[first_nonzero_pos] != 0;
    if (keep) out.push_back(v);
    int i = len - 1;
    while (i >= 0 && v[i] == q - 1) v[i--] = 0;
    if (i < 0) break;
    ++v[i];
  }
  return out;
}


std::vector<OneParamSubgroup> enumerate_one_param(const GroupSchemeBundle& b, int e_max, bool up_to_scalar) {
  std::vector<OneParamSubgroup> out;
  for (int e = 1; e <= e_max; ++e) {
    FieldPtr K = make_field(b.p, e);
    if (b.kind == GroupKind::Ga) {
      for (int s = 1; s <= b.r; ++s)
        for (const Vec& v : vectors_of_degree(*K, s, up_to_scalar, 0)) out.push_back(make_one_param(b, K, s, v));
    } else {
      BundlePtr bK = b.over(K);
      const Algebra& kG = bK->kG->alg();
      int nk = kG.dim();
      for (const Vec& v : vectors_of_degree(*K, int(b.lie.basis.size()), up_to_scalar)) {
        Vec X(nk, 0);
        for (std::size_t i = 0; i < v.size(); ++i) K->axpy(X.data(), v[i], b.lie.basis[i].data(), nk);
        if (!is_zero(kG.pow(X, b.p))) continue;
        out.push_back(make_one_param(b, K, 1, v));
      }
    }
  }
  return out;
}

LocalSubalgebra build_D_psi(const GroupSchemeBundle& b, const OneParamSubgroup& psi) {
  BundlePtr bK = b.over(psi.K);
  const FieldPtr& K = psi.K;
  LocalSubalgebra L;
  L.psi = psi;
  L.bundle_K = bK;
  const HopfPtr& H = psi.source;
  int nh = H->dim(), nk = bK->kG->dim(), nO = bK->OG->dim(), nS = bK->S.S->dim();
  auto restrict_action = [&](const ModuleAlgebraAction& full) {
    ModuleAlgebraAction a{H, full.A, {}};
    for (int j = 0; j < nh; ++j) {
      Matrix M(K, full.A->dim(), full.A->dim());
      for (int i = 0; i < nk; ++i)
        if (psi.psi(i, j)) M.add_scaled(full.act[i], psi.psi(i, j));
      a.act.push_back(M);
    }
    return a;
  };
  ModuleAlgebraAction aO = restrict_action(bK->adjoint);
  check_module_algebra(aO);
  L.D_psi = smash_hopf(aO, *bK->OG);
  {
    HopfCheckReport rep = check_hopf(*L.D_psi);
    require(rep.ok(), Errc::HopfAxiomFailure, "D_psi: " + rep.summary());
  }
  L.iota = kronecker(Matrix::identity(K, nO), psi.psi);
  std::string why;
  require(is_algebra_map(L.iota, L.D_psi->alg(), bK->D->alg(), &why), Errc::NotAlgebraMap, "iota_psi: " + why);
  require(rank(L.iota) == L.D_psi->dim(), Errc::NotAlgebraMap, "iota_psi is not injective");
  require(is_local(L.D_psi->algebra()), Errc::NotLocal, "D_psi is not local for " + psi.label());

  ModuleAlgebraAction aS = restrict_action(bK->S.action);
  check_module_algebra(aS);
  L.sigma_psi = smash_hopf(aS, *bK->S.S);
  {
    HopfCheckReport rep = check_hopf(*L.sigma_psi);
    require(rep.ok(), Errc::HopfAxiomFailure, "sigma_psi: " + rep.summary());
  }
  L.iota_sigma = kronecker(Matrix::identity(K, nS), psi.psi);
  L.al_psi = kronecker(bK->a0, Matrix::identity(K, nh));
  require(is_algebra_map(L.al_psi, L.sigma_psi->alg(), L.D_psi->alg(), &why), Errc::NotAlgebraMap, "a(l)_psi: " + why);
  require(L.iota * L.al_psi == bK->al * L.iota_sigma, Errc::DiagramFailure,
          "iota o a(l)_psi != a(l) o iota for " + psi.label());
  Matrix P = primitive_space(*L.sigma_psi);
  for (int c = 0; c < P.cols(); ++c) L.generators.push_back(L.al_psi.apply(P.column(c)));
  return L;
}

}  // namespace dsupp
