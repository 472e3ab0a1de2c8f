#include <gtest/gtest.h>

#include "dsupp/support.hpp"

using namespace dsupp;

namespace {

struct GaFixture {
  BundlePtr b;
  int nH = 0;
  Vec x, u;  // coordinate x in O and Lie element u in kG, as elements of D
};

GaFixture ga(int p) {
  GaFixture f;
  f.b = build_bundle("Ga", p);
  f.nH = f.b->kG->dim();
  int n = f.b->D->dim();
  f.x = unit_vector(n, f.b->monomials.generator(0) * f.nH);
  f.u = unit_vector(n, 1);
  return f;
}

// D / D*g for a central element g.
Module quotient_by(const BundlePtr& b, const Vec& g) {
  Module R = regular_module(b->D->algebra());
  Subspace W = spin(R, {g});
  return quotient_module(R, W).module;
}

int count_points(int q, int m) {  // |P^{m-1}(F_q)|
  long long t = 1;
  for (int i = 0; i < m; ++i) t *= q;
  return int((t - 1) / (q - 1));
}

}  // namespace

TEST(PiPoint, FlatnessAndErrors) {
  auto f = ga(3);
  PointSweep s = sweep_points(f.b, 1);
  LocalPtr L = s.locals[0];
  ASSERT_EQ(L->generators.size(), 2u);
  for (const Vec& lam : {Vec{1, 0}, Vec{0, 1}, Vec{1, 1}}) {
    PiPoint a = make_pi_point(L, lam);
    EXPECT_EQ(a.flat_certificate.partition, (std::vector<int>{3, 3, 3}));
  }
  try {
    make_pi_point(L, Vec{0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidArgument);
  }
  const Algebra& A = L->D_psi->alg();
  // the product of the two generators is p-nilpotent but not flat
  Vec xu = A.mul(L->generators[0], L->generators[1]);
  try {
    make_pi_point_from_element(L, xu);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotFlat);
  }
  Vec one = A.unit();
  one[0] = A.F().add(one[0], 0);
  Vec gen = L->generators[0];
  A.F().axpy(gen.data(), 1, one.data(), gen.size());
  try {
    make_pi_point_from_element(L, gen);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotNilpotentP);
  }
}

TEST(PiPoint, RestrictJordanOnTruncatedU) {
  auto f = ga(3);
  Module V = quotient_by(f.b, f.x);  // k[u]/(u^3), x acting by 0
  ASSERT_EQ(V.dim(), 3);
  PointSweep s = sweep_points(f.b, 2);
  for (const PointClass& c : s.classes)
    for (const PiPoint& a : c.members) {
      Vec g = a.global();
      // alpha acts on V as (coefficient of u) * u
      bool mu = g[1] != 0;
      JordanType jt = restrict_jordan(a, V);
      EXPECT_EQ(jt.partition, (mu ? std::vector<int>{3} : std::vector<int>{1, 1, 1}));
      EXPECT_EQ(restrict_jordan(a, trivial_module(f.b->D->algebra())).partition, std::vector<int>{1});
    }
}

TEST(Sweep, ClassCountsMatchProjectiveSpaces) {
  // Ga_1 and U_1: the double is k[x,u]/(x^p,u^p); classes are P^1 closed points
  for (int p : {3, 5}) {
    auto f = ga(p);
    PointSweep s1 = sweep_points(f.b, 1);
    EXPECT_EQ(int(s1.classes.size()), p + 1);
    PointSweep s2 = sweep_points(f.b, 2);
    int q = p * p;
    EXPECT_EQ(int(s2.classes.size()), (p + 1) + (q + 1 - (p + 1)) / 2);
  }
  auto u = build_bundle("U", 3);
  EXPECT_EQ(sweep_points(u, 1).classes.size(), 4u);
  // Borel: D_psi is the restricted enveloping algebra of a Heisenberg algebra
  // with zero p-map, so every linear element is p-nilpotent: all of P^2.
  auto bo = build_bundle("Borel", 3);
  PointSweep b1 = sweep_points(bo, 1);
  EXPECT_EQ(int(b1.classes.size()), count_points(3, 3));
  EXPECT_EQ(b1.skipped_not_nilpotent, 0);
  PointSweep b2 = sweep_points(bo, 2);
  EXPECT_EQ(int(b2.classes.size()), 13 + (count_points(9, 3) - 13) / 2);
  for (const PointClass& c : b2.classes) {
    EXPECT_EQ(c.members.front().flat_certificate.partition, std::vector<int>(9, 3));
    EXPECT_EQ(int(c.members.size()), c.field->degree());  // one member per Galois conjugate
  }
}

TEST(Sweep, PiSupportOnGa1) {
  auto f = ga(3);
  PointSweep s = sweep_points(f.b, 1);
  const AlgebraPtr& D = f.b->D->algebra();
  EXPECT_EQ(pi_support(trivial_module(D), s).points.size(), 4u);
  EXPECT_TRUE(pi_support(regular_module(D), s).empty());
  SupportCloud cu = pi_support(quotient_by(f.b, f.x), s);
  ASSERT_EQ(cu.points.size(), 1u);
  EXPECT_EQ(cu.labels[0], canonical_point(f.b->F, f.x).label);  // [1:0], the x-direction
  SupportCloud cx = pi_support(quotient_by(f.b, f.u), s);
  ASSERT_EQ(cx.points.size(), 1u);
  EXPECT_EQ(cx.labels[0], canonical_point(f.b->F, f.u).label);
  EXPECT_TRUE(cloud_intersection(s, cu, cx).empty());
  Module T = tensor(quotient_by(f.b, f.x), quotient_by(f.b, f.u), *f.b->D);
  EXPECT_TRUE(pi_support(T, s).empty());
  EXPECT_TRUE(is_projective(T));
}

TEST(Sweep, ReconstructionMonotonicityDuality) {
  for (auto [g, p] : std::vector<std::pair<std::string, int>>{{"Ga", 3}, {"Borel", 3}}) {
    auto b = build_bundle(g, p);
    PointSweep s = sweep_points(b, 2);
    std::mt19937_64 rng(11);
    const AlgebraPtr& D = b->D->algebra();
    std::vector<Module> mods{trivial_module(D), regular_module(D)};
    for (int i = 0; i < 3; ++i) mods.push_back(random_cyclic_quotient(D, 1, 2 + i, rng));
    for (const Module& M : mods) {
      SupportCloud c = pi_support(M, s);
      EXPECT_EQ(support_reconstruct(M, s), c) << g;
      EXPECT_EQ(pi_support(dual(M, *b->D), s), c) << g;
      EXPECT_EQ(c.empty(), is_projective(M)) << g;
    }
    EXPECT_EQ(pi_support(direct_sum(mods[2], mods[3]), s), cloud_union(s, pi_support(mods[2], s), pi_support(mods[3], s)));
  }
}

TEST(Ext, SyzygiesMatchSubmodulesOfTheCover) {
  // non-local double: the kernel of each cover, taken inside an explicit sum of PIMs
  AlgebraPtr D = build_bundle("Borel", 3)->D->algebra();
  Resolution R = minimal_resolution(trivial_module(D), 2);
  auto P = pims(D);
  for (int i = 0; i < 2; ++i) {
    const ResolutionStep& st = R.steps[i];
    Module sum = zero_module(D);
    for (int k : st.summand_class) sum = direct_sum(sum, P->classes[k].pim);
    Subspace W(D->field(), sum.dim());
    for (int c = 0; c < st.kernel.cols(); ++c) W.add(st.kernel.column(c));
    Module ref = submodule(sum, W).module;
    ASSERT_EQ(ref.dim(), R.syzygy(i + 1).dim());
    for (int k = 0; k < D->dim(); ++k) EXPECT_EQ(ref.act(k), R.syzygy(i + 1).act(k));
  }
  EXPECT_TRUE((R.steps[2].cover * R.steps[2].kernel).is_zero());
  EXPECT_GT(R.steps[2].kernel.cols(), 0);
}

TEST(Ext, TruncatedPolynomialRing) {
  auto F = make_field(3, 1);
  auto T = truncated_polynomial_algebra(F, 3);
  ExtTruncation E = ext_truncation(T, 6);
  EXPECT_EQ(E.betti, std::vector<int>(7, 1));
  Vec y = E.product(0, Vec{1}, 2, Vec{1});
  EXPECT_EQ(y, Vec{1});
  EXPECT_FALSE(is_zero(E.product(2, Vec{1}, 2, Vec{1})));  // y^2 != 0
  EXPECT_TRUE(is_zero(E.product(1, Vec{1}, 1, Vec{1})));   // x^2 = 0 for p odd
  std::string w;
  EXPECT_TRUE(product_associative(E, &w)) << w;
  // Carlson module of the periodicity generator: Omega^2 k = k, so L = 0
  Module L = carlson_module(E.res, 2, Vec{1});
  EXPECT_EQ(L.dim(), 0);
  try {
    carlson_module(E.res, 2, Vec{0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ZeroCocycle);
  }
}

TEST(Ext, Ga1DoubleDimensionsAndAssociativity) {
  auto f = ga(3);
  ExtTruncation E = ext_truncation(f.b->D->algebra(), 8);
  EXPECT_EQ(E.betti, (std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9}));
  std::string w;
  EXPECT_TRUE(product_associative(E, &w)) << w;
  add_module(E, trivial_module(f.b->D->algebra()));
  EXPECT_EQ(E.modules[0].dims, E.betti);
}

TEST(Carlson, ZeroLocusMatchesEvaluation) {
  auto f = ga(3);
  PointSweep s = sweep_points(f.b, 2);
  const AlgebraPtr& D = s.locals[0]->D_psi->algebra();
  ExtTruncation E = ext_truncation(D, 4);
  std::vector<int> idx = ext_basis(E.res, 2);
  ASSERT_EQ(idx.size(), 3u);
  std::vector<Vec> vals;
  std::vector<int> cls;
  for (std::size_t c = 0; c < s.classes.size(); ++c) {
    cls.push_back(int(c));
    vals.push_back(evaluate_classes(E, s.classes[c].members.front()));
  }
  int full = 0, single = 0;
  for (const Vec& z : vectors_of_degree(*make_field(3, 1), 3, true)) {
    Module L = carlson_module(E.res, 2, z);
    EXPECT_EQ(L.dim(), E.res.syzygy(2).dim() - 1);
    SupportCloud c = local_pi_support(L, s, 0);
    std::vector<int> zero;
    for (std::size_t i = 0; i < cls.size(); ++i) {
      const Field& K = *s.classes[cls[i]].members.front().local->D_psi->field();
      Elem v = 0;
      for (int j = 0; j < 3; ++j) v = K.add(v, K.mul(z[j], vals[i][j]));
      if (!v) zero.push_back(cls[i]);
    }
    EXPECT_EQ(c.points, zero);
    if (c.points.size() == s.classes.size()) ++full;
    if (c.points.size() == 1) ++single;
  }
  // the nilpotent direction gives full support; the 4 linear forms in y_x, y_u
  // (times the 3 nilpotent shifts) each cut out one rational point
  EXPECT_EQ(full, 1);
  EXPECT_EQ(single, 12);
}

TEST(Carlson, IdentityOnBorelLocalSubalgebra) {
  auto bo = build_bundle("Borel", 3);
  PointSweep s = sweep_points(bo, 1);
  LocalPtr L = s.locals[0];
  const AlgebraPtr& A = L->D_psi->algebra();
  Resolution R = minimal_resolution(trivial_module(A), 3);
  std::vector<int> idx = ext_basis(R, 2);
  ASSERT_GE(idx.size(), 1u);
  std::mt19937_64 rng(3);
  Module V = random_cyclic_quotient(A, 1, 3, rng);
  SupportCloud cv = local_pi_support(V, s, 0);
  for (int i : idx) {
    Vec z(R.steps[2].summand_class.size(), 0);
    z[i] = 1;
    Module Lz = carlson_module(R, 2, z);
    SupportCloud cl = local_pi_support(Lz, s, 0);
    SupportCloud ct = local_pi_support(tensor(Lz, V, *L->D_psi), s, 0);
    EXPECT_EQ(ct, cloud_intersection(s, cl, cv));
  }
}

TEST(Carlson, RestrictionNaturality) {
  auto bo = build_bundle("Borel", 3);
  PointSweep s = sweep_points(bo, 1);
  LocalPtr L = s.locals[0];
  const AlgebraPtr& A = L->D_psi->algebra();
  AlgebraPtr B = L->bundle_K->OG->algebra();
  Matrix phi = kronecker(Matrix::identity(B->field(), B->dim()),
                         Matrix::from_columns(B->field(), L->psi.source->dim(), {L->psi.source->alg().unit()}));
  ASSERT_TRUE(is_algebra_map(phi, *B, *A));
  Resolution R = minimal_resolution(trivial_module(A), 3);
  std::mt19937_64 rng(5);
  for (int i : ext_basis(R, 2)) {
    Vec z(R.steps[2].summand_class.size(), 0);
    z[i] = 1;
    NaturalityResult r = carlson_restriction_naturality(R, 2, z, B, phi, rng);
    EXPECT_TRUE(r.ok) << r.detail;
  }
}

TEST(Carlson, StripFreeSummands) {
  auto f = ga(3);
  const AlgebraPtr& D = f.b->D->algebra();
  Module M = direct_sum(free_module(D, 2), quotient_by(f.b, f.x));
  StrippedModule s = strip_free_summands(M);
  EXPECT_EQ(s.free_rank, 2);
  EXPECT_EQ(s.core.dim(), 3);
  std::mt19937_64 rng(1);
  EXPECT_TRUE(isomorphic(s.core, quotient_by(f.b, f.x), rng));
}

TEST(CohSupport, Ga1Family) {
  auto f = ga(3);
  PointSweep s = sweep_points(f.b, 2);
  LocalPtr L = s.locals[0];
  const AlgebraPtr& A = L->D_psi->algebra();
  // D_psi and D coincide for Ga_1; move modules across with iota
  auto to_local = [&](const Module& V) { return restrict_along(V, A, L->iota); };
  std::vector<Module> fam{to_local(trivial_module(f.b->D->algebra())), to_local(regular_module(f.b->D->algebra())),
                          to_local(quotient_by(f.b, f.x)), to_local(quotient_by(f.b, f.u))};
  ExtTruncation E = ext_truncation(A, 8, fam);
  for (std::size_t i = 0; i < fam.size(); ++i) {
    CohSupport c = coh_support_points(E, int(i), s, 0);
    EXPECT_TRUE(c.separating);
    EXPECT_EQ(c.points, local_pi_support(fam[i], s, 0).points) << i;
  }
}

TEST(Fingerprint, RationalClassesSeparated) {
  auto f = ga(3);
  PointSweep s = sweep_points(f.b, 1);
  compute_fingerprints(s);
  std::set<std::string> fp;
  for (const PointClass& c : s.classes) fp.insert(c.fingerprint);
  EXPECT_EQ(fp.size(), s.classes.size());
}
