#include <gtest/gtest.h>

#include <chrono>
#include <map>

#include "dsupp/catalog.hpp"
#include "dsupp/structure.hpp"

using namespace dsupp;

namespace {

// Oracle: adjoint action from the Hopf formula h.f = sum <h, S(f1) f3> f2,
// with kG the linear dual of O(G) (basis dual to the monomials).
std::vector<Matrix> hopf_formula_adjoint(const HopfAlgebra& O) {
  const Algebra& A = O.alg();
  const Field& F = A.F();
  int n = A.dim();
  std::vector<Matrix> act(n, Matrix(A.field(), n, n));
  for (int f = 0; f < n; ++f)
    for (auto* t = O.comult().begin(f); t != O.comult().end(f); ++t)
      for (auto* u = O.comult().begin(t->b); u != O.comult().end(t->b); ++u) {
        // f1 = t->a, f2 = u->a, f3 = u->b
        Vec w = A.mul(O.antipode().column(t->a), A.basis(u->b));
        Elem c = F.mul(t->c, u->c);
        for (int h = 0; h < n; ++h)
          if (w[h]) act[h].at(u->a, f) = F.add(act[h](u->a, f), F.mul(c, w[h]));
      }
  return act;
}

}  // namespace

TEST(Catalog, Dimensions) {
  auto ga = build_bundle("Ga", 3, 1);
  EXPECT_EQ(ga->kG->dim(), 3);
  EXPECT_EQ(ga->OG->dim(), 3);
  EXPECT_EQ(ga->D->dim(), 9);
  auto ga2 = build_bundle("Ga", 2, 2);
  EXPECT_EQ(ga2->D->dim(), 16);
  auto bo = build_bundle("Borel", 3);
  EXPECT_EQ(bo->kG->dim(), 9);
  EXPECT_EQ(bo->D->dim(), 81);
  EXPECT_EQ(bo->sigma->dim(), 81);
  auto u = build_bundle("U", 5);
  EXPECT_EQ(u->D->dim(), 25);
  try {
    build_bundle("SL2", 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnsupportedCatalogEntry);
  }
  try {
    build_bundle("Ga", 7);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnsupportedCatalogEntry);
  }
}

TEST(Catalog, AdjointActionMatchesHopfFormula) {
  for (auto [g, p, r] : std::vector<std::tuple<std::string, int, int>>{
           {"Ga", 3, 1}, {"Ga", 2, 2}, {"U", 3, 1}, {"Borel", 3, 1}, {"Borel", 5, 1}, {"SL2", 3, 1}}) {
    auto b = build_bundle(g, p, r);
    auto oracle = hopf_formula_adjoint(*b->OG);
    ASSERT_EQ(oracle.size(), b->adjoint.act.size());
    for (std::size_t h = 0; h < oracle.size(); ++h) EXPECT_EQ(oracle[h], b->adjoint.act[h]) << g << " p=" << p << " h=" << h;
  }
}

TEST(Catalog, AdjointWeights) {
  auto b = build_bundle("SL2", 3);
  const MonomialBasis& mb = b->monomials;
  int n = b->OG->dim();
  Vec bb = unit_vector(n, mb.generator(1)), cc = unit_vector(n, mb.generator(2));
  int h = mb.generator(0);  // delta_z is the Lie element h
  const Field& F = *b->F;
  Vec b2 = bb;
  F.scale(b2.data(), F.from_int(-2), n);
  EXPECT_EQ(b->adjoint.act[h].apply(bb), b2);
  Vec c2 = cc;
  F.scale(c2.data(), F.from_int(2), n);
  EXPECT_EQ(b->adjoint.act[h].apply(cc), c2);
  // Borel at p = 5: h.b = -2b, distinct from b
  auto bo = build_bundle("Borel", 5);
  int hb = bo->monomials.generator(0);
  int nb = bo->OG->dim();
  Vec b1 = unit_vector(nb, bo->monomials.generator(1));
  Vec bm2 = b1;
  bo->F->scale(bm2.data(), bo->F->from_int(-2), nb);
  EXPECT_EQ(bo->adjoint.act[hb].apply(b1), bm2);
  EXPECT_NE(bm2, b1);
}

TEST(Catalog, QuasilogEquivarianceAndBijectivity) {
  for (auto g : {"Ga", "U", "Borel", "SL2"}) {
    auto b = build_bundle(g, 3);
    EXPECT_EQ(rank(b->a0), b->OG->dim());
    EXPECT_EQ(b->S.S->dim(), b->OG->dim());
    for (std::size_t h = 0; h < b->adjoint.act.size(); ++h)
      EXPECT_EQ(b->adjoint.act[h] * b->a0, b->a0 * b->S.action.act[h]);
    EXPECT_EQ(rank(b->al), b->D->dim());
    EXPECT_TRUE(is_algebra_map(b->al, b->sigma->alg(), b->D->alg()));
    // augmentation intertwined
    for (int i = 0; i < b->sigma->dim(); ++i)
      EXPECT_EQ(b->D->counit_of(b->al.column(i)), b->sigma->counit()[i]);
  }
  // Ga: a0 is the identity
  auto ga = build_bundle("Ga", 3);
  EXPECT_EQ(ga->a0, Matrix::identity(ga->F, 3));
}

TEST(Catalog, AlIsNotACoalgebraMapForBorel) {
  auto ga = build_bundle("Ga", 3);
  EXPECT_TRUE(is_coalgebra_map(ga->al, *ga->sigma, *ga->D));
  auto bo = build_bundle("Borel", 3);
  std::string why;
  EXPECT_FALSE(is_coalgebra_map(bo->al, *bo->sigma, *bo->D, &why));
  EXPECT_FALSE(why.empty());
}

TEST(Catalog, HopfInclusions) {
  for (auto g : {"Ga", "Borel"}) {
    auto b = build_bundle(g, 3);
    EXPECT_TRUE(is_hopf_map(inclusion_O(*b), *b->OG, *b->D));
    EXPECT_TRUE(is_hopf_map(inclusion_kG(*b), *b->kG, *b->D));
  }
}

TEST(Catalog, OneParameterSubgroupCounts) {
  auto ga = build_bundle("Ga", 3);
  EXPECT_EQ(enumerate_one_param(*ga, 1).size(), 2u);
  EXPECT_EQ(enumerate_one_param(*ga, 1, true).size(), 1u);
  // sl2(F_3): oracle counts traceless 2x2 matrices with X^2 = 0 directly
  int count = 0;
  for (int a = 0; a < 3; ++a)
    for (int bb = 0; bb < 3; ++bb)
      for (int c = 0; c < 3; ++c)
        if ((a || bb || c) && (a * a + bb * c) % 3 == 0) ++count;
  EXPECT_EQ(count, 8);
  auto sl = build_bundle("SL2", 3);
  EXPECT_EQ(int(enumerate_one_param(*sl, 1).size()), count);
  // Borel: only multiples of e are restricted-nilpotent
  auto bo = build_bundle("Borel", 3);
  auto bl = enumerate_one_param(*bo, 2);
  EXPECT_EQ(bl.size(), 2u + 6u);  // F_3^* then F_9 \ F_3
  for (auto& o : bl) EXPECT_EQ(o.data[0], 0);
  // Ga_2: heights one and two
  auto ga2 = build_bundle("Ga", 3, 2);
  auto l2 = enumerate_one_param(*ga2, 1);
  EXPECT_EQ(l2.size(), 2u + 6u);
  try {
    make_one_param(*sl, make_field(3, 1), 1, Vec{1, 0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotNilpotent);
  }
}

TEST(Catalog, LocalSubalgebras) {
  auto ga = build_bundle("Ga", 3);
  auto l = enumerate_one_param(*ga, 1);
  LocalSubalgebra L = build_D_psi(*ga, l[0]);
  EXPECT_EQ(L.D_psi->dim(), 9);
  EXPECT_TRUE(is_local(L.D_psi->algebra()));
  EXPECT_EQ(L.generators.size(), 2u);
  auto bo = build_bundle("Borel", 3);
  for (auto& o : enumerate_one_param(*bo, 2)) {
    LocalSubalgebra B = build_D_psi(*bo, o);
    EXPECT_EQ(B.D_psi->dim(), 27);
    EXPECT_EQ(B.generators.size(), 3u);
    EXPECT_EQ(B.iota * B.al_psi, B.bundle_K->al * B.iota_sigma);
    EXPECT_TRUE(is_local(B.sigma_psi->algebra()));
  }
}

TEST(Catalog, SigmaIsLocalForUnipotent) {
  auto u = build_bundle("U", 3);
  EXPECT_TRUE(is_local(u->sigma->algebra()));
  EXPECT_TRUE(is_local(u->D->algebra()));
  auto bo = build_bundle("Borel", 3);
  EXPECT_FALSE(is_local(bo->D->algebra()));
}

TEST(Catalog, BettiNumbersAgreeAcrossAl) {
  auto ga = build_bundle("Ga", 3);
  auto bD = minimal_resolution(trivial_module(ga->D->algebra()), 6).betti();
  auto bS = minimal_resolution(trivial_module(ga->sigma->algebra()), 6).betti();
  EXPECT_EQ(bD, (std::vector<int>{1, 2, 3, 4, 5, 6, 7}));
  EXPECT_EQ(bD, bS);
}

TEST(Catalog, SL2DoubleBuilds) {
  auto t0 = std::chrono::steady_clock::now();
  auto sl = build_bundle("SL2", 3);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_EQ(sl->D->dim(), 729);
  EXPECT_LT(secs, 300.0);
  try {
    build_bundle("SL2", 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DimensionTooLarge);
  }
}
