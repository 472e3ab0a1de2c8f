#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <map>

#include "dsupp/structure.hpp"

using namespace dsupp;

namespace {

// Group algebra of S_3 from permutation composition.
AlgebraPtr group_algebra_s3(const FieldPtr& F) {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::array<int, 3>, int> index;
  for (int i = 0; i < 6; ++i) index[perms[i]] = i;
  std::vector<StructureTriple> t;
  std::vector<std::string> labels;
  for (int i = 0; i < 6; ++i) {
    labels.push_back("g" + std::to_string(i));
    for (int j = 0; j < 6; ++j) {
      std::array<int, 3> c;
      for (int x = 0; x < 3; ++x) c[x] = perms[i][perms[j][x]];
      t.push_back({i, j, index[c], 1});
    }
  }
  return build_algebra(F, labels, t, unit_vector(6, 0), Vec(6, 1));
}

// k[x,y]/(x^p, y^p) as a tensor square of the truncated polynomial ring.
AlgebraPtr two_variable(const FieldPtr& F, int p) {
  auto A = truncated_polynomial_algebra(F, p);
  return tensor_algebra(A, A);
}

}  // namespace

TEST(Algebra, ValidationErrors) {
  auto F = make_field(3, 1);
  // k[x]/(x^3) with a corrupted structure constant
  std::vector<StructureTriple> t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; i + j < 3; ++j) t.push_back({i, j, i + j, 1});
  EXPECT_NO_THROW(build_algebra(F, {"1", "x", "x2"}, t, unit_vector(3, 0), unit_vector(3, 0)));
  auto bad = t;
  bad.push_back({1, 2, 0, 1});  // x * x^2 = 1 while x^2 * x = 0
  try {
    build_algebra(F, {"1", "x", "x2"}, bad, unit_vector(3, 0), std::nullopt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotAssociative);
  }
  try {
    build_algebra(F, {"1", "x", "x2"}, t, unit_vector(3, 1), std::nullopt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BadUnit);
  }
  try {
    build_algebra(F, {"1", "x", "x2"}, t, unit_vector(3, 0), Vec{1, 1, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::AugmentationNotMultiplicative);
  }
}

TEST(Algebra, GeneratorAssociativityCheckDetectsCorruption) {
  auto F = make_field(2, 1);
  auto A = two_variable(F, 2);
  EXPECT_NO_THROW(validate_algebra(*A));
  EXPECT_TRUE(generators_span(*A, A->generators()));
}

TEST(Radical, TruncatedPolynomial) {
  auto F = make_field(3, 1);
  auto A = truncated_polynomial_algebra(F, 3);
  auto R = radical(A);
  EXPECT_EQ(R->space.dim(), 2);
  EXPECT_EQ(R->loewy_length, 3);
  EXPECT_EQ(R->method, "augmentation");
  EXPECT_TRUE(is_local(A));
}

TEST(Radical, MatrixAlgebraIsSemisimple) {
  auto F = make_field(3, 1);
  auto A = matrix_algebra(F, 2);
  auto R = radical(A);
  EXPECT_EQ(R->space.dim(), 0);
  auto S = simple_tops(A);
  ASSERT_EQ(S.size(), 1u);
  EXPECT_EQ(S[0].rep.dim(), 2);
  EXPECT_EQ(S[0].multiplicity, 2);
  EXPECT_EQ(S[0].end_dim, 1);
  EXPECT_TRUE(check_module(S[0].rep));
}

TEST(Pims, TruncatedTimesMatrix) {
  auto F = make_field(3, 1);
  auto A = tensor_algebra(truncated_polynomial_algebra(F, 3), matrix_algebra(F, 2));
  auto P = pims(A);
  ASSERT_EQ(P->classes.size(), 1u);
  EXPECT_EQ(P->classes[0].pim.dim(), 6);
  EXPECT_EQ(P->classes[0].multiplicity, 2);
  EXPECT_EQ(radical(A)->space.dim(), 8);
}

TEST(Pims, SymmetricGroupChar2) {
  auto F = make_field(2, 1);
  auto A = group_algebra_s3(F);
  auto R = radical(A);
  EXPECT_EQ(R->space.dim(), 1);
  EXPECT_EQ(R->method, "meataxe");
  auto P = pims(A);
  ASSERT_EQ(P->classes.size(), 2u);
  EXPECT_EQ(P->classes[0].simple.dim(), 1);
  EXPECT_EQ(P->classes[0].pim.dim(), 2);
  EXPECT_EQ(P->classes[0].multiplicity, 1);
  EXPECT_EQ(P->classes[1].simple.dim(), 2);
  EXPECT_EQ(P->classes[1].pim.dim(), 2);
  EXPECT_EQ(P->classes[1].multiplicity, 2);
  std::mt19937_64 rng(1);
  auto cf = composition_factors(regular_module(A), rng);
  std::vector<int> dims;
  for (auto& m : cf) dims.push_back(m.dim());
  std::sort(dims.begin(), dims.end());
  EXPECT_EQ(dims, (std::vector<int>{1, 1, 2, 2}));
  // Omega of the trivial module is trivial: Betti numbers 1,1,1,...
  Resolution res = minimal_resolution(trivial_module(A), 4);
  EXPECT_EQ(res.betti(), (std::vector<int>{1, 1, 1, 1, 1}));
  EXPECT_TRUE(is_projective(P->classes[1].simple));
  EXPECT_FALSE(is_projective(trivial_module(A)));
  EXPECT_TRUE(is_projective(regular_module(A)));
}

TEST(Pims, SemisimpleCommutative) {
  // F_3[x]/(x^2 - 1) = F_3 x F_3
  auto F = make_field(3, 1);
  std::vector<StructureTriple> t{{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 0, 1}};
  auto A = build_algebra(F, {"1", "g"}, t, unit_vector(2, 0), Vec{1, 1});
  EXPECT_EQ(radical(A)->space.dim(), 0);
  auto P = pims(A);
  EXPECT_EQ(P->classes.size(), 2u);
  for (auto& c : P->classes) {
    EXPECT_EQ(c.pim.dim(), 1);
    EXPECT_EQ(A->mul(c.idempotent, c.idempotent), c.idempotent);
  }
  // x^2 + 1 over F_3 is a field of degree 2: one simple with End of dimension 2
  std::vector<StructureTriple> u{{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 0, 2}};
  auto B = build_algebra(F, {"1", "i"}, u, unit_vector(2, 0), std::nullopt);
  auto Q = pims(B);
  ASSERT_EQ(Q->classes.size(), 1u);
  EXPECT_EQ(Q->classes[0].end_dim, 2);
  EXPECT_EQ(Q->classes[0].simple.dim(), 2);
}

TEST(Projective, LocalExamples) {
  auto F = make_field(3, 1);
  auto A = two_variable(F, 3);  // basis index i*3 + j for x^i y^j
  EXPECT_TRUE(is_projective(regular_module(A)));
  EXPECT_TRUE(is_projective(free_module(A, 2)));
  EXPECT_FALSE(is_projective(trivial_module(A)));
  // k[y]/(y^3) with x acting as zero: quotient of A by the ideal (x)
  Module R = regular_module(A);
  Vec x = unit_vector(9, 3);
  Subspace I = spin(R, {x});
  EXPECT_EQ(I.dim(), 6);
  Module M = quotient_module(R, I).module;
  EXPECT_EQ(M.dim(), 3);
  EXPECT_TRUE(check_module(M));
  EXPECT_FALSE(is_projective(M));
}

TEST(Resolution, BettiNumbers) {
  auto F = make_field(3, 1);
  auto A1 = truncated_polynomial_algebra(F, 3);
  EXPECT_EQ(minimal_resolution(trivial_module(A1), 5).betti(), (std::vector<int>{1, 1, 1, 1, 1, 1}));
  auto A2 = two_variable(F, 3);
  Resolution r = minimal_resolution(trivial_module(A2), 6);
  EXPECT_EQ(r.betti(), (std::vector<int>{1, 2, 3, 4, 5, 6, 7}));
  // d_{i} d_{i+1} = 0 and differentials have entries in the radical
  for (int i = 1; i + 1 <= r.depth(); ++i) EXPECT_TRUE((r.differential(i) * r.differential(i + 1)).is_zero());
  // dim Omega^2 k = 10 over k[x,y]/(x^3,y^3)
  EXPECT_EQ(r.syzygy(2).dim(), 10);
  try {
    minimal_resolution(trivial_module(A1), 13);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DepthBudgetExceeded);
  }
}

TEST(Modules, HomAndIsomorphism) {
  auto F = make_field(2, 1);
  auto A = group_algebra_s3(F);
  std::mt19937_64 rng(3);
  Module k = trivial_module(A);
  EXPECT_EQ(hom_space(k, k).cols(), 1);
  EXPECT_EQ(hom_space(regular_module(A), regular_module(A)).cols(), 6);
  auto P = pims(A);
  EXPECT_TRUE(isomorphic(P->classes[1].simple, P->classes[1].pim, rng));
  EXPECT_FALSE(isomorphic(P->classes[0].pim, direct_sum(k, k), rng));
}
