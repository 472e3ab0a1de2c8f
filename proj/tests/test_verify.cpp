#include <gtest/gtest.h>

#include "dsupp/verify.hpp"

using namespace dsupp;

TEST(Verify, CorruptedFixturesFail) {
  for (auto g : {"Ga", "Borel"}) {
    auto b = build_bundle(g, 3);
    EXPECT_EQ(check_hopf_suite(b).verdict, Verdict::Pass);
    auto fx = corrupted_fixtures(*b);
    ASSERT_EQ(fx.size(), 3u);
    for (auto& [id, H] : fx) {
      CheckReport r = check_hopf_object(id, *H);
      EXPECT_EQ(r.verdict, Verdict::Fail) << id;
      EXPECT_FALSE(r.witnesses.empty()) << id;
    }
  }
}

TEST(Verify, DigestIgnoresTiming) {
  auto b = build_bundle("Ga", 3);
  CheckReport r = check_al(b);
  CheckReport s = r;
  s.seconds += 10;
  EXPECT_EQ(r.digest(), s.digest());
  EXPECT_NE(r.to_json().dump(), s.to_json().dump());
  s.verdict = Verdict::Fail;
  EXPECT_NE(r.digest(), s.digest());
}

TEST(Verify, CarlsonBelowDegreeIsInconclusive) {
  CheckParams prm;
  prm.n_max = 1;
  EXPECT_EQ(check_carlson(build_bundle("Ga", 3), 0, 2, prm).verdict, Verdict::Inconclusive);
  EXPECT_EQ(verdict_exit_code(Verdict::Inconclusive), 2);
}

TEST(Verify, TensorActionMatchesTensorModule) {
  auto b = build_bundle("Borel", 3);
  std::mt19937_64 rng(4);
  Module M = random_module(*b->D, rng, 12).module;
  Module N = random_module(*b->D, rng, 12).module;
  Module T = tensor(M, N, *b->D);
  for (int t = 0; t < 5; ++t) {
    Vec x(b->D->dim(), 0);
    for (auto& c : x) c = Elem(rng() % 3);
    EXPECT_EQ(tensor_action(M, N, *b->D, x), T.action(x));
  }
}

TEST(Verify, RandomModulesAreSeeded) {
  auto b = build_bundle("Ga", 3);
  std::mt19937_64 r1(9), r2(9);
  for (int i = 0; i < 20; ++i) {
    RandomModule a = random_module(*b->D, r1, 27), c = random_module(*b->D, r2, 27);
    EXPECT_EQ(a.recipe, c.recipe);
    EXPECT_EQ(a.module.actions(), c.module.actions());
    EXPECT_TRUE(check_module(a.module));
    EXPECT_LE(a.module.dim(), 27);
  }
}

TEST(Verify, InducedModulesOnGa) {
  auto b = build_bundle("Ga", 3);
  Module u = induced_from_O(*b), x = induced_from_kG(*b);
  EXPECT_EQ(u.dim(), 3);
  EXPECT_EQ(x.dim(), 3);
  EXPECT_TRUE(is_projective(tensor(u, x, *b->D)));
}

TEST(Io, ModuleRoundTrip) {
  auto b = build_bundle("Borel", 3);
  std::mt19937_64 rng(2);
  Module M = random_module(*b->D, rng, 20).module;
  Json j = module_to_json(M);
  Module N = module_from_json(Json::parse(j.dump()), b->D->algebra());
  EXPECT_EQ(M.actions(), N.actions());
  auto other = build_bundle("U", 3);
  try {
    module_from_json(j, other->D->algebra());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DimensionMismatch);
  }
  Json bad = j;
  bad["action"][1]["entries"][0] = Json::array({7});
  try {
    module_from_json(bad, b->D->algebra());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ParseError);
  }
}

TEST(Io, MatrixRoundTrip) {
  auto K = make_field(3, 2);
  Matrix m(K, 2, 3);
  for (int i = 0; i < 6; ++i) m.at(i / 3, i % 3) = Elem((i * 5) % 9);
  Json j = matrix_to_json(m);
  EXPECT_EQ(j["entries"].size(), 6u);
  EXPECT_EQ(j["modulus"], Json(K->modulus()));
  EXPECT_EQ(matrix_from_json(K, Json::parse(j.dump())), m);
  EXPECT_EQ(matrix_to_json(matrix_from_json(K, j)).dump(), j.dump());
  try {
    matrix_from_json(make_field(3, 1), j);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::FieldMismatch);
  }
}

TEST(Io, ExtensionElementsAsCoefficientVectors) {
  auto K = make_field(3, 2);
  for (Elem a = 0; a < 9; ++a) EXPECT_EQ(elem_from_json(*K, elem_to_json(*K, a)), a);
  EXPECT_TRUE(elem_to_json(*K, 4).is_array());
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  auto b = build_bundle("Ga", 3);
  EXPECT_EQ(content_hash(b->D->alg()), content_hash(build_bundle("Ga", 3)->D->alg()));
  EXPECT_NE(content_hash(b->D->alg()), content_hash(b->sigma->alg()) + "x");
}
