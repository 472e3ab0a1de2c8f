#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "dsupp/hopf.hpp"

namespace dsupp {

enum class GroupKind { Ga, SL2, Borel, Unipotent };

// Commutative Hopf algebra k[y_1..y_m]/(y_i^{N_i}) given by the coproduct and
// antipode of each generator.  Coordinates vanish at the identity.
struct CoordinateRingSpec {
  std::vector<std::string> names;
  std::vector<int> bounds;  // exponent bound N_i of each generator
  // Delta(y_i) as a list of (left, right, coefficient) over monomial indices.
  std::vector<std::vector<Coproduct::Term>> delta;
  std::vector<Vec> antipode;  // S(y_i) in the monomial basis
};

// Monomial basis in mixed radix, first generator most significant.
struct MonomialBasis {
  std::vector<int> bounds;
  std::vector<std::vector<int>> exps;
  int size() const { return int(exps.size()); }
  int index(const std::vector<int>& e) const;  // -1 when an exponent overflows
  int generator(int i) const;                  // index of y_i
};
MonomialBasis monomial_basis(const std::vector<int>& bounds);
AlgebraPtr monomial_algebra(const FieldPtr& F, const std::vector<std::string>& names, const std::vector<int>& bounds);
HopfPtr coordinate_hopf(const FieldPtr& F, const CoordinateRingSpec& spec);

// O(G_a(s)) = k[t]/(t^{p^s}) with t primitive, and its dual K G_a(s).
HopfPtr additive_coordinate_ring(const FieldPtr& F, int s);
HopfPtr additive_group_algebra(const FieldPtr& F, int s);

struct LieData {
  std::vector<std::string> names;
  std::vector<Vec> basis;  // elements of kG (primitive)
};

struct GroupSchemeBundle;
using BundlePtr = std::shared_ptr<const GroupSchemeBundle>;

struct GroupSchemeBundle : std::enable_shared_from_this<GroupSchemeBundle> {
  std::string name;  // Ga_1, Ga_2, SL2_1, Borel2_1, U2_1
  GroupKind kind = GroupKind::Ga;
  int p = 0, r = 1;
  FieldPtr F;
  MonomialBasis monomials;
  HopfPtr OG, kG;
  ModuleAlgebraAction adjoint;  // kG on OG
  LieData lie;
  std::vector<std::string> dual_names;  // basis of g^* dual to the Lie basis
  Module coadjoint;                     // m / m^2 = g^* as a kG-module
  Matrix seed;                          // dim OG x dim g^*: the quasi-logarithm splitting
  TruncatedSymmetric S;                 // S_r(g^*) with the coadjoint action
  Matrix a0;                            // S -> OG
  HopfPtr sigma;                        // kSigma = S # kG
  HopfPtr D;                            // O(G) # kG
  Matrix al;                            // a(l) = a0 (x) id : kSigma -> D

  // Every structure base-changed to an extension field.
  BundlePtr over(const FieldPtr& K) const;
  std::string id() const;

 private:
  struct OverCache {
    std::mutex mu;
    std::map<int, BundlePtr> by_degree;
  };
  std::shared_ptr<OverCache> over_cache_ = std::make_shared<OverCache>();
};

// Supported: Ga (p in {2,3,5}, r <= 2), SL2 (p = 3), Borel and U (p in {3,5}), all r = 1.
// Errors: UnsupportedCatalogEntry, EquivarianceFailure, NotAlgebraMap, HopfAxiomFailure.
BundlePtr build_bundle(const std::string& group, int p, int r = 1);
std::string canonical_group_name(const std::string& group);

// Hopf inclusions O(G) -> D and kG -> D.
Matrix inclusion_O(const GroupSchemeBundle& b);
Matrix inclusion_kG(const GroupSchemeBundle& b);

struct OneParamSubgroup {
  int s = 1;  // height of the source G_a(s)
  FieldPtr K;
  Vec data;  // Lie coefficients of X (height-one groups) or (lambda_0, lambda_1) for Ga_r
  HopfPtr source;  // K G_a(s)
  Matrix psi;      // dim kG x dim K G_a(s): the induced Hopf map
  std::string label() const;
};

// Nonzero restricted-nilpotent X (height one) or additive embeddings (Ga_r),
// over F_{p^e} for e <= e_max, sorted by (e, s, coefficient codes).  With
// up_to_scalar, only vectors whose first nonzero coordinate is 1 are kept.
std::vector<OneParamSubgroup> enumerate_one_param(const GroupSchemeBundle& b, int e_max, bool up_to_scalar = false);
// Builds one subgroup from explicit data over K.  Errors: NotNilpotent, InvalidArgument.
OneParamSubgroup make_one_param(const GroupSchemeBundle& b, const FieldPtr& K, int s, const Vec& data);

// Vectors of length len over K whose coordinates generate exactly K, in
// lexicographic code order.  up_to_scalar keeps first nonzero coordinate 1;
// first_nonzero_pos >= 0 additionally requires that coordinate to be nonzero.
std::vector<Vec> vectors_of_degree(const Field& K, int len, bool up_to_scalar, int first_nonzero_pos = -1);

struct LocalSubalgebra {
  OneParamSubgroup psi;
  BundlePtr bundle_K;  // bundle over the field of psi
  HopfPtr D_psi;       // O(G_K) # K G_a(s)
  Matrix iota;         // D_psi -> D_K
  HopfPtr sigma_psi;   // S_r(g^*_K) # K G_a(s)
  Matrix iota_sigma;   // sigma_psi -> sigma_K
  Matrix al_psi;       // a(l)_psi : sigma_psi -> D_psi
  std::vector<Vec> generators;  // images in D_psi of the primitive basis of sigma_psi
};

// Errors: NotLocal, DiagramFailure, NotAlgebraMap.
LocalSubalgebra build_D_psi(const GroupSchemeBundle& b, const OneParamSubgroup& psi);

}  // namespace dsupp
