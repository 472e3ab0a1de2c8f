#pragma once

#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "dsupp/catalog.hpp"
#include "dsupp/structure.hpp"

namespace dsupp {

using LocalPtr = std::shared_ptr<const LocalSubalgebra>;

// alpha(t) = sum lambda_i w_i in D_psi over K = F_{p^e}, w_i = L.generators.
struct PiPoint {
  LocalPtr local;
  int e = 1;
  Vec coeffs;
  Vec alpha;
  JordanType flat_certificate;  // Jordan type of alpha(t) on the regular D_psi
  Vec global() const;           // iota(alpha) in D_K
};

// Errors: InvalidArgument (lambda = 0, wrong length), NotNilpotentP, NotFlat.
PiPoint make_pi_point(const LocalPtr& L, const Vec& lambda);
// Same checks for an arbitrary element alpha(t) of D_psi (coeffs left empty).
PiPoint make_pi_point_from_element(const LocalPtr& L, const Vec& alpha);

// N with N^p = 0 is free over K[t]/t^p iff p | n and rank N = n - n/p.
bool nilpotent_acts_freely(const Matrix& N, int p);
// Left multiplication by a on the regular module.
Matrix left_multiplication(const Algebra& A, const Vec& a);
// V over D_psi (dimension of D_psi) or over the bundle's double.
JordanType restrict_jordan(const PiPoint& a, const Module& V);

// Projectivized global image iota(alpha), reduced to its field of definition and
// replaced by the minimum of its Frobenius orbit.  Equal labels mean the same
// closed point of P(D) over F_p.
struct CanonicalPoint {
  FieldPtr field;
  Vec v;
  std::string label;
};
CanonicalPoint canonical_point(const FieldPtr& K, const Vec& v);

struct PointClass {
  std::string label;
  FieldPtr field;                // F_{p^d}
  Vec point;                     // canonical global element over field
  std::vector<PiPoint> members;  // every swept (psi, lambda) in the class, in sweep order
  std::string fingerprint;       // '1' = witness restricts non-projectively
};

struct PointSweep {
  BundlePtr bundle;
  int e_max = 2;
  std::vector<OneParamSubgroup> psis;  // enumerated up to scalar
  std::vector<LocalPtr> locals;        // D_psi over each F_{p^e}, e a multiple of the field degree of psi
  std::vector<int> local_psi;          // psi index of each local
  std::vector<PointClass> classes;     // order of first appearance = (psi, e, lambda) order
  int skipped_not_nilpotent = 0;       // linear combinations with alpha^p != 0
  std::vector<std::string> witness_names;
  std::vector<Module> witnesses;
  int index_of(const std::string& label) const;  // -1 if absent
};

// Errors: InvalidArgument (e_max outside 1..4), NotFlat (a swept p-nilpotent point fails flatness).
PointSweep sweep_points(const BundlePtr& b, int e_max);
// Witness family: simples of D, Omega^i k (i <= 4), degree-2 Carlson modules of D
// for the F_p-rational classes of Ext^2 (basis and pairwise sums beyond 121).
void compute_fingerprints(PointSweep& s);
std::string fingerprint_of(const PointSweep& s, const Vec& global_alpha, const FieldPtr& K);

struct SupportCloud {
  int e_max = 0;
  std::vector<int> points;  // class indices, ascending
  std::vector<std::string> labels;
  bool operator==(const SupportCloud& o) const { return points == o.points; }
  bool empty() const { return points.empty(); }
};
SupportCloud make_cloud(const PointSweep& s, std::vector<int> points);
SupportCloud cloud_intersection(const PointSweep& s, const SupportCloud& a, const SupportCloud& b);
SupportCloud cloud_union(const PointSweep& s, const SupportCloud& a, const SupportCloud& b);

// V over the double (field F_p).  Errors: FieldMismatch, DimensionMismatch.
SupportCloud pi_support(const Module& V, const PointSweep& s);
bool projective_at(const Module& V, const PointClass& c);
// Restricts V to every D_psi and maps the per-psi clouds through the labels.
SupportCloud support_reconstruct(const Module& V, const PointSweep& s);
// M over D_psi for the psi with the given index (field of that psi).
SupportCloud local_pi_support(const Module& M, const PointSweep& s, int psi_index);

// Minimal resolution of k over a local algebra with P_i = A^{b_i}.
struct FreeResolution {
  AlgebraPtr A;
  std::vector<int> ranks;
  std::vector<Matrix> d;  // d[i] : P_i -> P_{i-1} for i >= 1
  FreeResolution over(const FieldPtr& K) const;
  int top() const { return int(ranks.size()) - 1; }
};
// Errors: NotLocal.
FreeResolution free_resolution(const Resolution& R);
// Augmentation applied to block k of x in A^r.
Elem block_augmentation(const Algebra& A, const Vec& x, int k);
Vec generator_element(const Algebra& A, int rank, int j);

// Chain map F from src (over B, degrees shift..shift+top) to dst (over A, degrees 0..top)
// along phi: B -> A (dim A x dim B), F_0 on the generators given by start.
// Result[i][j] = image of generator j of src_{shift+i} in dst_i.  Errors: NoSolution.
std::vector<std::vector<Vec>> lift_chain(const FreeResolution& src, int shift, const FreeResolution& dst,
                                         const Matrix& phi, const std::vector<Vec>& start, int top);

// zeta gives zeta~(generator j of P_n); entries on non-trivial summands are ignored.
// Errors: ZeroCocycle, InvalidArgument.
Module carlson_module(const Resolution& R, int n, const Vec& zeta);
// Indices of the summands of P_n whose top is the trivial module (a basis of Ext^n(k,k)).
std::vector<int> ext_basis(const Resolution& R, int n);
// Tensor product of Carlson modules; the empty list gives k.
Module realize_closed_set(const HopfAlgebra& H, const Resolution& R, const std::vector<Vec>& zetas, int n = 2);

struct StrippedModule {
  Module core;
  int free_rank = 0;
};
// Splits off free summands over a local self-injective algebra.
StrippedModule strip_free_summands(const Module& M);

struct ExtModuleTable {
  Module V;
  std::vector<int> dims;                        // dim Ext^n(k,V), n = 0..n_max
  std::vector<Matrix> reps;                     // cocycle representatives in V^{b_n}
  std::vector<Subspace> coboundaries;
  std::vector<std::vector<Matrix>> action;      // [class][n] : Ext^n -> Ext^{n+g}, class in Ext^g basis
};

struct ExtTruncation {
  AlgebraPtr A;
  int n_max = 0;
  int g = 2;  // degree of the polynomial generators (1 when p = 2)
  Resolution res;
  FreeResolution free;
  std::vector<int> betti;
  // products[{i,j}] column a*b_j + b = basis_i[a] * basis_j[b] in Ext^{i+j}
  std::map<std::pair<int, int>, Matrix> products;
  std::vector<std::vector<std::vector<Vec>>> gen_lifts;  // chain lifts of the Ext^g basis
  std::vector<ExtModuleTable> modules;
  Vec product(int i, const Vec& a, int j, const Vec& b) const;
};

// Errors: NotLocal, DepthBudgetExceeded (n_max > 11).
ExtTruncation ext_truncation(const AlgebraPtr& A, int n_max, const std::vector<Module>& modules = {});
void add_module(ExtTruncation& T, const Module& V);
bool product_associative(const ExtTruncation& T, std::string* witness = nullptr);

// Values p_alpha(zeta_c) of the Ext^g basis classes at a pi-point of A = D_psi.
Vec evaluate_classes(const ExtTruncation& T, const PiPoint& a);

struct CohSupport {
  bool stable = false;
  int D = 0;
  std::vector<int> ann_dims;     // dim Ann_d, d = 1..D
  std::vector<int> points;       // classes in Z_D
  std::vector<int> previous;     // Z_{D-1}
  std::vector<int> candidates;   // classes of the psi
  bool separating = true;        // distinct classes give distinct projective values
  std::string note = "truncated, diagnostic only";
};
// Annihilator of Ext*(k,V) in Sym^d(Ext^g), d <= D = max(2, n_max/4), evaluated at the classes of psi.
CohSupport coh_support_scan(const ExtTruncation& T, int module_index, const PointSweep& s, int psi_index);
// Errors: TruncationInconclusive when Z_D != Z_{D-1}.
CohSupport coh_support_points(const ExtTruncation& T, int module_index, const PointSweep& s, int psi_index);

struct NaturalityResult {
  bool ok = false;
  bool restricted_class_zero = false;
  int core_dim_restricted = 0, core_dim_direct = 0;
  int free_rank_restricted = 0, free_rank_direct = 0;
  std::string detail;
};
// res_phi(L_zeta) against the Carlson module of res_phi(zeta) over B, up to free summands.
NaturalityResult carlson_restriction_naturality(const Resolution& RA, int n, const Vec& zeta, const AlgebraPtr& B,
                                                const Matrix& phi, std::mt19937_64& rng);

}  // namespace dsupp
