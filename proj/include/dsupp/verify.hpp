#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dsupp/io.hpp"
#include "dsupp/support.hpp"

namespace dsupp {

enum class Verdict { Pass, Fail, Inconclusive };
const char* verdict_name(Verdict v);
int verdict_exit_code(Verdict v);  // 0 pass, 1 fail, 2 inconclusive

struct CheckParams {
  int e_max = 2;
  int n_max = 8;
  std::uint64_t seed = 1;
  int samples = 0;   // 0 = check default
  int instance = 0;  // sweep local (carlson) or psi index (pi-vs-coh)
};

struct CheckReport {
  std::string check;
  std::string bundle;
  int p = 0, r = 1;
  CheckParams params;
  Verdict verdict = Verdict::Fail;
  Json witnesses = Json::array();
  Json details = Json::object();
  double seconds = 0;
  Json to_json(bool with_timing = true) const;
  // SHA-256 of to_json(false): everything except timing.
  std::string digest() const;
};

// Seeded random modules: quotients and submodules of A^n (n <= 3), free and
// PIM sums, Omega, duals and small tensor products.  Dimension stays <= max_dim.
struct RandomModule {
  Module module;
  std::string recipe;
};
RandomModule random_module(const HopfAlgebra& H, std::mt19937_64& rng, int max_dim);

// D / D*aug(O(G)) and D / D*aug(kG).
Module induced_from_O(const GroupSchemeBundle& b);
Module induced_from_kG(const GroupSchemeBundle& b);

// Action of x on M (x) N through the coproduct, without building the tensor module.
Matrix tensor_action(const Module& M, const Module& N, const HopfAlgebra& H, const Vec& x);

CheckReport check_hopf_suite(const BundlePtr& b, const CheckParams& prm = {});
// check_hopf on a single object; used for the negative controls.
CheckReport check_hopf_object(const std::string& id, const HopfAlgebra& H, const CheckParams& prm = {});
// Corrupted copies of the double of b: extra coproduct term, identity antipode, shifted counit.
std::vector<std::pair<std::string, HopfPtr>> corrupted_fixtures(const GroupSchemeBundle& b);

CheckReport check_al(const BundlePtr& b, const CheckParams& prm = {});
CheckReport check_projectivity_detection(const BundlePtr& b, const CheckParams& prm = {});
CheckReport check_tensor_product(const BundlePtr& b, const CheckParams& prm = {});
// D_psi for sweep local local_index; degree of the cocycles.
CheckReport check_carlson(const BundlePtr& b, int local_index, int degree, const CheckParams& prm = {});
CheckReport check_pi_vs_coh(const BundlePtr& b, int psi_index, const CheckParams& prm = {});

// An element alpha(t) of D_psi over the field of the local, with its construction.
struct AlphaSpec {
  int local_index = 0;
  Vec alpha;
  Vec leading;  // linear part
  std::string recipe;
};
std::vector<AlphaSpec> universal_alpha_sample(const PointSweep& s, int n, std::uint64_t seed);
// Errors: NotFlat, NotNilpotentP (from the supplied alphas).
CheckReport check_universal_pi(PointSweep& s, const std::vector<AlphaSpec>& alphas, const CheckParams& prm = {});

// Check names accepted by run_check.
const std::vector<std::string>& check_names();
CheckReport run_check(const std::string& name, const BundlePtr& b, const CheckParams& prm);

}  // namespace dsupp
