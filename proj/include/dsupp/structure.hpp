#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "dsupp/module.hpp"

namespace dsupp {

struct RadicalData {
  Subspace space;               // rad(A)
  std::vector<Vec> right_gens;  // rad(A) = sum_i g_i A
  int loewy_length = 0;         // least k with rad^k = 0
  std::string method;           // "augmentation", "smash" or "meataxe"
};

// Errors: RadicalNotComputable (MeatAxe budget exhausted on the regular module).
std::shared_ptr<const RadicalData> radical(const AlgebraPtr& A, std::uint64_t seed = 1);
bool is_local(const AlgebraPtr& A);

// Holt-Rees MeatAxe on the action of the algebra generators.
struct SplitResult {
  bool irreducible = false;
  Subspace sub;  // proper nonzero invariant subspace when !irreducible
};
// Errors: DecompositionFailed.
SplitResult meataxe_split(const Module& M, std::mt19937_64& rng);
std::vector<Module> composition_factors(const Module& M, std::mt19937_64& rng);

struct PimClass {
  Vec idempotent;  // primitive idempotent of A
  Subspace space;  // A e inside A
  Module pim;      // A e with left multiplication
  Module simple;   // top of A e
  int end_dim = 1; // dim End(simple)
  int multiplicity = 1;  // copies of A e in the regular module
};

struct PimData {
  bool local = false;
  std::vector<PimClass> classes;
};

// Errors: DecompositionFailed, LiftDiverged.
std::shared_ptr<const PimData> pims(const AlgebraPtr& A, std::uint64_t seed = 1);

struct SimpleModule {
  Module rep;
  int end_dim = 1;
  int multiplicity = 1;
};
std::vector<SimpleModule> simple_tops(const AlgebraPtr& A);

struct TopResult {
  Module top;
  std::vector<int> columns;  // complement columns of rad M
  Subspace rad;
};
TopResult top(const Module& M);
bool is_projective(const Module& M);

struct ResolutionStep {
  std::vector<int> summand_class;  // PIM class of each summand of P_i
  std::vector<Vec> generators;     // image in Omega^i of each summand's idempotent generator
  Module syzygy;                   // Omega^i (Omega^0 = M)
  Matrix cover;                    // P_i -> Omega^i
  Matrix kernel;                   // Omega^{i+1} -> P_i (columns: basis of the kernel)
  std::vector<int> offsets;        // start of each summand in P_i coordinates
};

struct Resolution {
  AlgebraPtr algebra;
  std::vector<ResolutionStep> steps;  // degrees 0..n_max
  std::vector<int> betti() const;
  // Multiplicity of each PIM class in P_i.
  std::vector<std::vector<int>> betti_by_class() const;
  // d_i : P_i -> P_{i-1}, i >= 1.
  Matrix differential(int i) const;
  const Module& syzygy(int i) const { return steps.at(i).syzygy; }
  int depth() const { return int(steps.size()) - 1; }
};

constexpr int kMaxResolutionDepth = 12;
// Action storage allowed for one syzygy (dim A * dim^2 field elements).
constexpr double kResolutionStorageBytes = 1.5e9;
// Omega^{n_max + 1} is not built; steps[n_max].kernel is still filled.
// Errors: DepthBudgetExceeded (n_max > 12, or a syzygy over the storage budget).
Resolution minimal_resolution(const Module& M, int n_max);

}  // namespace dsupp
