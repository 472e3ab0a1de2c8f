#pragma once

#include <stdexcept>
#include <string>

namespace dsupp {

enum class Errc {
  NonPrime,
  DegreeTooLarge,
  NoSolution,
  NotNilpotent,
  NotAssociative,
  BadUnit,
  AugmentationNotMultiplicative,
  RadicalNotComputable,
  DecompositionFailed,
  LiftDiverged,
  NoHopfStructure,
  NotAlgebraMap,
  DepthBudgetExceeded,
  ActionNotModuleAlgebra,
  NotGeneratedByPrimitives,
  HopfAxiomFailure,
  UnsupportedCatalogEntry,
  EquivarianceFailure,
  NotLocal,
  DiagramFailure,
  NotFlat,
  NotNilpotentP,
  ZeroCocycle,
  TruncationInconclusive,
  DimensionMismatch,
  DimensionTooLarge,
  FieldMismatch,
  ParseError,
  InvalidArgument,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace dsupp
