#pragma once

#include <string>

#include "dsupp/catalog.hpp"
#include "json.hpp"

namespace dsupp {

using Json = nlohmann::ordered_json;

// Prime-field elements as integers, extension elements as coefficient vectors
// (constant term first) over the field's modulus.
Json elem_to_json(const Field& F, Elem a);
Elem elem_from_json(const Field& F, const Json& j);
Json vec_to_json(const Field& F, const Vec& v);
Vec vec_from_json(const Field& F, const Json& j);
// {p, e, modulus, rows, cols, entries: row-major coefficient vectors}
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const FieldPtr& F, const Json& j);

Json field_to_json(const Field& F);
// {field, labels, mult: [[i,j,k,c],...], unit, augmentation}
Json algebra_to_json(const Algebra& A);
Json hopf_to_json(const HopfAlgebra& H);
// {algebra: content hash, field, dim, action: one matrix per basis element}
Json module_to_json(const Module& M);
// Errors: ParseError, DimensionMismatch (hash or sizes disagree with A).
Module module_from_json(const Json& j, const AlgebraPtr& A);
Json bundle_to_json(const GroupSchemeBundle& b);

std::string sha256_hex(const std::string& bytes);
// SHA-256 of the compact serialization of algebra_to_json.
std::string content_hash(const Algebra& A);

}  // namespace dsupp
