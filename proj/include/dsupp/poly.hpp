#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "dsupp/matrix.hpp"

namespace dsupp {

// Univariate polynomials over a finite field, constant term first, no
// trailing zeros (the zero polynomial is empty).
using Poly = std::vector<Elem>;

void poly_trim(Poly& a);
int poly_deg(const Poly& a);
Poly poly_add(const Field& F, const Poly& a, const Poly& b);
Poly poly_sub(const Field& F, const Poly& a, const Poly& b);
Poly poly_mul(const Field& F, const Poly& a, const Poly& b);
// a = q*b + r
void poly_divmod(const Field& F, const Poly& a, const Poly& b, Poly& q, Poly& r);
Poly poly_mod(const Field& F, const Poly& a, const Poly& b);
Poly poly_gcd(const Field& F, Poly a, Poly b);
Poly poly_monic(const Field& F, const Poly& a);
// Returns g = gcd(a, b) (monic) and sets u, v with u*a + v*b = g.
Poly poly_xgcd(const Field& F, const Poly& a, const Poly& b, Poly& u, Poly& v);
Poly poly_derivative(const Field& F, const Poly& a);
Poly poly_powmod(const Field& F, Poly base, std::uint64_t n, const Poly& m);
Elem poly_eval(const Field& F, const Poly& a, Elem x);
Matrix poly_eval_matrix(const Poly& a, const Matrix& m);

Matrix companion(const FieldPtr& F, const Poly& monic);
Poly charpoly(const Matrix& m);

// Factorization into monic irreducibles with multiplicities, sorted by
// (degree, coefficients).  Randomness only affects running time.
std::vector<std::pair<Poly, int>> factor(const FieldPtr& F, const Poly& f, std::mt19937_64& rng);
bool is_irreducible(const FieldPtr& F, const Poly& f);

}  // namespace dsupp
