#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "dsupp/error.hpp"

namespace dsupp {

// Field elements are codes 0..q-1; the base-p digits of a code are the
// coefficients (constant term first) of a polynomial reduced mod the modulus.
// Prime-field elements therefore keep their code in every extension.
using Elem = std::uint16_t;
using Vec = std::vector<Elem>;

class Field {
 public:
  Field(int p, int e);

  int p() const { return p_; }
  int degree() const { return e_; }
  int order() const { return q_; }
  const std::vector<int>& modulus() const { return modulus_; }

  Elem add(Elem a, Elem b) const { return add_[std::size_t(a) * q_ + b]; }
  Elem sub(Elem a, Elem b) const { return add_[std::size_t(a) * q_ + neg_[b]]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem mul(Elem a, Elem b) const { return mul_[std::size_t(a) * q_ + b]; }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t n) const;
  Elem frobenius(Elem a) const { return frob_[a]; }
  Elem from_int(long long v) const;
  // Returns an F_p element as an integer in [0, p), valid only for prime-field codes.
  bool in_prime_field(Elem a) const { return a < p_; }

  std::vector<int> coeffs(Elem a) const;
  Elem from_coeffs(std::span<const int> c) const;

  // y[i] += c * x[i]
  void axpy(Elem* y, Elem c, const Elem* x, std::size_t n) const;
  void scale(Elem* y, Elem c, std::size_t n) const;

  const Elem* mul_row(Elem c) const { return mul_.data() + std::size_t(c) * q_; }
  const Elem* add_row(Elem a) const { return add_.data() + std::size_t(a) * q_; }

  bool same_as(const Field& o) const { return p_ == o.p_ && e_ == o.e_; }
  std::string name() const;

 private:
  int p_, e_, q_;
  std::vector<int> modulus_;  // monic, length e+1, constant term first
  std::vector<Elem> add_, mul_, neg_, inv_, frob_;
};

using FieldPtr = std::shared_ptr<const Field>;

bool is_prime(int n);
// Cached construction. Errors: NonPrime, DegreeTooLarge (q > 2401 or e > 8).
FieldPtr make_field(int p, int e);

// Embedding F_{p^d} -> F_{p^e}, d | e, sending the generator of the small field
// to the smallest-code root of its modulus in the large field.
Elem embed(const Field& from, const Field& to, Elem x);
// Smallest degree d such that x lies in the canonical copy of F_{p^d} inside K.
int subfield_degree(const Field& K, Elem x);
// Preimage of x under embed(F_{p^d}, K); x must lie in the image.
Elem restrict_to_subfield(const Field& K, int d, Elem x);

bool same_field(const FieldPtr& a, const FieldPtr& b);
void require_same_field(const FieldPtr& a, const FieldPtr& b);

// Vector helpers (dense).
bool is_zero(const Vec& v);
Vec unit_vector(int n, int i);

}  // namespace dsupp
