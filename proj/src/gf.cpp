#include "dsupp/gf.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace dsupp {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NonPrime: return "NonPrime";
    case Errc::DegreeTooLarge: return "DegreeTooLarge";
    case Errc::NoSolution: return "NoSolution";
    case Errc::NotNilpotent: return "NotNilpotent";
    case Errc::NotAssociative: return "NotAssociative";
    case Errc::BadUnit: return "BadUnit";
    case Errc::AugmentationNotMultiplicative: return "AugmentationNotMultiplicative";
    case Errc::RadicalNotComputable: return "RadicalNotComputable";
    case Errc::DecompositionFailed: return "DecompositionFailed";
    case Errc::LiftDiverged: return "LiftDiverged";
    case Errc::NoHopfStructure: return "NoHopfStructure";
    case Errc::NotAlgebraMap: return "NotAlgebraMap";
    case Errc::DepthBudgetExceeded: return "DepthBudgetExceeded";
    case Errc::ActionNotModuleAlgebra: return "ActionNotModuleAlgebra";
    case Errc::NotGeneratedByPrimitives: return "NotGeneratedByPrimitives";
    case Errc::HopfAxiomFailure: return "HopfAxiomFailure";
    case Errc::UnsupportedCatalogEntry: return "UnsupportedCatalogEntry";
    case Errc::EquivarianceFailure: return "EquivarianceFailure";
    case Errc::NotLocal: return "NotLocal";
    case Errc::DiagramFailure: return "DiagramFailure";
    case Errc::NotFlat: return "NotFlat";
    case Errc::NotNilpotentP: return "NotNilpotentP";
    case Errc::ZeroCocycle: return "ZeroCocycle";
    case Errc::TruncationInconclusive: return "TruncationInconclusive";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::DimensionTooLarge: return "DimensionTooLarge";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

// Integer-coefficient polynomial helpers used only while building a field.
using IPoly = std::vector<int>;

IPoly ipoly_mod(IPoly a, const IPoly& m, int p) {
  int dm = int(m.size()) - 1;  // m monic
  for (int i = int(a.size()) - 1; i >= dm; --i) {
    int c = a[i] % p;
    if (c == 0) continue;
    for (int j = 0; j <= dm; ++j) a[i - dm + j] = ((a[i - dm + j] - c * m[j]) % p + p) % p;
  }
  a.resize(std::min<std::size_t>(a.size(), std::size_t(dm)));
  return a;
}

bool ipoly_is_zero(const IPoly& a) {
  for (int c : a)
    if (c) return false;
  return true;
}

// Monic polynomial of degree d with lower coefficients given by the digits of code.
IPoly monic_from_code(int p, int d, int code) {
  IPoly f(d + 1, 0);
  for (int i = 0; i < d; ++i) {
    f[i] = code % p;
    code /= p;
  }
  f[d] = 1;
  return f;
}

bool ipoly_irreducible(const IPoly& f, int p) {
  int d = int(f.size()) - 1;
  for (int k = 1; 2 * k <= d; ++k) {
    int count = 1;
    for (int i = 0; i < k; ++i) count *= p;
    for (int code = 0; code < count; ++code) {
      IPoly g = monic_from_code(p, k, code);
      if (ipoly_is_zero(ipoly_mod(f, g, p))) return false;
    }
  }
  return true;
}

}  // namespace

Field::Field(int p, int e) : p_(p), e_(e) {
  q_ = 1;
  for (int i = 0; i < e; ++i) q_ *= p;
  if (e == 1) {
    modulus_ = {0, 1};
  } else {
    // Lexicographically smallest monic irreducible polynomial, comparing the
    // non-leading coefficients from the highest degree down.
    for (int code = 0;; ++code) {
      IPoly f = monic_from_code(p, e, code);
      if (ipoly_irreducible(f, p)) {
        modulus_ = f;
        break;
      }
    }
  }
  std::size_t qq = std::size_t(q_) * q_;
  add_.resize(qq);
  mul_.resize(qq);
  neg_.resize(q_);
  inv_.assign(q_, 0);
  frob_.resize(q_);
  std::vector<IPoly> c(q_);
  for (int a = 0; a < q_; ++a) c[a] = coeffs(Elem(a));
  for (int a = 0; a < q_; ++a) {
    IPoly n(e);
    for (int i = 0; i < e; ++i) n[i] = (p - c[a][i]) % p;
    neg_[a] = from_coeffs(n);
    for (int b = 0; b < q_; ++b) {
      IPoly s(e);
      for (int i = 0; i < e; ++i) s[i] = (c[a][i] + c[b][i]) % p;
      add_[std::size_t(a) * q_ + b] = from_coeffs(s);
    }
  }
  for (int a = 0; a < q_; ++a) {
    for (int b = a; b < q_; ++b) {
      IPoly prod(2 * e - 1, 0);
      for (int i = 0; i < e; ++i) {
        if (!c[a][i]) continue;
        for (int j = 0; j < e; ++j) prod[i + j] += c[a][i] * c[b][j];
      }
      for (int& x : prod) x %= p;
      IPoly r = e == 1 ? prod : ipoly_mod(prod, modulus_, p);
      r.resize(e, 0);
      Elem v = from_coeffs(r);
      mul_[std::size_t(a) * q_ + b] = v;
      mul_[std::size_t(b) * q_ + a] = v;
    }
  }
  for (int a = 1; a < q_; ++a)
    for (int b = 1; b < q_; ++b)
      if (mul_[std::size_t(a) * q_ + b] == 1) {
        inv_[a] = Elem(b);
        break;
      }
  for (int a = 0; a < q_; ++a) frob_[a] = pow(Elem(a), std::uint64_t(p));
}

Elem Field::inv(Elem a) const {
  require(a != 0, Errc::InvalidArgument, "inverse of zero");
  return inv_[a];
}

Elem Field::pow(Elem a, std::uint64_t n) const {
  Elem r = 1;
  while (n) {
    if (n & 1) r = mul(r, a);
    a = mul(a, a);
    n >>= 1;
  }
  return r;
}

Elem Field::from_int(long long v) const {
  long long r = v % p_;
  if (r < 0) r += p_;
  return Elem(r);
}

std::vector<int> Field::coeffs(Elem a) const {
  std::vector<int> c(e_);
  int x = a;
  for (int i = 0; i < e_; ++i) {
    c[i] = x % p_;
    x /= p_;
  }
  return c;
}

Elem Field::from_coeffs(std::span<const int> c) const {
  int x = 0;
  for (int i = int(c.size()) - 1; i >= 0; --i) x = x * p_ + ((c[i] % p_) + p_) % p_;
  return Elem(x);
}

void Field::axpy(Elem* y, Elem c, const Elem* x, std::size_t n) const {
  if (c == 0) return;
  const Elem* m = mul_row(c);
  const Elem* ad = add_.data();
  const std::size_t q = q_;
  for (std::size_t i = 0; i < n; ++i) {
    Elem t = m[x[i]];
    if (t) y[i] = ad[y[i] * q + t];
  }
}

void Field::scale(Elem* y, Elem c, std::size_t n) const {
  const Elem* m = mul_row(c);
  for (std::size_t i = 0; i < n; ++i) y[i] = m[y[i]];
}

std::string Field::name() const {
  std::ostringstream os;
  os << "F" << q_;
  return os.str();
}

FieldPtr make_field(int p, int e) {
  require(is_prime(p), Errc::NonPrime, "p = " + std::to_string(p));
  require(e >= 1 && e <= 4, Errc::DegreeTooLarge, "e = " + std::to_string(e));
  long long q = 1;
  for (int i = 0; i < e; ++i) q *= p;
  require(q <= 4096, Errc::InvalidArgument, "field order exceeds table arithmetic limit");
  static std::mutex mu;
  static std::map<std::pair<int, int>, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, e);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto f = std::make_shared<const Field>(p, e);
  cache.emplace(key, f);
  return f;
}

bool same_field(const FieldPtr& a, const FieldPtr& b) { return a->same_as(*b); }

void require_same_field(const FieldPtr& a, const FieldPtr& b) {
  require(same_field(a, b), Errc::FieldMismatch, a->name() + " vs " + b->name());
}

namespace {

// Image of the small field's generator (the class of t) in the large field.
Elem embedding_root(const Field& from, const Field& to) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, Elem> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(from.p(), from.degree(), to.degree());
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const auto& m = from.modulus();
  for (int x = 0; x < to.order(); ++x) {
    Elem acc = 0;
    for (int i = int(m.size()) - 1; i >= 0; --i) acc = to.add(to.mul(acc, Elem(x)), Elem(m[i]));
    if (acc == 0) {
      cache.emplace(key, Elem(x));
      return Elem(x);
    }
  }
  fail(Errc::InvalidArgument, "no embedding root");
}

}  // namespace

Elem embed(const Field& from, const Field& to, Elem x) {
  require(from.p() == to.p() && to.degree() % from.degree() == 0, Errc::FieldMismatch,
          "no embedding " + from.name() + " -> " + to.name());
  if (from.degree() == to.degree() || from.degree() == 1) return x;
  Elem g = embedding_root(from, to);
  auto c = from.coeffs(x);
  Elem acc = 0;
  for (int i = int(c.size()) - 1; i >= 0; --i) acc = to.add(to.mul(acc, g), Elem(c[i]));
  return acc;
}

int subfield_degree(const Field& K, Elem x) {
  for (int d = 1; d <= K.degree(); ++d) {
    if (K.degree() % d) continue;
    int qd = 1;
    for (int i = 0; i < d; ++i) qd *= K.p();
    if (K.pow(x, std::uint64_t(qd)) == x) return d;
  }
  return K.degree();
}

Elem restrict_to_subfield(const Field& K, int d, Elem x) {
  if (d == K.degree()) return x;
  FieldPtr S = make_field(K.p(), d);
  for (int y = 0; y < S->order(); ++y)
    if (embed(*S, K, Elem(y)) == x) return Elem(y);
  fail(Errc::InvalidArgument, "element not in subfield");
}

bool is_zero(const Vec& v) {
  for (Elem x : v)
    if (x) return false;
  return true;
}

Vec unit_vector(int n, int i) {
  Vec v(n, 0);
  v[i] = 1;
  return v;
}

}  // namespace dsupp
