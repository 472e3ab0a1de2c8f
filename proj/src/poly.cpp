#include "dsupp/poly.hpp"

#include <algorithm>
#include <map>

namespace dsupp {

void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int poly_deg(const Poly& a) { return int(a.size()) - 1; }

Poly poly_add(const Field& F, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
  poly_trim(r);
  return r;
}

Poly poly_sub(const Field& F, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
  poly_trim(r);
  return r;
}

Poly poly_mul(const Field& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i]) F.axpy(r.data() + i, a[i], b.data(), b.size());
  poly_trim(r);
  return r;
}

void poly_divmod(const Field& F, const Poly& a, const Poly& b, Poly& q, Poly& r) {
  require(!b.empty(), Errc::InvalidArgument, "polynomial division by zero");
  r = a;
  poly_trim(r);
  int db = poly_deg(b);
  if (poly_deg(r) < db) {
    q.clear();
    return;
  }
  q.assign(r.size() - b.size() + 1, 0);
  Elem lead_inv = F.inv(b.back());
  for (int i = poly_deg(r); i >= db; --i) {
    Elem c = F.mul(r[i], lead_inv);
    if (!c) continue;
    q[i - db] = c;
    F.axpy(r.data() + (i - db), F.neg(c), b.data(), b.size());
  }
  r.resize(db);
  poly_trim(r);
  poly_trim(q);
}

Poly poly_mod(const Field& F, const Poly& a, const Poly& b) {
  Poly q, r;
  poly_divmod(F, a, b, q, r);
  return r;
}

Poly poly_monic(const Field& F, const Poly& a) {
  if (a.empty()) return a;
  Poly r = a;
  F.scale(r.data(), F.inv(a.back()), r.size());
  return r;
}

Poly poly_gcd(const Field& F, Poly a, Poly b) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(F, a);
}

Poly poly_xgcd(const Field& F, const Poly& a, const Poly& b, Poly& u, Poly& v) {
  Poly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  poly_trim(r0);
  poly_trim(r1);
  while (!r1.empty()) {
    Poly q, r;
    poly_divmod(F, r0, r1, q, r);
    Poly s2 = poly_sub(F, s0, poly_mul(F, q, s1));
    Poly t2 = poly_sub(F, t0, poly_mul(F, q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) {
    u.clear();
    v.clear();
    return r0;
  }
  Elem inv = F.inv(r0.back());
  F.scale(s0.data(), inv, s0.size());
  F.scale(t0.data(), inv, t0.size());
  F.scale(r0.data(), inv, r0.size());
  u = s0;
  v = t0;
  return r0;
}

Poly poly_derivative(const Field& F, const Poly& a) {
  if (a.size() <= 1) return {};
  Poly d(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = F.mul(F.from_int(static_cast<long long>(i)), a[i]);
  poly_trim(d);
  return d;
}

Poly poly_powmod(const Field& F, Poly base, std::uint64_t n, const Poly& m) {
  Poly r{1};
  r = poly_mod(F, r, m);
  base = poly_mod(F, base, m);
  while (n) {
    if (n & 1) r = poly_mod(F, poly_mul(F, r, base), m);
    n >>= 1;
    if (n) base = poly_mod(F, poly_mul(F, base, base), m);
  }
  return r;
}

Elem poly_eval(const Field& F, const Poly& a, Elem x) {
  Elem acc = 0;
  for (int i = poly_deg(a); i >= 0; --i) acc = F.add(F.mul(acc, x), a[i]);
  return acc;
}

Matrix poly_eval_matrix(const Poly& a, const Matrix& m) {
  const Field& F = m.F();
  Matrix acc = Matrix::zero(m.field(), m.rows(), m.cols());
  for (int i = poly_deg(a); i >= 0; --i) {
    acc = acc * m;
    for (int j = 0; j < m.rows(); ++j) acc.at(j, j) = F.add(acc(j, j), a[i]);
  }
  return acc;
}

Matrix companion(const FieldPtr& F, const Poly& f) {
  int d = poly_deg(f);
  Matrix c(F, d, d);
  for (int i = 1; i < d; ++i) c.at(i, i - 1) = 1;
  for (int i = 0; i < d; ++i) c.at(i, d - 1) = F->neg(f[i]);
  return c;
}

Poly charpoly(const Matrix& m0) {
  require(m0.rows() == m0.cols(), Errc::DimensionMismatch, "charpoly");
  const Field& F = m0.F();
  int n = m0.rows();
  Matrix H = m0;
  // Reduce to upper Hessenberg form by similarity transforms.
  for (int k = 0; k < n - 1; ++k) {
    int piv = -1;
    for (int i = k + 1; i < n; ++i)
      if (H(i, k)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != k + 1) {
      std::swap_ranges(H.row(piv), H.row(piv) + n, H.row(k + 1));
      for (int r = 0; r < n; ++r) std::swap(H.at(r, piv), H.at(r, k + 1));
    }
    Elem inv = F.inv(H(k + 1, k));
    for (int i = k + 2; i < n; ++i) {
      Elem u = F.mul(H(i, k), inv);
      if (!u) continue;
      // row_i -= u * row_{k+1}; col_{k+1} += u * col_i
      F.axpy(H.row(i), F.neg(u), H.row(k + 1), std::size_t(n));
      for (int r = 0; r < n; ++r) H.at(r, k + 1) = F.add(H(r, k + 1), F.mul(u, H(r, i)));
    }
  }
  // p_0 = 1, p_{m} = (x - h_mm) p_{m-1} - sum_{i<m} h_im * prod_{j=i+1}^{m} h_{j,j-1} p_{i-1}
  std::vector<Poly> P(n + 1);
  P[0] = {1};
  for (int m = 1; m <= n; ++m) {
    Poly xm{F.neg(H(m - 1, m - 1)), 1};
    Poly acc = poly_mul(F, xm, P[m - 1]);
    Elem t = 1;
    for (int i = m - 1; i >= 1; --i) {
      t = F.mul(t, H(i, i - 1));
      if (!t) break;
      Elem c = F.mul(t, H(i - 1, m - 1));
      if (!c) continue;
      Poly s = P[i - 1];
      F.scale(s.data(), c, s.size());
      acc = poly_sub(F, acc, s);
    }
    P[m] = acc;
  }
  return P[n];
}

namespace {

// p-th root of a polynomial all of whose exponents are multiples of p.
Poly pth_root(const Field& F, const Poly& f) {
  int p = F.p();
  std::uint64_t e = std::uint64_t(F.order()) / std::uint64_t(p);  // x^{q/p} inverts Frobenius
  Poly r(f.size() / p + 1, 0);
  for (std::size_t i = 0; i < f.size(); i += p) r[i / p] = F.pow(f[i], e);
  poly_trim(r);
  return r;
}

void squarefree(const Field& F, const Poly& f, int mult, std::map<Poly, int>& out) {
  if (poly_deg(f) < 1) return;
  Poly d = poly_derivative(F, f);
  if (d.empty()) {
    squarefree(F, pth_root(F, f), mult * F.p(), out);
    return;
  }
  Poly c = poly_gcd(F, f, d);
  Poly w, rem;
  poly_divmod(F, f, c, w, rem);
  int i = 1;
  while (poly_deg(w) >= 1) {
    Poly y = poly_gcd(F, w, c);
    Poly z;
    poly_divmod(F, w, y, z, rem);
    if (poly_deg(z) >= 1) out[poly_monic(F, z)] += i * mult;
    ++i;
    w = y;
    Poly nc;
    poly_divmod(F, c, y, nc, rem);
    c = nc;
  }
  if (poly_deg(c) >= 1) squarefree(F, pth_root(F, c), mult * F.p(), out);
}

void equal_degree(const FieldPtr& Fp, const Poly& f, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
  const Field& F = *Fp;
  int n = poly_deg(f);
  if (n == d) {
    out.push_back(poly_monic(F, f));
    return;
  }
  int q = F.order();
  std::uniform_int_distribution<int> dist(0, q - 1);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Poly a(n);
    for (auto& c : a) c = Elem(dist(rng));
    poly_trim(a);
    if (poly_deg(a) < 1) continue;
    Poly g = poly_gcd(F, a, f);
    if (poly_deg(g) >= 1 && poly_deg(g) < n) {
      Poly h, rem;
      poly_divmod(F, f, g, h, rem);
      equal_degree(Fp, g, d, rng, out);
      equal_degree(Fp, h, d, rng, out);
      return;
    }
    Poly b;
    if (F.p() == 2) {
      // absolute trace a + a^2 + ... + a^{2^{ed-1}}
      int steps = F.degree() * d;
      Poly t = a, cur = a;
      for (int i = 1; i < steps; ++i) {
        cur = poly_mod(F, poly_mul(F, cur, cur), f);
        t = poly_add(F, t, cur);
      }
      b = t;
    } else {
      // a^{(q^d-1)/2} = (a^{1+q+...+q^{d-1}})^{(q-1)/2}
      Poly norm{1}, cur = a;
      for (int i = 0; i < d; ++i) {
        norm = poly_mod(F, poly_mul(F, norm, cur), f);
        if (i + 1 < d) cur = poly_powmod(F, cur, std::uint64_t(q), f);
      }
      b = poly_powmod(F, norm, std::uint64_t(q - 1) / 2, f);
      b = poly_sub(F, b, Poly{1});
    }
    g = poly_gcd(F, b, f);
    if (poly_deg(g) >= 1 && poly_deg(g) < n) {
      Poly h, rem;
      poly_divmod(F, f, g, h, rem);
      equal_degree(Fp, g, d, rng, out);
      equal_degree(Fp, h, d, rng, out);
      return;
    }
  }
  fail(Errc::DecompositionFailed, "equal-degree factorization did not split");
}

}  // namespace

std::vector<std::pair<Poly, int>> factor(const FieldPtr& Fp, const Poly& f0, std::mt19937_64& rng) {
  const Field& F = *Fp;
  Poly f = f0;
  poly_trim(f);
  require(!f.empty(), Errc::InvalidArgument, "factor of zero polynomial");
  std::map<Poly, int> sqf;
  squarefree(F, poly_monic(F, f), 1, sqf);
  std::map<Poly, int> result;
  std::uint64_t q = std::uint64_t(F.order());
  for (const auto& [g0, mult] : sqf) {
    Poly g = g0;
    Poly x{0, 1};
    Poly h = poly_mod(F, x, g);
    for (int d = 1; poly_deg(g) >= 2 * d; ++d) {
      h = poly_powmod(F, h, q, g);
      Poly gd = poly_gcd(F, g, poly_sub(F, h, x));
      if (poly_deg(gd) >= 1) {
        std::vector<Poly> parts;
        equal_degree(Fp, gd, d, rng, parts);
        for (auto& part : parts) result[part] += mult;
        Poly nq, rem;
        poly_divmod(F, g, gd, nq, rem);
        g = nq;
        h = poly_mod(F, h, g);
      }
    }
    if (poly_deg(g) >= 1) result[poly_monic(F, g)] += mult;
  }
  std::vector<std::pair<Poly, int>> out(result.begin(), result.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return std::lexicographical_compare(a.first.rbegin(), a.first.rend(), b.first.rbegin(), b.first.rend());
  });
  return out;
}

bool is_irreducible(const FieldPtr& F, const Poly& f) {
  std::mt19937_64 rng(12345);
  auto fac = factor(F, f, rng);
  return fac.size() == 1 && fac[0].second == 1;
}

}  // namespace dsupp
