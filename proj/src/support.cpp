#include "dsupp/support.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "dsupp/error.hpp"

namespace dsupp {

namespace {

int lcm_int(int a, int b) { return a / std::gcd(a, b) * b; }

int field_degree_of(const Field& K, const Vec& v) {
  int d = 1;
  for (Elem x : v) d = lcm_int(d, subfield_degree(K, x));
  return d;
}

Vec embed_vec(const Field& from, const Field& to, const Vec& v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = embed(from, to, v[i]);
  return out;
}

// a * y on the free module A^r (blockwise left multiplication).
Vec act_free(const Algebra& A, const Vec& a, const Vec& y) {
  int n = A.dim();
  int r = int(y.size()) / n;
  Vec out(y.size(), 0);
  for (int l = 0; l < r; ++l) {
    Vec blk(y.begin() + l * n, y.begin() + (l + 1) * n);
    if (is_zero(blk)) continue;
    Vec z = A.mul(a, blk);
    std::copy(z.begin(), z.end(), out.begin() + l * n);
  }
  return out;
}

Vec block_of(const Vec& x, int k, int n) { return Vec(x.begin() + k * n, x.begin() + (k + 1) * n); }

int trivial_class(const AlgebraPtr& A) {
  require(A->augmentation().has_value(), Errc::InvalidArgument, "algebra without augmentation");
  auto P = pims(A);
  const Vec& eps = *A->augmentation();
  const Field& F = A->F();
  for (std::size_t k = 0; k < P->classes.size(); ++k) {
    Elem s = 0;
    const Vec& e = P->classes[k].idempotent;
    for (std::size_t i = 0; i < e.size(); ++i) s = F.add(s, F.mul(e[i], eps[i]));
    if (s) return int(k);
  }
  fail(Errc::DecompositionFailed, "no PIM covers the trivial module");
}

// Pullback Hom_A(P_k, V) -> Hom_A(P_m, V) along an A-map given by generator images in P_k.
Matrix pullback(const Module& V, const std::vector<Vec>& images, int rank_k) {
  const Algebra& A = *V.algebra();
  int n = A.dim(), dv = V.dim();
  Matrix M(V.field(), int(images.size()) * dv, rank_k * dv);
  for (std::size_t j = 0; j < images.size(); ++j)
    for (int l = 0; l < rank_k; ++l) {
      Vec y = block_of(images[j], l, n);
      if (is_zero(y)) continue;
      M.set_block(int(j) * dv, l * dv, V.action(y));
    }
  return M;
}

std::vector<Vec> generator_images(const FreeResolution& R, int i) {
  const Algebra& A = *R.A;
  int n = A.dim();
  const Vec& u = A.unit();
  std::vector<Vec> out;
  for (int j = 0; j < R.ranks[i]; ++j) {
    Vec col(R.d[i].rows(), 0);
    for (int b = 0; b < n; ++b)
      if (u[b]) A.F().axpy(col.data(), u[b], R.d[i].column(j * n + b).data(), col.size());
    out.push_back(col);
  }
  return out;
}

Vec socle_element(const AlgebraPtr& A) {
  auto R = radical(A);
  int n = A->dim();
  const auto& rb = R->space.basis();
  Matrix S(A->field(), int(rb.size()) * n, n);
  for (std::size_t i = 0; i < rb.size(); ++i) S.set_block(int(i) * n, 0, left_multiplication(*A, rb[i]));
  Matrix N = nullspace(S);
  require(N.cols() == 1, Errc::InvalidArgument, "socle of a local self-injective algebra must be simple");
  return N.column(0);
}

std::vector<std::vector<int>> monomials(int h, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> e(h, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == h - 1) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
  };
  if (h > 0) rec(0, d);
  return out;
}

}  // namespace

// ---------------------------------------------------------------- pi-points

Vec PiPoint::global() const { return local->iota.apply(alpha); }

Matrix left_multiplication(const Algebra& A, const Vec& a) {
  int n = A.dim();
  Matrix M(A.field(), n, n);
  for (int j = 0; j < n; ++j) M.set_column(j, A.mul(a, A.basis(j)));
  return M;
}

bool nilpotent_acts_freely(const Matrix& N, int p) {
  int n = N.rows();
  if (n % p) return false;
  return rank(N) == n - n / p;
}

PiPoint make_pi_point_from_element(const LocalPtr& L, const Vec& alpha) {
  const Algebra& A = L->D_psi->alg();
  int p = A.F().p();
  require(int(alpha.size()) == A.dim(), Errc::DimensionMismatch, "alpha has wrong length");
  require(!is_zero(alpha), Errc::InvalidArgument, "alpha = 0");
  require(is_zero(A.pow(alpha, p)), Errc::NotNilpotentP, "alpha(t)^p != 0");
  PiPoint a;
  a.local = L;
  a.e = A.F().degree();
  a.alpha = alpha;
  a.flat_certificate = jordan_type(left_multiplication(A, alpha));
  require(a.flat_certificate.all_blocks_equal(p), Errc::NotFlat, "Jordan type " + a.flat_certificate.str());
  return a;
}

PiPoint make_pi_point(const LocalPtr& L, const Vec& lambda) {
  require(lambda.size() == L->generators.size(), Errc::InvalidArgument, "one coefficient per generator");
  require(!is_zero(lambda), Errc::InvalidArgument, "lambda = 0");
  const Algebra& A = L->D_psi->alg();
  Vec alpha(A.dim(), 0);
  for (std::size_t i = 0; i < lambda.size(); ++i) A.F().axpy(alpha.data(), lambda[i], L->generators[i].data(), alpha.size());
  PiPoint a = make_pi_point_from_element(L, alpha);
  a.coeffs = lambda;
  return a;
}

JordanType restrict_jordan(const PiPoint& a, const Module& V) {
  const FieldPtr& K = a.local->D_psi->field();
  const AlgebraPtr& Dp = a.local->D_psi->algebra();
  int nD = a.local->bundle_K->D->dim();
  if (V.algebra().get() == Dp.get() || (V.algebra()->dim() == Dp->dim() && V.algebra()->dim() != nD))
    return jordan_type(base_change(V, K).action(a.alpha));
  require(V.algebra()->dim() == nD, Errc::DimensionMismatch, "module is over neither D nor D_psi");
  return jordan_type(base_change(V, K).action(a.global()));
}

CanonicalPoint canonical_point(const FieldPtr& K, const Vec& v0) {
  const Field& F = *K;
  require(!is_zero(v0), Errc::InvalidArgument, "zero point");
  Vec v = v0;
  std::size_t f = 0;
  while (!v[f]) ++f;
  F.scale(v.data(), F.inv(v[f]), v.size());
  int d = field_degree_of(F, v);
  FieldPtr Kd = make_field(F.p(), d);
  Vec w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = restrict_to_subfield(F, d, v[i]);
  Vec best = w, cur = w;
  for (int i = 1; i < d; ++i) {
    for (Elem& x : cur) x = Kd->frobenius(x);
    if (cur < best) best = cur;
  }
  CanonicalPoint c;
  c.field = Kd;
  c.v = best;
  c.label = "F" + std::to_string(Kd->order()) + "|";
  bool first = true;
  for (std::size_t i = 0; i < best.size(); ++i)
    if (best[i]) {
      c.label += (first ? "" : ",") + std::to_string(i) + ":" + std::to_string(best[i]);
      first = false;
    }
  return c;
}

int PointSweep::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (classes[i].label == label) return int(i);
  return -1;
}

PointSweep sweep_points(const BundlePtr& b, int e_max) {
  require(e_max >= 1 && e_max <= 4, Errc::InvalidArgument, "e_max must lie in 1..4");
  PointSweep s;
  s.bundle = b;
  s.e_max = e_max;
  s.psis = enumerate_one_param(*b, e_max, true);
  std::map<std::string, int> index;
  int p = b->p;
  for (std::size_t i = 0; i < s.psis.size(); ++i) {
    const OneParamSubgroup& psi = s.psis[i];
    int e0 = psi.K->degree();
    for (int e = e0; e <= e_max; e += e0) {
      FieldPtr K = make_field(p, e);
      OneParamSubgroup ps = e == e0 ? psi : make_one_param(*b, K, psi.s, embed_vec(*psi.K, *K, psi.data));
      auto L = std::make_shared<const LocalSubalgebra>(build_D_psi(*b, ps));
      s.locals.push_back(L);
      s.local_psi.push_back(int(i));
      const Algebra& A = L->D_psi->alg();
      int m = int(L->generators.size());
      for (int d = 1; d <= e; ++d) {
        if (e % d || lcm_int(e0, d) != e) continue;
        FieldPtr Kd = make_field(p, d);
        for (const Vec& lam_d : vectors_of_degree(*Kd, m, true)) {
          Vec lam = embed_vec(*Kd, *K, lam_d);
          Vec alpha(A.dim(), 0);
          for (int k = 0; k < m; ++k) K->axpy(alpha.data(), lam[k], L->generators[k].data(), alpha.size());
          if (!is_zero(A.pow(alpha, p))) {
            ++s.skipped_not_nilpotent;
            continue;
          }
          require(nilpotent_acts_freely(left_multiplication(A, alpha), p), Errc::NotFlat,
                  "swept point is not flat on " + psi.label());
          PiPoint a;
          a.local = L;
          a.e = e;
          a.coeffs = lam;
          a.alpha = alpha;
          CanonicalPoint c = canonical_point(K, a.global());
          auto it = index.find(c.label);
          if (it == index.end()) {
            a.flat_certificate = jordan_type(left_multiplication(A, alpha));
            PointClass pc;
            pc.label = c.label;
            pc.field = c.field;
            pc.point = c.v;
            it = index.emplace(c.label, int(s.classes.size())).first;
            s.classes.push_back(std::move(pc));
          }
          s.classes[it->second].members.push_back(std::move(a));
        }
      }
    }
  }
  return s;
}

void compute_fingerprints(PointSweep& s) {
  if (s.witnesses.empty()) {
    const AlgebraPtr& D = s.bundle->D->algebra();
    auto simples = simple_tops(D);
    for (std::size_t i = 0; i < simples.size(); ++i) {
      s.witnesses.push_back(simples[i].rep);
      s.witness_names.push_back("simple" + std::to_string(i) + ":dim" + std::to_string(simples[i].rep.dim()));
    }
    Resolution R = minimal_resolution(trivial_module(D), 4);
    for (int i = 1; i <= 4; ++i) {
      s.witnesses.push_back(R.syzygy(i));
      s.witness_names.push_back("Omega" + std::to_string(i));
    }
    std::vector<int> idx = ext_basis(R, 2);
    int h = int(idx.size());
    FieldPtr Fp = make_field(s.bundle->p, 1);
    std::vector<Vec> zs;
    long long count = 1;
    for (int i = 0; i < h; ++i) count *= s.bundle->p;
    if (h > 0 && (count - 1) / (s.bundle->p - 1) <= 121) {
      zs = vectors_of_degree(*Fp, h, true);
    } else {
      for (int i = 0; i < h; ++i) zs.push_back(unit_vector(h, i));
      for (int i = 0; i < h; ++i)
        for (int j = i + 1; j < h; ++j) {
          Vec v = unit_vector(h, i);
          v[j] = 1;
          zs.push_back(v);
        }
    }
    for (const Vec& z : zs) {
      Vec full(R.steps[2].summand_class.size(), 0);
      std::string name = "L[";
      for (int i = 0; i < h; ++i) {
        full[idx[i]] = z[i];
        name += (i ? "," : "") + std::to_string(z[i]);
      }
      s.witnesses.push_back(carlson_module(R, 2, full));
      s.witness_names.push_back(name + "]");
    }
  }
  for (PointClass& c : s.classes) c.fingerprint = fingerprint_of(s, c.point, c.field);
}

std::string fingerprint_of(const PointSweep& s, const Vec& global_alpha, const FieldPtr& K) {
  std::string f;
  for (const Module& W : s.witnesses)
    f += nilpotent_acts_freely(base_change(W, K).action(global_alpha), s.bundle->p) ? '0' : '1';
  return f;
}

// ------------------------------------------------------------------ clouds

SupportCloud make_cloud(const PointSweep& s, std::vector<int> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  SupportCloud c;
  c.e_max = s.e_max;
  c.points = std::move(points);
  for (int i : c.points) c.labels.push_back(s.classes[i].label);
  return c;
}

SupportCloud cloud_intersection(const PointSweep& s, const SupportCloud& a, const SupportCloud& b) {
  std::vector<int> out;
  std::set_intersection(a.points.begin(), a.points.end(), b.points.begin(), b.points.end(), std::back_inserter(out));
  return make_cloud(s, out);
}

SupportCloud cloud_union(const PointSweep& s, const SupportCloud& a, const SupportCloud& b) {
  std::vector<int> out;
  std::set_union(a.points.begin(), a.points.end(), b.points.begin(), b.points.end(), std::back_inserter(out));
  return make_cloud(s, out);
}

bool projective_at(const Module& V, const PointClass& c) {
  Module VK = base_change(V, c.field);
  return nilpotent_acts_freely(VK.action(c.point), c.field->p());
}

SupportCloud pi_support(const Module& V, const PointSweep& s) {
  const auto& D = s.bundle->D;
  require(V.algebra()->dim() == D->dim(), Errc::DimensionMismatch, "module is not over the double");
  require(V.field()->degree() == 1 && V.field()->p() == s.bundle->p, Errc::FieldMismatch,
          "pi_support expects a module over the prime field");
  std::map<int, Module> by_degree;
  std::vector<int> pts;
  for (std::size_t i = 0; i < s.classes.size(); ++i) {
    const PointClass& c = s.classes[i];
    int d = c.field->degree();
    auto it = by_degree.find(d);
    if (it == by_degree.end()) it = by_degree.emplace(d, base_change(V, c.field)).first;
    if (!nilpotent_acts_freely(it->second.action(c.point), s.bundle->p)) pts.push_back(int(i));
  }
  return make_cloud(s, pts);
}

SupportCloud local_pi_support(const Module& M, const PointSweep& s, int psi_index) {
  std::vector<int> pts;
  std::vector<char> hit(s.classes.size(), 0);
  for (std::size_t li = 0; li < s.locals.size(); ++li) {
    if (s.local_psi[li] != psi_index) continue;
    const LocalPtr& L = s.locals[li];
    require(M.algebra()->dim() == L->D_psi->dim(), Errc::DimensionMismatch, "module is not over D_psi");
    Module MK = base_change(M, L->D_psi->field());
    for (std::size_t c = 0; c < s.classes.size(); ++c) {
      if (hit[c]) continue;
      for (const PiPoint& a : s.classes[c].members) {
        if (a.local != L) continue;
        if (!nilpotent_acts_freely(MK.action(a.alpha), s.bundle->p)) {
          hit[c] = 1;
          break;
        }
      }
    }
  }
  for (std::size_t c = 0; c < hit.size(); ++c)
    if (hit[c]) pts.push_back(int(c));
  return make_cloud(s, pts);
}

SupportCloud support_reconstruct(const Module& V, const PointSweep& s) {
  SupportCloud out = make_cloud(s, {});
  for (std::size_t i = 0; i < s.psis.size(); ++i) {
    std::size_t li = 0;
    while (s.local_psi[li] != int(i)) ++li;
    const LocalPtr& L = s.locals[li];
    Module VK = base_change(V, L->D_psi->field());
    Module M = restrict_along(VK, L->D_psi->algebra(), L->iota);
    out = cloud_union(s, out, local_pi_support(M, s, int(i)));
  }
  return out;
}

// ------------------------------------------------------------ resolutions

FreeResolution free_resolution(const Resolution& R) {
  require(pims(R.algebra)->local, Errc::NotLocal, "free resolutions need a local algebra");
  FreeResolution F;
  F.A = R.algebra;
  F.ranks = R.betti();
  F.d.resize(F.ranks.size());
  for (int i = 1; i < int(F.ranks.size()); ++i) F.d[i] = R.differential(i);
  return F;
}

FreeResolution FreeResolution::over(const FieldPtr& K) const {
  if (same_field(A->field(), K)) return *this;
  FreeResolution F;
  F.A = A->over(K);
  F.ranks = ranks;
  F.d.resize(d.size());
  for (std::size_t i = 1; i < d.size(); ++i) F.d[i] = d[i].over(K);
  return F;
}

Elem block_augmentation(const Algebra& A, const Vec& x, int k) {
  const Vec& eps = *A.augmentation();
  const Field& F = A.F();
  int n = A.dim();
  Elem s = 0;
  for (int b = 0; b < n; ++b)
    if (eps[b] && x[k * n + b]) s = F.add(s, F.mul(eps[b], x[k * n + b]));
  return s;
}

Vec generator_element(const Algebra& A, int rank, int j) {
  int n = A.dim();
  Vec v(rank * n, 0);
  const Vec& u = A.unit();
  std::copy(u.begin(), u.end(), v.begin() + j * n);
  return v;
}

std::vector<std::vector<Vec>> lift_chain(const FreeResolution& src, int shift, const FreeResolution& dst,
                                         const Matrix& phi, const std::vector<Vec>& start, int top) {
  require(shift + top <= src.top() && top <= dst.top(), Errc::DepthBudgetExceeded, "resolution too short for lift");
  require(int(start.size()) == src.ranks[shift], Errc::DimensionMismatch, "start images");
  const Algebra& B = *src.A;
  const Algebra& A = *dst.A;
  int nB = B.dim();
  std::vector<std::vector<Vec>> out{start};
  for (int i = 1; i <= top; ++i) {
    std::vector<Vec> gi = generator_images(src, shift + i);
    int rows = dst.ranks[i - 1] * A.dim();
    Matrix rhs(A.field(), rows, int(gi.size()));
    for (std::size_t j = 0; j < gi.size(); ++j) {
      Vec acc(rows, 0);
      for (int k = 0; k < src.ranks[shift + i - 1]; ++k) {
        Vec bk = block_of(gi[j], k, nB);
        if (is_zero(bk)) continue;
        Vec t = act_free(A, phi.apply(bk), out[i - 1][k]);
        A.F().axpy(acc.data(), 1, t.data(), acc.size());
      }
      rhs.set_column(int(j), acc);
    }
    std::vector<Vec> cur;
    if (!gi.empty()) {
      Matrix x = solve_linear(dst.d[i], rhs).particular;
      for (int j = 0; j < x.cols(); ++j) cur.push_back(x.column(j));
    }
    out.push_back(std::move(cur));
  }
  return out;
}

// ------------------------------------------------------------------ Carlson

std::vector<int> ext_basis(const Resolution& R, int n) {
  require(n >= 0 && n < int(R.steps.size()), Errc::DepthBudgetExceeded, "degree beyond the resolution");
  int k0 = trivial_class(R.algebra);
  std::vector<int> out;
  const auto& cls = R.steps[n].summand_class;
  for (std::size_t j = 0; j < cls.size(); ++j)
    if (cls[j] == k0) out.push_back(int(j));
  return out;
}

Module carlson_module(const Resolution& R, int n, const Vec& zeta) {
  require(n >= 1 && n < int(R.steps.size()), Errc::DepthBudgetExceeded, "degree beyond the resolution");
  const ResolutionStep& st = R.steps[n];
  require(zeta.size() == st.summand_class.size(), Errc::InvalidArgument, "one coefficient per summand of P_n");
  const AlgebraPtr& A = R.algebra;
  const Field& F = A->F();
  const Vec& eps = *A->augmentation();
  auto P = pims(A);
  Vec fP(st.cover.cols(), 0);
  for (std::size_t j = 0; j < zeta.size(); ++j) {
    if (!zeta[j]) continue;
    const auto& basis = P->classes[st.summand_class[j]].space.basis();
    for (std::size_t b = 0; b < basis.size(); ++b) {
      Elem e = 0;
      for (int i = 0; i < A->dim(); ++i) e = F.add(e, F.mul(basis[b][i], eps[i]));
      fP[st.offsets[j] + b] = F.mul(zeta[j], e);
    }
  }
  require(!is_zero(fP), Errc::ZeroCocycle, "zeta represents zero");
  auto f = solve_vector(st.cover.transpose(), fP);
  require(f.has_value(), Errc::NoSolution, "zeta does not factor through Omega^n");
  const Module& Om = st.syzygy;
  Matrix row(A->field(), 1, Om.dim());
  for (int i = 0; i < Om.dim(); ++i) row.at(0, i) = (*f)[i];
  Matrix K = nullspace(row);
  Subspace W(A->field(), Om.dim());
  for (int c = 0; c < K.cols(); ++c) W.add(K.column(c));
  return submodule(Om, W).module;
}

Module realize_closed_set(const HopfAlgebra& H, const Resolution& R, const std::vector<Vec>& zetas, int n) {
  if (zetas.empty()) return trivial_module(H.algebra());
  Module M = carlson_module(R, n, zetas[0]);
  for (std::size_t i = 1; i < zetas.size(); ++i) M = tensor(M, carlson_module(R, n, zetas[i]), H);
  return M;
}

StrippedModule strip_free_summands(const Module& M) {
  const AlgebraPtr& A = M.algebra();
  require(is_local(A), Errc::NotLocal, "strip_free_summands needs a local algebra");
  if (M.dim() == 0) return {M, 0};
  Vec soc = socle_element(A);
  Matrix S = M.action(soc);
  Subspace img(M.field(), M.dim());
  std::vector<Vec> pre;
  for (int c = 0; c < S.cols(); ++c)
    if (img.add(S.column(c))) pre.push_back(unit_vector(M.dim(), c));
  if (pre.empty()) return {M, 0};
  Subspace F = spin(M, pre);
  require(F.dim() == int(pre.size()) * A->dim(), Errc::DecompositionFailed, "free summand has wrong dimension");
  return {quotient_module(M, F).module, int(pre.size())};
}

// -------------------------------------------------------------------- Ext

Vec ExtTruncation::product(int i, const Vec& a, int j, const Vec& b) const {
  const Matrix& P = products.at({i, j});
  const Field& F = A->F();
  Vec out(P.rows(), 0);
  int bj = betti[j];
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (!a[x]) continue;
    for (std::size_t y = 0; y < b.size(); ++y) {
      if (!b[y]) continue;
      Elem c = F.mul(a[x], b[y]);
      int col = int(x) * bj + int(y);
      for (int r = 0; r < P.rows(); ++r)
        if (P(r, col)) out[r] = F.add(out[r], F.mul(c, P(r, col)));
    }
  }
  return out;
}

ExtTruncation ext_truncation(const AlgebraPtr& A, int n_max, const std::vector<Module>& modules) {
  require(n_max >= 1 && n_max < kMaxResolutionDepth, Errc::DepthBudgetExceeded, "n_max must lie in 1..11");
  require(is_local(A), Errc::NotLocal, "ext_truncation needs a local algebra");
  ExtTruncation T;
  T.A = A;
  T.n_max = n_max;
  T.g = A->F().p() == 2 ? 1 : 2;
  T.res = minimal_resolution(trivial_module(A), n_max + 1);
  T.free = free_resolution(T.res);
  T.betti.assign(T.free.ranks.begin(), T.free.ranks.begin() + n_max + 1);
  Matrix I = Matrix::identity(A->field(), A->dim());
  for (int m = 0; m <= n_max; ++m) {
    for (int j = 0; m + j <= n_max; ++j) T.products[{m, j}] = Matrix(A->field(), T.betti[m + j], T.betti[m] * T.betti[j]);
    for (int a = 0; a < T.betti[m]; ++a) {
      std::vector<Vec> start;
      for (int j = 0; j < T.betti[m]; ++j)
        start.push_back(j == a ? generator_element(*A, 1, 0) : Vec(A->dim(), 0));
      auto lift = lift_chain(T.free, m, T.free, I, start, n_max - m);
      for (int j = 0; m + j <= n_max; ++j) {
        Matrix& P = T.products[{m, j}];
        for (int g = 0; g < T.betti[m + j]; ++g)
          for (int bb = 0; bb < T.betti[j]; ++bb) P.at(g, a * T.betti[j] + bb) = block_augmentation(*A, lift[j][g], bb);
      }
      if (m == T.g) T.gen_lifts.push_back(lift);
    }
  }
  for (const Module& V : modules) add_module(T, V);
  return T;
}

void add_module(ExtTruncation& T, const Module& V) {
  require(V.algebra()->dim() == T.A->dim(), Errc::DimensionMismatch, "module over another algebra");
  require_same_field(V.field(), T.A->field());
  int n = T.n_max, dv = V.dim();
  ExtModuleTable tab;
  tab.V = V;
  std::vector<Matrix> delta(n + 1);  // delta[k] : C^k -> C^{k+1}
  for (int k = 0; k <= n; ++k) delta[k] = pullback(V, generator_images(T.free, k + 1), T.free.ranks[k]);
  for (int k = 0; k <= n; ++k) {
    int ck = T.free.ranks[k] * dv;
    Subspace B(V.field(), ck);
    if (k > 0)
      for (int c = 0; c < delta[k - 1].cols(); ++c) B.add(delta[k - 1].column(c));
    Matrix Z = nullspace(delta[k]);
    Subspace acc = B;
    std::vector<Vec> reps;
    for (int c = 0; c < Z.cols(); ++c)
      if (acc.add(Z.column(c))) reps.push_back(Z.column(c));
    tab.dims.push_back(int(reps.size()));
    tab.reps.push_back(Matrix::from_columns(V.field(), ck, reps));
    tab.coboundaries.push_back(B);
  }
  int h = int(T.gen_lifts.size());
  tab.action.assign(h, {});
  for (int c = 0; c < h; ++c)
    for (int k = 0; k + T.g <= n; ++k) {
      Matrix Phi = pullback(V, T.gen_lifts[c][k], T.free.ranks[k]);
      Matrix img = Phi * tab.reps[k];
      int tgt = k + T.g;
      Matrix act(V.field(), tab.dims[tgt], tab.dims[k]);
      if (tab.dims[k] > 0 && tab.dims[tgt] > 0) {
        std::vector<Vec> cols;
        for (int i = 0; i < tab.reps[tgt].cols(); ++i) cols.push_back(tab.reps[tgt].column(i));
        for (const Vec& b : tab.coboundaries[tgt].basis()) cols.push_back(b);
        Matrix sys = Matrix::from_columns(V.field(), tab.reps[tgt].rows(), cols);
        Matrix x = solve_linear(sys, img).particular;
        act = x.block(0, 0, tab.dims[tgt], tab.dims[k]);
      }
      tab.action[c].push_back(act);
    }
  T.modules.push_back(std::move(tab));
}

bool product_associative(const ExtTruncation& T, std::string* witness) {
  int n = T.n_max;
  for (int j = 0; j <= n; ++j) {
    const Matrix& P = T.products.at({0, j});
    for (int b = 0; b < T.betti[j]; ++b)
      if (P.column(b) != unit_vector(T.betti[j], b)) {
        if (witness) *witness = "degree-0 unit fails in degree " + std::to_string(j);
        return false;
      }
  }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; i + j <= n; ++j)
      for (int k = 1; i + j + k <= n; ++k)
        for (int a = 0; a < T.betti[i]; ++a)
          for (int b = 0; b < T.betti[j]; ++b)
            for (int c = 0; c < T.betti[k]; ++c) {
              Vec ea = unit_vector(T.betti[i], a), eb = unit_vector(T.betti[j], b), ec = unit_vector(T.betti[k], c);
              Vec l = T.product(i + j, T.product(i, ea, j, eb), k, ec);
              Vec r = T.product(i, ea, j + k, T.product(j, eb, k, ec));
              if (l != r) {
                if (witness)
                  *witness = "degrees (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) +
                             ") basis (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
                return false;
              }
            }
  return true;
}

Vec evaluate_classes(const ExtTruncation& T, const PiPoint& a) {
  const HopfPtr& Dp = a.local->D_psi;
  require(Dp->dim() == T.A->dim(), Errc::DimensionMismatch, "pi-point is not on the truncated algebra");
  const FieldPtr& K = Dp->field();
  int p = K->p();
  FreeResolution R = T.free.over(K);
  AlgebraPtr Tp = truncated_polynomial_algebra(K, p);
  FreeResolution Q = free_resolution(minimal_resolution(trivial_module(Tp), T.g));
  Matrix phi(K, T.A->dim(), p);
  Vec pw = Dp->alg().unit();
  for (int i = 0; i < p; ++i) {
    phi.set_column(i, pw);
    pw = Dp->alg().mul(pw, a.alpha);
  }
  auto lift = lift_chain(Q, 0, R, phi, {generator_element(*R.A, 1, 0)}, T.g);
  Vec out;
  for (int c = 0; c < T.betti[T.g]; ++c) out.push_back(block_augmentation(*R.A, lift[T.g][0], c));
  return out;
}

CohSupport coh_support_scan(const ExtTruncation& T, int module_index, const PointSweep& s, int psi_index) {
  const ExtModuleTable& tab = T.modules.at(module_index);
  CohSupport out;
  int h = int(T.gen_lifts.size());
  out.D = std::max(2, T.n_max / 4);
  std::vector<Vec> values;
  std::vector<FieldPtr> fields;
  std::map<std::string, int> seen;
  for (std::size_t c = 0; c < s.classes.size(); ++c) {
    for (const PiPoint& a : s.classes[c].members) {
      bool ours = false;
      for (std::size_t li = 0; li < s.locals.size(); ++li)
        if (s.locals[li] == a.local && s.local_psi[li] == psi_index) ours = true;
      if (!ours) continue;
      out.candidates.push_back(int(c));
      values.push_back(evaluate_classes(T, a));
      fields.push_back(a.local->D_psi->field());
      if (is_zero(values.back())) {
        out.separating = false;
      } else if (!seen.emplace(canonical_point(fields.back(), values.back()).label, int(c)).second) {
        out.separating = false;
      }
      break;
    }
  }
  std::vector<char> alive(out.candidates.size(), 1);
  std::vector<std::vector<int>> Z;
  for (int d = 1; d <= out.D; ++d) {
    auto mons = monomials(h, d);
    std::vector<Vec> cols;
    for (const auto& mon : mons) {
      Vec col;
      for (int k = 0; k + T.g * d <= T.n_max; ++k) {
        Matrix M = Matrix::identity(T.A->field(), tab.dims[k]);
        int deg = k;
        for (int c = 0; c < h; ++c)
          for (int r = 0; r < mon[c]; ++r) {
            M = tab.action[c][deg] * M;
            deg += T.g;
          }
        col.insert(col.end(), M.data().begin(), M.data().end());
      }
      cols.push_back(col);
    }
    std::vector<Vec> ann;
    int rows = cols.empty() ? 0 : int(cols[0].size());
    if (rows == 0) {
      for (std::size_t m = 0; m < mons.size(); ++m) ann.push_back(unit_vector(int(mons.size()), int(m)));
    } else {
      Matrix N = nullspace(Matrix::from_columns(T.A->field(), rows, cols));
      for (int c = 0; c < N.cols(); ++c) ann.push_back(N.column(c));
    }
    out.ann_dims.push_back(int(ann.size()));
    for (std::size_t ci = 0; ci < out.candidates.size(); ++ci) {
      if (!alive[ci]) continue;
      const Field& K = *fields[ci];
      std::vector<Elem> mv;
      for (const auto& mon : mons) {
        Elem x = 1;
        for (int c = 0; c < h; ++c) x = K.mul(x, K.pow(values[ci][c], mon[c]));
        mv.push_back(x);
      }
      for (const Vec& f : ann) {
        Elem v = 0;
        for (std::size_t m = 0; m < mons.size(); ++m)
          if (f[m]) v = K.add(v, K.mul(f[m], mv[m]));
        if (v) {
          alive[ci] = 0;
          break;
        }
      }
    }
    std::vector<int> z;
    for (std::size_t ci = 0; ci < out.candidates.size(); ++ci)
      if (alive[ci]) z.push_back(out.candidates[ci]);
    Z.push_back(z);
  }
  out.points = Z.back();
  out.previous = Z[Z.size() - 2];
  out.stable = out.points == out.previous;
  return out;
}

CohSupport coh_support_points(const ExtTruncation& T, int module_index, const PointSweep& s, int psi_index) {
  CohSupport c = coh_support_scan(T, module_index, s, psi_index);
  require(c.stable, Errc::TruncationInconclusive,
          "annihilator not stable: |Z_D| = " + std::to_string(c.points.size()) + ", |Z_{D-1}| = " +
              std::to_string(c.previous.size()));
  return c;
}

NaturalityResult carlson_restriction_naturality(const Resolution& RA, int n, const Vec& zeta, const AlgebraPtr& B,
                                                const Matrix& phi, std::mt19937_64& rng) {
  const AlgebraPtr& A = RA.algebra;
  NaturalityResult r;
  Module L = carlson_module(RA, n, zeta);
  Module resL = restrict_along(L, B, phi);
  Resolution RB = minimal_resolution(trivial_module(B), n + 1);
  FreeResolution FA = free_resolution(RA), FB = free_resolution(RB);
  auto lift = lift_chain(FB, 0, FA, phi, {generator_element(*A, 1, 0)}, n);
  const Field& F = A->F();
  Vec rz(FB.ranks[n], 0);
  for (int j = 0; j < FB.ranks[n]; ++j)
    for (std::size_t k = 0; k < zeta.size(); ++k)
      if (zeta[k]) rz[j] = F.add(rz[j], F.mul(zeta[k], block_augmentation(*A, lift[n][j], int(k))));
  Module direct;
  if (is_zero(rz)) {
    r.restricted_class_zero = true;
    direct = direct_sum(RB.syzygy(n), RB.syzygy(1));
  } else {
    direct = carlson_module(RB, n, rz);
  }
  StrippedModule s1 = strip_free_summands(resL), s2 = strip_free_summands(direct);
  r.core_dim_restricted = s1.core.dim();
  r.core_dim_direct = s2.core.dim();
  r.free_rank_restricted = s1.free_rank;
  r.free_rank_direct = s2.free_rank;
  if (s1.core.dim() != s2.core.dim()) {
    r.detail = "core dimensions differ";
    return r;
  }
  r.ok = s1.core.dim() == 0 || isomorphic(s1.core, s2.core, rng);
  r.detail = r.ok ? "isomorphic up to free summands" : "cores not isomorphic";
  return r;
}

}  // namespace dsupp
