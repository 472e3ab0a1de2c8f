#include "dsupp/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <set>

namespace dsupp {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "fail";
}

int verdict_exit_code(Verdict v) {
  return v == Verdict::Pass ? 0 : v == Verdict::Fail ? 1 : 2;
}

Json CheckReport::to_json(bool with_timing) const {
  Json j{{"check", check},
         {"bundle", bundle},
         {"params",
          {{"p", p}, {"r", r}, {"e_max", params.e_max}, {"n_max", params.n_max}, {"seed", params.seed},
           {"samples", params.samples}, {"instance", params.instance}}},
         {"verdict", verdict_name(verdict)},
         {"witnesses", witnesses},
         {"details", details}};
  if (with_timing) j["timing"] = {{"seconds", seconds}};
  return j;
}

std::string CheckReport::digest() const { return sha256_hex(to_json(false).dump()); }

namespace {

using Clock = std::chrono::steady_clock;

CheckReport start_report(const std::string& check, const BundlePtr& b, const CheckParams& prm) {
  CheckReport r;
  r.check = check;
  r.bundle = b->id();
  r.p = b->p;
  r.r = b->r;
  r.params = prm;
  return r;
}

void stop_clock(CheckReport& r, Clock::time_point t0) {
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string module_digest(const Module& M) {
  std::string bytes = std::to_string(M.dim()) + "|" + M.field()->name() + "|";
  auto add = [&](const Matrix& m) {
    bytes.append(reinterpret_cast<const char*>(m.data().data()), m.data().size() * sizeof(Elem));
  };
  const auto& gens = M.algebra()->generators();
  if (gens.empty())
    for (const Matrix& m : M.actions()) add(m);
  else
    for (const Vec& g : gens) add(M.action(g));
  return sha256_hex(bytes).substr(0, 16);
}

Json module_json(const std::string& name, const Module& M) {
  return Json{{"name", name}, {"dim", M.dim()}, {"digest", module_digest(M)}};
}

Elem random_nonzero(const Field& F, std::mt19937_64& rng) {
  return Elem(1 + rng() % std::uint64_t(F.order() - 1));
}

Vec random_nonzero_vec(const Field& F, int n, std::mt19937_64& rng) {
  Vec v(n, 0);
  while (is_zero(v))
    for (auto& x : v) x = Elem(rng() % std::uint64_t(F.order()));
  return v;
}

Module cyclic_quotient(const Module& R, const std::vector<Vec>& gens) {
  return quotient_module(R, spin(R, gens)).module;
}

Json cloud_json(const SupportCloud& c) { return c.labels; }

// Points of one D_psi instance: every linear alpha over the field of the
// instance (all subfields), labelled by the canonical global point.
struct InstancePoint {
  std::string label;
  Vec alpha;
};

std::vector<InstancePoint> instance_points(const LocalSubalgebra& L, int p) {
  const Algebra& A = L.D_psi->alg();
  const FieldPtr& K = L.D_psi->field();
  int e = K->degree(), m = int(L.generators.size());
  std::vector<InstancePoint> out;
  std::set<std::string> seen;
  for (int d = 1; d <= e; ++d) {
    if (e % d) continue;
    FieldPtr Kd = make_field(p, d);
    for (const Vec& lam_d : vectors_of_degree(*Kd, m, true)) {
      Vec alpha(A.dim(), 0);
      for (int k = 0; k < m; ++k) {
        Elem c = d == e ? lam_d[k] : embed(*Kd, *K, lam_d[k]);
        K->axpy(alpha.data(), c, L.generators[k].data(), alpha.size());
      }
      if (!is_zero(A.pow(alpha, p))) continue;
      std::string label = canonical_point(K, L.iota.apply(alpha)).label;
      if (seen.insert(label).second) out.push_back({label, alpha});
    }
  }
  return out;
}

std::set<std::string> instance_support(const std::vector<InstancePoint>& pts, int p,
                                       const std::function<Matrix(const Vec&)>& act) {
  std::set<std::string> out;
  for (const InstancePoint& x : pts)
    if (!nilpotent_acts_freely(act(x.alpha), p)) out.insert(x.label);
  return out;
}

Json set_json(const std::set<std::string>& s) { return Json(std::vector<std::string>(s.begin(), s.end())); }

Module restrict_to_local(const Module& V, const LocalSubalgebra& L) {
  Module VK = V.field()->same_as(*L.D_psi->field()) ? V : base_change(V, L.D_psi->field());
  return restrict_along(VK, L.D_psi->algebra(), L.iota);
}

// Carlson modules of the basis classes of Ext^2(k,k) over the double, up to count.
std::vector<std::pair<std::string, Module>> carlson_family(const BundlePtr& b, int count) {
  std::vector<std::pair<std::string, Module>> out;
  Resolution R = minimal_resolution(trivial_module(b->D->algebra()), 2);
  std::vector<int> idx = ext_basis(R, 2);
  for (std::size_t i = 0; i < idx.size() && int(out.size()) < count; ++i) {
    Vec z(R.steps[2].summand_class.size(), 0);
    z[idx[i]] = 1;
    out.emplace_back("L[e" + std::to_string(i) + "]", carlson_module(R, 2, z));
  }
  return out;
}

}  // namespace

// ------------------------------------------------------------------ modules

Module induced_from_O(const GroupSchemeBundle& b) {
  Matrix inc = inclusion_O(b);
  Module R = regular_module(b.D->algebra());
  std::vector<Vec> gens;
  const Field& F = *b.F;
  for (int i = 0; i < b.OG->dim(); ++i) {
    Vec v = b.OG->alg().basis(i);
    F.axpy(v.data(), F.neg(b.OG->counit()[i]), b.OG->alg().unit().data(), v.size());
    if (!is_zero(v)) gens.push_back(inc.apply(v));
  }
  return cyclic_quotient(R, gens);
}

Module induced_from_kG(const GroupSchemeBundle& b) {
  Matrix inc = inclusion_kG(b);
  Module R = regular_module(b.D->algebra());
  std::vector<Vec> gens;
  const Field& F = *b.F;
  for (int i = 0; i < b.kG->dim(); ++i) {
    Vec v = b.kG->alg().basis(i);
    F.axpy(v.data(), F.neg(b.kG->counit()[i]), b.kG->alg().unit().data(), v.size());
    if (!is_zero(v)) gens.push_back(inc.apply(v));
  }
  return cyclic_quotient(R, gens);
}

RandomModule random_module(const HopfAlgebra& H, std::mt19937_64& rng, int max_dim) {
  const AlgebraPtr& A = H.algebra();
  int n = A->dim();
  int max_copies = std::max(1, std::min(3, max_dim / n));
  auto quotient = [&](int cap_copies) {
    int c = 1 + int(rng() % std::uint64_t(std::min(cap_copies, max_copies)));
    int rel = 1 + int(rng() % 4);
    return RandomModule{random_cyclic_quotient(A, c, rel, rng),
                        "quotient(A^" + std::to_string(c) + "," + std::to_string(rel) + ")"};
  };
  for (int attempt = 0; attempt < 64; ++attempt) {
    RandomModule out;
    switch (rng() % 8) {
      case 0:
        out = quotient(3);
        break;
      case 1: {
        int c = 1 + int(rng() % std::uint64_t(max_copies));
        out = {random_cyclic_submodule(A, c, rng), "submodule(A^" + std::to_string(c) + ")"};
        break;
      }
      case 2: {
        RandomModule q = quotient(1);
        out = {direct_sum(free_module(A, 1), q.module), "A+" + q.recipe};
        break;
      }
      case 3: {
        auto P = pims(A);
        std::size_t i = rng() % P->classes.size();
        RandomModule q = quotient(1);
        Module pim = P->classes[i].pim;
        if (rng() % 2)
          out = {pim, "pim" + std::to_string(i)};
        else
          out = {direct_sum(pim, q.module), "pim" + std::to_string(i) + "+" + q.recipe};
        break;
      }
      case 4: {
        RandomModule q = quotient(1);
        if (q.module.dim() == 0) continue;
        out = {minimal_resolution(q.module, 1).syzygy(1), "Omega(" + q.recipe + ")"};
        break;
      }
      case 5: {
        RandomModule q = quotient(2);
        out = {dual(q.module, H), "dual(" + q.recipe + ")"};
        break;
      }
      case 6: {
        RandomModule a = quotient(1), c = quotient(1);
        if (a.module.dim() * c.module.dim() > max_dim || a.module.dim() * c.module.dim() == 0) continue;
        out = {tensor(a.module, c.module, H), "tensor(" + a.recipe + "," + c.recipe + ")"};
        break;
      }
      default: {
        RandomModule q = quotient(1);
        out = {direct_sum(trivial_module(A), q.module), "k+" + q.recipe};
        break;
      }
    }
    if (out.module.dim() > 0 && out.module.dim() <= max_dim) return out;
  }
  return {trivial_module(A), "k"};
}

Matrix tensor_action(const Module& M, const Module& N, const HopfAlgebra& H, const Vec& x) {
  const Field& F = H.alg().F();
  int dN = N.dim();
  std::map<int, Matrix> right;  // left index -> sum of c * N(b)
  for (int i = 0; i < H.dim(); ++i) {
    if (!x[i]) continue;
    for (auto* t = H.comult().begin(i); t != H.comult().end(i); ++t) {
      auto it = right.find(t->a);
      if (it == right.end()) it = right.emplace(t->a, Matrix(N.field(), dN, dN)).first;
      it->second.add_scaled(N.act(t->b), F.mul(x[i], t->c));
    }
  }
  Matrix out(M.field(), M.dim() * dN, M.dim() * dN);
  for (auto& [a, Nm] : right)
    if (!Nm.is_zero()) out.add_scaled(kronecker(M.act(a), Nm), 1);
  return out;
}

// ------------------------------------------------------------------ hopf suite

namespace {

bool run_hopf(CheckReport& r, const std::string& name, const HopfAlgebra& H, std::uint64_t seed) {
  HopfCheckOptions opt;
  opt.seed = seed;
  opt.exhaustive = H.dim() <= 27;
  HopfCheckReport rep = check_hopf(H, opt);
  Json axioms = Json::array();
  for (const AxiomResult& a : rep.axioms) {
    axioms.push_back({{"axiom", a.name}, {"ok", a.ok}});
    if (!a.ok) r.witnesses.push_back({{"object", name}, {"axiom", a.name}, {"witness", a.witness}});
  }
  r.details["objects"][name] = {{"dim", H.dim()}, {"ok", rep.ok()}, {"exhaustive", opt.exhaustive}, {"axioms", axioms}};
  return rep.ok();
}

}  // namespace

CheckReport check_hopf_suite(const BundlePtr& b, const CheckParams& prm) {
  auto t0 = Clock::now();
  CheckReport r = start_report("hopf_suite", b, prm);
  bool ok = true;
  ok &= run_hopf(r, "kG", *b->kG, prm.seed);
  ok &= run_hopf(r, "OG", *b->OG, prm.seed);
  ok &= run_hopf(r, "kSigma", *b->sigma, prm.seed);
  ok &= run_hopf(r, "D", *b->D, prm.seed);
  for (auto [name, inc, src] : {std::tuple{"O->D", inclusion_O(*b), b->OG}, std::tuple{"kG->D", inclusion_kG(*b), b->kG}}) {
    std::string w;
    bool h = is_hopf_map(inc, *src, *b->D, &w);
    r.details["inclusions"][name] = h;
    if (!h) r.witnesses.push_back({{"object", name}, {"axiom", "hopf_map"}, {"witness", w}});
    ok &= h;
  }
  bool dims = b->S.S->dim() == b->OG->dim();
  r.details["dim_S_equals_dim_O"] = dims;
  ok &= dims;
  r.verdict = ok ? Verdict::Pass : Verdict::Fail;
  stop_clock(r, t0);
  return r;
}

CheckReport check_hopf_object(const std::string& id, const HopfAlgebra& H, const CheckParams& prm) {
  auto t0 = Clock::now();
  CheckReport r;
  r.check = "hopf_object";
  r.bundle = id;
  r.p = H.alg().F().p();
  r.params = prm;
  r.verdict = run_hopf(r, id, H, prm.seed) ? Verdict::Pass : Verdict::Fail;
  stop_clock(r, t0);
  return r;
}

std::vector<std::pair<std::string, HopfPtr>> corrupted_fixtures(const GroupSchemeBundle& b) {
  const HopfAlgebra& D = *b.D;
  int n = D.dim();
  std::vector<std::pair<std::string, HopfPtr>> out;
  auto comult = std::make_shared<Coproduct>(n);
  for (int i = 0; i < n; ++i) {
    std::vector<Coproduct::Term> row(D.comult().begin(i), D.comult().end(i));
    if (i == 1) row.push_back({1, 1, 1});
    comult->push_row(row);
  }
  out.emplace_back(b.id() + ":extra-coproduct-term",
                   std::make_shared<HopfAlgebra>(D.algebra(), comult, D.counit(), D.antipode()));
  out.emplace_back(b.id() + ":identity-antipode",
                   std::make_shared<HopfAlgebra>(D.algebra(), D.comult_ptr(), D.counit(), Matrix::identity(D.alg().field(), n)));
  Vec eps = D.counit();
  eps[1] = D.alg().F().add(eps[1], 1);
  out.emplace_back(b.id() + ":shifted-counit", std::make_shared<HopfAlgebra>(D.algebra(), D.comult_ptr(), eps, D.antipode()));
  return out;
}

// ------------------------------------------------------------------ a(l)

CheckReport check_al(const BundlePtr& b, const CheckParams& prm) {
  auto t0 = Clock::now();
  CheckReport r = start_report("al", b, prm);
  bool ok = true;
  const Algebra& S = b->sigma->alg();
  const Algebra& D = b->D->alg();
  int rk = rank(b->al);
  r.details["rank"] = rk;
  r.details["dim"] = D.dim();
  if (rk != D.dim() || S.dim() != D.dim()) {
    ok = false;
    r.witnesses.push_back({{"property", "bijective"}, {"rank", rk}});
  }
  std::string w;
  bool alg = is_algebra_map(b->al, S, D, &w);
  r.details["algebra_map"] = alg;
  if (!alg) {
    ok = false;
    r.witnesses.push_back({{"property", "algebra_map"}, {"witness", w}});
  }
  int aug_bad = -1;
  for (int i = 0; i < S.dim() && aug_bad < 0; ++i)
    if (b->D->counit_of(b->al.column(i)) != b->sigma->counit()[i]) aug_bad = i;
  r.details["augmented"] = aug_bad < 0;
  if (aug_bad >= 0) {
    ok = false;
    r.witnesses.push_back({{"property", "augmentation"}, {"basis", S.labels()[aug_bad]}});
  }
  // sensitivity: a perturbed map must be rejected
  {
    Matrix bad = b->al;
    const Vec& u = S.unit();
    int j = 0;
    while (!u[j]) ++j;
    int k = j == 0 ? 1 : 0;
    Vec col = bad.column(j);
    D.F().axpy(col.data(), 1, b->al.column(k).data(), col.size());
    bad.set_column(j, col);
    bool rejected = !is_algebra_map(bad, S, D);
    r.details["negative_control_rejected"] = rejected;
    ok &= rejected;
  }
  r.details["coalgebra_map"] = is_coalgebra_map(b->al, *b->sigma, *b->D);
  // soi square for every psi over F_p
  std::mt19937_64 rng(prm.seed);
  Json psis = Json::array();
  for (const OneParamSubgroup& psi : enumerate_one_param(*b, 1)) {
    Json entry{{"psi", psi.label()}};
    try {
      LocalSubalgebra L = build_D_psi(*b, psi);
      bool square = L.iota * L.al_psi == L.bundle_K->al * L.iota_sigma;
      bool local = is_local(L.D_psi->algebra()) && is_local(L.sigma_psi->algebra());
      RandomModule M = random_module(*b->D, rng, 2 * D.dim());
      Module a1 = restrict_along(restrict_along(M.module, b->sigma->algebra(), b->al), L.sigma_psi->algebra(), L.iota_sigma);
      Module a2 = restrict_along(restrict_along(M.module, L.D_psi->algebra(), L.iota), L.sigma_psi->algebra(), L.al_psi);
      bool functors = a1.actions() == a2.actions();
      entry["square"] = square;
      entry["local"] = local;
      entry["restriction_compatible"] = functors;
      if (!(square && local && functors)) {
        ok = false;
        r.witnesses.push_back({{"property", "soi"}, {"psi", psi.label()}, {"module", M.recipe}});
      }
    } catch (const Error& e) {
      ok = false;
      entry["error"] = e.what();
      r.witnesses.push_back({{"property", "soi"}, {"psi", psi.label()}, {"error", e.what()}});
    }
    psis.push_back(entry);
  }
  r.details["psi"] = psis;
  int depth = D.dim() <= 81 ? 6 : 2;
  std::vector<int> bD, bS;
  for (;; --depth) {
    try {
      bD = minimal_resolution(trivial_module(b->D->algebra()), depth).betti();
      bS = minimal_resolution(trivial_module(b->sigma->algebra()), depth).betti();
      break;
    } catch (const Error& e) {
      if (e.code() != Errc::DepthBudgetExceeded || depth == 0) throw;
      r.details["betti_depth_limited"] = e.what();
    }
  }
  r.details["betti_depth"] = depth;
  r.details["betti_D"] = bD;
  r.details["betti_kSigma"] = bS;
  if (bD != bS) {
    ok = false;
    r.witnesses.push_back({{"property", "betti"}, {"D", bD}, {"kSigma", bS}});
  }
  r.verdict = ok ? Verdict::Pass : Verdict::Fail;
  stop_clock(r, t0);
  return r;
}

// ------------------------------------------------------------------ projectivity

CheckReport check_projectivity_detection(const BundlePtr& b, const CheckParams& prm) {
  auto t0 = Clock::now();
  CheckReport r = start_report("projectivity", b, prm);
  int n = prm.samples > 0 ? prm.samples : 50;
  int max_dim = std::max(27, std::min(200, 2 * b->D->dim()));
  PointSweep s = sweep_points(b, prm.e_max);
  std::unique_ptr<PointSweep> wider;
  std::mt19937_64 rng(prm.seed);

  // projective over every D_psi of the sweep; first failing local in *where
  auto all_local = [](const PointSweep& sw, const Module& M, std::string* where) {
    std::map<int, Module> by_degree;
    for (std::size_t li = 0; li < sw.locals.size(); ++li) {
      const LocalSubalgebra& L = *sw.locals[li];
      int d = L.D_psi->field()->degree();
      auto it = by_degree.find(d);
      if (it == by_degree.end())
        it = by_degree.emplace(d, d == 1 ? M : base_change(M, L.D_psi->field())).first;
      if (!is_projective(restrict_along(it->second, L.D_psi->algebra(), L.iota))) {
        if (where) *where = L.psi.label() + "@" + L.D_psi->field()->name();
        return false;
      }
    }
    return true;
  };

  int n_proj = 0, forward_fail = 0, backward_fail = 0, retried = 0, pi_mismatch = 0;
  Json samples = Json::array();
  std::vector<RandomModule> mods;
  mods.push_back({regular_module(b->D->algebra()), "A"});
  mods.push_back({trivial_module(b->D->algebra()), "k"});
  while (int(mods.size()) < n) mods.push_back(random_module(*b->D, rng, max_dim));
  for (int i = 0; i < n; ++i) {
    const RandomModule& M = mods[i];
    bool proj = is_projective(M.module);
    std::string where;
    bool loc = all_local(s, M.module, &where);
    bool pi_empty = pi_support(M.module, s).empty();
    n_proj += proj;
    Json entry{{"i", i}, {"recipe", M.recipe}, {"dim", M.module.dim()}, {"digest", module_digest(M.module)},
               {"projective", proj}, {"all_local_projective", loc}, {"pi_empty", pi_empty}};
    if (proj && !loc) {
      ++forward_fail;
      r.witnesses.push_back({{"direction", "forward"}, {"sample", entry}, {"local", where}});
    } else if (!proj && loc) {
      ++retried;
      if (!wider) wider = std::make_unique<PointSweep>(sweep_points(b, prm.e_max + 1));
      bool loc2 = all_local(*wider, M.module, nullptr);
      entry["retry_e_max"] = prm.e_max + 1;
      entry["retry_all_local_projective"] = loc2;
      if (loc2) {
        ++backward_fail;
        r.witnesses.push_back({{"direction", "backward"}, {"sample", entry}});
      }
    }
    if (pi_empty != proj) {
      ++pi_mismatch;
      r.witnesses.push_back({{"direction", "pi_support"}, {"sample", entry}});
    }
    samples.push_back(entry);
  }
  r.details["samples"] = samples;
  r.details["projective_count"] = n_proj;
  r.details["forward_failures"] = forward_fail;
  r.details["backward_failures"] = backward_fail;
  r.details["retries"] = retried;
  r.details["pi_support_mismatches"] = pi_mismatch;
  r.details["locals"] = int(s.locals.size());
  r.details["note"] = "reverse implication verified up to e_max";
  r.verdict = forward_fail || backward_fail || pi_mismatch ? Verdict::Fail : Verdict::Pass;
  stop_clock(r, t0);
  return r;
}

// ------------------------------------------------------------------ tensor product

CheckReport check_tensor_product(const BundlePtr& b, const CheckParams& prm) {
  auto t0 = Clock::now();
  CheckReport r = start_report("tensor_product", b, prm);
  PointSweep s = sweep_points(b, prm.e_max);
  const AlgebraPtr& D = b->D->algebra();
  int cap = D->dim() <= 27 ? 400 : 250;
  std::mt19937_64 rng(prm.seed);
  std::vector<std::pair<std::string, Module>> fam;
  fam.emplace_back("k", trivial_module(D));
  auto simples = simple_tops(D);
  for (std::size_t i = 0; i < simples.size(); ++i)
    if (!isomorphic(simples[i].rep, fam[0].second, rng)) fam.emplace_back("simple" + std::to_string(i), simples[i].rep);
  fam.emplace_back("ind_O", induced_from_O(*b));
  fam.emplace_back("ind_kG", induced_from_kG(*b));
  Resolution R = minimal_resolution(trivial_module(D), 3);
  for (int i = 1; i <= 3; ++i) fam.emplace_back("Omega" + std::to_string(i), R.syzygy(i));
  for (auto& c : carlson_family(b, 3)) fam.push_back(c);
  int n_random = prm.samples > 0 ? prm.samples : 6;
  for (int i = 0; i < n_random; ++i) {
    RandomModule M = random_module(*b->D, rng, D->dim() <= 27 ? 20 : 27);
    fam.emplace_back("rand" + std::to_string(i) + ":" + M.recipe, M.module);
  }
  std::vector<SupportCloud> clouds;
  Json family = Json::array();
  for (auto& [name, M] : fam) {
    clouds.push_back(pi_support(M, s));
    Json m = module_json(name, M);
    m["support_size"] = clouds.back().points.size();
    family.push_back(m);
  }
  r.details["family"] = family;
  r.details["classes"] = s.classes.size();

  std::vector<std::tuple<std::string, Module, Module, SupportCloud, SupportCloud>> pairs;
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (std::size_t j = i; j < fam.size(); ++j)
      if (fam[i].second.dim() * fam[j].second.dim() <= cap)
        pairs.emplace_back(fam[i].first + "*" + fam[j].first, fam[i].second, fam[j].second, clouds[i], clouds[j]);
  for (std::size_t i = 0; i < fam.size(); ++i)
    if (fam[i].second.dim() * fam[i].second.dim() <= cap) {
      Module d = dual(fam[i].second, *b->D);
      pairs.emplace_back(fam[i].first + "*dual", fam[i].second, d, clouds[i], pi_support(d, s));
    }
  int mismatches = 0, disjoint = 0, disjoint_bad = 0;
  Json plist = Json::array();
  for (auto& [name, V, W, cv, cw] : pairs) {
    Module T = tensor(V, W, *b->D);
    SupportCloud lhs = pi_support(T, s);
    SupportCloud rhs = cloud_intersection(s, cv, cw);
    bool eq = lhs == rhs;
    Json e{{"pair", name}, {"dim", T.dim()}, {"lhs", lhs.points.size()}, {"rhs", rhs.points.size()}, {"equal", eq}};
    if (!eq) {
      ++mismatches;
      r.witnesses.push_back({{"pair", name}, {"lhs", cloud_json(lhs)}, {"rhs", cloud_json(rhs)}});
    }
    if (!cv.empty() && !cw.empty() && rhs.empty()) {
      ++disjoint;
      bool proj = is_projective(T);
      e["disjoint_product_projective"] = proj;
      if (!proj) {
        ++disjoint_bad;
        r.witnesses.push_back({{"pair", name}, {"property", "disjoint support but product not projective"}});
      }
    }
    plist.push_back(e);
  }
  r.details["pairs"] = plist;
  r.details["pair_count"] = pairs.size();
  r.details["mismatches"] = mismatches;
  r.details["disjoint_pairs"] = disjoint;
  bool enough = pairs.size() >= 30;
  if (!enough) r.witnesses.push_back({{"property", "fewer than 30 pairs"}, {"count", pairs.size()}});
  r.verdict = mismatches == 0 && disjoint_bad == 0 && enough ? Verdict::Pass : Verdict::Fail;
  stop_clock(r, t0);
  return r;
}

// ------------------------------------------------------------------ carlson

CheckReport check_carlson(const BundlePtr& b, int local_index, int degree, const CheckParams& prm) {
  auto t0 = Clock::now();
  CheckReport r = start_report("carlson", b, prm);
  r.details["local_index"] = local_index;
  r.details["degree"] = degree;
  if (prm.n_max < degree) {
    r.verdict = Verdict::Inconclusive;
    r.details["note"] = "truncation depth below the cocycle degree";
    stop_clock(r, t0);
    return r;
  }
  PointSweep s = sweep_points(b, prm.e_max);
  require(local_index >= 0 && local_index < int(s.locals.size()), Errc::InvalidArgument, "no such local subalgebra");
  const LocalSubalgebra& L = *s.locals[local_index];
  const HopfAlgebra& H = *L.D_psi;
  const AlgebraPtr& A = H.algebra();
  int p = b->p;
  r.details["instance"] = L.psi.label() + "@" + H.field()->name();
  Resolution R = minimal_resolution(trivial_module(A), degree + 1);
  std::vector<int> idx = ext_basis(R, degree);
  int h = int(idx.size());
  r.details["ext_dim"] = h;
  bool ok = h > 0;
  bool zero_rejected = false;
  try {
    carlson_module(R, degree, Vec(R.steps[degree].summand_class.size(), 0));
  } catch (const Error& e) {
    zero_rejected = e.code() == Errc::ZeroCocycle;
  }
  r.details["zero_cocycle_rejected"] = zero_rejected;
  ok &= zero_rejected;

  std::vector<Vec> span;
  for (int i = 0; i < h; ++i) span.push_back(unit_vector(h, i));
  for (int i = 0; i < h; ++i)
    for (int j = i + 1; j < h; ++j) {
      Vec v = unit_vector(h, i);
      v[j] = 1;
      span.push_back(v);
    }
  std::mt19937_64 rng(prm.seed);
  std::vector<std::pair<std::string, Module>> sample;
  sample.emplace_back("k", trivial_module(A));
  sample.emplace_back("res(ind_O)", restrict_to_local(induced_from_O(*b), L));
  sample.emplace_back("res(ind_kG)", restrict_to_local(induced_from_kG(*b), L));
  if (h > 0) {
    Vec z(R.steps[degree].summand_class.size(), 0);
    z[idx.back()] = 1;
    sample.emplace_back("L[e" + std::to_string(h - 1) + "]", carlson_module(R, degree, z));
  }
  int n_random = prm.samples > 0 ? prm.samples : 2;
  for (int i = 0; i < n_random; ++i) {
    RandomModule M = random_module(H, rng, 9);
    sample.emplace_back("rand" + std::to_string(i) + ":" + M.recipe, M.module);
  }
  auto pts = instance_points(L, p);
  r.details["points"] = pts.size();
  std::vector<std::set<std::string>> cv;
  Json sj = Json::array();
  for (auto& [name, V] : sample) {
    cv.push_back(instance_support(pts, p, [&](const Vec& a) { return V.action(a); }));
    Json m = module_json(name, V);
    m["support"] = set_json(cv.back());
    sj.push_back(m);
  }
  r.details["sample"] = sj;

  Matrix phi = kronecker(Matrix::identity(H.field(), L.bundle_K->OG->dim()),
                         Matrix::from_columns(H.field(), L.psi.source->dim(), {L.psi.source->alg().unit()}));
  AlgebraPtr B = L.bundle_K->OG->algebra();
  Json zl = Json::array();
  for (const Vec& z : span) {
    Vec full(R.steps[degree].summand_class.size(), 0);
    for (int i = 0; i < h; ++i) full[idx[i]] = z[i];
    Module Lz = carlson_module(R, degree, full);
    auto cl = instance_support(pts, p, [&](const Vec& a) { return Lz.action(a); });
    Json ze{{"zeta", vec_to_json(*H.field(), z)}, {"dim", Lz.dim()}, {"support", set_json(cl)}};
    Json checks = Json::array();
    for (std::size_t v = 0; v < sample.size(); ++v) {
      const Module& V = sample[v].second;
      auto ct = instance_support(pts, p, [&](const Vec& a) { return tensor_action(Lz, V, H, a); });
      std::set<std::string> rhs;
      std::set_intersection(cl.begin(), cl.end(), cv[v].begin(), cv[v].end(), std::inserter(rhs, rhs.end()));
      bool eq = ct == rhs;
      checks.push_back({{"V", sample[v].first}, {"equal", eq}, {"size", ct.size()}});
      if (!eq) {
        ok = false;
        r.witnesses.push_back({{"zeta", vec_to_json(*H.field(), z)}, {"V", sample[v].first},
                               {"lhs", set_json(ct)}, {"rhs", set_json(rhs)}});
      }
    }
    ze["identity"] = checks;
    NaturalityResult nat = carlson_restriction_naturality(R, degree, full, B, phi, rng);
    ze["naturality"] = {{"ok", nat.ok},
                        {"restricted_class_zero", nat.restricted_class_zero},
                        {"core_dims", {nat.core_dim_restricted, nat.core_dim_direct}},
                        {"free_ranks", {nat.free_rank_restricted, nat.free_rank_direct}},
                        {"detail", nat.detail}};
    if (!nat.ok) {
      ok = false;
      r.witnesses.push_back({{"zeta", vec_to_json(*H.field(), z)}, {"property", "naturality"}, {"detail", nat.detail}});
    }
    zl.push_back(ze);
  }
  r.details["cocycles"] = zl;
  r.details["restriction"] = "O(G) inside D_psi";
  r.verdict = ok ? Verdict::Pass : Verdict::Fail;
  stop_clock(r, t0);
  return r;
}

// ------------------------------------------------------------------ pi vs coh

CheckReport check_pi_vs_coh(const BundlePtr& b, int psi_index, const CheckParams& prm) {
  auto t0 = Clock::now();
  CheckReport r = start_report("pi_vs_coh", b, prm);
  PointSweep s = sweep_points(b, prm.e_max);
  require(psi_index >= 0 && psi_index < int(s.psis.size()), Errc::InvalidArgument, "no such psi");
  std::size_t li = 0;
  while (s.local_psi[li] != psi_index) ++li;
  const LocalSubalgebra& L = *s.locals[li];
  r.details["psi"] = L.psi.label();
  const AlgebraPtr& D = b->D->algebra();
  std::vector<std::pair<std::string, Module>> fam;
  fam.emplace_back("k", trivial_module(D));
  fam.emplace_back("A", regular_module(D));
  fam.emplace_back("ind_O", induced_from_O(*b));
  fam.emplace_back("ind_kG", induced_from_kG(*b));
  fam.emplace_back("Omega1", minimal_resolution(trivial_module(D), 1).syzygy(1));
  for (auto& c : carlson_family(b, 1)) fam.push_back(c);
  std::vector<Module> local;
  for (auto& f : fam) local.push_back(restrict_to_local(f.second, L));
  ExtTruncation T;
  try {
    T = ext_truncation(L.D_psi->algebra(), prm.n_max, local);
  } catch (const Error& e) {
    if (e.code() != Errc::DepthBudgetExceeded) throw;
    r.verdict = Verdict::Inconclusive;
    r.details["note"] = e.what();
    stop_clock(r, t0);
    return r;
  }
  r.details["betti"] = T.betti;
  bool mismatch = false, inconclusive = false;
  Json mods = Json::array();
  for (std::size_t i = 0; i < fam.size(); ++i) {
    CohSupport c = coh_support_scan(T, int(i), s, psi_index);
    SupportCloud pc = local_pi_support(local[i], s, psi_index);
    Json e = module_json(fam[i].first, fam[i].second);
    e["ext_dims"] = T.modules[i].dims;
    e["ann_dims"] = c.ann_dims;
    e["stable"] = c.stable;
    e["separating"] = c.separating;
    e["coh_points"] = make_cloud(s, c.points).labels;
    e["pi_points"] = pc.labels;
    e["note"] = c.note;
    if (!c.stable || !c.separating) {
      inconclusive = true;
    } else if (c.points != pc.points) {
      mismatch = true;
      r.witnesses.push_back({{"module", fam[i].first}, {"coh", e["coh_points"]}, {"pi", e["pi_points"]}});
    }
    e["agree"] = c.points == pc.points;
    mods.push_back(e);
  }
  r.details["modules"] = mods;
  r.verdict = mismatch ? Verdict::Fail : inconclusive ? Verdict::Inconclusive : Verdict::Pass;
  stop_clock(r, t0);
  return r;
}

// ------------------------------------------------------------------ universal pi

std::vector<AlphaSpec> universal_alpha_sample(const PointSweep& s, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<AlphaSpec> out;
  int p = s.bundle->p;
  for (int attempt = 0; int(out.size()) < n && attempt < 100 * n; ++attempt) {
    int li = int(rng() % s.locals.size());
    const LocalSubalgebra& L = *s.locals[li];
    const Algebra& A = L.D_psi->alg();
    const Field& K = A.F();
    int m = int(L.generators.size());
    Vec lam = random_nonzero_vec(K, m, rng);
    AlphaSpec a;
    a.local_index = li;
    a.leading = Vec(A.dim(), 0);
    for (int k = 0; k < m; ++k) K.axpy(a.leading.data(), lam[k], L.generators[k].data(), a.leading.size());
    a.alpha = a.leading;
    int kind = int(out.size() % 4);
    auto w = [&]() -> const Vec& { return L.generators[rng() % m]; };
    std::string rec = "linear";
    if (kind >= 1) {
      Vec q = A.mul(w(), w());
      K.axpy(a.alpha.data(), random_nonzero(K, rng), q.data(), q.size());
      rec = "linear+quadratic";
    }
    if (kind >= 2) {
      Vec q = A.mul(w(), w());
      K.axpy(a.alpha.data(), random_nonzero(K, rng), q.data(), q.size());
      rec += "+quadratic";
    }
    if (kind == 3) {
      Vec c = A.mul(w(), A.mul(w(), w()));
      K.axpy(a.alpha.data(), random_nonzero(K, rng), c.data(), c.size());
      rec += "+cubic";
    }
    a.recipe = rec;
    if (!is_zero(A.pow(a.alpha, p))) continue;
    if (!nilpotent_acts_freely(left_multiplication(A, a.alpha), p)) continue;
    out.push_back(std::move(a));
  }
  return out;
}

CheckReport check_universal_pi(PointSweep& s, const std::vector<AlphaSpec>& alphas, const CheckParams& prm) {
  auto t0 = Clock::now();
  CheckReport r = start_report("universal_pi", s.bundle, prm);
  const BundlePtr& b = s.bundle;
  int p = b->p;
  if (s.witnesses.empty() || (!s.classes.empty() && s.classes[0].fingerprint.empty())) compute_fingerprints(s);
  bool ok = true;
  {
    const LocalSubalgebra& L = *s.locals[0];
    Vec bad = L.D_psi->alg().mul(L.generators[0], L.generators[L.generators.size() > 1 ? 1 : 0]);
    bool rejected = false;
    try {
      make_pi_point_from_element(s.locals[0], bad);
    } catch (const Error& e) {
      rejected = e.code() == Errc::NotFlat || e.code() == Errc::NotNilpotentP;
    }
    r.details["non_flat_control_rejected"] = rejected;
    ok &= rejected;
  }
  int cap = b->D->dim() <= 27 ? 400 : 250;
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < s.witnesses.size(); ++i)
    for (std::size_t j = i; j < s.witnesses.size(); ++j)
      if (s.witnesses[i].dim() * s.witnesses[j].dim() <= cap) pairs.emplace_back(int(i), int(j));
  r.details["witness_pairs"] = pairs.size();
  r.details["witnesses"] = s.witness_names;
  std::map<int, std::vector<Module>> wK;  // witnesses over F_{p^d}
  auto witnesses_over = [&](const FieldPtr& K) -> const std::vector<Module>& {
    auto it = wK.find(K->degree());
    if (it != wK.end()) return it->second;
    std::vector<Module> v;
    for (const Module& W : s.witnesses) v.push_back(K->degree() == 1 ? W : base_change(W, K));
    return wK.emplace(K->degree(), std::move(v)).first->second;
  };
  int unique = 0, leading = 0, matched = 0;
  Json list = Json::array();
  for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
    const AlphaSpec& a = alphas[ai];
    const LocalPtr& L = s.locals.at(a.local_index);
    PiPoint pt = make_pi_point_from_element(L, a.alpha);
    const FieldPtr& K = L->D_psi->field();
    HopfPtr DK = b->over(K)->D;
    Vec x = pt.global();
    const auto& W = witnesses_over(K);
    std::vector<char> free(W.size());
    for (std::size_t i = 0; i < W.size(); ++i) free[i] = nilpotent_acts_freely(W[i].action(x), p);
    int tpp_bad = 0;
    for (auto [i, j] : pairs) {
      bool lhs = !nilpotent_acts_freely(tensor_action(W[i], W[j], *DK, x), p);
      bool rhs = !free[i] && !free[j];
      if (lhs != rhs) {
        ++tpp_bad;
        r.witnesses.push_back({{"alpha", ai}, {"pair", {s.witness_names[i], s.witness_names[j]}},
                               {"product_nonprojective", lhs}});
      }
    }
    std::string fp = fingerprint_of(s, x, K);
    std::vector<std::string> matches;
    for (const PointClass& c : s.classes)
      if (c.fingerprint == fp) matches.push_back(c.label);
    std::string lead = canonical_point(K, L->iota.apply(a.leading)).label;
    bool lead_match = std::find(matches.begin(), matches.end(), lead) != matches.end();
    matched += !matches.empty();
    unique += matches.size() == 1;
    leading += lead_match;
    bool pass = tpp_bad == 0 && !matches.empty();
    ok &= pass;
    if (matches.empty()) r.witnesses.push_back({{"alpha", ai}, {"property", "no matching class"}, {"fingerprint", fp}});
    list.push_back({{"i", ai},
                    {"recipe", a.recipe},
                    {"local", a.local_index},
                    {"field", K->name()},
                    {"alpha", vec_to_json(*K, a.alpha)},
                    {"tpp_failures", tpp_bad},
                    {"fingerprint", fp},
                    {"matches", matches},
                    {"leading_class", lead},
                    {"leading_matches", lead_match}});
  }
  r.details["alphas"] = list;
  r.details["sample_size"] = alphas.size();
  r.details["matched"] = matched;
  r.details["unique_matches"] = unique;
  r.details["leading_term_matches"] = leading;
  r.details["sweep"] = "linear sweep";
  r.verdict = ok ? Verdict::Pass : Verdict::Fail;
  stop_clock(r, t0);
  return r;
}

// ------------------------------------------------------------------ dispatch

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{"al",          "carlson",        "hopf-suite",  "pi-vs-coh",
                                              "projectivity", "tensor-product", "universal-pi"};
  return names;
}

CheckReport run_check(const std::string& name, const BundlePtr& b, const CheckParams& prm) {
  if (name == "hopf-suite") return check_hopf_suite(b, prm);
  if (name == "al") return check_al(b, prm);
  if (name == "projectivity") return check_projectivity_detection(b, prm);
  if (name == "tensor-product") return check_tensor_product(b, prm);
  if (name == "carlson") return check_carlson(b, prm.instance, 2, prm);
  if (name == "pi-vs-coh") return check_pi_vs_coh(b, prm.instance, prm);
  if (name == "universal-pi") {
    PointSweep s = sweep_points(b, prm.e_max);
    auto alphas = universal_alpha_sample(s, prm.samples > 0 ? prm.samples : 20, prm.seed);
    return check_universal_pi(s, alphas, prm);
  }
  fail(Errc::InvalidArgument, "unknown check " + name);
}

}  // namespace dsupp
