// Acceptance run: one line per criterion, exit status 1 if any criterion fails.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "dsupp/verify.hpp"

using namespace dsupp;

namespace {

// Pinned budgets and sizes.
constexpr double kSl2Budget = 300.0;
constexpr double kProjectivityBudget = 600.0;
constexpr double kTensorBudget = 900.0;
constexpr int kGaSamples = 200;
constexpr int kBorelSamples = 100;
constexpr int kMinPairs = 30;
constexpr int kEmax = 2;
constexpr int kCohNmax = 8;
constexpr int kCohFamily = 6;
constexpr int kAlphaGa = 25, kAlphaBorel = 25;
constexpr std::uint64_t kSeed = 20240917;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Run {
  std::function<CheckReport()> make;
  CheckReport report;
};
std::vector<Run> runs;
Json all_reports = Json::array();

CheckReport record(std::function<CheckReport()> f) {
  Run r{std::move(f), {}};
  r.report = r.make();
  all_reports.push_back(r.report.to_json());
  runs.push_back(r);
  return r.report;
}

int failures = 0;

void line(int id, bool ok, const std::string& title, const std::string& detail, double secs) {
  std::printf("C%d %s  %-34s %s (%.1fs)\n", id, ok ? "PASS" : "FAIL", title.c_str(), detail.c_str(), secs);
  std::fflush(stdout);
  if (!ok) ++failures;
}

bool passed(const CheckReport& r) { return r.verdict == Verdict::Pass; }

CheckParams params(int samples = 0, int instance = 0, int n_max = 8) {
  CheckParams p;
  p.e_max = kEmax;
  p.n_max = n_max;
  p.seed = kSeed;
  p.samples = samples;
  p.instance = instance;
  return p;
}

struct Entry {
  std::string group;
  int p, r;
};
const std::vector<Entry> hopf_list{{"Ga", 2, 1}, {"Ga", 3, 1}, {"Ga", 5, 1}, {"Ga", 2, 2}, {"Ga", 3, 2},
                                   {"U", 3, 1},  {"U", 5, 1},  {"Borel", 3, 1}, {"SL2", 3, 1}};
const std::vector<Entry> catalog{{"Ga", 2, 1}, {"Ga", 3, 1}, {"Ga", 5, 1},    {"Ga", 2, 2},    {"Ga", 3, 2},
                                 {"U", 3, 1},  {"U", 5, 1},  {"Borel", 3, 1}, {"Borel", 5, 1}, {"SL2", 3, 1}};

void criterion1() {
  auto t0 = Clock::now();
  int ok = 0;
  double sl2 = 0;
  for (const Entry& e : hopf_list) {
    auto t = Clock::now();
    CheckReport r = record([e] { return check_hopf_suite(build_bundle(e.group, e.p, e.r), params()); });
    if (e.group == "SL2") sl2 = since(t);
    ok += passed(r);
  }
  int controls = 0, caught = 0;
  for (auto [g, p] : {std::pair{"Ga", 3}, std::pair{"Borel", 3}}) {
    BundlePtr b = build_bundle(g, p);
    for (auto& [id, H] : corrupted_fixtures(*b)) {
      ++controls;
      CheckReport r = record([id = id, H = H] { return check_hopf_object(id, *H, params()); });
      caught += r.verdict == Verdict::Fail && !r.witnesses.empty();
    }
  }
  char d[160];
  std::snprintf(d, sizeof d, "%d/%zu bundles pass, %d/%d negative controls fail, SL2 %.1fs <= %.0fs", ok,
                hopf_list.size(), caught, controls, sl2, kSl2Budget);
  line(1, ok == int(hopf_list.size()) && caught == controls && sl2 <= kSl2Budget, "Hopf construction suite", d,
       since(t0));
}

void criterion2() {
  auto t0 = Clock::now();
  int ok = 0;
  bool ga_betti = false, borel_betti = false;
  for (const Entry& e : catalog) {
    CheckReport r = record([e] { return check_al(build_bundle(e.group, e.p, e.r), params()); });
    ok += passed(r);
    if (e.group == "Ga" && e.p == 3 && e.r == 1)
      ga_betti = r.details["betti_D"] == Json(std::vector<int>{1, 2, 3, 4, 5, 6, 7}) &&
                 r.details["betti_kSigma"] == r.details["betti_D"];
    if (e.group == "Borel" && e.p == 3)
      borel_betti = r.details["betti_depth"].get<int>() >= 4 && r.details["betti_kSigma"] == r.details["betti_D"];
  }
  char d[160];
  std::snprintf(d, sizeof d, "%d/%zu bundles, Ga_1 Betti 1..7 %s, Borel Betti equal %s", ok, catalog.size(),
                ga_betti ? "yes" : "no", borel_betti ? "yes" : "no");
  line(2, ok == int(catalog.size()) && ga_betti && borel_betti, "a(l) isomorphism", d, since(t0));
}

void criterion3() {
  auto t0 = Clock::now();
  CheckReport ga = record([] { return check_projectivity_detection(build_bundle("Ga", 3), params(kGaSamples)); });
  CheckReport bo = record([] { return check_projectivity_detection(build_bundle("Borel", 3), params(kBorelSamples)); });
  int fwd = ga.details["forward_failures"].get<int>() + bo.details["forward_failures"].get<int>();
  int proj = ga.details["projective_count"].get<int>() + bo.details["projective_count"].get<int>();
  double secs = since(t0);
  char d[160];
  std::snprintf(d, sizeof d, "%d+%d samples, %d projective, forward failures %d, %.1fs <= %.0fs", kGaSamples,
                kBorelSamples, proj, fwd, secs, kProjectivityBudget);
  line(3, passed(ga) && passed(bo) && fwd == 0 && secs <= kProjectivityBudget, "projectivity detection", d, secs);
}

void criterion4() {
  auto t0 = Clock::now();
  BundlePtr b = build_bundle("Ga", 3);
  PointSweep s1 = sweep_points(b, 1);
  const AlgebraPtr& D = b->D->algebra();
  int nH = b->kG->dim();
  Vec x = unit_vector(D->dim(), b->monomials.generator(0) * nH);
  SupportCloud ck = pi_support(trivial_module(D), s1);
  SupportCloud cu = pi_support(induced_from_O(*b), s1);  // k[u]/(u^3)
  SupportCloud cr = pi_support(regular_module(D), s1);
  std::string x_label = canonical_point(b->F, x).label;
  bool ok = s1.classes.size() == 4 && ck.points.size() == 4 && cu.points.size() == 1 && cu.labels[0] == x_label &&
            cr.empty();
  PointSweep s2 = sweep_points(b, kEmax);
  SupportCloud cu2 = pi_support(induced_from_O(*b), s2);
  ok &= cu2.points.size() == 1 && cu2.labels[0] == x_label && pi_support(regular_module(D), s2).empty();
  char d[200];
  std::snprintf(d, sizeof d, "|Pi(k)| = %zu over F_3, Pi(k[u]/u^3) = {%s}, Pi(A) empty: %s", ck.points.size(),
                cu.points.empty() ? "" : cu.labels[0].c_str(), cr.empty() ? "yes" : "no");
  line(4, ok, "pi-support on Ga_1 p=3", d, since(t0));
}

void criterion5() {
  auto t0 = Clock::now();
  int ok = 0, pairs = 0, min_pairs = 1 << 30, disjoint_ga = 0;
  for (auto [g, p] : {std::pair{"Ga", 3}, std::pair{"Ga", 5}, std::pair{"Borel", 3}}) {
    CheckReport r = record([g = g, p = p] { return check_tensor_product(build_bundle(g, p), params()); });
    ok += passed(r);
    int n = r.details["pair_count"].get<int>();
    pairs += n;
    min_pairs = std::min(min_pairs, n);
    if (std::string(g) == "Ga") disjoint_ga += r.details["disjoint_pairs"].get<int>() > 0;
  }
  double secs = since(t0);
  char d[200];
  std::snprintf(d, sizeof d, "3/3 bundles: %d pass, %d pairs (min %d), disjoint pair on %d/2 Ga, %.1fs <= %.0fs", ok,
                pairs, min_pairs, disjoint_ga, secs, kTensorBudget);
  line(5, ok == 3 && min_pairs >= kMinPairs && disjoint_ga == 2 && secs <= kTensorBudget, "tensor product property",
       d, secs);
}

void criterion6() {
  auto t0 = Clock::now();
  int ok = 0, cocycles = 0;
  bool natural = true;
  std::string fields;
  for (int inst : {0, 1}) {
    CheckReport r = record([inst] { return check_carlson(build_bundle("Borel", 3), inst, 2, params(0, inst)); });
    ok += passed(r);
    fields += (fields.empty() ? "" : ",") + r.details["instance"].get<std::string>();
    for (const auto& c : r.details["cocycles"]) {
      ++cocycles;
      natural &= c["naturality"]["ok"].get<bool>();
    }
  }
  char d[200];
  std::snprintf(d, sizeof d, "%d/2 instances (%s), %d cocycles, naturality %s", ok, fields.c_str(), cocycles,
                natural ? "exact" : "broken");
  line(6, ok == 2 && natural, "Carlson identity", d, since(t0));
}

void criterion7() {
  auto t0 = Clock::now();
  CheckReport ga = record([] { return check_pi_vs_coh(build_bundle("Ga", 3), 0, params(0, 0, kCohNmax)); });
  int fam = int(ga.details["modules"].size());
  CheckReport bo = record([] { return check_pi_vs_coh(build_bundle("Borel", 3), 0, params(0, 0, kCohNmax)); });
  char d[200];
  std::snprintf(d, sizeof d, "Ga_1 %s on %d modules; Borel %s (recorded)", verdict_name(ga.verdict), fam,
                verdict_name(bo.verdict));
  line(7, passed(ga) && fam == kCohFamily && bo.verdict != Verdict::Fail, "pi vs truncated cohomology", d,
       since(t0));
}

void criterion8() {
  auto t0 = Clock::now();
  int total = 0, ok = 0, unique = 0, lead = 0;
  for (auto [g, n] : {std::pair{"Ga", kAlphaGa}, std::pair{"Borel", kAlphaBorel}}) {
    CheckReport r = record([g = g, n = n] {
      PointSweep s = sweep_points(build_bundle(g, 3), kEmax);
      auto alphas = universal_alpha_sample(s, n, kSeed);
      return check_universal_pi(s, alphas, params(n));
    });
    ok += passed(r);
    total += r.details["sample_size"].get<int>();
    unique += r.details["unique_matches"].get<int>();
    lead += r.details["leading_term_matches"].get<int>();
  }
  char d[200];
  std::snprintf(d, sizeof d, "%d alphas, 2/2 reports %s, unique matches %d, leading-term matches %d", total,
                ok == 2 ? "pass" : "fail", unique, lead);
  line(8, ok == 2 && total == kAlphaGa + kAlphaBorel, "universal pi-point shadow", d, since(t0));
}

void criterion9() {
  auto t0 = Clock::now();
  int same = 0;
  std::string first_diff;
  for (const Run& r : runs) {
    CheckReport again = r.make();
    if (again.digest() == r.report.digest())
      ++same;
    else if (first_diff.empty())
      first_diff = r.report.check + " " + r.report.bundle;
  }
  char d[200];
  std::snprintf(d, sizeof d, "%d/%zu reports reproduce bit-exactly%s%s", same, runs.size(),
                first_diff.empty() ? "" : ", first difference: ", first_diff.c_str());
  line(9, same == int(runs.size()), "determinism", d, since(t0));
}

}  // namespace

int main(int argc, char** argv) {
  auto guard = [](int id, const std::function<void()>& f) {
    try {
      f();
    } catch (const std::exception& e) {
      line(id, false, "error", e.what(), 0);
    }
  };
  guard(1, criterion1);
  guard(2, criterion2);
  guard(3, criterion3);
  guard(4, criterion4);
  guard(5, criterion5);
  guard(6, criterion6);
  guard(7, criterion7);
  guard(8, criterion8);
  guard(9, criterion9);
  if (argc > 1) {
    std::ofstream o(argv[1]);
    o << all_reports.dump(1) << "\n";
  }
  std::printf("%d of 9 criteria pass\n", 9 - failures);
  return failures ? 1 : 0;
}
