#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dsupp/verify.hpp"

using namespace dsupp;

namespace {

constexpr int kUsage = 3;

struct Common {
  std::string group = "ga";
  int p = 3;
  int r = 1;
  std::string bundle_file;
  CheckParams prm;
  std::string out;
  std::string format = "table";
};

void add_common(CLI::App* app, Common& c, bool checks) {
  app->add_option("--group", c.group, "ga | u | borel | sl2");
  app->add_option("--p", c.p, "characteristic");
  app->add_option("--r", c.r, "Frobenius height (ga only)");
  app->add_option("--bundle", c.bundle_file, "bundle JSON written by build");
  app->add_option("--emax", c.prm.e_max, "largest field degree of the sweep");
  app->add_option("--nmax", c.prm.n_max, "Ext truncation degree");
  app->add_option("--out", c.out, "output file");
  app->add_option("--format", c.format, "json | table")->check(CLI::IsMember({"json", "table"}));
  if (checks) {
    app->add_option("--seed", c.prm.seed, "random seed");
    app->add_option("--samples", c.prm.samples, "sample size (0 = default)");
    app->add_option("--instance", c.prm.instance, "local subalgebra (carlson) or psi index (pi-vs-coh)");
  }
}

BundlePtr load_bundle(const Common& c) {
  if (c.bundle_file.empty()) return build_bundle(c.group, c.p, c.r);
  std::ifstream in(c.bundle_file);
  require(bool(in), Errc::ParseError, "cannot open " + c.bundle_file);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, e.what());
  }
  std::string name = j.at("group").get<std::string>();
  std::string group = name.substr(0, name.find('_'));
  if (group == "Borel2") group = "Borel";
  if (group == "U2") group = "U";
  BundlePtr b = build_bundle(group, j.at("p").get<int>(), j.at("r").get<int>());
  require(content_hash(b->D->alg()) == j.at("double_hash").get<std::string>(), Errc::ParseError,
          "bundle file does not match the rebuilt double");
  return b;
}

void write_out(const std::string& path, const Json& j) {
  if (path.empty()) return;
  std::ofstream o(path);
  require(bool(o), Errc::InvalidArgument, "cannot write " + path);
  o << j.dump(1) << "\n";
}

void emit(const Common& c, const Json& j, const std::string& table) {
  write_out(c.out, j);
  if (c.format == "json")
    std::cout << j.dump(1) << "\n";
  else
    std::cout << table;
}

std::string report_line(const CheckReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-16s %-22s %-13s %8.2fs  %s\n", r.check.c_str(), r.bundle.c_str(),
                verdict_name(r.verdict), r.seconds, r.digest().substr(0, 12).c_str());
  return buf;
}

Module named_module(const BundlePtr& b, const std::string& spec) {
  const AlgebraPtr& D = b->D->algebra();
  if (spec == "k" || spec == "trivial") return trivial_module(D);
  if (spec == "regular" || spec == "A") return regular_module(D);
  if (spec == "ind_O") return induced_from_O(*b);
  if (spec == "ind_kG") return induced_from_kG(*b);
  if (spec.rfind("omega", 0) == 0) {
    int i = std::stoi(spec.substr(5));
    return minimal_resolution(trivial_module(D), i).syzygy(i);
  }
  std::ifstream in(spec);
  require(bool(in), Errc::InvalidArgument, "unknown module " + spec);
  try {
    return module_from_json(Json::parse(in), D);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, e.what());
  }
}

int cmd_build(const Common& c) {
  BundlePtr b = load_bundle(c);
  Json j = bundle_to_json(*b);
  std::ostringstream t;
  t << b->id() << "  dim kG " << b->kG->dim() << "  dim D " << b->D->dim() << "  hash "
    << j["double_hash"].get<std::string>().substr(0, 12) << "\n";
  if (c.format == "json") {
    // the full bundle only goes to --out; stdout gets the summary
    write_out(c.out, j);
    std::cout << Json{{"id", b->id()}, {"dim_D", b->D->dim()}, {"double_hash", j["double_hash"]}}.dump(1) << "\n";
  } else {
    write_out(c.out, j);
    std::cout << t.str();
  }
  return 0;
}

int cmd_pi_support(const Common& c, const std::string& module_spec) {
  BundlePtr b = load_bundle(c);
  PointSweep s = sweep_points(b, c.prm.e_max);
  compute_fingerprints(s);
  Module V = named_module(b, module_spec);
  SupportCloud cl = pi_support(V, s);
  Json pts = Json::array();
  std::ostringstream t;
  for (int i : cl.points) {
    pts.push_back({{"label", s.classes[i].label}, {"fingerprint", s.classes[i].fingerprint}});
    t << s.classes[i].label << "  " << s.classes[i].fingerprint << "\n";
  }
  Json j{{"bundle", b->id()},
         {"module", module_spec},
         {"dim", V.dim()},
         {"sweep", {{"e_max", c.prm.e_max}, {"classes", s.classes.size()}, {"kind", "linear sweep"},
                    {"parametrization", "restricted-nilpotent"}, {"witnesses", s.witness_names}}},
         {"points", pts},
         {"projective", is_projective(V)}};
  t << cl.points.size() << " of " << s.classes.size() << " classes\n";
  emit(c, j, t.str());
  return 0;
}

int cmd_ext(const Common& c, int psi) {
  BundlePtr b = load_bundle(c);
  AlgebraPtr A = b->D->algebra();
  std::string over = "D";
  if (psi >= 0 || !is_local(A)) {
    auto psis = enumerate_one_param(*b, 1, true);
    int i = std::max(psi, 0);
    require(i < int(psis.size()), Errc::InvalidArgument, "no such psi");
    static LocalSubalgebra L;
    L = build_D_psi(*b, psis[i]);
    A = L.D_psi->algebra();
    over = "D_psi " + psis[i].label();
  }
  ExtTruncation T = ext_truncation(A, c.prm.n_max);
  std::string w;
  bool assoc = product_associative(T, &w);
  Json j{{"bundle", b->id()}, {"algebra", over}, {"n_max", c.prm.n_max}, {"dims", T.betti}, {"g", T.g},
         {"associative", assoc}};
  std::ostringstream t;
  t << b->id() << " over " << over << "\nExt dims:";
  for (int d : T.betti) t << " " << d;
  t << "\nproducts associative: " << (assoc ? "yes" : "no") << "\n";
  emit(c, j, t.str());
  return assoc ? 0 : 1;
}

int cmd_verify(const Common& c, const std::string& check) {
  BundlePtr b = load_bundle(c);
  CheckReport r = run_check(check, b, c.prm);
  emit(c, Json::array({r.to_json()}), report_line(r));
  return verdict_exit_code(r.verdict);
}

int cmd_report(const Common& c) {
  BundlePtr b = load_bundle(c);
  std::vector<std::string> names = check_names();
  std::sort(names.begin(), names.end());
  Json arr = Json::array();
  std::string table;
  bool any_fail = false, any_inconclusive = false;
  for (const auto& n : names) {
    CheckReport r = run_check(n, b, c.prm);
    arr.push_back(r.to_json());
    table += report_line(r);
    any_fail |= r.verdict == Verdict::Fail;
    any_inconclusive |= r.verdict == Verdict::Inconclusive;
  }
  emit(c, arr, table);
  return any_fail ? 1 : any_inconclusive ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Supports of Drinfeld doubles of infinitesimal group schemes"};
  app.require_subcommand(1);
  Common c;
  std::string module_spec = "k", check;
  int psi = -1;
  auto* build = app.add_subcommand("build", "construct a catalog bundle");
  add_common(build, c, false);
  auto* pis = app.add_subcommand("pi-support", "pi-point support cloud of a module");
  add_common(pis, c, false);
  pis->add_option("--module", module_spec, "k | regular | ind_O | ind_kG | omega<i> | module JSON");
  auto* ext = app.add_subcommand("ext", "truncated Ext ring of k");
  add_common(ext, c, false);
  ext->add_option("--psi", psi, "use D_psi for this psi index");
  auto* ver = app.add_subcommand("verify", "run one check");
  add_common(ver, c, true);
  ver->add_option("check", check, "check name")->required()->check(CLI::IsMember(check_names()));
  auto* rep = app.add_subcommand("report", "run every check");
  add_common(rep, c, true);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    if (*build) return cmd_build(c);
    if (*pis) return cmd_pi_support(c, module_spec);
    if (*ext) return cmd_ext(c, psi);
    if (*ver) return cmd_verify(c, check);
    if (*rep) return cmd_report(c);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case Errc::TruncationInconclusive:
      case Errc::DepthBudgetExceeded:
        return 2;
      case Errc::InvalidArgument:
      case Errc::UnsupportedCatalogEntry:
      case Errc::ParseError:
        return kUsage;
      default:
        return 1;
    }
  }
  return kUsage;
}
