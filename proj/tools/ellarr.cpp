// ellarr: command-line front end for b-functions, arrangements, monodromy
// groups and the acceptance suite.
//
// Exit codes: 0 success, 1 bad arguments, 2 numeric failure, 3 unclassified
// arrangement, 4 enumeration cap exceeded, 5 a verify criterion failed.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ellarr/arrangement.hpp"
#include "ellarr/errors.hpp"
#include "ellarr/report.hpp"
#include "ellarr/torsion_group.hpp"
#include "ellarr/verify.hpp"

using namespace ellarr;

namespace {

enum Exit { kOk = 0, kBadArgs = 1, kNumeric = 2, kUnclassified = 3, kCap = 4, kVerifyFailed = 5 };

struct Global {
  std::string lattice = "random";
  std::uint64_t seed = 1;
  std::optional<double> tol;
  std::string format;
  std::string out;
};

std::string fmtg(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_c(cplx z) { return "(" + fmtg(z.real()) + ", " + fmtg(z.imag()) + ")"; }

std::string format_of(const Global& g, const char* fallback) {
  std::string f = g.format.empty() ? fallback : g.format;
  if (f != "json" && f != "csv" && f != "text") throw InvalidArgument("--format must be json, csv or text");
  return f;
}

void emit(const Global& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(g.out, std::ios::binary);
  if (!os) throw InvalidArgument("cannot open output file " + g.out);
  os << text;
}

Lattice lattice_of(const Global& g, std::mt19937_64& rng) {
  if (g.lattice == "random") {
    Lattice lat = random_generic_lattice(rng);
    return Lattice::from_tau(lat.tau(), "random(seed=" + std::to_string(g.seed) + ")");
  }
  if (g.lattice == "square") return Lattice::square();
  if (g.lattice == "hexagonal") return Lattice::hexagonal();
  return parse_lattice(g.lattice);
}

// "0", "re,im" or "random"
TorusPoint point_of(const std::string& spec, const Lattice& lat, std::mt19937_64& rng) {
  if (spec == "random") return random_torus_point(lat, rng);
  auto comma = spec.find(',');
  try {
    double re = std::stod(spec.substr(0, comma));
    double im = comma == std::string::npos ? 0.0 : std::stod(spec.substr(comma + 1));
    return reduce_to_fundamental({re, im}, lat);
  } catch (const std::logic_error&) {
    throw InvalidArgument("point must be 'random', '<re>' or '<re>,<im>': " + spec);
  }
}

TorsionPoint vector_of(const std::string& spec, std::int64_t n) {
  auto comma = spec.find(',');
  if (comma == std::string::npos) throw InvalidArgument("vector must look like x,y: " + spec);
  try {
    return {std::stoll(spec.substr(0, comma)), std::stoll(spec.substr(comma + 1)), n};
  } catch (const std::logic_error&) {
    throw InvalidArgument("vector must look like x,y: " + spec);
  }
}

json tolerances(const NumericPolicy& p) {
  return {{"cluster_tol", p.cluster_tol},
          {"distinct_factor", p.distinct_factor},
          {"transversality_min", p.transversality_min},
          {"no_double_zero_threshold", p.no_double_zero_threshold},
          {"zero_residual", p.zero_residual},
          {"pole_guard", p.pole_guard}};
}

json run_meta(const Global& g, const NumericPolicy& p) {
  return {{"seed", g.seed},
          {"lattice_spec", g.lattice},
          {"tolerance_override", g.tol ? json(*g.tol) : json(nullptr)},
          {"tolerances", tolerances(p)}};
}

// ---------------------------------------------------------------- bfun

struct BfunArgs {
  std::string p = "0";
  std::string tau;
};

int cmd_bfun(const Global& g, const BfunArgs& a) {
  std::mt19937_64 rng(g.seed);
  NumericPolicy pol;
  if (g.tol) pol.no_double_zero_threshold = *g.tol;
  Lattice lat = lattice_of(g, rng);
  TorusPoint p = point_of(a.p, lat, rng);
  TorsionPoint t = parse_torsion(a.tau);
  BFunction f = construct_b(p, t, lat, pol);
  const std::string format = format_of(g, "json");
  if (format == "csv") {
    emit(g, bfun_csv(f, find_zeros(f)));
    return kOk;
  }
  json j = describe_b(f);
  j["run"] = run_meta(g, pol);
  if (format == "json") {
    emit(g, dump_json(j));
    return kOk;
  }
  const ZeroPair z = find_zeros(f);
  std::string s;
  s += "lattice tau = " + fmt_c(lat.tau()) + (lat.is_special() ? " (non-generic)" : "") + "\n";
  s += "p = " + fmt_c(f.p()) + ", tau = " + f.tau().to_string() + " (order " + std::to_string(f.order()) + ")\n";
  s += "constant c = " + fmt_c(f.constant()) + "\n";
  s += "zeros: " + fmt_c(z.q1) + ", " + fmt_c(z.q2) + (z.double_zero ? " (double)" : "") + "\n";
  s += "abel residual = " + fmtg(j["abel_residual"].get<double>()) + "\n";
  s += "translate-sum residual = " + fmtg(j["translate_sum_residual"].get<double>()) + "\n";
  s += "min |b(p - eta)| = " + fmtg(j["double_zero_check"]["min_magnitude"].get<double>()) + "\n";
  s += "seed " + std::to_string(g.seed) + "\n";
  emit(g, s);
  return kOk;
}

// ------------------------------------------------------------ classify

struct ClassifyArgs {
  std::string p = "random";
  std::vector<std::string> subgroup;
  std::string sweep;
  int trials = 5;
};

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& s) {
  auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      auto v = std::stoll(s);
      return {v, v};
    }
    return {std::stoll(s.substr(0, dots)), std::stoll(s.substr(dots + 2))};
  } catch (const std::logic_error&) {
    throw InvalidArgument("range must look like 2..8: " + s);
  }
}

int cmd_sweep(const Global& g, const ClassifyArgs& a, const NumericPolicy& pol) {
  auto [lo, hi] = parse_range(a.sweep);
  if (lo < 2 || hi > 12 || lo > hi) throw InvalidArgument("--m-sweep needs 2 <= lo <= hi <= 12");
  std::optional<Lattice> fixed;
  if (g.lattice != "random") {
    std::mt19937_64 rng(g.seed);
    fixed = lattice_of(g, rng);
  }
  json arr = json::array();
  std::string text = "m   prediction       type       runs  verdicts\n";
  std::string csv = "m,type,trial,expected,verdict,nodes,triples\n";
  bool unclassified = false;
  for (std::int64_t m = lo; m <= hi; ++m) {
    DichotomyExperiment ex = dichotomy_experiment(m, a.trials, g.seed * 1000 + static_cast<std::uint64_t>(m), pol, fixed);
    unclassified = unclassified || ex.unclassified() > 0;
    arr.push_back(to_json(ex));
    for (const auto& t : subgroup_types(m)) {
      int nc = 0, nt = 0, un = 0, runs = 0;
      for (const auto& r : ex.runs) {
        if (r.type.a != t.a || r.type.b != t.b) continue;
        ++runs;
        nc += r.verdict == Verdict::NormalCrossings;
        nt += r.verdict == Verdict::NodesAndTriples;
        un += r.verdict == Verdict::Unclassified;
        csv += std::to_string(m) + "," + t.to_string() + "," + std::to_string(r.trial) + "," + to_string(r.expected) +
               "," + to_string(r.verdict) + "," + std::to_string(r.total_nodes) + "," +
               std::to_string(r.total_triples) + "\n";
      }
      char line[200];
      std::snprintf(line, sizeof line, "%-3lld %-16s %-10s %4d  NC=%d NT=%d U=%d\n", static_cast<long long>(m),
                    to_string(ex.prediction), t.to_string().c_str(), runs, nc, nt, un);
      text += line;
    }
  }
  const std::string format = format_of(g, "json");
  if (format == "json") {
    json j = {{"sweep", arr}, {"run", run_meta(g, pol)}, {"trials", a.trials}};
    emit(g, dump_json(j));
  } else if (format == "csv") {
    emit(g, csv);
  } else {
    emit(g, text + "seed " + std::to_string(g.seed) + "\n");
  }
  return unclassified ? kUnclassified : kOk;
}

int cmd_classify(const Global& g, const ClassifyArgs& a) {
  NumericPolicy pol;
  if (g.tol) pol.cluster_tol = *g.tol;
  if (!a.sweep.empty()) return cmd_sweep(g, a, pol);
  if (a.subgroup.empty()) throw InvalidArgument("classify needs --subgroup generators or --m-sweep");

  std::mt19937_64 rng(g.seed);
  Lattice lat = lattice_of(g, rng);
  TorusPoint p = point_of(a.p, lat, rng);
  std::vector<TorsionPoint> gens;
  for (const auto& s : a.subgroup) gens.push_back(parse_torsion(s));
  const auto A = subgroup_from_generators(gens);
  ArrangementReport rep = classify_arrangement(A, p, lat, pol);

  const std::string format = format_of(g, "json");
  if (format == "json") {
    json j = to_json(rep);
    json gj = json::array();
    for (const auto& t : gens) gj.push_back(to_json(t));
    j["generators"] = gj;
    j["run"] = run_meta(g, pol);
    emit(g, dump_json(j));
  } else if (format == "csv") {
    emit(g, arrangement_csv(rep));
  } else {
    std::string s = "lattice tau = " + fmt_c(lat.tau()) + (rep.non_generic ? " (non-generic)" : "") + "\n";
    s += "p = " + fmt_c(rep.p) + ", |A| = " + std::to_string(rep.subgroup.size()) + "\n";
    for (const auto& c : rep.clusters) {
      s += "  " + fmt_c(c.center) + "  r = " + std::to_string(c.branches()) + "  S =";
      for (const auto& t : c.vanishing) s += " " + t.to_string();
      s += "\n";
    }
    s += "on G: " + std::to_string(rep.nodes_on_g) + " nodes, " + std::to_string(rep.triples_on_g) + " triple points\n";
    s += "arrangement: " + std::to_string(rep.total_nodes) + " nodes, " + std::to_string(rep.total_triples) +
         " triple points\n";
    s += std::string("verdict ") + to_string(rep.verdict) + "\n";
    for (const auto& i : rep.issues) s += "  issue: " + i + "\n";
    s += "seed " + std::to_string(g.seed) + "\n";
    emit(g, s);
  }
  return rep.verdict == Verdict::Unclassified ? kUnclassified : kOk;
}

// ----------------------------------------------------------- monodromy

struct MonodromyArgs {
  std::int64_t n = 0;
  std::vector<std::string> deltas;
  bool lem5 = false;
  std::int64_t cap = 12;
};

int cmd_monodromy(const Global& g, const MonodromyArgs& a) {
  if (a.n < 1) throw InvalidArgument("--n must be positive");
  std::vector<TorsionPoint> ds;
  for (const auto& s : a.deltas) ds.push_back(vector_of(s, a.n));
  if (ds.empty()) ds = {TorsionPoint(1, 0, a.n), TorsionPoint(0, 1, a.n)};
  for (const auto& d : ds)
    if (d.is_zero()) throw InvalidArgument("delta vectors must be nonzero mod n");

  json j;
  json dj = json::array();
  for (const auto& d : ds) dj.push_back(std::to_string(d.a()) + "," + std::to_string(d.b()));
  j["n"] = a.n;
  j["deltas"] = dj;
  j["cap"] = a.cap;
  const auto group = generated_subgroup(transvections(ds, a.n), a.cap);
  const auto orbits = orbit_on_exact_order(ds, a.n, a.cap);
  j["group_order"] = group.order();
  j["sl2_order"] = sl2_order(a.n);
  j["surjective"] = group.order() == sl2_order(a.n);
  json sizes = json::array();
  for (const auto& o : orbits) sizes.push_back(o.size());
  j["orbit_sizes"] = sizes;
  j["exact_order_count"] = exact_order_count(a.n);
  j["gcd_condition"] = gcd_pairing_check(ds, a.n);
  std::optional<Lem5Report> lem;
  if (a.lem5) {
    lem = lem5_exhaustive(a.n);
    j["lem5"] = {{"holds", lem->holds()}, {"pairs", lem->pairs}, {"instances", lem->instances},
                 {"counterexample", lem->counterexample ? json(*lem->counterexample) : json(nullptr)}};
  }
  j["seed"] = g.seed;

  const std::string format = format_of(g, "json");
  if (format == "json") {
    emit(g, dump_json(j));
  } else if (format == "csv") {
    std::string s = "orbit,size\n";
    for (std::size_t i = 0; i < orbits.size(); ++i) s += std::to_string(i) + "," + std::to_string(orbits[i].size()) + "\n";
    emit(g, s);
  } else {
    std::string s = "n = " + std::to_string(a.n) + ", group order " + std::to_string(group.order()) + " of " +
                    std::to_string(sl2_order(a.n)) + (group.order() == sl2_order(a.n) ? ", surjective" : ", not surjective") + "\n";
    s += "orbits on exact-order vectors:";
    for (const auto& o : orbits) s += " " + std::to_string(o.size());
    s += "\n";
    s += std::string("gcd condition ") + (j["gcd_condition"].get<bool>() ? "holds" : "fails") + "\n";
    if (lem) s += std::string("lem5 ") + (lem->holds() ? "holds" : "fails: " + *lem->counterexample) + " (" +
                  std::to_string(lem->instances) + " instances)\n";
    emit(g, s);
  }
  return kOk;
}

// -------------------------------------------------------------- verify

struct VerifyArgs {
  std::string only;
  std::optional<int> n;
};

int cmd_verify(const Global& g, const VerifyArgs& a) {
  VerifyConfig cfg;
  cfg.seed = g.seed;
  if (!a.only.empty()) cfg.only = a.only;
  cfg.n = a.n;
  cfg.tol = g.tol;
  if (g.lattice != "random") {
    std::mt19937_64 rng(g.seed);
    cfg.lattice = lattice_of(g, rng);
  }
  VerifyReport rep = run_verify(cfg);
  const std::string format = format_of(g, "text");
  if (format == "json") {
    emit(g, dump_json(rep.to_json()));
  } else if (format == "csv") {
    std::string s = "id,name,pass,metric,threshold\n";
    for (const auto& r : rep.results)
      s += std::to_string(r.id) + "," + r.name + "," + (r.pass ? "1" : "0") + "," + fmtg(r.metric) + "," +
           fmtg(r.threshold) + "\n";
    emit(g, s);
  } else {
    emit(g, rep.to_text());
  }
  return rep.all_pass() ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"b-functions on complex tori, arrangement singularities and monodromy checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--lattice", g.lattice, "tau=<re>,<im>, square, hexagonal or random")->capture_default_str();
  app.add_option("--seed", g.seed, "seed for every random choice")->capture_default_str();
  app.add_option("--tol", g.tol, "tolerance override (echoed in the output)");
  app.add_option("--format", g.format, "json, csv or text");
  app.add_option("--out", g.out, "write the report here instead of stdout");

  BfunArgs ba;
  auto* bfun = app.add_subcommand("bfun", "construct b_{tau,p} and report its zeros and checks");
  bfun->add_option("--p", ba.p, "pole p: <re>[,<im>] or random")->capture_default_str();
  bfun->add_option("--tau", ba.tau, "torsion point a/n,b/n")->required();

  ClassifyArgs ca;
  auto* classify = app.add_subcommand("classify", "classify the arrangement of translates by a subgroup");
  classify->add_option("--subgroup", ca.subgroup, "generators a/n,b/n ...");
  classify->add_option("--p", ca.p, "base point: <re>[,<im>] or random")->capture_default_str();
  classify->add_option("--m-sweep", ca.sweep, "run the dichotomy experiment for m in lo..hi");
  classify->add_option("--trials", ca.trials, "random lattices per subgroup type in a sweep")->capture_default_str();

  MonodromyArgs ma;
  auto* mono = app.add_subcommand("monodromy", "transvection group, surjectivity and orbits mod n");
  mono->add_option("--n", ma.n, "level")->required();
  mono->add_option("--deltas", ma.deltas, "vanishing cycles x,y ... (default 1,0 0,1)");
  mono->add_flag("--lem5", ma.lem5, "also run the exhaustive order-2 difference check");
  mono->add_option("--cap", ma.cap, "largest level for exhaustive enumeration")->capture_default_str();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_option("--only", va.only, "a single criterion, by name or number");
  verify->add_option("--n", va.n, "restrict the level where a criterion has one");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadArgs;
  }

  try {
    if (*bfun) return cmd_bfun(g, ba);
    if (*classify) return cmd_classify(g, ca);
    if (*mono) return cmd_monodromy(g, ma);
    if (*verify) return cmd_verify(g, va);
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadArgs;
  } catch (const LevelCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCap;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumeric;
  }
  return kBadArgs;
}
