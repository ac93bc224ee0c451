#include "ffdot/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ffdot/report.hpp"
#include "ffdot/sweep.hpp"
#include "ffdot/verify.hpp"

namespace ffdot {

namespace {

constexpr int64_t kSpaceCap = 2'000'000;

void require_cap(int64_t q, int d) {
  if (checked_pow(q, d) > kSpaceCap) {
    throw std::invalid_argument("q^d exceeds the 2e6 space cap");
  }
}

int64_t parse_int64(const std::string& tok) {
  try {
    size_t used = 0;
    const int64_t v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad integer '" + tok + "'");
  }
}

struct Params {
  int64_t j = 1;
  bool pinned = false;
  std::vector<std::string> lines;
};

Params parse_params(const std::vector<std::string>& raw, bool allow_pinned) {
  Params p;
  for (const std::string& kv : raw) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("--param expects key=value, got '" + kv + "'");
    }
    const std::string key = kv.substr(0, eq);
    const std::string val = kv.substr(eq + 1);
    if (key == "j") {
      p.j = parse_int64(val);
    } else if (key == "line") {
      p.lines.push_back(val);
    } else if (key == "pinned" && allow_pinned) {
      p.pinned = (val == "1" || val == "true");
    } else {
      throw std::invalid_argument("unknown --param key '" + key + "'");
    }
  }
  return p;
}

struct ConstructArgs {
  std::string family;
  int64_t q = 3;
  int d = 2;
  std::vector<std::string> params;
  std::string variety;
  std::string trans;
  int64_t size = -1;  // -1: take the whole ambient family
  uint64_t seed = 0;
  std::string out;
};

int cmd_construct(const ConstructArgs& a) {
  require_cap(a.q, a.d);
  const Params p = parse_params(a.params, false);
  SampleSpec spec;
  spec.family = family_from_string(a.family);
  spec.q = a.q;
  spec.d = a.d;
  spec.j = p.j;
  spec.seed = a.seed;
  if (!a.variety.empty()) spec.variety = parse_variety(a.variety, a.q, a.d);
  if (!a.trans.empty()) spec.shift = parse_vec(a.trans, a.q, a.d);
  for (const auto& lt : p.lines) spec.lines.push_back(parse_vec(lt, a.q, a.d));
  if (a.size >= 0) spec.size = a.size;

  const PointSet E = sample(spec);
  std::ostringstream summary;
  summary << "construct: family=" << family_name(spec.family) << " q=" << a.q << " d=" << a.d
          << " size=" << E.size() << " seed=" << hex_seed(a.seed);
  if (a.out.empty()) {
    write_set(E, std::cout);
    std::cerr << summary.str() << "\n";
  } else {
    write_set(E, a.out);
    std::cout << summary.str() << " out=" << a.out << "\n";
  }
  return 0;
}

struct AnalyzeArgs {
  std::string e_path;
  std::string f_path;
  std::string format = "json";
  std::string out;
  uint64_t seed = 0;
};

int cmd_analyze(const AnalyzeArgs& a) {
  const PointSet E = read_set(a.e_path);
  const PointSet F = read_set(a.f_path);
  require_cap(E.q(), E.dim());
  require_cap(F.q(), F.dim());
  const AnalysisReport r = analyze_pair(E, F, "file", "file", a.seed);

  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!a.out.empty()) {
    file.open(a.out);
    if (!file) throw std::runtime_error("cannot open '" + a.out + "'");
    os = &file;
  }
  if (a.format == "json") {
    write_json(r, *os);
  } else {
    *os << report_csv_header() << "\n" << report_csv_row(r) << "\n";
  }
  return 0;
}

struct VerifyArgs {
  std::string suite = "all";
  int64_t qmax = 13;
  int dmax = 3;
  int64_t trials = 200;
  uint64_t seed = 0;
};

int cmd_verify(const VerifyArgs& a) {
  VerifyOptions opt;
  opt.qmax = a.qmax;
  opt.dmax = a.dmax;
  opt.trials = a.trials;
  opt.seed = a.seed;
  return run_verify(a.suite, opt, std::cout);
}

struct SweepArgs {
  std::vector<int64_t> qs = {13};
  std::vector<int> ds = {2};
  std::vector<std::string> families;
  std::vector<std::string> params;
  std::string variety;
  std::string trans;
  std::vector<double> ks = {4.0};
  int64_t trials = 100;
  uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
};

template <class Fn>
int with_out(const std::string& out, Fn&& fn) {
  if (out.empty()) {
    fn(std::cout);
  } else {
    std::ofstream file(out);
    if (!file) throw std::runtime_error("cannot open '" + out + "'");
    fn(file);
  }
  return 0;
}

int cmd_sweep(const SweepArgs& a) {
  if (a.format != "csv") throw std::invalid_argument("sweep emits csv only");
  const Params p = parse_params(a.params, true);

  FamilySpec base;
  base.j = p.j;
  base.variety_text = a.variety;
  base.translate_text = a.trans;
  base.line_texts = p.lines;

  SweepConfig cfg;
  cfg.e_spec = base;
  cfg.f_spec = base;
  if (a.families.size() == 1) {
    cfg.e_spec.family = family_from_string(a.families[0]);
    cfg.f_spec.family = cfg.e_spec.family;
  } else if (a.families.size() == 2) {
    cfg.e_spec.family = family_from_string(a.families[0]);
    cfg.f_spec.family = family_from_string(a.families[1]);
  } else if (!a.families.empty()) {
    throw std::invalid_argument("--family accepts at most two values (E family, F family)");
  }
  cfg.qs = a.qs;
  cfg.ds = a.ds;
  cfg.ks = a.ks;
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  cfg.pinned = p.pinned;
  return with_out(a.out, [&](std::ostream& os) { run_sweep(cfg, os); });
}

struct ProbeArgs {
  std::vector<int64_t> qs = {5};
  std::vector<int> ds = {3};
  std::string variety;
  std::string trans;
  std::vector<double> ks = {4.0};
  int64_t trials = 100;
  uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
};

int cmd_probe(const ProbeArgs& a) {
  if (a.format != "csv") throw std::invalid_argument("probe emits csv only");
  ProbeConfig cfg;
  cfg.qs = a.qs;
  cfg.ds = a.ds;
  cfg.variety_text = a.variety;
  cfg.translate_text = a.trans;
  cfg.ks = a.ks;
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  return with_out(a.out, [&](std::ostream& os) { run_probe(cfg, os); });
}

}  // namespace

int ffdot_main(const std::vector<std::string>& args) {
  CLI::App app{"finite-field dot-product-set machinery"};
  app.require_subcommand(1);

  ConstructArgs ca;
  CLI::App* construct = app.add_subcommand("construct", "build or sample a point set");
  construct->add_option("--family", ca.family, "set family")->required();
  construct->add_option("--q", ca.q, "field size (odd prime)")->required();
  construct->add_option("--d", ca.d, "dimension")->required();
  construct->add_option("--param", ca.params, "key=value (j=<int>, line=<csv vector>)");
  construct->add_option("--variety", ca.variety, "variety spec 'a1,..,ad;b1,..,bd;c'");
  construct->add_option("--translate", ca.trans, "translate vector, comma-separated");
  construct->add_option("--size", ca.size, "target sample size")
      ->check(CLI::NonNegativeNumber);
  construct->add_option("--seed", ca.seed, "sampling seed");
  construct->add_option("--out", ca.out, "output path (default: stdout)");

  AnalyzeArgs aa;
  CLI::App* analyze = app.add_subcommand("analyze", "full report for a pair of set files");
  analyze->add_option("--e", aa.e_path, "point-set file for E")->required();
  analyze->add_option("--f", aa.f_path, "point-set file for F")->required();
  analyze->add_option("--format", aa.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  analyze->add_option("--out", aa.out, "output path (default: stdout)");
  analyze->add_option("--seed", aa.seed, "seed to echo in the report");

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "run inequality suites; exit 1 on failure");
  verify->add_option("--suite", va.suite,
                     "plancherel|second-moment|sphere-lines|paraboloid-lines|translate-lines|"
                     "bounds|e0|sphere-distance|all");
  verify->add_option("--q", va.qmax, "largest field size");
  verify->add_option("--d", va.dmax, "largest dimension");
  verify->add_option("--trials", va.trials, "trials per cell");
  verify->add_option("--seed", va.seed, "master seed");

  SweepArgs sa;
  CLI::App* sweep = app.add_subcommand("sweep", "aggregate statistics over a (q,d,K) grid");
  sweep->add_option("--q", sa.qs, "field sizes");
  sweep->add_option("--d", sa.ds, "dimensions");
  sweep->add_option("--family", sa.families,
                    "family for both sets, or two values: E family then F family");
  sweep->add_option("--param", sa.params, "key=value (j=, line=, pinned=0|1)");
  sweep->add_option("--variety", sa.variety, "variety spec for variety families");
  sweep->add_option("--translate", sa.trans, "translate vector for variety-translate");
  sweep->add_option("--k", sa.ks, "density targets: |E||F| ~ K q^d");
  sweep->add_option("--trials", sa.trials, "trials per cell");
  sweep->add_option("--seed", sa.seed, "master seed");
  sweep->add_option("--out", sa.out, "output path (default: stdout)");
  sweep->add_option("--format", sa.format, "csv")->check(CLI::IsMember({"csv"}));

  ProbeArgs pa;
  CLI::App* probe = app.add_subcommand("probe", "sample E inside a variety against random F");
  probe->add_option("--variety", pa.variety, "variety spec; must avoid the origin")->required();
  probe->add_option("--translate", pa.trans, "shift applied to the variety");
  probe->add_option("--q", pa.qs, "field sizes");
  probe->add_option("--d", pa.ds, "dimensions");
  probe->add_option("--k", pa.ks, "density targets");
  probe->add_option("--trials", pa.trials, "trials per cell");
  probe->add_option("--seed", pa.seed, "master seed");
  probe->add_option("--out", pa.out, "output path (default: stdout)");
  probe->add_option("--format", pa.format, "csv")->check(CLI::IsMember({"csv"}));

  try {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("ffdot");
    for (const auto& s : args) argv.push_back(s.c_str());
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (construct->parsed()) return cmd_construct(ca);
    if (analyze->parsed()) return cmd_analyze(aa);
    if (verify->parsed()) return cmd_verify(va);
    if (sweep->parsed()) return cmd_sweep(sa);
    if (probe->parsed()) return cmd_probe(pa);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    // An invariant the report machinery re-checks failed: a verification
    // failure, not a usage error.
    std::cerr << "invariant failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace ffdot
