#include "ffdot/verify.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ffdot/parallel.hpp"
#include "ffdot/products.hpp"
#include "ffdot/rng.hpp"
#include "ffdot/spectral.hpp"

namespace ffdot {

namespace {

constexpr int64_t kSpaceCap = 2'000'000;

struct Cell {
  int64_t q;
  int d;
};

std::vector<Cell> grid(const VerifyOptions& o) {
  std::vector<Cell> cells;
  for (int64_t q = 3; q <= o.qmax; ++q) {
    if (!is_odd_prime(q)) continue;
    for (int d = 2; d <= o.dmax; ++d) cells.push_back({q, d});
  }
  return cells;
}

std::string where_cell(const std::string& suite, const Cell& c) {
  std::ostringstream os;
  os << "[" << suite << "] q=" << c.q << " d=" << c.d;
  return os.str();
}

std::string where_trial(const std::string& suite, const Cell& c, int64_t trial, uint64_t seed) {
  std::ostringstream os;
  os << where_cell(suite, c) << " trial=" << trial << " seed=" << hex_seed(seed);
  return os.str();
}

void expect(SuiteResult& res, bool ok, const std::string& where, const std::string& what) {
  ++res.checks;
  if (!ok) res.failures.push_back("FAIL " + where + ": " + what);
}

struct TrialOut {
  std::vector<std::string> fails;
  int64_t checks = 0;
  bool skipped = false;
  std::string skip_reason;
};

void expect(TrialOut& out, bool ok, const std::string& where, const std::string& what) {
  ++out.checks;
  if (!ok) out.fails.push_back("FAIL " + where + ": " + what);
}

// Per-trial seeds depend only on (master seed, suite, cell, trial index), so
// results are identical under any worker count.
template <class Body>
void for_trials(SuiteResult& res, const VerifyOptions& o, int suite_id, const Cell& c,
                Body&& body) {
  const uint64_t stream = (uint64_t(suite_id) << 32) ^ (uint64_t(c.q) << 8) ^ uint64_t(c.d);
  std::vector<TrialOut> outs(size_t(o.trials));
  parallel_for_index(o.trials, o.threads, [&](int64_t t) {
    const uint64_t seed = derive_seed(o.seed, stream, uint64_t(t));
    SplitMix64 rng(seed);
    body(outs[size_t(t)], t, seed, rng);
  });
  int64_t skipped = 0;
  std::string reason;
  for (auto& out : outs) {
    res.checks += out.checks;
    if (out.skipped) {
      ++skipped;
      if (reason.empty()) reason = out.skip_reason;
    }
    for (auto& f : out.fails) res.failures.push_back(std::move(f));
  }
  if (skipped > 0) {
    res.skipped += skipped;
    std::ostringstream os;
    os << "note " << where_cell(res.suite, c) << ": skipped " << skipped << "/" << o.trials
       << " trials (" << reason << ")";
    res.notes.push_back(os.str());
  }
}

PointSet rand_nonempty(const PointSet& ambient, SplitMix64& rng) {
  const int64_t m = 1 + int64_t(rng.below(uint64_t(ambient.size())));
  return sample_subset(ambient, m, rng.next());
}

bool is_square_mod(int64_t a, int64_t q) {
  a = ((a % q) + q) % q;
  for (int64_t s = 0; s < q; ++s) {
    if (s * s % q == a) return true;
  }
  return false;
}

// Whether x_1^2 + ... + x_k^2 = 0 has a nonzero solution.
bool isotropic_exists(int64_t q, int k) {
  if (k >= 3) return true;  // every quadratic in >= 3 variables is isotropic
  if (k == 2) return is_square_mod(q - 1, q);
  return false;
}

bool pi_subset(const NuHistogram& small, const NuHistogram& big) {
  for (size_t t = 0; t < small.counts.size(); ++t) {
    if (small.counts[t] > 0 && big.counts[t] == 0) return false;
  }
  return true;
}

SuiteResult suite_plancherel(const VerifyOptions& o) {
  SuiteResult res;
  res.suite = "plancherel";
  for (const Cell& c : grid(o)) {
    ++res.cells;
    const int64_t n = checked_pow(c.q, c.d);
    const std::string wc = where_cell(res.suite, c);
    {
      PointSet empty(c.q, c.d);
      expect(res, plancherel_defect(dft(empty), 0) == 0.0, wc, "empty set has zero mass");

      PointSet origin(c.q, c.d);
      origin.insert(0);
      const Spectrum s0 = dft(origin);
      double worst = 0.0;
      for (const auto& v : s0.values) worst = std::max(worst, std::abs(v - 1.0 / double(n)));
      expect(res, worst <= 1e-12, wc, "transform of {0} is flat at q^-d");

      const Spectrum sf = dft(PointSet::full(c.q, c.d));
      expect(res, std::abs(sf.values[0] - 1.0) <= 1e-12, wc, "full space has DC = 1");
      double off = 0.0;
      for (size_t m = 1; m < sf.values.size(); ++m) off = std::max(off, std::abs(sf.values[m]));
      expect(res, off <= 1e-9, wc, "orthogonality kills m != 0 for the full space");
      expect(res, plancherel_defect(sf, n) <= 1e-9, wc, "full-space Plancherel mass");
    }
    for_trials(res, o, 1, c, [&](TrialOut& out, int64_t t, uint64_t seed, SplitMix64& rng) {
      const PointSet ambient = PointSet::full(c.q, c.d);
      const int64_t m = int64_t(rng.below(uint64_t(n) + 1));
      const PointSet E = sample_subset(ambient, m, rng.next());
      const Spectrum S = dft(E);
      const std::string wt = where_trial("plancherel", c, t, seed);
      const double dc = double(E.size()) / double(n);
      expect(out, plancherel_defect(S, E.size()) <= 1e-9 * std::max(1.0, dc), wt,
             "Plancherel defect within 1e-9");
      expect(out,
             std::abs(S.values[0].real() - dc) <= 1e-12 && std::abs(S.values[0].imag()) <= 1e-12,
             wt, "DC coefficient equals |E|/q^d");
    });
  }
  return res;
}

SuiteResult suite_second_moment(const VerifyOptions& o) {
  SuiteResult res;
  res.suite = "second-moment";
  for (const Cell& c : grid(o)) {
    ++res.cells;
    for_trials(res, o, 2, c, [&](TrialOut& out, int64_t t, uint64_t seed, SplitMix64& rng) {
      const PointSet ambient = PointSet::full(c.q, c.d);
      const PointSet E = rand_nonempty(ambient, rng);
      const PointSet F = rand_nonempty(ambient, rng);
      if (E.contains(int64_t{0})) {
        out.skipped = true;
        out.skip_reason = "0 in E, out of hypothesis";
        return;
      }
      const NuHistogram nu = nu_histogram(E, F);
      const double B = energy_B(E, F);
      const double ef = double(E.size()) * double(F.size());
      const double rhs = ef * ef / double(c.q) +
                         double(checked_pow(c.q, 2 * c.d - 1)) * double(E.size()) * B;
      expect(out, double(nu.second_moment) <= rhs + 1e-6,
             where_trial("second-moment", c, t, seed),
             "sum nu^2 <= |E|^2|F|^2/q + q^(2d-1) |E| B(E,F)");
    });
  }
  return res;
}

SuiteResult suite_sphere_lines(const VerifyOptions& o) {
  SuiteResult res;
  res.suite = "sphere-lines";
  for (const Cell& c : grid(o)) {
    ++res.cells;
    for (int64_t j = 1; j < c.q; ++j) {
      std::ostringstream os;
      os << where_cell(res.suite, c) << " j=" << j;
      const std::string wc = os.str();
      const PointSet S = construct_variety(sphere_variety(c.d, j, c.q), c.q, c.d);
      expect(res, !S.contains(int64_t{0}), wc, "S_j misses the origin");
      expect(res, line_table(S).max_count <= 2, wc, "max |S_j ∩ l_x| <= 2");
    }
  }
  return res;
}

SuiteResult suite_paraboloid_lines(const VerifyOptions& o) {
  SuiteResult res;
  res.suite = "paraboloid-lines";
  for (const Cell& c : grid(o)) {
    ++res.cells;
    const int64_t q = c.q;
    const int d = c.d;
    const std::string wc = where_cell(res.suite, c);

    const PointSet P = construct_variety(paraboloid_variety(d, q), q, d);
    expect(res, P.contains(int64_t{0}), wc, "P contains the origin");
    expect(res, P.size() == checked_pow(q, d - 1), wc, "|P| = q^(d-1)");

    const auto [G, B] = paraboloid_split(P);
    expect(res, G.size() + B.size() == P.size(), wc, "split partitions P");
    expect(res, line_table(G).max_count <= 1, wc, "max |G ∩ l_x| <= 1");

    SampleSpec hspec;
    hspec.family = Family::ParaboloidBase;
    hspec.q = q;
    hspec.d = d;
    const PointSet H = ambient_set(hspec);
    bool lines_ok = true;
    H.for_each_rank([&](int64_t r) {
      if (r == 0) return;
      const Vec x = unrank(r, q, d);
      for (int64_t s = 1; s < q; ++s) {
        if (!H.contains(rank_of(scale(x, s, q), q))) lines_ok = false;
      }
    });
    expect(res, lines_ok, wc, "H is a union of punctured lines (plus the origin)");

    const bool iso = isotropic_exists(q, d - 1);
    const int64_t maxc = line_table(P).max_count;
    if (iso) {
      expect(res, maxc == q - 1, wc, "an isotropic line meets P in q-1 points");
      expect(res, H.size() > 1, wc, "H holds a full line when an isotropic direction exists");
    } else {
      expect(res, maxc <= 1, wc, "no isotropic direction: every line count <= 1");
    }

    for_trials(res, o, 4, c, [&](TrialOut& out, int64_t t, uint64_t seed, SplitMix64& rng) {
      const PointSet E = rand_nonempty(P, rng);
      const PointSet F = rand_nonempty(PointSet::full(q, d), rng);
      const auto [g, b] = paraboloid_split(E);
      ++out.checks;
      if (b.empty()) return;  // both product sets are empty; nothing to compare
      const auto lhs = dot_product_set(b, F);
      const auto rhs = dot_product_set(project_set(b), project_set(F));
      expect(out, lhs == rhs, where_trial("paraboloid-lines", c, t, seed),
             "Pi(B,F) = Pi(pi(B), pi(F))");
    });
  }
  return res;
}

SuiteResult suite_translate_lines(const VerifyOptions& o) {
  SuiteResult res;
  res.suite = "translate-lines";
  for (const Cell& c : grid(o)) {
    ++res.cells;
    const int64_t q = c.q;
    const int d = c.d;
    const PointSet P = construct_variety(paraboloid_variety(d, q), q, d);
    const PointSet Pbar = construct_variety(conj_paraboloid_variety(d, q), q, d);
    const int64_t n = P.space_size();
    for (int64_t ar = 0; ar < n; ++ar) {
      const Vec a = unrank(ar, q, d);
      const PointSet T = translate(P, a);
      const bool origin_in = T.contains(int64_t{0});
      if (origin_in != Pbar.contains(ar)) {
        std::ostringstream os;
        os << where_cell(res.suite, c) << " a=" << to_string(a);
        expect(res, false, os.str(), "0 in P+a iff a in conj(P)");
      } else {
        ++res.checks;
      }
      if (!Pbar.contains(ar)) {
        const int64_t maxc = line_table(T).max_count;
        if (maxc > 2) {
          std::ostringstream os;
          os << where_cell(res.suite, c) << " a=" << to_string(a);
          expect(res, false, os.str(),
                 "max |(P+a) ∩ l_x| <= 2 for a outside the conjugate paraboloid");
        } else {
          ++res.checks;
        }
      }
    }
  }
  return res;
}

SuiteResult suite_bounds(const VerifyOptions& o) {
  SuiteResult res;
  res.suite = "bounds";
  for (const Cell& c : grid(o)) {
    ++res.cells;
    const int64_t q = c.q;
    const int d = c.d;
    const int64_t n = checked_pow(q, d);
    for_trials(res, o, 6, c, [&](TrialOut& out, int64_t t, uint64_t seed, SplitMix64& rng) {
      const std::string wt = where_trial("bounds", c, t, seed);
      const PointSet ambient = PointSet::full(q, d);
      const PointSet E = rand_nonempty(ambient, rng);
      const PointSet F = rand_nonempty(ambient, rng);
      const NuHistogram nu = nu_histogram(E, F);
      const BoundReport b = bounds(E, F, nu, energy_B(E, F));
      const int64_t pi = nu.support();
      expect(out, b.cs_leq(pi), wt, "cs_bound <= |Pi| (cross-multiplied)");
      if (b.valid_fourier) {
        expect(out, b.fourier_bound <= b.cs_value() + 1e-6, wt, "fourier_bound <= cs_bound");
        expect(out, double(pi) >= std::ceil(b.fourier_bound - 1e-6), wt,
               "|Pi| >= ceil(fourier_bound - 1e-6)");
        const double kp = double(E.size()) * double(F.size()) / double(n) / double(q);
        expect(out, b.fourier_bound >= double(q) * kp / (kp + 1.0) - 1e-6, wt,
               "fourier_bound >= qK'/(K'+1) for origin-free E");
        const double s = salem_constant(F);
        expect(out,
               b.fourier_bound >=
                   double(q) * double(F.size()) / (double(F.size()) + s * s * double(q)) - 1e-6,
               wt, "fourier_bound >= q|F|/(|F| + s^2 q)");
      }
      // Sphere-restricted E gives the max-count-2 form of the same bound.
      const int64_t j = 1 + int64_t(rng.below(uint64_t(q - 1)));
      const PointSet Sj = construct_variety(sphere_variety(d, j, q), q, d);
      if (!Sj.empty()) {
        const PointSet Es = rand_nonempty(Sj, rng);
        const NuHistogram nus = nu_histogram(Es, F);
        const BoundReport bs = bounds(Es, F, nus, energy_B(Es, F));
        const int64_t pis = nus.support();
        expect(out, bs.cs_leq(pis), wt, "cs_bound <= |Pi| for the sphere subset");
        expect(out, bs.valid_fourier, wt, "sphere subsets avoid the origin");
        const double K = double(Es.size()) * double(F.size()) / double(n);
        expect(out, bs.fourier_bound >= double(q) * K / (K + 2.0) - 1e-6, wt,
               "fourier_bound >= qK/(K+2) for sphere subsets");
        expect(out, double(pis) >= std::ceil(bs.fourier_bound - 1e-6), wt,
               "|Pi| >= ceil(fourier_bound - 1e-6) for the sphere subset");
      }
    });
  }
  return res;
}

SuiteResult suite_e0(const VerifyOptions& o) {
  SuiteResult res;
  res.suite = "e0";
  for (const Cell& c : grid(o)) {
    ++res.cells;
    const int64_t q = c.q;
    const int d = c.d;
    const int64_t n = checked_pow(q, d);
    for_trials(res, o, 7, c, [&](TrialOut& out, int64_t t, uint64_t seed, SplitMix64& rng) {
      const std::string wt = where_trial("e0", c, t, seed);
      const PointSet ambient = PointSet::full(q, d);
      const PointSet E = rand_nonempty(ambient, rng);
      if (E.size() - (E.contains(int64_t{0}) ? 1 : 0) == 0) {
        out.skipped = true;
        out.skip_reason = "E inside {0}, nothing to extract";
        return;
      }
      const PointSet e0 = extract_E0(E);
      const LineTable lt = line_table(E);
      expect(out, e0.size() == lt.lines_hit, wt, "|E0| = lines_hit(E)");
      expect(out, line_table(e0).max_count == 1, wt, "max_count(E0) = 1");
      expect(out, e0.is_subset_of(E), wt, "E0 ⊆ E");
      expect(out, e0 == extract_E0(E), wt, "extraction is deterministic");
      const PointSet F = rand_nonempty(ambient, rng);
      const NuHistogram nuE = nu_histogram(E, F);
      const NuHistogram nu0 = nu_histogram(e0, F);
      expect(out, pi_subset(nu0, nuE), wt, "Pi(E0,F) ⊆ Pi(E,F)");
      const BoundReport b0 = bounds(e0, F, nu0, energy_B(e0, F));
      expect(out, b0.valid_fourier, wt, "0 ∉ E0");
      const double K0 = double(e0.size()) * double(F.size()) / double(n);
      expect(out, b0.fourier_bound >= double(q) * K0 / (K0 + 1.0) - 1e-6, wt,
             "fourier_bound >= qK0/(K0+1) after extraction");
    });
  }
  return res;
}

SuiteResult suite_sphere_distance(const VerifyOptions& o) {
  SuiteResult res;
  res.suite = "sphere-distance";
  for (const Cell& c : grid(o)) {
    ++res.cells;
    const int64_t q = c.q;
    const int d = c.d;
    for_trials(res, o, 8, c, [&](TrialOut& out, int64_t t, uint64_t seed, SplitMix64& rng) {
      const int64_t i = 1 + int64_t(rng.below(uint64_t(q - 1)));
      const int64_t j = 1 + int64_t(rng.below(uint64_t(q - 1)));
      const PointSet Si = construct_variety(sphere_variety(d, i, q), q, d);
      const PointSet Sj = construct_variety(sphere_variety(d, j, q), q, d);
      if (Si.empty() || Sj.empty()) {
        out.skipped = true;
        out.skip_reason = "empty sphere";
        return;
      }
      const PointSet E = rand_nonempty(Si, rng);
      const PointSet F = rand_nonempty(Sj, rng);
      const auto pi = dot_product_set(E, F);
      const auto dist = distance_set(E, F);
      const std::string wt = where_trial("sphere-distance", c, t, seed);
      expect(out, dist.size() == pi.size(), wt, "|D(E,F)| = |Pi(E,F)| on sphere subsets");
      std::vector<int64_t> mapped;
      mapped.reserve(pi.size());
      for (int64_t v : pi) mapped.push_back(((i + j - 2 * v) % q + q) % q);
      std::sort(mapped.begin(), mapped.end());
      expect(out, mapped == dist, wt, "D = {i + j - 2t : t in Pi}");
    });
  }
  return res;
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names = {
      "plancherel", "second-moment", "sphere-lines",    "paraboloid-lines",
      "translate-lines", "bounds",   "e0",              "sphere-distance"};
  return names;
}

SuiteResult run_suite(const std::string& suite, const VerifyOptions& opt) {
  if (opt.qmax < 3) throw std::invalid_argument("verify: qmax must be >= 3");
  if (opt.dmax < 2) throw std::invalid_argument("verify: dmax must be >= 2");
  if (opt.trials < 1) throw std::invalid_argument("verify: trials must be >= 1");
  if (checked_pow(opt.qmax, opt.dmax) > kSpaceCap) {
    throw std::invalid_argument("verify: qmax^dmax exceeds the 2e6 space cap");
  }
  if (suite == "plancherel") return suite_plancherel(opt);
  if (suite == "second-moment") return suite_second_moment(opt);
  if (suite == "sphere-lines") return suite_sphere_lines(opt);
  if (suite == "paraboloid-lines") return suite_paraboloid_lines(opt);
  if (suite == "translate-lines") return suite_translate_lines(opt);
  if (suite == "sphere-distance") return suite_sphere_distance(opt);
  if (suite == "bounds") return suite_bounds(opt);
  if (suite == "e0") return suite_e0(opt);
  throw std::invalid_argument("verify: unknown suite '" + suite + "'");
}

int run_verify(const std::string& suite, const VerifyOptions& opt, std::ostream& os) {
  std::vector<std::string> names;
  if (suite == "all") {
    names = verify_suites();
  } else {
    names.push_back(suite);
  }
  os << "verify: suite=" << suite << " qmax=" << opt.qmax << " dmax=" << opt.dmax
     << " trials=" << opt.trials << " seed=" << hex_seed(opt.seed) << "\n";
  bool ok = true;
  for (const std::string& name : names) {
    const SuiteResult r = run_suite(name, opt);
    for (const auto& note : r.notes) os << "  " << note << "\n";
    for (const auto& f : r.failures) os << "  " << f << "\n";
    os << "suite " << r.suite << ": " << (r.passed() ? "PASS" : "FAIL") << " (cells=" << r.cells
       << " checks=" << r.checks << " skipped=" << r.skipped << ")\n";
    ok = ok && r.passed();
  }
  os << (ok ? "verify: ALL PASS" : "verify: FAIL") << "\n";
  return ok ? 0 : 1;
}

}  // namespace ffdot
