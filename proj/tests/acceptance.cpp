// Acceptance gate: exercises the library against its contract at desk scale
// and prints one PASS/FAIL line per criterion. Exit status 0 iff all pass.
//
// Tolerances used throughout: 1e-9 for spectral quantities (transform
// agreement, Plancherel defect), 1e-6 for mixed integer/floating-point
// inequalities, exact integer comparison everywhere else.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ffdot/products.hpp"
#include "ffdot/report.hpp"
#include "ffdot/rng.hpp"
#include "ffdot/spectral.hpp"
#include "ffdot/verify.hpp"
#include "oracles.hpp"

using namespace ffdot;

namespace {

const std::vector<int64_t> kPrimes = {3, 5, 7, 11, 13};
const std::vector<int> kDims = {2, 3};

struct Gate {
  int failed = 0;

  void report(int idx, const std::string& label, bool ok, const std::string& detail) {
    std::cout << "criterion " << idx << " (" << label << "): " << (ok ? "PASS" : "FAIL");
    if (!ok && !detail.empty()) std::cout << " - " << detail;
    std::cout << "\n";
    if (!ok) ++failed;
  }
};

PointSet random_subset(const PointSet& ambient, int64_t m, uint64_t seed) {
  return sample_subset(ambient, m, seed);
}

PointSet rand_nonempty(const PointSet& ambient, SplitMix64& rng) {
  return random_subset(ambient, 1 + int64_t(rng.below(uint64_t(ambient.size()))), rng.next());
}

std::set<int64_t> as_set(const std::vector<int64_t>& v) { return {v.begin(), v.end()}; }

// --- 1: Plancherel identity and agreement with the naive transform --------

bool c1_plancherel(std::string& detail) {
  for (int64_t q : kPrimes) {
    for (int d : kDims) {
      const PointSet full = PointSet::full(q, d);
      for (uint64_t t = 0; t < 100; ++t) {
        SplitMix64 rng(derive_seed(0xAC01, uint64_t(q) * 100 + uint64_t(d), t));
        PointSet e = random_subset(full, int64_t(rng.below(uint64_t(full.size()) + 1)), rng.next());
        double defect = plancherel_defect(dft(e), e.size());
        if (defect > 1e-9) {
          std::ostringstream ss;
          ss << "defect " << defect << " at q=" << q << " d=" << d << " trial=" << t;
          detail = ss.str();
          return false;
        }
      }
    }
  }
  // Naive-transform agreement at the sizes where O(q^2d) is affordable.
  for (int64_t q : {3, 5, 7}) {
    for (int d : kDims) {
      const PointSet full = PointSet::full(q, d);
      for (uint64_t t = 0; t < 5; ++t) {
        SplitMix64 rng(derive_seed(0xAC02, uint64_t(q) * 100 + uint64_t(d), t));
        PointSet e = random_subset(full, int64_t(rng.below(uint64_t(full.size()) + 1)), rng.next());
        Spectrum s = dft(e);
        auto ref = oracle::naive_dft(e);
        for (int64_t m = 0; m < s.space_size(); ++m) {
          if (std::abs(s.at(m) - ref[size_t(m)]) > 1e-9) {
            std::ostringstream ss;
            ss << "coefficient mismatch at q=" << q << " d=" << d << " m=" << m;
            detail = ss.str();
            return false;
          }
        }
      }
    }
  }
  return true;
}

// --- 2: Cauchy-Schwarz bound never exceeds the exact product count --------

bool c2_cs_bound(std::string& detail) {
  for (int64_t q : kPrimes) {
    for (int d : kDims) {
      const PointSet full = PointSet::full(q, d);
      for (uint64_t t = 0; t < 200; ++t) {
        SplitMix64 rng(derive_seed(0xAC03, uint64_t(q) * 100 + uint64_t(d), t));
        PointSet e = rand_nonempty(full, rng);
        PointSet f = rand_nonempty(full, rng);
        NuHistogram nu = nu_histogram(e, f);
        BoundReport b = bounds(e, f, nu, 0.0);
        if (!b.cs_leq(nu.support())) {
          std::ostringstream ss;
          ss << "violation at q=" << q << " d=" << d << " trial=" << t << " |Pi|=" << nu.support();
          detail = ss.str();
          return false;
        }
      }
    }
  }
  return true;
}

// --- 3: second-moment inequality for origin-free E ------------------------

bool c3_second_moment(std::string& detail) {
  for (int64_t q : kPrimes) {
    for (int d : kDims) {
      const PointSet full = PointSet::full(q, d);
      for (uint64_t t = 0; t < 200; ++t) {
        SplitMix64 rng(derive_seed(0xAC04, uint64_t(q) * 100 + uint64_t(d), t));
        PointSet e = rand_nonempty(full, rng);
        PointSet f = rand_nonempty(full, rng);
        if (e.contains(int64_t(0))) continue;  // out of hypothesis
        NuHistogram nu = nu_histogram(e, f);
        double num = double(e.size()) * double(e.size()) * double(f.size()) * double(f.size());
        double rhs = num / double(q) +
                     double(checked_pow(q, 2 * d - 1)) * double(e.size()) * energy_B(e, f);
        if (double(nu.second_moment) > rhs + 1e-6) {
          std::ostringstream ss;
          ss << "violation at q=" << q << " d=" << d << " trial=" << t;
          detail = ss.str();
          return false;
        }
      }
    }
  }
  return true;
}

// --- 4: exhaustive line-intersection bounds --------------------------------

bool c4_line_bounds(std::string& detail) {
  // Spheres of nonzero radius meet every punctured line in at most 2 points.
  for (int64_t q : kPrimes) {
    for (int d : kDims) {
      for (int64_t j = 1; j < q; ++j) {
        PointSet s = construct_variety(sphere_variety(d, j, q), q, d);
        if (line_table(s).max_count > 2) {
          std::ostringstream ss;
          ss << "sphere j=" << j << " q=" << q << " d=" << d;
          detail = ss.str();
          return false;
        }
      }
      // The off-hyperplane part of the paraboloid meets each line at most once.
      PointSet p = construct_variety(paraboloid_variety(d, q), q, d);
      PointSet g = paraboloid_split(p).first;
      if (!g.empty() && line_table(g).max_count > 1) {
        std::ostringstream ss;
        ss << "paraboloid G part q=" << q << " d=" << d;
        detail = ss.str();
        return false;
      }
    }
  }
  // Translates P+a with a outside the conjugate paraboloid: at most 2.
  for (int64_t q : {3, 5, 7}) {
    for (int d : kDims) {
      PointSet p = construct_variety(paraboloid_variety(d, q), q, d);
      PointSet pbar = construct_variety(conj_paraboloid_variety(d, q), q, d);
      int64_t n = checked_pow(q, d);
      for (int64_t r = 0; r < n; ++r) {
        if (pbar.contains(r)) continue;
        PointSet shifted = translate(p, unrank(r, q, d));
        if (line_table(shifted).max_count > 2) {
          std::ostringstream ss;
          ss << "translate rank " << r << " q=" << q << " d=" << d;
          detail = ss.str();
          return false;
        }
      }
    }
  }
  // An isotropic direction puts a whole punctured line inside P at q=5, d=3.
  PointSet p53 = construct_variety(paraboloid_variety(3, 5), 5, 3);
  if (line_table(p53).max_count != 4) {
    detail = "no full line inside the paraboloid at q=5 d=3";
    return false;
  }
  return true;
}

// --- 5: closed-form consequences of the Fourier bound ----------------------

bool c5_closed_forms(std::string& detail) {
  auto fail = [&](const char* which, int64_t q, int d, uint64_t t) {
    std::ostringstream ss;
    ss << which << " violated at q=" << q << " d=" << d << " trial=" << t;
    detail = ss.str();
    return false;
  };
  for (int64_t q : kPrimes) {
    for (int d : kDims) {
      const PointSet full = PointSet::full(q, d);
      const int64_t n = checked_pow(q, d);
      PointSet punctured = PointSet::full(q, d);
      punctured.erase(int64_t(0));

      // Sphere-restricted class: E inside a nonzero-radius sphere.
      for (uint64_t t = 0; t < 50; ++t) {
        SplitMix64 rng(derive_seed(0xAC05, uint64_t(q) * 100 + uint64_t(d), t));
        int64_t j = 1 + int64_t(rng.below(uint64_t(q - 1)));
        PointSet sphere = construct_variety(sphere_variety(d, j, q), q, d);
        if (sphere.empty()) continue;
        PointSet e = rand_nonempty(sphere, rng);
        PointSet f = rand_nonempty(full, rng);
        NuHistogram nu = nu_histogram(e, f);
        BoundReport bnd = bounds(e, f, nu, energy_B(e, f));
        if (!bnd.valid_fourier) return fail("sphere-class validity", q, d, t);
        double kk = double(e.size()) * double(f.size()) / double(n);
        if (bnd.fourier_bound < double(q) * kk / (kk + 2.0) - 1e-6)
          return fail("qK/(K+2)", q, d, t);
        double ceil_fb = std::ceil(bnd.fourier_bound - 1e-6);
        if (double(nu.support()) < ceil_fb) return fail("sphere-class ceiling", q, d, t);
      }

      // General origin-free class, with the flatness form on the same pairs.
      for (uint64_t t = 0; t < 50; ++t) {
        SplitMix64 rng(derive_seed(0xAC06, uint64_t(q) * 100 + uint64_t(d), t));
        PointSet e = rand_nonempty(punctured, rng);
        PointSet f = rand_nonempty(full, rng);
        NuHistogram nu = nu_histogram(e, f);
        BoundReport bnd = bounds(e, f, nu, energy_B(e, f));
        if (!bnd.valid_fourier) return fail("origin-free validity", q, d, t);
        double kp = double(e.size()) * double(f.size()) / double(n * q);
        if (bnd.fourier_bound < double(q) * kp / (kp + 1.0) - 1e-6)
          return fail("qK'/(K'+1)", q, d, t);
        double s = salem_constant(f);
        double flat = double(q) * double(f.size()) / (double(f.size()) + s * s * double(q));
        if (bnd.fourier_bound < flat - 1e-6) return fail("flatness form", q, d, t);
        double ceil_fb = std::ceil(bnd.fourier_bound - 1e-6);
        if (double(nu.support()) < ceil_fb) return fail("origin-free ceiling", q, d, t);
      }
    }
  }
  return true;
}

// --- 6: projection identity on the paraboloid base -------------------------

bool c6_projection(std::string& detail) {
  for (int64_t q : {3, 5, 7}) {
    const int d = 3;
    PointSet p = construct_variety(paraboloid_variety(d, q), q, d);
    const PointSet full = PointSet::full(q, d);
    for (uint64_t t = 0; t < 50; ++t) {
      SplitMix64 rng(derive_seed(0xAC07, uint64_t(q) * 100 + uint64_t(d), t));
      PointSet e = rand_nonempty(p, rng);
      PointSet f = rand_nonempty(full, rng);
      PointSet b = paraboloid_split(e).second;
      if (b.empty()) continue;  // identity is about the base part
      auto lhs = as_set(dot_product_set(b, f));
      auto rhs = as_set(dot_product_set(project_set(b), project_set(f)));
      if (lhs != rhs) {
        std::ostringstream ss;
        ss << "mismatch at q=" << q << " trial=" << t << " |lhs|=" << lhs.size()
           << " |rhs|=" << rhs.size();
        detail = ss.str();
        return false;
      }
    }
  }
  return true;
}

// --- 7: sphere pairs turn distances into dot products -----------------------

bool c7_sphere_distance(std::string& detail) {
  for (int64_t q : kPrimes) {
    const int d = 3;
    std::vector<PointSet> spheres;
    for (int64_t j = 0; j < q; ++j)
      spheres.push_back(construct_variety(sphere_variety(d, j, q), q, d));
    for (int64_t i = 1; i < q; ++i) {
      for (int64_t j = 1; j < q; ++j) {
        SplitMix64 rng(derive_seed(0xAC08, uint64_t(q) * 10000, uint64_t(i * q + j)));
        PointSet e = rand_nonempty(spheres[size_t(i)], rng);
        PointSet f = rand_nonempty(spheres[size_t(j)], rng);
        auto dist = as_set(distance_set(e, f));
        auto pi = as_set(dot_product_set(e, f));
        std::set<int64_t> mapped;
        for (int64_t tval : pi) mapped.insert(((i + j - 2 * tval) % q + q) % q);
        if (dist.size() != pi.size() || dist != mapped) {
          std::ostringstream ss;
          ss << "mismatch at q=" << q << " i=" << i << " j=" << j;
          detail = ss.str();
          return false;
        }
      }
    }
  }
  return true;
}

// --- 8: one-point-per-line extraction contract ------------------------------

bool c8_e0_contract(std::string& detail) {
  for (int64_t q : kPrimes) {
    for (int d : kDims) {
      const PointSet full = PointSet::full(q, d);
      for (uint64_t t = 0; t < 100; ++t) {
        SplitMix64 rng(derive_seed(0xAC09, uint64_t(q) * 100 + uint64_t(d), t));
        PointSet e = rand_nonempty(full, rng);
        PointSet f = rand_nonempty(full, rng);
        if (e.size() - (e.contains(int64_t(0)) ? 1 : 0) == 0) continue;  // nothing off the origin
        PointSet e0 = extract_E0(e);
        LineTable before = line_table(e);
        LineTable after = line_table(e0);
        bool ok = e0.size() == before.lines_hit && after.max_count == 1 && e0.is_subset_of(e) &&
                  extract_E0(e) == e0;
        if (ok) {
          auto sup = as_set(dot_product_set(e, f));
          for (int64_t v : dot_product_set(e0, f)) ok = ok && sup.count(v) == 1;
        }
        if (!ok) {
          std::ostringstream ss;
          ss << "contract broken at q=" << q << " d=" << d << " trial=" << t;
          detail = ss.str();
          return false;
        }
      }
    }
  }
  // Worker count must not change harness results.
  VerifyOptions one;
  one.qmax = 7;
  one.dmax = 2;
  one.trials = 50;
  one.seed = 99;
  one.threads = 1;
  VerifyOptions four = one;
  four.threads = 4;
  SuiteResult a = run_suite("e0", one);
  SuiteResult b = run_suite("e0", four);
  if (!a.passed() || !b.passed() || a.checks != b.checks || a.skipped != b.skipped ||
      a.failures != b.failures || a.notes != b.notes) {
    detail = "e0 suite differs across worker counts";
    return false;
  }
  return true;
}

// --- 9: worked fixtures, oracle first ----------------------------------------

bool c9_fixtures(std::string& detail) {
  // Build the unit sphere in F_3^2 from scratch and pin its statistics.
  PointSet s1(3, 2);
  for (int64_t r = 0; r < 9; ++r) {
    auto v = oracle::ounrank(r, 3, 2);
    if (oracle::omod(int64_t(v[0]) * v[0] + int64_t(v[1]) * v[1], 3) == 1) s1.insert(r);
  }
  if (s1.size() != 4) {
    detail = "sphere fixture size";
    return false;
  }
  auto nu_ref = oracle::brute_nu(s1, s1);
  if (nu_ref != std::vector<int64_t>{8, 4, 4}) {
    detail = "oracle nu disagrees with (8,4,4)";
    return false;
  }
  int64_t m2 = 0;
  for (int64_t c : nu_ref) m2 += c * c;
  if (m2 != 96 || oracle::brute_pi(s1, s1) != std::set<int64_t>{0, 1, 2}) {
    detail = "oracle second moment / product set";
    return false;
  }
  // Library agrees with the oracle and with the pinned exact ratio 256/96.
  NuHistogram nu = nu_histogram(s1, s1);
  BoundReport bb = bounds(s1, s1);
  if (nu.counts != nu_ref || nu.second_moment != u128(96) || bb.cs_num != u128(256) ||
      bb.cs_den != u128(96)) {
    detail = "library disagrees on the sphere fixture";
    return false;
  }
  if (construct_variety(sphere_variety(2, 1, 3), 3, 2) != s1) {
    detail = "variety constructor disagrees with the scratch sphere";
    return false;
  }

  // Singleton pair: oracle energy 2/81, closed-loop bound exactly 1.
  PointSet e(3, 2), f(3, 2);
  e.insert(Vec({1, 0}));
  f.insert(Vec({0, 1}));
  double ref_energy = oracle::brute_energy(e, f);
  if (std::abs(ref_energy - 2.0 / 81.0) > 1e-12) {
    detail = "oracle energy differs from 2/81";
    return false;
  }
  double lib_energy = energy_B(e, f);
  BoundReport sb = bounds(e, f);
  if (std::abs(lib_energy - ref_energy) > 1e-12 || !sb.valid_fourier ||
      std::abs(sb.fourier_bound - 1.0) > 1e-9) {
    detail = "library energy / bound on the singleton pair";
    return false;
  }

  // End-to-end report carries the same numbers.
  AnalysisReport r = analyze_pair(s1, s1, "sphere", "sphere", 0);
  if (r.pi_size != 3 || r.dist_size != 3 || r.nu_second_moment != u128(96) ||
      std::abs(r.energy_b - 8.0 / 81.0) > 1e-12 || std::abs(r.fourier_bound - 8.0 / 3.0) > 1e-9) {
    detail = "analysis report fixture drifted";
    return false;
  }
  return true;
}

}  // namespace

int main() {
  Gate gate;
  struct Criterion {
    int idx;
    const char* label;
    bool (*fn)(std::string&);
  };
  const Criterion criteria[] = {
      {1, "plancherel + naive transform agreement", c1_plancherel},
      {2, "cauchy-schwarz bound exactness", c2_cs_bound},
      {3, "second-moment inequality", c3_second_moment},
      {4, "exhaustive line bounds", c4_line_bounds},
      {5, "closed-form bound consequences", c5_closed_forms},
      {6, "projection identity", c6_projection},
      {7, "sphere distance identity", c7_sphere_distance},
      {8, "one-point-per-line contract", c8_e0_contract},
      {9, "worked fixtures against the oracle", c9_fixtures},
  };
  for (const auto& c : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.fn(detail);
    } catch (const std::exception& ex) {
      detail = std::string("exception: ") + ex.what();
    }
    gate.report(c.idx, c.label, ok, detail);
  }
  if (gate.failed == 0) {
    std::cout << "acceptance: 9/9 PASS\n";
    return 0;
  }
  std::cout << "acceptance: " << (9 - gate.failed) << "/9 PASS, " << gate.failed << " FAIL\n";
  return 1;
}
