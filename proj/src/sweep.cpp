#include "ffdot/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ffdot/parallel.hpp"
#include "ffdot/products.hpp"
#include "ffdot/report.hpp"
#include "ffdot/rng.hpp"
#include "ffdot/spectral.hpp"

namespace ffdot {

namespace {

constexpr int64_t kSpaceCap = 2'000'000;

void validate_grid(const std::vector<int64_t>& qs, const std::vector<int>& ds, int64_t trials,
                   const std::vector<double>& ks) {
  if (qs.empty() || ds.empty() || ks.empty()) {
    throw std::invalid_argument("sweep: q, d and k lists must be nonempty");
  }
  for (int64_t q : qs) {
    if (!is_odd_prime(q)) throw std::invalid_argument("sweep: q must be an odd prime");
  }
  for (int d : ds) {
    if (d < 2) throw std::invalid_argument("sweep: d must be >= 2");
  }
  for (double k : ks) {
    if (!(k > 0)) throw std::invalid_argument("sweep: density k must be positive");
  }
  if (trials < 1) throw std::invalid_argument("sweep: trials must be >= 1");
}

void require_cap(int64_t q, int d) {
  if (checked_pow(q, d) > kSpaceCap) {
    throw std::invalid_argument("sweep: q^d exceeds the 2e6 space cap");
  }
}

SampleSpec to_sample_spec(const FamilySpec& fs, int64_t q, int d) {
  SampleSpec s;
  s.family = fs.family;
  s.q = q;
  s.d = d;
  s.j = fs.j;
  if (fs.family == Family::Variety || fs.family == Family::VarietyTranslate) {
    if (fs.variety_text.empty()) {
      throw std::invalid_argument("sweep: variety family needs a variety spec");
    }
    s.variety = parse_variety(fs.variety_text, q, d);
  }
  if (fs.family == Family::VarietyTranslate) {
    if (fs.translate_text.empty()) {
      throw std::invalid_argument("sweep: variety-translate needs a translate vector");
    }
    s.shift = parse_vec(fs.translate_text, q, d);
  }
  for (const auto& t : fs.line_texts) s.lines.push_back(parse_vec(t, q, d));
  return s;
}

int64_t clamp_size(double want, int64_t cap) {
  const int64_t w = int64_t(std::ceil(want));
  return std::max<int64_t>(1, std::min(w, cap));
}

// Split the density target |E||F| ~ T between the two ambients; a clipped
// side pushes its deficit onto the other.
std::pair<int64_t, int64_t> pair_sizes(double T, int64_t ambE, int64_t ambF, bool e_sat,
                                       bool f_sat) {
  if (ambE <= 0 || ambF <= 0) throw std::invalid_argument("sweep: empty ambient family");
  if (e_sat && f_sat) return {ambE, ambF};
  if (e_sat) return {ambE, clamp_size(T / double(ambE), ambF)};
  if (f_sat) return {clamp_size(T / double(ambF), ambE), ambF};
  int64_t mE = clamp_size(std::sqrt(T), ambE);
  const int64_t mF = clamp_size(T / double(mE), ambF);
  mE = std::max(mE, clamp_size(T / double(mF), ambE));
  return {mE, mF};
}

struct TrialStats {
  double pi_over_q = 0.0;
  double fourier_over_q = 0.0;
  bool valid_fourier = false;
  double proj_ratio = 0.0;
  double pinned_fraction = 0.0;
};

std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

void run_sweep(const SweepConfig& cfg, std::ostream& os) {
  validate_grid(cfg.qs, cfg.ds, cfg.trials, cfg.ks);
  // Reject bad cell configurations before any output is produced.
  for (int64_t q : cfg.qs) {
    for (int d : cfg.ds) {
      require_cap(q, d);
      to_sample_spec(cfg.e_spec, q, d);
      to_sample_spec(cfg.f_spec, q, d);
    }
  }
  os << "q,d,e_family,f_family,k,e_size,f_size,trials,seed,min_pi_over_q,mean_pi_over_q,"
        "min_fourier_over_q,n_valid_fourier,min_proj_ratio_f,mean_proj_ratio_f,"
        "min_pinned_fraction,mean_pinned_fraction\n";
  for (int64_t q : cfg.qs) {
    for (int d : cfg.ds) {
      require_cap(q, d);
      const SampleSpec espec = to_sample_spec(cfg.e_spec, q, d);
      const SampleSpec fspec = to_sample_spec(cfg.f_spec, q, d);
      const PointSet ambE = ambient_set(espec);
      const PointSet ambF = ambient_set(fspec);
      const int64_t n = checked_pow(q, d);
      for (size_t ki = 0; ki < cfg.ks.size(); ++ki) {
        const double k = cfg.ks[ki];
        const auto [mE, mF] =
            pair_sizes(k * double(n), ambE.size(), ambF.size(),
                       cfg.e_spec.family == Family::FullSpace,
                       cfg.f_spec.family == Family::FullSpace);
        const uint64_t stream =
            (uint64_t(0xA1) << 56) ^ (uint64_t(q) << 24) ^ (uint64_t(d) << 16) ^ uint64_t(ki);

        std::vector<TrialStats> stats(size_t(cfg.trials));
        parallel_for_index(cfg.trials, cfg.threads, [&, mE = mE, mF = mF](int64_t t) {
          SplitMix64 rng(derive_seed(cfg.seed, stream, uint64_t(t)));
          const PointSet E = sample_subset(ambE, mE, rng.next());
          const PointSet F = sample_subset(ambF, mF, rng.next());
          TrialStats& st = stats[size_t(t)];
          const NuHistogram nu = nu_histogram(E, F);
          st.pi_over_q = double(nu.support()) / double(q);
          const BoundReport b = bounds(E, F, nu, energy_B(E, F));
          st.valid_fourier = b.valid_fourier;
          if (b.valid_fourier) st.fourier_over_q = b.fourier_bound / double(q);
          st.proj_ratio = double(project_set(F).size()) / double(F.size());
          if (cfg.pinned) {
            int64_t good = 0;
            E.for_each_rank([&](int64_t r) {
              const auto pinned = pinned_product_set(unrank(r, q, d), E);
              if (2 * int64_t(pinned.size()) > q) ++good;
            });
            st.pinned_fraction = double(good) / double(E.size());
          }
        });

        double min_pi = stats[0].pi_over_q, sum_pi = 0.0;
        double min_fb = 0.0;
        int64_t n_valid = 0;
        double min_proj = stats[0].proj_ratio, sum_proj = 0.0;
        double min_pin = cfg.pinned ? stats[0].pinned_fraction : 0.0, sum_pin = 0.0;
        for (const TrialStats& st : stats) {
          min_pi = std::min(min_pi, st.pi_over_q);
          sum_pi += st.pi_over_q;
          if (st.valid_fourier) {
            min_fb = (n_valid == 0) ? st.fourier_over_q : std::min(min_fb, st.fourier_over_q);
            ++n_valid;
          }
          min_proj = std::min(min_proj, st.proj_ratio);
          sum_proj += st.proj_ratio;
          if (cfg.pinned) {
            min_pin = std::min(min_pin, st.pinned_fraction);
            sum_pin += st.pinned_fraction;
          }
        }
        const double nt = double(cfg.trials);
        os << q << ',' << d << ',' << family_name(cfg.e_spec.family) << ','
           << family_name(cfg.f_spec.family) << ',' << format_double(k) << ',' << mE << ','
           << mF << ',' << cfg.trials << ',' << cfg.seed << ',' << format_double(min_pi) << ','
           << format_double(sum_pi / nt) << ',';
        if (n_valid > 0) os << format_double(min_fb);
        os << ',' << n_valid << ',' << format_double(min_proj) << ','
           << format_double(sum_proj / nt) << ',';
        if (cfg.pinned) {
          os << format_double(min_pin) << ',' << format_double(sum_pin / nt);
        } else {
          os << ',';
        }
        os << '\n';
      }
    }
  }
}

void run_probe(const ProbeConfig& cfg, std::ostream& os) {
  validate_grid(cfg.qs, cfg.ds, cfg.trials, cfg.ks);
  if (cfg.variety_text.empty()) throw std::invalid_argument("probe: a variety spec is required");

  // The conjecture's hypothesis excludes varieties through the origin; refuse
  // the whole run before emitting anything.
  for (int64_t q : cfg.qs) {
    for (int d : cfg.ds) {
      require_cap(q, d);
      PointSet V = construct_variety(parse_variety(cfg.variety_text, q, d), q, d);
      if (!cfg.translate_text.empty()) V = translate(V, parse_vec(cfg.translate_text, q, d));
      if (V.contains(int64_t{0})) {
        std::ostringstream msg;
        msg << "probe: variety contains the origin at q=" << q << " d=" << d;
        throw std::invalid_argument(msg.str());
      }
      if (V.empty()) {
        std::ostringstream msg;
        msg << "probe: variety is empty at q=" << q << " d=" << d;
        throw std::invalid_argument(msg.str());
      }
    }
  }

  os << "q,d,variety,translate,k,e_size,f_size,trials,seed,v_size,v_max_line_count,"
        "min_pi_over_q,mean_pi_over_q\n";
  for (int64_t q : cfg.qs) {
    for (int d : cfg.ds) {
      const Variety vpar = parse_variety(cfg.variety_text, q, d);
      PointSet V = construct_variety(vpar, q, d);
      std::string translate_col;
      if (!cfg.translate_text.empty()) {
        const Vec a = parse_vec(cfg.translate_text, q, d);
        V = translate(V, a);
        std::ostringstream ts;
        for (int i = 0; i < d; ++i) ts << (i ? "," : "") << a.c[i];
        translate_col = csv_quote(ts.str());
      }
      const int64_t n = checked_pow(q, d);
      const int64_t vmax = line_table(V).max_count;
      for (size_t ki = 0; ki < cfg.ks.size(); ++ki) {
        const double k = cfg.ks[ki];
        const auto [mE, mF] = pair_sizes(k * double(n), V.size(), n, false, false);
        const uint64_t stream =
            (uint64_t(0xA2) << 56) ^ (uint64_t(q) << 24) ^ (uint64_t(d) << 16) ^ uint64_t(ki);

        std::vector<double> pi_over_q(size_t(cfg.trials), 0.0);
        const PointSet full = PointSet::full(q, d);
        parallel_for_index(cfg.trials, cfg.threads, [&, mE = mE, mF = mF](int64_t t) {
          SplitMix64 rng(derive_seed(cfg.seed, stream, uint64_t(t)));
          const PointSet E = sample_subset(V, mE, rng.next());
          const PointSet F = sample_subset(full, mF, rng.next());
          pi_over_q[size_t(t)] = double(int64_t(dot_product_set(E, F).size())) / double(q);
        });

        double min_pi = pi_over_q[0], sum_pi = 0.0;
        for (double v : pi_over_q) {
          min_pi = std::min(min_pi, v);
          sum_pi += v;
        }
        os << q << ',' << d << ',' << csv_quote(variety_to_string(vpar)) << ',' << translate_col
           << ',' << format_double(k) << ',' << mE << ',' << mF << ',' << cfg.trials << ','
           << cfg.seed << ',' << V.size() << ',' << vmax << ',' << format_double(min_pi) << ','
           << format_double(sum_pi / double(cfg.trials)) << '\n';
      }
    }
  }
}

}  // namespace ffdot
