#include "ffdot/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ffdot/products.hpp"
#include "ffdot/spectral.hpp"

namespace ffdot {

namespace {

void check(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("analyze_pair: invariant violated: " + what);
}

void check_spectrum(const Spectrum& S, const PointSet& E, const char* which) {
  const double dc = double(E.size()) / double(E.space_size());
  check(std::abs(S.values[0].imag()) <= 1e-12 && std::abs(S.values[0].real() - dc) <= 1e-12,
        std::string(which) + " DC coefficient");
  check(plancherel_defect(S, E.size()) <= 1e-9 * std::max(1.0, dc),
        std::string(which) + " Plancherel mass");
}

}  // namespace

AnalysisReport analyze_pair(const PointSet& E, const PointSet& F, const std::string& e_family,
                            const std::string& f_family, uint64_t seed) {
  if (E.q() != F.q() || E.dim() != F.dim()) {
    throw std::invalid_argument("analyze_pair: sets live in different spaces");
  }
  if (E.empty() || F.empty()) throw std::invalid_argument("analyze_pair: empty set");

  AnalysisReport r;
  r.q = E.q();
  r.d = E.dim();
  r.e_size = E.size();
  r.f_size = F.size();
  r.seed = seed;
  r.e_family = e_family;
  r.f_family = f_family;

  const NuHistogram nu = nu_histogram(E, F);
  {
    int64_t total = 0;
    for (int64_t c : nu.counts) total += c;
    check(total == r.e_size * r.f_size, "sum nu = |E||F|");
  }
  r.pi_size = nu.support();
  r.nu_second_moment = nu.second_moment;
  r.dist_size = int64_t(distance_set(E, F).size());

  const Spectrum ehat = dft(E);
  const Spectrum fhat = dft(F);
  check_spectrum(ehat, E, "E");
  check_spectrum(fhat, F, "F");
  r.salem_e = salem_constant(ehat, E.size());
  r.salem_f = salem_constant(fhat, F.size());

  const LineTable lt = line_table(E);
  r.max_count_e = lt.max_count;
  r.lines_hit_e = lt.lines_hit;
  {
    int64_t covered = 0;
    for (const auto& [rep, c] : lt.counts) covered += c;
    check(covered == r.e_size - (E.contains(int64_t{0}) ? 1 : 0),
          "line counts cover E off the origin");
  }

  r.energy_b = energy_B(lt, fhat);
  check(r.energy_b <=
            double(r.max_count_e) * double(r.f_size) / double(E.space_size()) + 1e-9,
        "B(E,F) <= max_count |F| / q^d");

  const BoundReport b = bounds(E, F, nu, r.energy_b);
  r.cs_num = b.cs_num;
  r.cs_den = b.cs_den;
  r.cs_bound = b.cs_value();
  r.fourier_bound = b.fourier_bound;
  r.valid_fourier = b.valid_fourier;
  check(b.cs_leq(r.pi_size), "cs_bound <= |Pi|");
  if (r.valid_fourier) {
    check(r.fourier_bound <= r.cs_bound + 1e-6, "fourier_bound <= cs_bound");
    check(r.fourier_bound <= double(r.pi_size) + 1e-6, "fourier_bound <= |Pi|");
    const double ef = double(r.e_size) * double(r.f_size);
    const double rhs = ef * ef / double(r.q) +
                       double(checked_pow(r.q, 2 * r.d - 1)) * double(r.e_size) * r.energy_b;
    check(double(r.nu_second_moment) <= rhs + 1e-6, "second moment inequality");
  }

  if (r.e_size - (E.contains(int64_t{0}) ? 1 : 0) > 0) {
    const PointSet e0 = extract_E0(E);
    r.e0_size = e0.size();
    check(r.e0_size == r.lines_hit_e, "|E0| = lines_hit");
    check(e0.is_subset_of(E), "E0 ⊆ E");
    check(line_table(e0).max_count <= 1, "max_count(E0) = 1");
    const NuHistogram nu0 = nu_histogram(e0, F);
    r.pi_e0_size = nu0.support();
    for (int64_t t = 0; t < r.q; ++t) {
      check(nu0.counts[size_t(t)] == 0 || nu.counts[size_t(t)] > 0, "Pi(E0,F) ⊆ Pi(E,F)");
    }
  }

  return r;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_json(const AnalysisReport& r, std::ostream& os) {
  nlohmann::ordered_json j;
  j["q"] = r.q;
  j["d"] = r.d;
  j["e_size"] = r.e_size;
  j["f_size"] = r.f_size;
  j["pi_size"] = r.pi_size;
  j["dist_size"] = r.dist_size;
  j["nu_second_moment"] = to_string_u128(r.nu_second_moment);
  j["cs_bound"] = r.cs_bound;
  j["cs_num"] = to_string_u128(r.cs_num);
  j["cs_den"] = to_string_u128(r.cs_den);
  if (r.valid_fourier) {
    j["fourier_bound"] = r.fourier_bound;
  } else {
    j["fourier_bound"] = nullptr;
  }
  j["energy_b"] = r.energy_b;
  j["max_count_e"] = r.max_count_e;
  j["lines_hit_e"] = r.lines_hit_e;
  j["e0_size"] = r.e0_size;
  j["pi_e0_size"] = r.pi_e0_size;
  j["salem_e"] = r.salem_e;
  j["salem_f"] = r.salem_f;
  j["seed"] = r.seed;
  j["e_family"] = r.e_family;
  j["f_family"] = r.f_family;
  os << j.dump(2) << "\n";
}

std::string report_csv_header() {
  return "q,d,e_size,f_size,pi_size,dist_size,nu_second_moment,cs_bound,fourier_bound,"
         "energy_b,max_count_e,lines_hit_e,e0_size,pi_e0_size,salem_e,salem_f,seed,"
         "e_family,f_family";
}

std::string report_csv_row(const AnalysisReport& r) {
  std::ostringstream os;
  os << r.q << ',' << r.d << ',' << r.e_size << ',' << r.f_size << ',' << r.pi_size << ','
     << r.dist_size << ',' << to_string_u128(r.nu_second_moment) << ','
     << format_double(r.cs_bound) << ',';
  if (r.valid_fourier) os << format_double(r.fourier_bound);
  os << ',' << format_double(r.energy_b) << ',' << r.max_count_e << ',' << r.lines_hit_e << ','
     << r.e0_size << ',' << r.pi_e0_size << ',' << format_double(r.salem_e) << ','
     << format_double(r.salem_f) << ',' << r.seed << ',' << r.e_family << ',' << r.f_family;
  return os.str();
}

}  // namespace ffdot
