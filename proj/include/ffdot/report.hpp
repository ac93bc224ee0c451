#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "ffdot/pointset.hpp"

namespace ffdot {

// Every scalar produced for a pair (E,F).  Construction via analyze_pair
// re-checks the cross-module inequalities and throws std::logic_error if any
// fails, so a report in hand is a certificate.
struct AnalysisReport {
  int64_t q = 0;
  int d = 0;
  int64_t e_size = 0;
  int64_t f_size = 0;
  int64_t pi_size = 0;    // |Pi(E,F)|
  int64_t dist_size = 0;  // |D(E,F)|
  u128 nu_second_moment = 0;
  u128 cs_num = 0;  // cs_bound = cs_num/cs_den exactly
  u128 cs_den = 1;
  double cs_bound = 0.0;
  double fourier_bound = 0.0;  // meaningful only when valid_fourier
  bool valid_fourier = false;
  double energy_b = 0.0;
  int64_t max_count_e = 0;
  int64_t lines_hit_e = 0;
  int64_t e0_size = 0;
  int64_t pi_e0_size = 0;  // 0 when E has no point off the origin
  double salem_e = 0.0;
  double salem_f = 0.0;
  uint64_t seed = 0;
  std::string e_family;
  std::string f_family;
};

AnalysisReport analyze_pair(const PointSet& E, const PointSet& F, const std::string& e_family,
                            const std::string& f_family, uint64_t seed);

void write_json(const AnalysisReport& r, std::ostream& os);
std::string report_csv_header();
std::string report_csv_row(const AnalysisReport& r);

// %.17g — round-trips doubles through text.
std::string format_double(double v);

}  // namespace ffdot
