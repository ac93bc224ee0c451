#pragma once

#include <complex>
#include <map>
#include <vector>

#include "ffdot/pointset.hpp"

namespace ffdot {

// Compensated accumulator; keeps Plancherel/energy sums stable across q^d terms.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

// Fourier coefficients of an indicator, indexed by rank of the frequency m:
//   values[rank(m)] = q^-d * sum_{x in E} psi(-x.m)
struct Spectrum {
  int64_t q = 0;
  int d = 0;
  std::vector<std::complex<double>> values;

  int64_t space_size() const { return int64_t(values.size()); }
  const std::complex<double>& at(int64_t rank) const { return values[size_t(rank)]; }
};

// Separable axis-wise transform, O(d * q^(d+1)).
Spectrum dft(const PointSet& E);

// | sum_m |Ehat(m)|^2 - size/q^d |; zero in exact arithmetic.
double plancherel_defect(const Spectrum& S, int64_t set_size);

// max_{m != 0} |Fhat(m)| * q^d / sqrt(|F|).  Throws on an empty set.
double salem_constant(const Spectrum& S, int64_t set_size);
double salem_constant(const PointSet& F);

// Incidence profile of a set against the punctured lines l_x = {s x : s != 0}.
// counts is keyed by the rank of the canonical line representative.
struct LineTable {
  std::map<int64_t, int64_t> counts;
  int64_t max_count = 0;
  int64_t lines_hit = 0;
};

LineTable line_table(const PointSet& E);

// B(E,F) = sum_{x != 0} |E ∩ l_x| |Fhat(x)|^2, grouped over the lines E hits.
double energy_B(const LineTable& lt, const Spectrum& fhat);
double energy_B(const PointSet& E, const PointSet& F);

}  // namespace ffdot
