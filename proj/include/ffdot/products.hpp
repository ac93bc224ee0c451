#pragma once

#include <vector>

#include "ffdot/pointset.hpp"

namespace ffdot {

// Sorted distinct values of x.y over E x F.  Both sets must be nonempty.
std::vector<int64_t> dot_product_set(const PointSet& E, const PointSet& F);

// Sorted distinct values of x.y for a fixed pin x.
std::vector<int64_t> pinned_product_set(const Vec& x, const PointSet& E);

// Sorted distinct values of ||x-y|| over E x F.
std::vector<int64_t> distance_set(const PointSet& E, const PointSet& F);

// nu(t) = #{(x,y) in E x F : x.y = t}.  sum_t nu(t) = |E||F|.
struct NuHistogram {
  int64_t q = 0;
  std::vector<int64_t> counts;  // counts[t], t in [0,q)
  u128 second_moment = 0;       // sum_t nu(t)^2

  int64_t support() const;  // #{t : nu(t) > 0} = |Pi(E,F)|
};

NuHistogram nu_histogram(const PointSet& E, const PointSet& F);

// Two lower bounds for |Pi(E,F)|.
//
// cs_num/cs_den is |E|^2|F|^2 / sum nu^2, kept exact; compare it with
// cs_leq, never through the double value.
//
// fourier_bound = |E|^2|F|^2 / (|E|^2|F|^2/q + q^(2d-1)|E| B(E,F)) and is a
// valid lower bound only when 0 is not in E (valid_fourier).
struct BoundReport {
  u128 cs_num = 0;
  u128 cs_den = 1;
  double fourier_bound = 0.0;
  bool valid_fourier = false;
  double energy = 0.0;  // B(E,F)

  double cs_value() const;
  bool cs_leq(int64_t k) const;  // cs_num <= k * cs_den, cross-multiplied
};

BoundReport bounds(const PointSet& E, const PointSet& F, const NuHistogram& nu, double energy);
BoundReport bounds(const PointSet& E, const PointSet& F);

// One point per punctured line E hits, smallest rank on each line.
// |E0| = lines_hit(E), every line count of E0 is 1, Pi(E0,F) ⊆ Pi(E,F).
PointSet extract_E0(const PointSet& E);

}  // namespace ffdot
