#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ffdot/common.hpp"

namespace ffdot {

// Modular inverse in F_q by extended Euclid; throws on a == 0 (mod q).
int64_t mod_inverse(int64_t a, int64_t q);

// Arithmetic in the prime field F_q (q an odd prime) together with the
// additive character psi(u) = exp(2*pi*i*u/q), precomputed as a table of
// unit roots so inner loops never call transcendentals.
//
// Immutable after construction; safe for concurrent reads.
class Field {
 public:
  explicit Field(int64_t q);

  int64_t q() const { return q_; }

  // Reduce any int64 into [0, q).
  int64_t reduce(int64_t v) const {
    int64_t r = v % q_;
    return r < 0 ? r + q_ : r;
  }

  int64_t add(int64_t a, int64_t b) const { return reduce(a + b); }
  int64_t sub(int64_t a, int64_t b) const { return reduce(a - b); }
  int64_t mul(int64_t a, int64_t b) const { return reduce(reduce(a) * reduce(b)); }

  // Multiplicative inverse from the precomputed table; throws on 0.
  int64_t inv(int64_t a) const;

  // psi(u) = roots[u mod q].
  std::complex<double> character(int64_t u) const { return roots_[reduce(u)]; }

  // psi(-u); used by the forward transform.
  std::complex<double> character_neg(int64_t u) const {
    return roots_[(q_ - reduce(u)) % q_];
  }

 private:
  int64_t q_;
  std::vector<std::complex<double>> roots_;
  std::vector<int64_t> inv_;
};

// Spec-level constructor name; validates q odd prime >= 3.
inline Field make_field(int64_t q) { return Field(q); }

}  // namespace ffdot
