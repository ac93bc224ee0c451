#include "ffdot/field.hpp"

#include <cmath>
#include <numbers>

namespace ffdot {

int64_t mod_inverse(int64_t a, int64_t q) {
  a %= q;
  if (a < 0) a += q;
  if (a == 0) throw std::invalid_argument("mod_inverse: division by zero in F_q");
  // extended Euclid on (a, q)
  int64_t old_r = a, r = q;
  int64_t old_s = 1, s = 0;
  while (r != 0) {
    int64_t k = old_r / r;
    int64_t t = old_r - k * r;
    old_r = r;
    r = t;
    t = old_s - k * s;
    old_s = s;
    s = t;
  }
  return old_s < 0 ? old_s + q : old_s;
}

Field::Field(int64_t q) : q_(q) {
  if (q < 3) throw std::invalid_argument("Field: q must be >= 3");
  if (q % 2 == 0) throw std::invalid_argument("Field: even characteristic unsupported");
  if (!is_odd_prime(q)) throw std::invalid_argument("Field: q must be prime");

  roots_.resize(q_);
  const double step = 2.0 * std::numbers::pi / double(q_);
  for (int64_t u = 0; u < q_; ++u) {
    roots_[u] = std::polar(1.0, step * double(u));
  }
  roots_[0] = {1.0, 0.0};

  // inv[a] for a in [1, q): inv[1] = 1, inv[a] = -(q/a) * inv[q mod a].
  inv_.assign(q_, 0);
  inv_[1] = 1;
  for (int64_t a = 2; a < q_; ++a) {
    inv_[a] = reduce(-(q_ / a) * inv_[q_ % a]);
  }
}

int64_t Field::inv(int64_t a) const {
  int64_t r = reduce(a);
  if (r == 0) throw std::invalid_argument("Field::inv: division by zero");
  return inv_[r];
}

}  // namespace ffdot
