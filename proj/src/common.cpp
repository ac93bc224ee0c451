#include "ffdot/common.hpp"

#include <algorithm>
#include <cstdio>

namespace ffdot {

bool is_odd_prime(int64_t q) {
  if (q < 3 || q % 2 == 0) return false;
  for (int64_t i = 3; i * i <= q; i += 2) {
    if (q % i == 0) return false;
  }
  return true;
}

int64_t checked_pow(int64_t q, int d) {
  if (q < 2 || d < 0) throw std::invalid_argument("checked_pow: base >= 2, exponent >= 0");
  constexpr int64_t kCap = int64_t{1} << 62;
  int64_t r = 1;
  for (int i = 0; i < d; ++i) {
    if (r > kCap / q) throw std::overflow_error("checked_pow: q^d overflows");
    r *= q;
  }
  return r;
}

std::string to_string_u128(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s += char('0' + int(v % 10));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

std::string hex_seed(uint64_t s) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "0x%016llx", (unsigned long long)s);
  return buf;
}

}  // namespace ffdot
