#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffdot/field.hpp"

namespace ffdot {

// Point of F_q^d. coords[0] is the least significant digit of the rank
// encoding rank(v) = sum_i coords[i] * q^i.
struct Vec {
  std::vector<int32_t> c;

  Vec() = default;
  explicit Vec(std::vector<int32_t> coords) : c(std::move(coords)) {}

  int dim() const { return int(c.size()); }
  bool is_zero() const;
  bool operator==(const Vec&) const = default;
};

std::string to_string(const Vec& v);

int64_t rank_of(const Vec& v, int64_t q);
Vec unrank(int64_t r, int64_t q, int d);

int64_t dot(const Vec& x, const Vec& y, int64_t q);
int64_t norm_of(const Vec& x, int64_t q);

Vec add(const Vec& x, const Vec& y, int64_t q);
Vec negate(const Vec& x, int64_t q);
Vec scale(const Vec& x, int64_t s, int64_t q);

// Canonical representative of the punctured line l_x = {s*x : s in F_q^*}:
// x scaled so its first nonzero coordinate is 1. Throws on the zero vector.
Vec line_rep(const Vec& x, int64_t q);

// True iff the first nonzero coordinate of x equals 1.
bool is_line_rep(const Vec& x);

// All (q^d - 1)/(q - 1) canonical representatives, ascending by rank.
std::vector<Vec> enumerate_lines(int64_t q, int d);

// Drop the last coordinate; requires d >= 2.
Vec project(const Vec& x);

// Diagonal quadratic variety V = {x : sum a_i x_i^2 + sum b_i x_i + c = 0}.
// Covers the sphere S_j, the paraboloid P, its translates, and the
// conjugate paraboloid used by the translate criterion.
struct Variety {
  std::vector<int64_t> a;
  std::vector<int64_t> b;
  int64_t c = 0;

  int dim() const { return int(a.size()); }
};

bool variety_contains(const Variety& V, const Vec& x, int64_t q);

// S_j: x_1^2 + ... + x_d^2 = j.
Variety sphere_variety(int d, int64_t j, int64_t q);
// P: x_1^2 + ... + x_{d-1}^2 = x_d. Requires d >= 2.
Variety paraboloid_variety(int d, int64_t q);
// P-bar: x_1^2 + ... + x_{d-1}^2 = -x_d. Requires d >= 2.
Variety conj_paraboloid_variety(int d, int64_t q);

// Textual form "a1,...,ad;b1,...,bd;c" with integers reduced mod q.
Variety parse_variety(const std::string& text, int64_t q, int d);
std::string variety_to_string(const Variety& V);

// Comma-separated coordinates, reduced mod q; must supply exactly d of them.
Vec parse_vec(const std::string& text, int64_t q, int d);

}  // namespace ffdot
