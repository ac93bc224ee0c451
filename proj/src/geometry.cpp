#include "ffdot/geometry.hpp"

#include <sstream>

namespace ffdot {

namespace {

void require_same_shape(const Vec& x, const Vec& y) {
  if (x.dim() != y.dim()) throw std::invalid_argument("vector dimension mismatch");
}

int64_t reduce_mod(int64_t v, int64_t q) {
  int64_t r = v % q;
  return r < 0 ? r + q : r;
}

}  // namespace

bool Vec::is_zero() const {
  for (int32_t v : c) {
    if (v != 0) return false;
  }
  return true;
}

std::string to_string(const Vec& v) {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < v.dim(); ++i) {
    if (i) os << ',';
    os << v.c[i];
  }
  os << ')';
  return os.str();
}

int64_t rank_of(const Vec& v, int64_t q) {
  int64_t r = 0;
  for (int i = v.dim() - 1; i >= 0; --i) r = r * q + v.c[i];
  return r;
}

Vec unrank(int64_t r, int64_t q, int d) {
  int64_t n = checked_pow(q, d);
  if (r < 0 || r >= n) throw std::out_of_range("unrank: rank outside [0, q^d)");
  Vec v;
  v.c.resize(d);
  for (int i = 0; i < d; ++i) {
    v.c[i] = int32_t(r % q);
    r /= q;
  }
  return v;
}

int64_t dot(const Vec& x, const Vec& y, int64_t q) {
  require_same_shape(x, y);
  int64_t acc = 0;
  for (int i = 0; i < x.dim(); ++i) acc += int64_t(x.c[i]) * y.c[i];
  return reduce_mod(acc, q);
}

int64_t norm_of(const Vec& x, int64_t q) {
  int64_t acc = 0;
  for (int32_t v : x.c) acc += int64_t(v) * v;
  return reduce_mod(acc, q);
}

Vec add(const Vec& x, const Vec& y, int64_t q) {
  require_same_shape(x, y);
  Vec out;
  out.c.resize(x.dim());
  for (int i = 0; i < x.dim(); ++i) out.c[i] = int32_t(reduce_mod(int64_t(x.c[i]) + y.c[i], q));
  return out;
}

Vec negate(const Vec& x, int64_t q) {
  Vec out;
  out.c.resize(x.dim());
  for (int i = 0; i < x.dim(); ++i) out.c[i] = int32_t(reduce_mod(-int64_t(x.c[i]), q));
  return out;
}

Vec scale(const Vec& x, int64_t s, int64_t q) {
  Vec out;
  out.c.resize(x.dim());
  s = reduce_mod(s, q);
  for (int i = 0; i < x.dim(); ++i) out.c[i] = int32_t((int64_t(x.c[i]) * s) % q);
  return out;
}

Vec line_rep(const Vec& x, int64_t q) {
  for (int i = 0; i < x.dim(); ++i) {
    if (x.c[i] != 0) return scale(x, mod_inverse(x.c[i], q), q);
  }
  throw std::invalid_argument("line_rep: zero vector spans no line");
}

bool is_line_rep(const Vec& x) {
  for (int32_t v : x.c) {
    if (v != 0) return v == 1;
  }
  return false;
}

std::vector<Vec> enumerate_lines(int64_t q, int d) {
  if (d < 1) throw std::invalid_argument("enumerate_lines: d must be >= 1");
  int64_t n = checked_pow(q, d);
  std::vector<Vec> reps;
  reps.reserve(size_t((n - 1) / (q - 1)));
  for (int64_t r = 1; r < n; ++r) {
    Vec v = unrank(r, q, d);
    if (is_line_rep(v)) reps.push_back(std::move(v));
  }
  return reps;
}

Vec project(const Vec& x) {
  if (x.dim() < 2) throw std::invalid_argument("project: needs dimension >= 2");
  Vec out;
  out.c.assign(x.c.begin(), x.c.end() - 1);
  return out;
}

bool variety_contains(const Variety& V, const Vec& x, int64_t q) {
  if (V.dim() != x.dim()) throw std::invalid_argument("variety_contains: dimension mismatch");
  int64_t acc = V.c % q;
  for (int i = 0; i < x.dim(); ++i) {
    int64_t xi = x.c[i];
    acc += (V.a[i] % q) * ((xi * xi) % q) + (V.b[i] % q) * xi;
    acc %= q;
  }
  return reduce_mod(acc, q) == 0;
}

Variety sphere_variety(int d, int64_t j, int64_t q) {
  Variety V;
  V.a.assign(d, 1);
  V.b.assign(d, 0);
  V.c = reduce_mod(-j, q);
  return V;
}

Variety paraboloid_variety(int d, int64_t q) {
  if (d < 2) throw std::invalid_argument("paraboloid_variety: needs d >= 2");
  Variety V;
  V.a.assign(d, 1);
  V.a[d - 1] = 0;
  V.b.assign(d, 0);
  V.b[d - 1] = reduce_mod(-1, q);
  V.c = 0;
  return V;
}

Variety conj_paraboloid_variety(int d, [[maybe_unused]] int64_t q) {
  if (d < 2) throw std::invalid_argument("conj_paraboloid_variety: needs d >= 2");
  Variety V;
  V.a.assign(d, 1);
  V.a[d - 1] = 0;
  V.b.assign(d, 0);
  V.b[d - 1] = 1;
  V.c = 0;
  return V;
}

namespace {

std::vector<int64_t> parse_int_list(const std::string& part) {
  std::vector<int64_t> out;
  std::istringstream is(part);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    int64_t v = 0;
    try {
      size_t used = 0;
      v = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("coefficient list: bad integer '" + tok + "'");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

Variety parse_variety(const std::string& text, int64_t q, int d) {
  std::vector<std::string> parts;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ';')) parts.push_back(tok);
  if (parts.size() != 3) {
    throw std::invalid_argument("variety spec: expected 'a1,..,ad;b1,..,bd;c'");
  }
  Variety V;
  V.a = parse_int_list(parts[0]);
  V.b = parse_int_list(parts[1]);
  std::vector<int64_t> cs = parse_int_list(parts[2]);
  if (int(V.a.size()) != d || int(V.b.size()) != d || cs.size() != 1) {
    throw std::invalid_argument("variety spec: coefficient counts must be d, d, 1");
  }
  for (auto& v : V.a) v = reduce_mod(v, q);
  for (auto& v : V.b) v = reduce_mod(v, q);
  V.c = reduce_mod(cs[0], q);
  return V;
}

Vec parse_vec(const std::string& text, int64_t q, int d) {
  const std::vector<int64_t> vals = parse_int_list(text);
  if (int(vals.size()) != d) {
    throw std::invalid_argument("vector spec: expected " + std::to_string(d) + " coordinates");
  }
  Vec v;
  v.c.reserve(size_t(d));
  for (int64_t x : vals) v.c.push_back(int32_t(reduce_mod(x, q)));
  return v;
}

std::string variety_to_string(const Variety& V) {
  std::ostringstream os;
  for (int i = 0; i < V.dim(); ++i) os << (i ? "," : "") << V.a[i];
  os << ';';
  for (int i = 0; i < V.dim(); ++i) os << (i ? "," : "") << V.b[i];
  os << ';' << V.c;
  return os.str();
}

}  // namespace ffdot
