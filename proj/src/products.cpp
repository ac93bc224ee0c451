#include "ffdot/products.hpp"

#include <stdexcept>

#include "ffdot/spectral.hpp"

namespace ffdot {

namespace {

// Point coordinates packed row-major in ascending rank order.
std::vector<int32_t> flat_coords(const PointSet& S) {
  std::vector<int32_t> out;
  out.reserve(size_t(S.size()) * size_t(S.dim()));
  S.for_each_rank([&](int64_t r) {
    Vec v = unrank(r, S.q(), S.dim());
    out.insert(out.end(), v.c.begin(), v.c.end());
  });
  return out;
}

void require_pair(const PointSet& E, const PointSet& F, const char* who) {
  if (E.q() != F.q() || E.dim() != F.dim()) {
    throw std::invalid_argument(std::string(who) + ": sets live in different spaces");
  }
  if (E.empty() || F.empty()) {
    throw std::invalid_argument(std::string(who) + ": empty set");
  }
}

}  // namespace

int64_t NuHistogram::support() const {
  int64_t n = 0;
  for (int64_t c : counts) n += (c > 0);
  return n;
}

NuHistogram nu_histogram(const PointSet& E, const PointSet& F) {
  require_pair(E, F, "nu_histogram");
  const int64_t q = E.q();
  const int d = E.dim();
  const std::vector<int32_t> xs = flat_coords(E);
  const std::vector<int32_t> ys = flat_coords(F);

  NuHistogram h;
  h.q = q;
  h.counts.assign(size_t(q), 0);
  for (size_t i = 0; i < xs.size(); i += size_t(d)) {
    const int32_t* x = &xs[i];
    for (size_t j = 0; j < ys.size(); j += size_t(d)) {
      const int32_t* y = &ys[j];
      int64_t acc = 0;
      for (int k = 0; k < d; ++k) acc += int64_t(x[k]) * y[k];
      ++h.counts[size_t(acc % q)];
    }
  }
  for (int64_t c : h.counts) h.second_moment += u128(c) * u128(c);
  return h;
}

std::vector<int64_t> dot_product_set(const PointSet& E, const PointSet& F) {
  const NuHistogram h = nu_histogram(E, F);
  std::vector<int64_t> out;
  for (int64_t t = 0; t < h.q; ++t) {
    if (h.counts[size_t(t)] > 0) out.push_back(t);
  }
  return out;
}

std::vector<int64_t> pinned_product_set(const Vec& x, const PointSet& E) {
  if (x.dim() != E.dim()) throw std::invalid_argument("pinned_product_set: dimension mismatch");
  if (E.empty()) throw std::invalid_argument("pinned_product_set: empty set");
  const int64_t q = E.q();
  std::vector<bool> hit(size_t(q), false);
  E.for_each_rank([&](int64_t r) {
    hit[size_t(dot(x, unrank(r, q, E.dim()), q))] = true;
  });
  std::vector<int64_t> out;
  for (int64_t t = 0; t < q; ++t) {
    if (hit[size_t(t)]) out.push_back(t);
  }
  return out;
}

std::vector<int64_t> distance_set(const PointSet& E, const PointSet& F) {
  require_pair(E, F, "distance_set");
  const int64_t q = E.q();
  const int d = E.dim();
  const std::vector<int32_t> xs = flat_coords(E);
  const std::vector<int32_t> ys = flat_coords(F);
  std::vector<bool> hit(size_t(q), false);
  for (size_t i = 0; i < xs.size(); i += size_t(d)) {
    const int32_t* x = &xs[i];
    for (size_t j = 0; j < ys.size(); j += size_t(d)) {
      const int32_t* y = &ys[j];
      int64_t acc = 0;
      for (int k = 0; k < d; ++k) {
        int64_t diff = int64_t(x[k]) - y[k];
        acc += diff * diff;
      }
      hit[size_t(acc % q)] = true;
    }
  }
  std::vector<int64_t> out;
  for (int64_t t = 0; t < q; ++t) {
    if (hit[size_t(t)]) out.push_back(t);
  }
  return out;
}

double BoundReport::cs_value() const { return double(cs_num) / double(cs_den); }

bool BoundReport::cs_leq(int64_t k) const {
  if (k < 0) return false;
  return cs_num <= u128(k) * cs_den;
}

BoundReport bounds(const PointSet& E, const PointSet& F, const NuHistogram& nu, double energy) {
  require_pair(E, F, "bounds");
  const int64_t q = E.q();
  const int d = E.dim();
  const u128 se = u128(uint64_t(E.size()));
  const u128 sf = u128(uint64_t(F.size()));

  BoundReport b;
  b.cs_num = se * se * sf * sf;
  b.cs_den = nu.second_moment;
  b.energy = energy;
  b.valid_fourier = !E.contains(int64_t{0});
  if (b.valid_fourier) {
    const double ef = double(E.size()) * double(F.size());
    const double num = ef * ef;
    const double den =
        num / double(q) + double(checked_pow(q, 2 * d - 1)) * double(E.size()) * energy;
    b.fourier_bound = num / den;
  }
  return b;
}

BoundReport bounds(const PointSet& E, const PointSet& F) {
  return bounds(E, F, nu_histogram(E, F), energy_B(E, F));
}

PointSet extract_E0(const PointSet& E) {
  const int64_t q = E.q();
  const int d = E.dim();
  if (E.size() - (E.contains(int64_t{0}) ? 1 : 0) == 0) {
    throw std::invalid_argument("extract_E0: set has no point off the origin");
  }
  PointSet out(q, d);
  std::vector<uint8_t> seen(size_t(E.space_size()), 0);
  E.for_each_rank([&](int64_t r) {  // ascending, so the first hit per line wins
    if (r == 0) return;
    int64_t rep = rank_of(line_rep(unrank(r, q, d), q), q);
    if (!seen[size_t(rep)]) {
      seen[size_t(rep)] = 1;
      out.insert(r);
    }
  });
  return out;
}

}  // namespace ffdot
