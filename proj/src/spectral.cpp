#include "ffdot/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "ffdot/field.hpp"
#include "ffdot/geometry.hpp"

namespace ffdot {

Spectrum dft(const PointSet& E) {
  const int64_t q = E.q();
  const int d = E.dim();
  const int64_t n = E.space_size();
  const Field field(q);

  std::vector<std::complex<double>> buf(size_t(n), {0.0, 0.0});
  E.for_each_rank([&](int64_t r) { buf[size_t(r)] = {1.0, 0.0}; });

  // W[k] = psi(-k); the inner loop steps k by m mod q instead of multiplying.
  std::vector<std::complex<double>> W(static_cast<size_t>(q));
  for (int64_t k = 0; k < q; ++k) W[size_t(k)] = field.character_neg(k);

  std::vector<std::complex<double>> in(static_cast<size_t>(q));
  std::vector<std::complex<double>> out(static_cast<size_t>(q));
  int64_t stride = 1;
  for (int axis = 0; axis < d; ++axis) {
    const int64_t block = stride * q;
    for (int64_t outer = 0; outer < n; outer += block) {
      for (int64_t off = 0; off < stride; ++off) {
        const int64_t base = outer + off;
        for (int64_t t = 0; t < q; ++t) in[size_t(t)] = buf[size_t(base + t * stride)];
        for (int64_t m = 0; m < q; ++m) {
          std::complex<double> acc{0.0, 0.0};
          int64_t idx = 0;
          for (int64_t t = 0; t < q; ++t) {
            acc += in[size_t(t)] * W[size_t(idx)];
            idx += m;
            if (idx >= q) idx -= q;
          }
          out[size_t(m)] = acc;
        }
        for (int64_t m = 0; m < q; ++m) buf[size_t(base + m * stride)] = out[size_t(m)];
      }
    }
    stride = block;
  }

  const double scale = 1.0 / double(n);
  for (auto& v : buf) v *= scale;
  return Spectrum{q, d, std::move(buf)};
}

double plancherel_defect(const Spectrum& S, int64_t set_size) {
  KahanSum mass;
  for (const auto& v : S.values) mass.add(std::norm(v));
  return std::abs(mass.value() - double(set_size) / double(S.space_size()));
}

double salem_constant(const Spectrum& S, int64_t set_size) {
  if (set_size <= 0) throw std::invalid_argument("salem_constant: empty set");
  double peak = 0.0;
  for (size_t m = 1; m < S.values.size(); ++m) {
    peak = std::max(peak, std::abs(S.values[m]));
  }
  return peak * double(S.space_size()) / std::sqrt(double(set_size));
}

double salem_constant(const PointSet& F) {
  if (F.empty()) throw std::invalid_argument("salem_constant: empty set");
  return salem_constant(dft(F), F.size());
}

LineTable line_table(const PointSet& E) {
  const int64_t q = E.q();
  const int d = E.dim();
  LineTable lt;
  E.for_each_rank([&](int64_t r) {
    if (r == 0) return;  // the origin lies on no punctured line
    ++lt.counts[rank_of(line_rep(unrank(r, q, d), q), q)];
  });
  lt.lines_hit = int64_t(lt.counts.size());
  for (const auto& [rep, c] : lt.counts) lt.max_count = std::max(lt.max_count, c);
  return lt;
}

double energy_B(const LineTable& lt, const Spectrum& fhat) {
  const int64_t q = fhat.q;
  const int d = fhat.d;
  KahanSum total;
  for (const auto& [rep_rank, count] : lt.counts) {
    const Vec rep = unrank(rep_rank, q, d);
    KahanSum mass;  // spectral mass of F on this line
    for (int64_t s = 1; s < q; ++s) {
      mass.add(std::norm(fhat.at(rank_of(scale(rep, s, q), q))));
    }
    total.add(double(count) * mass.value());
  }
  return total.value();
}

double energy_B(const PointSet& E, const PointSet& F) {
  if (E.q() != F.q() || E.dim() != F.dim()) {
    throw std::invalid_argument("energy_B: sets live in different spaces");
  }
  return energy_B(line_table(E), dft(F));
}

}  // namespace ffdot
