#include "ffdot/pointset.hpp"

#include <fstream>
#include <sstream>

#include "ffdot/rng.hpp"

namespace ffdot {

PointSet::PointSet(int64_t q, int d) : q_(q), d_(d), size_(0) {
  if (!is_odd_prime(q)) throw std::invalid_argument("PointSet: q must be an odd prime >= 3");
  if (d < 1) throw std::invalid_argument("PointSet: d must be >= 1");
  n_ = checked_pow(q, d);
  words_.assign(size_t((n_ + 63) / 64), 0);
}

PointSet PointSet::full(int64_t q, int d) {
  PointSet s(q, d);
  for (auto& w : s.words_) w = ~uint64_t{0};
  int tail = int(s.n_ & 63);
  if (tail != 0) s.words_.back() = (uint64_t{1} << tail) - 1;
  s.size_ = s.n_;
  return s;
}

void PointSet::insert(int64_t r) {
  if (r < 0 || r >= n_) throw std::out_of_range("PointSet::insert: rank out of range");
  uint64_t& w = words_[uint64_t(r) >> 6];
  uint64_t bit = uint64_t{1} << (uint64_t(r) & 63);
  if (!(w & bit)) {
    w |= bit;
    ++size_;
  }
}

void PointSet::erase(int64_t r) {
  if (r < 0 || r >= n_) throw std::out_of_range("PointSet::erase: rank out of range");
  uint64_t& w = words_[uint64_t(r) >> 6];
  uint64_t bit = uint64_t{1} << (uint64_t(r) & 63);
  if (w & bit) {
    w &= ~bit;
    --size_;
  }
}

std::vector<int64_t> PointSet::ranks() const {
  std::vector<int64_t> out;
  out.reserve(size_t(size_));
  for_each_rank([&](int64_t r) { out.push_back(r); });
  return out;
}

std::vector<Vec> PointSet::points() const {
  std::vector<Vec> out;
  out.reserve(size_t(size_));
  for_each_rank([&](int64_t r) { out.push_back(unrank(r, q_, d_)); });
  return out;
}

bool PointSet::is_subset_of(const PointSet& other) const {
  if (q_ != other.q_ || d_ != other.d_) return false;
  for (size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

bool PointSet::operator==(const PointSet& other) const {
  return q_ == other.q_ && d_ == other.d_ && words_ == other.words_;
}

PointSet construct_variety(const Variety& V, int64_t q, int d) {
  if (V.dim() != d) throw std::invalid_argument("construct_variety: dimension mismatch");
  PointSet out(q, d);
  for (int64_t r = 0; r < out.space_size(); ++r) {
    if (variety_contains(V, unrank(r, q, d), q)) out.insert(r);
  }
  return out;
}

PointSet translate(const PointSet& E, const Vec& a) {
  if (a.dim() != E.dim()) throw std::invalid_argument("translate: dimension mismatch");
  PointSet out(E.q(), E.dim());
  E.for_each_rank([&](int64_t r) {
    out.insert(add(unrank(r, E.q(), E.dim()), a, E.q()));
  });
  return out;
}

std::pair<PointSet, PointSet> paraboloid_split(const PointSet& E) {
  const int d = E.dim();
  const int64_t q = E.q();
  if (d < 2) throw std::invalid_argument("paraboloid_split: needs d >= 2");
  const Variety P = paraboloid_variety(d, q);
  PointSet g(q, d), b(q, d);
  E.for_each_rank([&](int64_t r) {
    Vec x = unrank(r, q, d);
    if (!variety_contains(P, x, q)) {
      throw std::invalid_argument("paraboloid_split: set is not contained in the paraboloid");
    }
    if (x.c[d - 1] != 0) {
      g.insert(r);
    } else {
      b.insert(r);
    }
  });
  return {std::move(g), std::move(b)};
}

PointSet project_set(const PointSet& F) {
  if (F.dim() < 2) throw std::invalid_argument("project_set: needs dimension >= 2");
  PointSet out(F.q(), F.dim() - 1);
  F.for_each_rank([&](int64_t r) {
    out.insert(project(unrank(r, F.q(), F.dim())));
  });
  return out;
}

Family family_from_string(const std::string& name) {
  if (name == "variety") return Family::Variety;
  if (name == "variety-translate") return Family::VarietyTranslate;
  if (name == "sphere") return Family::Sphere;
  if (name == "paraboloid") return Family::Paraboloid;
  if (name == "paraboloid-base") return Family::ParaboloidBase;
  if (name == "line-union") return Family::LineUnion;
  if (name == "uniform-random") return Family::UniformRandom;
  if (name == "full-space") return Family::FullSpace;
  throw std::invalid_argument("unknown family '" + name + "'");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::Variety: return "variety";
    case Family::VarietyTranslate: return "variety-translate";
    case Family::Sphere: return "sphere";
    case Family::Paraboloid: return "paraboloid";
    case Family::ParaboloidBase: return "paraboloid-base";
    case Family::LineUnion: return "line-union";
    case Family::UniformRandom: return "uniform-random";
    case Family::FullSpace: return "full-space";
  }
  return "?";
}

PointSet ambient_set(const SampleSpec& spec) {
  const int64_t q = spec.q;
  const int d = spec.d;
  switch (spec.family) {
    case Family::Variety: {
      if (!spec.variety) throw std::invalid_argument("sample: variety family needs a variety spec");
      return construct_variety(*spec.variety, q, d);
    }
    case Family::VarietyTranslate: {
      if (!spec.variety) throw std::invalid_argument("sample: variety-translate needs a variety spec");
      if (!spec.shift) throw std::invalid_argument("sample: variety-translate needs a translate vector");
      return translate(construct_variety(*spec.variety, q, d), *spec.shift);
    }
    case Family::Sphere:
      return construct_variety(sphere_variety(d, spec.j, q), q, d);
    case Family::Paraboloid:
      return construct_variety(paraboloid_variety(d, q), q, d);
    case Family::ParaboloidBase: {
      // H = {x in P : x_d = 0}
      PointSet p = construct_variety(paraboloid_variety(d, q), q, d);
      PointSet h(q, d);
      p.for_each_rank([&](int64_t r) {
        if (unrank(r, q, d).c[d - 1] == 0) h.insert(r);
      });
      return h;
    }
    case Family::LineUnion: {
      if (spec.lines.empty()) throw std::invalid_argument("sample: line-union needs at least one line");
      PointSet out(q, d);
      for (const Vec& x : spec.lines) {
        if (x.dim() != d) throw std::invalid_argument("sample: line generator dimension mismatch");
        Vec rep = line_rep(x, q);  // throws on zero vector
        for (int64_t s = 1; s < q; ++s) out.insert(scale(rep, s, q));
      }
      return out;
    }
    case Family::UniformRandom:
    case Family::FullSpace:
      return PointSet::full(q, d);
  }
  throw std::invalid_argument("sample: unknown family");
}

PointSet sample_subset(const PointSet& ambient, int64_t m, uint64_t seed) {
  if (m < 0 || m > ambient.size()) {
    throw std::invalid_argument("sample: requested size exceeds ambient family size");
  }
  std::vector<int64_t> pool = ambient.ranks();  // ascending, deterministic
  SplitMix64 rng(seed);
  PointSet out(ambient.q(), ambient.dim());
  for (int64_t i = 0; i < m; ++i) {
    uint64_t j = uint64_t(i) + rng.below(uint64_t(pool.size()) - uint64_t(i));
    std::swap(pool[size_t(i)], pool[size_t(j)]);
    out.insert(pool[size_t(i)]);
  }
  return out;
}

PointSet sample(const SampleSpec& spec) {
  PointSet ambient = ambient_set(spec);
  int64_t m = spec.size.value_or(ambient.size());
  return sample_subset(ambient, m, spec.seed);
}

void write_set(const PointSet& E, std::ostream& os) {
  os << "# ffdot pointset v1\n";
  os << "q=" << E.q() << " d=" << E.dim() << "\n";
  E.for_each_rank([&](int64_t r) {
    Vec v = unrank(r, E.q(), E.dim());
    for (int i = 0; i < v.dim(); ++i) os << (i ? "," : "") << v.c[i];
    os << "\n";
  });
}

void write_set(const PointSet& E, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("write_set: cannot open '" + path + "'");
  write_set(E, f);
  if (!f.good()) throw std::runtime_error("write_set: write failed for '" + path + "'");
}

PointSet read_set(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "# ffdot pointset v1") {
    throw std::invalid_argument("read_set: missing '# ffdot pointset v1' header");
  }
  if (!std::getline(is, line)) throw std::invalid_argument("read_set: missing q/d line");
  int64_t q = 0;
  int d = 0;
  {
    std::istringstream hdr(line);
    std::string qtok, dtok;
    if (!(hdr >> qtok >> dtok) || qtok.rfind("q=", 0) != 0 || dtok.rfind("d=", 0) != 0) {
      throw std::invalid_argument("read_set: malformed header '" + line + "'");
    }
    std::string rest;
    if (hdr >> rest) throw std::invalid_argument("read_set: malformed header '" + line + "'");
    try {
      size_t used = 0;
      q = std::stoll(qtok.substr(2), &used);
      if (used != qtok.size() - 2) throw std::invalid_argument("");
      d = std::stoi(dtok.substr(2), &used);
      if (used != dtok.size() - 2) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("read_set: malformed header '" + line + "'");
    }
  }
  PointSet out(q, d);  // rejects q not an odd prime
  size_t lineno = 2;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    Vec v;
    v.c.reserve(size_t(d));
    std::istringstream row(line);
    std::string tok;
    while (std::getline(row, tok, ',')) {
      int64_t c = 0;
      try {
        size_t used = 0;
        c = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw std::invalid_argument("read_set: bad coordinate '" + tok + "' on line " +
                                 std::to_string(lineno));
      }
      if (c < 0 || c >= q) {
        throw std::invalid_argument("read_set: coordinate " + std::to_string(c) +
                                 " out of range [0," + std::to_string(q) + ") on line " +
                                 std::to_string(lineno));
      }
      v.c.push_back(int32_t(c));
    }
    if (v.dim() != d) {
      throw std::invalid_argument("read_set: expected " + std::to_string(d) +
                               " coordinates on line " + std::to_string(lineno));
    }
    int64_t r = rank_of(v, q);
    if (out.contains(r)) {
      throw std::invalid_argument("read_set: duplicate point on line " + std::to_string(lineno));
    }
    out.insert(r);
  }
  return out;
}

PointSet read_set(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("read_set: cannot open '" + path + "'");
  return read_set(f);
}

}  // namespace ffdot
