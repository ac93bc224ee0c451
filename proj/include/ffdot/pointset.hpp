#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ffdot/geometry.hpp"

namespace ffdot {

// Dense subset of F_q^d: a bit table indexed by rank plus a cached
// cardinality. Treated as immutable once a constructor returns it.
class PointSet {
 public:
  PointSet(int64_t q, int d);
  static PointSet full(int64_t q, int d);

  int64_t q() const { return q_; }
  int dim() const { return d_; }
  int64_t space_size() const { return n_; }
  int64_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool contains(int64_t r) const {
    return (words_[uint64_t(r) >> 6] >> (uint64_t(r) & 63)) & 1;
  }
  bool contains(const Vec& v) const { return contains(rank_of(v, q_)); }

  void insert(int64_t r);
  void insert(const Vec& v) { insert(rank_of(v, q_)); }
  void erase(int64_t r);

  // Members in ascending rank order.
  std::vector<int64_t> ranks() const;
  std::vector<Vec> points() const;

  template <class Fn>
  void for_each_rank(Fn&& fn) const {
    for (size_t w = 0; w < words_.size(); ++w) {
      uint64_t bits = words_[w];
      while (bits) {
        int b = __builtin_ctzll(bits);
        fn(int64_t(w) * 64 + b);
        bits &= bits - 1;
      }
    }
  }

  bool is_subset_of(const PointSet& other) const;
  bool operator==(const PointSet& other) const;

 private:
  int64_t q_;
  int d_;
  int64_t n_;
  int64_t size_;
  std::vector<uint64_t> words_;
};

// Exact membership by exhaustive evaluation of the quadratic.
PointSet construct_variety(const Variety& V, int64_t q, int d);

// E + a; bijective shift, size preserved.
PointSet translate(const PointSet& E, const Vec& a);

// Split E (required to lie in the paraboloid P) into (G, B) with
// G = {x in E : x_d != 0} and B = {x in E : x_d = 0}.
std::pair<PointSet, PointSet> paraboloid_split(const PointSet& E);

// pi(F) = {(x_1,...,x_{d-1}) : x in F} as a set in dimension d-1.
PointSet project_set(const PointSet& F);

enum class Family {
  Variety,
  VarietyTranslate,
  Sphere,
  Paraboloid,
  ParaboloidBase,
  LineUnion,
  UniformRandom,
  FullSpace,
};

Family family_from_string(const std::string& name);
std::string family_name(Family f);

// Describes one sampled set: the family fixes the ambient set, `size`
// the number of points drawn from it (default: the whole ambient set),
// and `seed` makes the draw reproducible.
struct SampleSpec {
  Family family = Family::UniformRandom;
  int64_t q = 3;
  int d = 2;
  std::optional<Variety> variety;  // Variety / VarietyTranslate
  int64_t j = 1;                   // Sphere radius
  std::optional<Vec> shift;        // VarietyTranslate offset
  std::vector<Vec> lines;          // LineUnion generators
  std::optional<int64_t> size;
  uint64_t seed = 0;
};

// The family's full ambient set.
PointSet ambient_set(const SampleSpec& spec);

// Uniform m-subset of the ambient set by seeded Fisher-Yates over its
// rank list; identical output for identical (spec, seed).
PointSet sample(const SampleSpec& spec);

// Same draw from an explicit ambient set.
PointSet sample_subset(const PointSet& ambient, int64_t m, uint64_t seed);

// Text format: "# ffdot pointset v1" / "q=<q> d=<d>" / one point per line.
void write_set(const PointSet& E, std::ostream& os);
void write_set(const PointSet& E, const std::string& path);
PointSet read_set(std::istream& is);
PointSet read_set(const std::string& path);

}  // namespace ffdot
