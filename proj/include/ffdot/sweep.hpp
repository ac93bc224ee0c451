#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ffdot/pointset.hpp"

namespace ffdot {

// One side of a sweep pair. Textual sub-specs are parsed per (q,d) cell so a
// single spec can range over the whole grid.
struct FamilySpec {
  Family family = Family::UniformRandom;
  int64_t j = 1;                        // sphere radius
  std::string variety_text;             // "a;b;c" form
  std::string translate_text;           // comma-separated vector
  std::vector<std::string> line_texts;  // line-union generators
};

struct SweepConfig {
  std::vector<int64_t> qs = {13};
  std::vector<int> ds = {2};
  FamilySpec e_spec;
  FamilySpec f_spec;
  std::vector<double> ks = {4.0};  // density targets: |E||F| ~ K q^d
  int64_t trials = 100;
  uint64_t seed = 0;
  int threads = 0;
  bool pinned = false;  // also record the pinned-product fraction over E
};

// One CSV row per (q, d, K) cell; header first. Rows are bit-reproducible
// from (config, seed).
void run_sweep(const SweepConfig& cfg, std::ostream& os);

struct ProbeConfig {
  std::vector<int64_t> qs = {5};
  std::vector<int> ds = {3};
  std::string variety_text;    // required; the variety V that houses E
  std::string translate_text;  // optional shift applied to V
  std::vector<double> ks = {4.0};
  int64_t trials = 100;
  uint64_t seed = 0;
  int threads = 0;
};

// Samples E ⊂ V against F ⊂ F_q^d. Refuses any cell whose V contains the
// origin (throws std::invalid_argument before emitting anything).
void run_probe(const ProbeConfig& cfg, std::ostream& os);

}  // namespace ffdot
