#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gst/core.hpp"

// Deterministic generators: identical (shape, n, seed) inputs produce
// identical outputs on every platform.

namespace gst {

// splitmix64; tiny, portable, and fully specified.
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  // Uniform in [0, k) by rejection.
  uint64_t below(uint64_t k) {
    uint64_t bound = k * ((~0ull) / k);
    uint64_t r;
    do {
      r = next();
    } while (r >= bound);
    return r % k;
  }
  int range(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo + 1)));
  }
};

enum class TreeShape { Path, Star, Caterpillar, Binary, Random };
enum class SeqKind { Uniform, Repeated, Sequential, Adversarial };

TreeShape parse_tree_shape(const std::string& s);
SeqKind parse_seq_kind(const std::string& s);
std::string to_string(TreeShape s);
std::string to_string(SeqKind k);

Topology gen_tree(TreeShape shape, int n, uint64_t seed);
std::vector<VertexId> gen_seq(SeqKind kind, const Topology& g, int m,
                              uint64_t seed);

// Uniform-ish random valid search tree; test and harness helper.
SearchTree random_search_tree(const Topology& g, Rng& rng);

}  // namespace gst
