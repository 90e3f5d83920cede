#pragma once

#include <span>

#include "gst/machine.hpp"

// Ground truth at desk scale: enumeration of all search trees on tiny G and
// exact OPT(G,X) by uniform-cost search over machine states.

namespace gst {

inline constexpr int kEnumMaxN = 10;
inline constexpr int kCountMaxN = 24;
inline constexpr int kOptMaxN = 5;
inline constexpr int kOptMaxM = 4;

// All valid search trees on g (n <= kEnumMaxN).
std::vector<SearchTree> enumerate_search_trees(const Topology& g);

// Number of valid search trees, by the recursion
// count(G) = sum over roots r of the product of count(component of G \ r);
// usable past the enumeration guard (n <= kCountMaxN).
long long count_search_trees(const Topology& g);

struct OptOptions {
  const SearchTree* initial = nullptr;  // fix the initial tree; else minimize
  bool paid_reset = false;  // finger stays put between searches when true
};

// Minimum total unit-op cost over all initial trees and legal op sequences
// executing xs under machine semantics (n <= kOptMaxN, |xs| <= kOptMaxM).
long long exact_opt(const Topology& g, std::span<const VertexId> xs,
                    const OptOptions& options = {});

// Non-adaptive comparator: each search walks from the root of
// reference_tree(g) to its target, no rotations.
CostReport static_baseline(const Topology& g, std::span<const VertexId> xs);

}  // namespace gst
