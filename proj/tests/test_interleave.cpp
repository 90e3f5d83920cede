#include "doctest.h"
#include "fixtures.hpp"
#include "gst/gen.hpp"
#include "gst/interleave.hpp"
#include "gst/steiner.hpp"

using namespace gst;

TEST_CASE("tracker on the 3-path example") {
  // G = path a-b-c, P = {root b; children a, c}; accesses a, c, a.
  Topology g = parse_topology("3\n0 1\n1 2\n");
  SearchTree p = SearchTree::from_parents(1, {1, kNoVertex, 1});
  PreferredTracker tr(g, p);

  auto e1 = tr.record_access(0);
  REQUIRE(e1.size() == 1);
  CHECK(e1[0].node == 1);
  CHECK(e1[0].first_definition);

  auto e2 = tr.record_access(2);
  REQUIRE(e2.size() == 1);
  CHECK(!e2[0].first_definition);

  auto e3 = tr.record_access(0);
  REQUIRE(e3.size() == 1);
  CHECK(tr.total_changes() == 2);
  CHECK(tr.first_definitions() == 1);

  auto res = interleave_bound(g, p, std::vector<VertexId>{0, 2, 0});
  CHECK(res.total == 2);
  CHECK(res.lower_bound == 2 / 2 - 3);
  CHECK(res.first_definitions == 1);
}

TEST_CASE("repeated access stops producing events") {
  Topology g = gen_tree(TreeShape::Random, 20, 3);
  SearchTree p = reference_tree(g);
  PreferredTracker tr(g, p);
  tr.record_access(7);
  CHECK(tr.record_access(7).empty());
  CHECK(tr.record_access(7).empty());
}

TEST_CASE("access to an internal node prefers its first child") {
  const Topology& g = fixtures::paper_tree();
  SearchTree p = fixtures::fig_centroid_tree();
  PreferredTracker tr(g, p);
  auto events = tr.record_access(p.root);
  REQUIRE(events.size() == 1);
  CHECK(events[0].node == p.root);
  CHECK(tr.preferred(p.root) == p.children[p.root][0]);
}

TEST_CASE("single and constant sequences have zero interleave") {
  Topology g = gen_tree(TreeShape::Random, 15, 9);
  SearchTree p = reference_tree(g);
  CHECK(interleave_bound(g, p, std::vector<VertexId>{4}).total == 0);
  CHECK(interleave_bound(g, p, std::vector<VertexId>(10, 4)).total == 0);
}

TEST_CASE("incremental tracker equals from-scratch recomputation") {
  Rng rng(71);
  for (int iter = 0; iter < 30; ++iter) {
    int n = 2 + static_cast<int>(rng.below(24));
    Topology g = gen_tree(TreeShape::Random, n, 400 + iter);
    SearchTree p = random_search_tree(g, rng);
    int m = 1 + static_cast<int>(rng.below(20));
    std::vector<VertexId> xs;
    for (int i = 0; i < m; ++i)
      xs.push_back(static_cast<VertexId>(rng.below(n)));

    PreferredTracker inc(g, p);
    for (int i = 0; i < m; ++i) {
      inc.record_access(xs[i]);
      // From scratch over the prefix.
      PreferredTracker scratch(g, p);
      for (int j = 0; j <= i; ++j) scratch.record_access(xs[j]);
      for (VertexId v = 0; v < n; ++v)
        CHECK(inc.preferred(v) == scratch.preferred(v));
    }
  }
}

TEST_CASE("per-access change count bounded by depth") {
  Rng rng(81);
  Topology g = gen_tree(TreeShape::Random, 64, 17);
  SearchTree p = reference_tree(g);
  PreferredTracker tr(g, p);
  for (int i = 0; i < 200; ++i) {
    VertexId x = static_cast<VertexId>(rng.below(g.n()));
    auto events = tr.record_access(x);
    CHECK(static_cast<int>(events.size()) <= depth_in(p, x) + 1);
  }
}

TEST_CASE("concatenation is the same as one incremental run") {
  Topology g = gen_tree(TreeShape::Random, 12, 23);
  SearchTree p = reference_tree(g);
  Rng rng(91);
  std::vector<VertexId> x1, x2, x12;
  for (int i = 0; i < 15; ++i) x1.push_back(static_cast<VertexId>(rng.below(12)));
  for (int i = 0; i < 15; ++i) x2.push_back(static_cast<VertexId>(rng.below(12)));
  x12 = x1;
  x12.insert(x12.end(), x2.begin(), x2.end());

  PreferredTracker tr(g, p);
  for (VertexId v : x1) tr.record_access(v);
  for (VertexId v : x2) tr.record_access(v);
  auto whole = interleave_bound(g, p, x12);
  CHECK(whole.total == tr.total_changes());
  CHECK(whole.first_definitions == tr.first_definitions());
}
