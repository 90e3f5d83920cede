#include <algorithm>
#include <functional>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "gst/core.hpp"
#include "gst/gen.hpp"

using namespace gst;
using fixtures::L;
using fixtures::paper_tree;

TEST_CASE("parse_topology basics") {
  Topology g = parse_topology("2\n0 1\n");
  CHECK(g.n() == 2);
  CHECK(g.has_edge(0, 1));

  CHECK_THROWS_AS(parse_topology("3\n0 1\n0 1\n"), DuplicateEdgeError);
  CHECK_THROWS_AS(parse_topology("3\n0 1\n0 3\n"), VertexRangeError);
  CHECK_THROWS_AS(parse_topology("3\n0 1\n1 0\n"), DuplicateEdgeError);
  CHECK_THROWS_AS(parse_topology("2\n1 1\n"), CycleError);
  CHECK_THROWS_AS(parse_topology("2\n"), FormatError);
  CHECK_THROWS_AS(parse_topology(""), FormatError);

  // The running 12-vertex example parses and round-trips.
  const Topology& g12 = paper_tree();
  Topology again = parse_topology(format_topology(g12));
  CHECK(again.n() == 12);
  for (VertexId v = 0; v < 12; ++v)
    CHECK(again.neighbors(v) == g12.neighbors(v));
}

TEST_CASE("path_between") {
  const Topology& g = paper_tree();
  CHECK(path_between(g, L('c'), L('f')) == fixtures::verts("cdgf"));
  CHECK(path_between(g, L('a'), L('a')) == fixtures::verts("a"));
  Topology g2 = parse_topology("2\n0 1\n");
  CHECK(path_between(g2, 0, 1) == std::vector<VertexId>{0, 1});

  // Brute-force BFS oracle on random trees.
  Rng rng(7);
  for (int iter = 0; iter < 50; ++iter) {
    Topology t = gen_tree(TreeShape::Random, 2 + iter % 30, 1000 + iter);
    VertexId u = static_cast<VertexId>(rng.below(t.n()));
    VertexId v = static_cast<VertexId>(rng.below(t.n()));
    // BFS.
    std::vector<VertexId> par(t.n(), kNoVertex), queue{u};
    std::vector<char> seen(t.n(), 0);
    seen[u] = 1;
    for (size_t i = 0; i < queue.size(); ++i)
      for (VertexId w : t.neighbors(queue[i]))
        if (!seen[w]) {
          seen[w] = 1;
          par[w] = queue[i];
          queue.push_back(w);
        }
    std::vector<VertexId> expect{v};
    while (expect.back() != u) expect.push_back(par[expect.back()]);
    std::reverse(expect.begin(), expect.end());
    CHECK(path_between(t, u, v) == expect);
  }
}

TEST_CASE("convex_hull") {
  const Topology& g = paper_tree();
  auto hull = convex_hull(g, fixtures::verts("cfj"));
  std::vector<VertexId> want = fixtures::verts("cdfgij");
  std::sort(want.begin(), want.end());
  CHECK(hull == want);

  auto single = convex_hull(g, fixtures::verts("e"));
  CHECK(single == fixtures::verts("e"));

  std::vector<VertexId> all(12);
  for (int i = 0; i < 12; ++i) all[i] = i;
  CHECK(convex_hull(g, all) == all);
  CHECK_THROWS_AS(convex_hull(g, std::span<const VertexId>{}), GstError);

  // Leaf-pruning oracle: repeatedly delete degree-1 vertices not in s.
  Rng rng(99);
  for (int iter = 0; iter < 60; ++iter) {
    Topology t = gen_tree(TreeShape::Random, 2 + iter % 40, 500 + iter);
    int k = 1 + static_cast<int>(rng.below(4));
    std::set<VertexId> s;
    for (int i = 0; i < k; ++i) s.insert(static_cast<VertexId>(rng.below(t.n())));
    std::vector<VertexId> sv(s.begin(), s.end());

    std::set<VertexId> kept;
    for (int v = 0; v < t.n(); ++v) kept.insert(v);
    std::vector<int> deg(t.n());
    for (int v = 0; v < t.n(); ++v) deg[v] = t.degree(v);
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto it = kept.begin(); it != kept.end();) {
        VertexId v = *it;
        if (!s.count(v) && deg[v] <= 1) {
          for (VertexId w : t.neighbors(v))
            if (kept.count(w)) --deg[w];
          it = kept.erase(it);
          changed = true;
        } else {
          ++it;
        }
      }
    }
    std::vector<VertexId> want2(kept.begin(), kept.end());
    CHECK(convex_hull(t, sv) == want2);
  }
}

TEST_CASE("direction") {
  const Topology& g = paper_tree();
  CHECK(direction(g, L('d'), L('l')) == L('i'));
  CHECK(direction(g, L('c'), L('a')) == L('a'));
  Topology g2 = parse_topology("2\n0 1\n");
  CHECK(direction(g2, 0, 1) == 1);
  CHECK_THROWS_AS(direction(g, L('d'), L('d')), GstError);
}

TEST_CASE("validate_search_tree") {
  const Topology& g = paper_tree();
  CHECK(!validate_search_tree(g, fixtures::fig_search_tree()));

  // Root r with one arbitrary vertex per component, recursively: any random
  // valid construction passes.
  Rng rng(3);
  for (int iter = 0; iter < 100; ++iter) {
    Topology t = gen_tree(TreeShape::Random, 1 + iter % 24, 2000 + iter);
    SearchTree st = random_search_tree(t, rng);
    CHECK(!validate_search_tree(t, st));
  }

  // Swapping g and j in the example tree breaks the component condition.
  SearchTree bad = fixtures::fig_search_tree();
  std::swap(bad.parent[L('g')], bad.parent[L('j')]);
  // g<->j swap: j under d, g under l.
  bad.parent[L('j')] = L('d');
  bad.parent[L('g')] = L('l');
  bad = SearchTree::from_parents(bad.root, bad.parent);
  auto violation = validate_search_tree(g, bad);
  REQUIRE(violation.has_value());
}

TEST_CASE("rotate on the figure example") {
  const Topology& g = paper_tree();
  SearchTree t = fixtures::fig_search_tree();
  VertexId moved = rotate(g, t, L('i'));
  CHECK(moved == L('d'));
  SearchTree want = fixtures::tree_from('c', {{'c', "abi"},
                                              {'i', "fk"},
                                              {'f', "ehd"},
                                              {'d', "g"},
                                              {'k', "l"},
                                              {'l', "j"}});
  CHECK(t == want);
  CHECK(!validate_search_tree(g, t));

  // Rotating the former parent undoes it.
  rotate(g, t, L('f'));
  CHECK(t == fixtures::fig_search_tree());

  CHECK_THROWS_AS(rotate(g, t, t.root), InvalidTreeError);
}

TEST_CASE("rotate preserves validity and reverses (fuzz)") {
  Rng rng(42);
  for (int iter = 0; iter < 300; ++iter) {
    Topology t = gen_tree(TreeShape::Random, 2 + iter % 48, 3000 + iter);
    SearchTree st = random_search_tree(t, rng);
    VertexId v;
    do {
      v = static_cast<VertexId>(rng.below(t.n()));
    } while (v == st.root);
    SearchTree before = st;
    VertexId p = st.parent[v];
    rotate(t, st, v);
    CHECK(!validate_search_tree(t, st));
    rotate(t, st, p);
    CHECK(st == before);
  }
}

TEST_CASE("height") {
  Topology one(1, {});
  SearchTree single = SearchTree::from_parents(0, {kNoVertex});
  CHECK(height(single) == 1);
  CHECK(height(fixtures::fig_search_tree()) == 6);
  CHECK(height(fixtures::fig_centroid_tree()) == 3);
}

TEST_CASE("search tree serialization round-trip") {
  SearchTree t = fixtures::fig_search_tree();
  SearchTree u = parse_search_tree(format_search_tree(t));
  CHECK(t == u);
  CHECK_THROWS_AS(parse_search_tree("root 0\n"), FormatError);
  CHECK_THROWS_AS(parse_search_tree("noroot\n"), FormatError);
}

TEST_CASE("path graphs: search trees are BSTs") {
  // On a path, every valid search tree has <= 2 children per node and
  // in-order traversal yields the path order (Obs: BST specialization).
  Rng rng(5);
  for (int iter = 0; iter < 100; ++iter) {
    int n = 2 + iter % 15;
    Topology t = gen_tree(TreeShape::Path, n, 0);
    SearchTree st = random_search_tree(t, rng);
    std::vector<VertexId> inorder;
    // In-order: children split into < v and > v sides.
    std::function<void(VertexId)> rec = [&](VertexId v) {
      REQUIRE(st.children[v].size() <= 2);
      std::vector<VertexId> lo, hi;
      for (VertexId c : st.children[v]) (c < v ? lo : hi).push_back(c);
      REQUIRE(lo.size() <= 1);
      REQUIRE(hi.size() <= 1);
      for (VertexId c : lo) rec(c);
      inorder.push_back(v);
      for (VertexId c : hi) rec(c);
    };
    rec(st.root);
    for (int i = 0; i < n; ++i) CHECK(inorder[i] == i);
  }
}
