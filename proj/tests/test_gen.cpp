#include "doctest.h"
#include "gst/gen.hpp"
#include "gst/interleave.hpp"
#include "gst/steiner.hpp"

using namespace gst;

TEST_CASE("tree shapes") {
  Topology path = gen_tree(TreeShape::Path, 5, 0);
  for (int i = 0; i + 1 < 5; ++i) CHECK(path.has_edge(i, i + 1));

  Topology star = gen_tree(TreeShape::Star, 5, 0);
  for (int i = 1; i < 5; ++i) CHECK(star.has_edge(0, i));
  CHECK(star.degree(0) == 4);

  Topology bin = gen_tree(TreeShape::Binary, 7, 0);
  CHECK(bin.has_edge(0, 1));
  CHECK(bin.has_edge(1, 3));
  CHECK(bin.has_edge(2, 6));

  Topology cat = gen_tree(TreeShape::Caterpillar, 9, 0);
  CHECK(cat.n() == 9);

  CHECK_THROWS_AS(gen_tree(TreeShape::Path, 0, 0), GstError);
  CHECK_THROWS_AS(parse_tree_shape("blob"), GstError);
}

TEST_CASE("generators are deterministic in the seed") {
  Topology a = gen_tree(TreeShape::Random, 40, 12345);
  Topology b = gen_tree(TreeShape::Random, 40, 12345);
  Topology c = gen_tree(TreeShape::Random, 40, 54321);
  CHECK(format_topology(a) == format_topology(b));
  CHECK(format_topology(a) != format_topology(c));

  auto s1 = gen_seq(SeqKind::Uniform, a, 64, 9);
  auto s2 = gen_seq(SeqKind::Uniform, a, 64, 9);
  auto s3 = gen_seq(SeqKind::Uniform, a, 64, 10);
  CHECK(s1 == s2);
  CHECK(s1 != s3);
}

TEST_CASE("sequence kinds") {
  Topology g = gen_tree(TreeShape::Path, 6, 0);
  auto seq = gen_seq(SeqKind::Sequential, g, 6, 0);
  CHECK(seq == std::vector<VertexId>{0, 1, 2, 3, 4, 5});

  auto rep = gen_seq(SeqKind::Repeated, g, 7, 3);
  for (VertexId v : rep) CHECK(v == rep[0]);

  for (VertexId v : gen_seq(SeqKind::Uniform, g, 100, 1)) {
    CHECK(v >= 0);
    CHECK(v < 6);
  }
}

TEST_CASE("adversarial sequences interleave more than uniform") {
  for (uint64_t seed : {1ull, 2ull, 3ull}) {
    Topology g = gen_tree(TreeShape::Random, 64, seed);
    SearchTree p = reference_tree(g);
    int m = 1000;
    auto adv = gen_seq(SeqKind::Adversarial, g, m, seed);
    auto uni = gen_seq(SeqKind::Uniform, g, m, seed);
    auto ia = interleave_bound(g, p, adv);
    auto iu = interleave_bound(g, p, uni);
    CHECK(ia.total > iu.total);
  }
}

TEST_CASE("random_search_tree is valid") {
  Rng rng(1);
  for (int iter = 0; iter < 40; ++iter) {
    Topology g = gen_tree(TreeShape::Random, 1 + iter, 100 + iter);
    CHECK(!validate_search_tree(g, random_search_tree(g, rng)));
  }
}
