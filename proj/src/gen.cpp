#include "gst/gen.hpp"

#include "gst/steiner.hpp"

namespace gst {

TreeShape parse_tree_shape(const std::string& s) {
  if (s == "path") return TreeShape::Path;
  if (s == "star") return TreeShape::Star;
  if (s == "caterpillar") return TreeShape::Caterpillar;
  if (s == "binary") return TreeShape::Binary;
  if (s == "random") return TreeShape::Random;
  throw GstError("unknown tree shape '" + s + "'");
}

SeqKind parse_seq_kind(const std::string& s) {
  if (s == "uniform") return SeqKind::Uniform;
  if (s == "repeated") return SeqKind::Repeated;
  if (s == "sequential") return SeqKind::Sequential;
  if (s == "adversarial") return SeqKind::Adversarial;
  throw GstError("unknown sequence kind '" + s + "'");
}

std::string to_string(TreeShape s) {
  switch (s) {
    case TreeShape::Path: return "path";
    case TreeShape::Star: return "star";
    case TreeShape::Caterpillar: return "caterpillar";
    case TreeShape::Binary: return "binary";
    case TreeShape::Random: return "random";
  }
  return "?";
}

std::string to_string(SeqKind k) {
  switch (k) {
    case SeqKind::Uniform: return "uniform";
    case SeqKind::Repeated: return "repeated";
    case SeqKind::Sequential: return "sequential";
    case SeqKind::Adversarial: return "adversarial";
  }
  return "?";
}

Topology gen_tree(TreeShape shape, int n, uint64_t seed) {
  if (n < 1) throw GstError("gen_tree needs n >= 1");
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(n - 1);
  switch (shape) {
    case TreeShape::Path:
      for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
      break;
    case TreeShape::Star:
      for (int i = 1; i < n; ++i) edges.emplace_back(0, i);
      break;
    case TreeShape::Caterpillar: {
      int spine = (n + 1) / 2;
      for (int i = 0; i + 1 < spine; ++i) edges.emplace_back(i, i + 1);
      for (int i = spine; i < n; ++i) edges.emplace_back(i - spine, i);
      break;
    }
    case TreeShape::Binary:
      for (int i = 1; i < n; ++i) edges.emplace_back((i - 1) / 2, i);
      break;
    case TreeShape::Random: {
      Rng rng(seed);
      for (int i = 1; i < n; ++i)
        edges.emplace_back(static_cast<VertexId>(rng.below(i)), i);
      break;
    }
  }
  return Topology(n, edges);
}

std::vector<VertexId> gen_seq(SeqKind kind, const Topology& g, int m,
                              uint64_t seed) {
  if (m < 1) throw GstError("gen_seq needs m >= 1");
  int n = g.n();
  Rng rng(seed ^ 0xA5A5A5A5A5A5A5A5ull);
  std::vector<VertexId> xs;
  xs.reserve(m);
  switch (kind) {
    case SeqKind::Uniform:
      for (int i = 0; i < m; ++i)
        xs.push_back(static_cast<VertexId>(rng.below(n)));
      break;
    case SeqKind::Repeated: {
      VertexId v = static_cast<VertexId>(rng.below(n));
      xs.assign(m, v);
      break;
    }
    case SeqKind::Sequential:
      for (int i = 0; i < m; ++i) xs.push_back(i % n);
      break;
    case SeqKind::Adversarial: {
      // Alternate across sibling subtrees of the reference tree: each fork
      // keeps a visit counter and hands the descent to the next child in
      // round-robin order, so every revisit of a fork changes its preferred
      // child and the interleave bound grows by one per fork per access.
      SearchTree p = reference_tree(g);
      std::vector<uint64_t> turn(n);
      for (int v = 0; v < n; ++v) turn[v] = rng.next();
      for (int i = 0; i < m; ++i) {
        VertexId v = p.root;
        while (!p.children[v].empty()) {
          const auto& cs = p.children[v];
          v = cs[turn[v]++ % cs.size()];
        }
        xs.push_back(v);
      }
      break;
    }
  }
  return xs;
}

SearchTree random_search_tree(const Topology& g, Rng& rng) {
  std::vector<VertexId> parent(g.n(), kNoVertex);
  VertexId root = kNoVertex;
  std::vector<char> alive(g.n(), 1);
  struct Job {
    VertexId inside;
    VertexId attach;
  };
  std::vector<Job> jobs{{0, kNoVertex}};
  std::vector<VertexId> comp;
  std::vector<char> seen(g.n(), 0);
  while (!jobs.empty()) {
    Job job = jobs.back();
    jobs.pop_back();
    comp.assign(1, job.inside);
    seen[job.inside] = 1;
    for (size_t i = 0; i < comp.size(); ++i)
      for (VertexId w : g.neighbors(comp[i]))
        if (alive[w] && !seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
    for (VertexId v : comp) seen[v] = 0;
    VertexId r = comp[rng.below(comp.size())];
    parent[r] = job.attach;
    if (job.attach == kNoVertex) root = r;
    alive[r] = 0;
    for (VertexId w : g.neighbors(r))
      if (alive[w]) jobs.push_back({w, r});
  }
  return SearchTree::from_parents(root, std::move(parent));
}

}  // namespace gst
