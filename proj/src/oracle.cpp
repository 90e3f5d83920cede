#include "gst/oracle.hpp"

#include <bit>
#include <cassert>
#include <deque>
#include <functional>
#include <numeric>
#include <unordered_map>

#include "gst/steiner.hpp"

namespace gst {

namespace {

std::vector<std::vector<VertexId>> components_without(
    const Topology& g, const std::vector<VertexId>& comp, VertexId removed) {
  std::vector<char> in_comp(g.n(), 0), seen(g.n(), 0);
  for (VertexId v : comp) in_comp[v] = 1;
  in_comp[removed] = 0;
  std::vector<std::vector<VertexId>> out;
  for (VertexId v : comp) {
    if (!in_comp[v] || seen[v]) continue;
    out.emplace_back();
    auto& cc = out.back();
    cc.push_back(v);
    seen[v] = 1;
    for (size_t i = 0; i < cc.size(); ++i)
      for (VertexId w : g.neighbors(cc[i]))
        if (in_comp[w] && !seen[w]) {
          seen[w] = 1;
          cc.push_back(w);
        }
  }
  return out;
}

}  // namespace

std::vector<SearchTree> enumerate_search_trees(const Topology& g) {
  if (g.n() > kEnumMaxN)
    throw GstError("enumerate_search_trees guard: n <= " +
                   std::to_string(kEnumMaxN));
  std::vector<SearchTree> out;
  std::vector<VertexId> parent(g.n(), kNoVertex);
  VertexId root = kNoVertex;

  std::function<void(const std::vector<VertexId>&, VertexId,
                     const std::function<void()>&)>
      rec = [&](const std::vector<VertexId>& comp, VertexId attach,
                const std::function<void()>& done) {
        for (VertexId r : comp) {
          parent[r] = attach;
          if (attach == kNoVertex) root = r;
          auto subs = components_without(g, comp, r);
          std::function<void(size_t)> product = [&](size_t i) {
            if (i == subs.size()) {
              done();
              return;
            }
            rec(subs[i], r, [&, i] { product(i + 1); });
          };
          product(0);
        }
      };

  std::vector<VertexId> all(g.n());
  std::iota(all.begin(), all.end(), 0);
  rec(all, kNoVertex, [&] {
    out.push_back(SearchTree::from_parents(root, parent));
  });
  return out;
}

long long count_search_trees(const Topology& g) {
  if (g.n() > kCountMaxN)
    throw GstError("count_search_trees guard: n <= " +
                   std::to_string(kCountMaxN));
  std::unordered_map<uint32_t, long long> memo;
  std::function<long long(uint32_t)> cnt = [&](uint32_t mask) -> long long {
    if (std::popcount(mask) <= 1) return 1;
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    long long total = 0;
    for (uint32_t rm = mask; rm;) {
      int r = std::countr_zero(rm);
      rm &= rm - 1;
      uint32_t rest = mask & ~(1u << r);
      long long prod = 1;
      uint32_t left = rest;
      while (left && prod) {
        int v = std::countr_zero(left);
        // Flood the component of v within rest.
        uint32_t cc = 1u << v, frontier = cc;
        while (frontier) {
          int x = std::countr_zero(frontier);
          frontier &= frontier - 1;
          for (VertexId w : g.neighbors(x)) {
            uint32_t bit = 1u << w;
            if ((rest & bit) && !(cc & bit)) {
              cc |= bit;
              frontier |= bit;
            }
          }
        }
        prod *= cnt(cc);
        left &= ~cc;
      }
      total += prod;
    }
    memo[mask] = total;
    return total;
  };
  return cnt((1u << g.n()) - 1);
}

namespace {

// Machine state packed into 32 bits: 3 bits per parent entry (+1), then
// finger, search index, touched flag. Only meaningful for n <= 5, m <= 4.
struct OptCodec {
  int n;
  uint32_t encode(const std::vector<VertexId>& parent, VertexId finger,
                  int idx, bool touched) const {
    uint32_t s = 0;
    for (int v = 0; v < n; ++v) s |= static_cast<uint32_t>(parent[v] + 1) << (3 * v);
    s |= static_cast<uint32_t>(finger) << 15;
    s |= static_cast<uint32_t>(idx) << 18;
    s |= static_cast<uint32_t>(touched) << 21;
    return s;
  }
  void decode(uint32_t s, std::vector<VertexId>& parent, VertexId& finger,
              int& idx, bool& touched) const {
    parent.assign(n, kNoVertex);
    for (int v = 0; v < n; ++v)
      parent[v] = static_cast<VertexId>((s >> (3 * v)) & 7u) - 1;
    finger = static_cast<VertexId>((s >> 15) & 7u);
    idx = static_cast<int>((s >> 18) & 7u);
    touched = (s >> 21) & 1u;
  }
};

}  // namespace

long long exact_opt(const Topology& g, std::span<const VertexId> xs,
                    const OptOptions& options) {
  int n = g.n(), m = static_cast<int>(xs.size());
  if (n > kOptMaxN || m > kOptMaxM)
    throw GstError("exact_opt guards exceeded (n <= 5, m <= 4)");
  for (VertexId x : xs) g.check_vertex(x);
  if (m == 0) return 0;

  OptCodec codec{n};
  std::deque<std::pair<uint32_t, long long>> dq;
  std::unordered_map<uint32_t, long long> dist;
  auto relax = [&](uint32_t s, long long d, bool zero) {
    auto it = dist.find(s);
    if (it != dist.end() && it->second <= d) return;
    dist[s] = d;
    if (zero)
      dq.emplace_front(s, d);
    else
      dq.emplace_back(s, d);
  };

  std::vector<SearchTree> starts;
  if (options.initial) {
    if (auto bad = validate_search_tree(g, *options.initial))
      throw InvalidTreeError("fixed initial tree invalid: " + bad->detail);
    starts.push_back(*options.initial);
  } else {
    starts = enumerate_search_trees(g);
  }
  for (const auto& t : starts)
    relax(codec.encode(t.parent, t.root, 0, t.root == xs[0]), 0, true);

  std::vector<VertexId> parent;
  while (!dq.empty()) {
    auto [s, d] = dq.front();
    dq.pop_front();
    if (d != dist[s]) continue;  // stale entry
    VertexId finger;
    int idx;
    bool touched;
    codec.decode(s, parent, finger, idx, touched);
    if (idx == m) return d;
    SearchTree t;
    {
      VertexId root = kNoVertex;
      for (int v = 0; v < n; ++v)
        if (parent[v] == kNoVertex) root = v;
      t = SearchTree::from_parents(root, parent);
    }
    if (touched) {
      int nidx = idx + 1;
      VertexId nf = options.paid_reset ? finger : t.root;
      bool ntouched = nidx < m && nf == xs[nidx];
      relax(codec.encode(t.parent, nf, nidx, ntouched), d, true);
    }
    auto pay = [&](const SearchTree& nt, VertexId nf) {
      bool ntouched = touched || nf == xs[idx];
      relax(codec.encode(nt.parent, nf, idx, ntouched), d + 1, false);
    };
    if (t.parent[finger] != kNoVertex) {
      pay(t, t.parent[finger]);
      SearchTree rt = t;
      rotate(g, rt, finger);
      pay(rt, finger);
    }
    for (VertexId c : t.children[finger]) pay(t, c);
  }
  throw std::logic_error("exact_opt: state space exhausted");
}

CostReport static_baseline(const Topology& g, std::span<const VertexId> xs) {
  SearchTree p = reference_tree(g);
  GstMachine mach(g, std::move(p));
  mach.set_record_trace(false);
  std::vector<VertexId> path;
  for (VertexId x : xs) {
    mach.begin_search(x);
    path.clear();
    for (VertexId v = x; v != mach.root(); v = mach.tree().parent[v])
      path.push_back(v);
    for (size_t i = path.size(); i-- > 0;) mach.move_to_child(path[i]);
    mach.end_search();
  }
  return mach.cost_report();
}

}  // namespace gst
