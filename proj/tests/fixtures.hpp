#pragma once

#include <map>
#include <string>
#include <vector>

#include "gst/core.hpp"

// Shared fixtures: the running 12-vertex example tree with the letter
// encoding a=0, b=1, ..., l=11, and the search trees drawn on it.

namespace fixtures {

inline gst::VertexId L(char c) { return c - 'a'; }

inline const gst::Topology& paper_tree() {
  static gst::Topology g(12, {
                                 {L('a'), L('c')},
                                 {L('c'), L('b')},
                                 {L('c'), L('d')},
                                 {L('d'), L('g')},
                                 {L('g'), L('f')},
                                 {L('f'), L('e')},
                                 {L('f'), L('h')},
                                 {L('d'), L('i')},
                                 {L('i'), L('j')},
                                 {L('j'), L('k')},
                                 {L('j'), L('l')},
                             });
  return g;
}

inline gst::SearchTree tree_from(
    char root, const std::map<char, std::string>& child_lists, int n = 12) {
  std::vector<gst::VertexId> parent(n, gst::kNoVertex);
  for (const auto& [p, cs] : child_lists)
    for (char c : cs) parent[L(c)] = L(p);
  return gst::SearchTree::from_parents(L(root), std::move(parent));
}

// Root c; c->{a,b,f}; f->{e,h,i}; i->{d,k}; d->{g}; k->{l}; l->{j}.
inline gst::SearchTree fig_search_tree() {
  return tree_from('c', {{'c', "abf"},
                         {'f', "ehi"},
                         {'i', "dk"},
                         {'d', "g"},
                         {'k', "l"},
                         {'l', "j"}});
}

// Root d; d->{c,f,j}; c->{a,b}; f->{e,g,h}; j->{i,k,l}.
inline gst::SearchTree fig_centroid_tree() {
  return tree_from('d', {{'d', "cfj"}, {'c', "ab"}, {'f', "egh"}, {'j', "ikl"}});
}

// Root c; c->{a,b,f}; f->{e,h,d}; d->{g,i}; i->{k}; k->{j}; j->{l}.
inline gst::SearchTree fig_steiner_closed_tree() {
  return tree_from('c', {{'c', "abf"},
                         {'f', "ehd"},
                         {'d', "gi"},
                         {'i', "k"},
                         {'k', "j"},
                         {'j', "l"}});
}

inline std::vector<gst::VertexId> verts(const std::string& letters) {
  std::vector<gst::VertexId> out;
  for (char c : letters) out.push_back(L(c));
  return out;
}

}  // namespace fixtures
