#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace antictx {

using Adjacency = std::vector<boost::dynamic_bitset<>>;

namespace detail {

inline std::vector<std::size_t> to_list(const boost::dynamic_bitset<>& set) {
  std::vector<std::size_t> out;
  for (auto i = set.find_first(); i != boost::dynamic_bitset<>::npos; i = set.find_next(i)) out.push_back(i);
  return out;
}

inline void bron_kerbosch(const Adjacency& adj, boost::dynamic_bitset<>& r, boost::dynamic_bitset<> p,
                          boost::dynamic_bitset<> x, std::vector<std::vector<std::size_t>>& out) {
  if (p.none() && x.none()) {
    out.push_back(to_list(r));
    return;
  }
  // Pivot: vertex of P u X with the most neighbours in P; lowest index wins ties.
  const auto px = p | x;
  std::size_t pivot = px.find_first();
  std::size_t best = 0;
  for (auto u = px.find_first(); u != boost::dynamic_bitset<>::npos; u = px.find_next(u)) {
    const auto deg = (p & adj[u]).count();
    if (deg > best) {
      best = deg;
      pivot = u;
    }
  }
  const auto candidates = p - adj[pivot];
  for (auto v = candidates.find_first(); v != boost::dynamic_bitset<>::npos; v = candidates.find_next(v)) {
    r.set(v);
    bron_kerbosch(adj, r, p & adj[v], x & adj[v], out);
    r.reset(v);
    p.reset(v);
    x.set(v);
  }
}

}  // namespace detail

/// All maximal cliques of a simple undirected graph, each sorted ascending,
/// returned in lexicographic order. Isolated vertices appear as singletons.
inline std::vector<std::vector<std::size_t>> maximal_cliques(const Adjacency& adj) {
  const auto n = adj.size();
  std::vector<std::vector<std::size_t>> out;
  if (n == 0) return out;
  boost::dynamic_bitset<> r(n), p(n), x(n);
  p.set();
  detail::bron_kerbosch(adj, r, p, x, out);
  std::sort(out.begin(), out.end());
  return out;
}

inline Adjacency empty_graph(std::size_t n) { return Adjacency(n, boost::dynamic_bitset<>(n)); }

inline void add_edge(Adjacency& adj, std::size_t a, std::size_t b) {
  adj[a].set(b);
  adj[b].set(a);
}

}  // namespace antictx
