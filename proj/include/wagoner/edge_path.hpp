#pragma once

// Edge-path group of a connected 2-skeleton: spanning tree by breadth-first
// search with sorted adjacency, one generator per non-tree edge, one relator
// per triangle.  The standard independent oracle for fundamental groups.

#include <map>
#include <vector>

#include "wagoner/complex.hpp"
#include "wagoner/presentation.hpp"

namespace wag {

struct EdgePathResult {
  Presentation presentation;
  std::vector<int> component;  // vertices of the basepoint component
};

inline EdgePathResult edge_path_presentation(const SimplicialData& sd, int basepoint,
                                             const std::vector<char>* vertex_alive = nullptr) {
  auto alive = [&](int v) {
    return vertex_alive == nullptr || (*vertex_alive)[static_cast<std::size_t>(v)] != 0;
  };
  if (!alive(basepoint)) throw invalid_argument("basepoint is not a live vertex");

  std::vector<std::vector<std::pair<int, int>>> adj(sd.nverts);  // (neighbor, edge id)
  for (std::size_t e = 0; e < sd.edges.size(); ++e) {
    auto [a, b] = sd.edges[e];
    if (!alive(a) || !alive(b)) throw invalid_argument("edge touches a dead vertex");
    adj[static_cast<std::size_t>(a)].emplace_back(b, static_cast<int>(e));
    adj[static_cast<std::size_t>(b)].emplace_back(a, static_cast<int>(e));
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());

  std::vector<char> in_tree(sd.edges.size(), 0);
  std::vector<char> visited(sd.nverts, 0);
  std::vector<int> order{basepoint};
  visited[static_cast<std::size_t>(basepoint)] = 1;
  for (std::size_t head = 0; head < order.size(); ++head) {
    int v = order[head];
    for (auto [u, e] : adj[static_cast<std::size_t>(v)]) {
      if (visited[static_cast<std::size_t>(u)]) continue;
      visited[static_cast<std::size_t>(u)] = 1;
      in_tree[static_cast<std::size_t>(e)] = 1;
      order.push_back(u);
    }
  }

  EdgePathResult out;
  out.component = order;

  // generators: non-tree edges inside the component, oriented min -> max
  std::map<int, int> gen_of_edge;
  for (std::size_t e = 0; e < sd.edges.size(); ++e) {
    if (in_tree[e]) continue;
    auto [a, b] = sd.edges[e];
    if (!visited[static_cast<std::size_t>(a)]) continue;
    gen_of_edge[static_cast<int>(e)] = static_cast<int>(out.presentation.generators.size());
    out.presentation.generators.push_back("e" + std::to_string(e));
  }

  std::map<std::pair<int, int>, int> edge_id;
  for (std::size_t e = 0; e < sd.edges.size(); ++e) edge_id[sd.edges[e]] = static_cast<int>(e);
  auto letter = [&](int a, int b) -> int {  // traverse a -> b
    int e = edge_id.at({std::min(a, b), std::max(a, b)});
    if (in_tree[static_cast<std::size_t>(e)]) return 0;
    int g = gen_of_edge.at(e) + 1;
    return a < b ? g : -g;
  };

  for (const auto& t : sd.triangles) {
    if (!visited[static_cast<std::size_t>(t[0])]) continue;
    Word w;
    auto push = [&](int x) {
      if (x != 0) w.push_back(x);
    };
    push(letter(t[0], t[1]));
    push(letter(t[1], t[2]));
    push(letter(t[2], t[0]));
    w = free_reduce(w);
    if (!w.empty()) out.presentation.relators.push_back(std::move(w));
  }
  out.presentation.reduce_relators();
  return out;
}

}  // namespace wag
