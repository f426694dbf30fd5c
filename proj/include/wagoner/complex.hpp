#pragma once

// Generic simplicial scaffolding shared by the coset complexes and the
// affine cell complexes: a plain 2-skeleton container, union-find for
// components, and simplicial vertex maps.

#include <algorithm>
#include <array>
#include <numeric>
#include <vector>

#include "wagoner/common.hpp"

namespace wag {

// A 2-skeleton with vertices 0..n-1.  Edges are stored with endpoints in
// poset order when the complex comes from a poset (orientation is not used
// by homology, which sorts by vertex id).
struct SimplicialData {
  std::size_t nverts = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::array<int, 3>> triangles;

  void sort_canonical() {
    for (auto& [a, b] : edges)
      if (a > b) std::swap(a, b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (auto& t : triangles) std::sort(t.begin(), t.end());
    std::sort(triangles.begin(), triangles.end());
    triangles.erase(std::unique(triangles.begin(), triangles.end()), triangles.end());
  }
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      parent_[static_cast<std::size_t>(x)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
      x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

struct ComponentLabels {
  std::size_t count = 0;
  std::vector<int> label;  // vertex -> component id, ids ordered by least vertex
};

inline ComponentLabels components_of(const SimplicialData& sd) {
  UnionFind uf(sd.nverts);
  for (auto [a, b] : sd.edges) uf.unite(a, b);
  ComponentLabels out;
  out.label.assign(sd.nverts, -1);
  for (std::size_t v = 0; v < sd.nverts; ++v) {
    int root = uf.find(static_cast<int>(v));
    if (out.label[static_cast<std::size_t>(root)] < 0)
      out.label[static_cast<std::size_t>(root)] = static_cast<int>(out.count++);
    out.label[v] = out.label[static_cast<std::size_t>(root)];
  }
  return out;
}

// A simplicial map given on vertices; checks and pushes simplices.
struct VertexMap {
  std::vector<int> image;  // domain vertex -> codomain vertex

  int operator()(int v) const { return image[static_cast<std::size_t>(v)]; }

  // image complex data (degenerate simplices collapse)
  SimplicialData push(const SimplicialData& dom, std::size_t codomain_verts) const {
    SimplicialData out;
    out.nverts = codomain_verts;
    for (auto [a, b] : dom.edges) {
      int x = image[static_cast<std::size_t>(a)], y = image[static_cast<std::size_t>(b)];
      if (x == y) continue;
      out.edges.emplace_back(std::min(x, y), std::max(x, y));
    }
    for (auto& t : dom.triangles) {
      std::array<int, 3> im{image[static_cast<std::size_t>(t[0])], image[static_cast<std::size_t>(t[1])],
                            image[static_cast<std::size_t>(t[2])]};
      std::sort(im.begin(), im.end());
      if (im[0] == im[1] || im[1] == im[2]) continue;
      out.triangles.push_back(im);
    }
    out.sort_canonical();
    return out;
  }
};

}  // namespace wag
