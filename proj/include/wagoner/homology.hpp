#pragma once

// Integral simplicial homology of 2-skeletons: boundary matrices, a sparse
// integer elimination front-end (unit pivots only, exact) backed by the
// dense Smith normal form on the remaining core, elementary collapses for
// pre-shrinking, and induced maps on H_1 with a surjectivity verdict.

#include <array>
#include <map>
#include <set>
#include <vector>

#include "wagoner/complex.hpp"
#include "wagoner/intmat.hpp"

namespace wag {

struct HomologyGroup {
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;  // invariant factors > 1

  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  bool operator==(const HomologyGroup& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
};

// ---- sparse integer Smith normal form ---------------------------------------

struct SparseSNFResult {
  std::size_t rank = 0;
  std::vector<BigInt> factors;  // full invariant factor list, chained
};

// rows with few entries; eliminates +-1 pivots with small fill, hands the
// rest to the dense routine
inline SparseSNFResult sparse_snf(std::vector<std::vector<std::pair<int, std::int64_t>>> rows,
                                  std::size_t ncols) {
  SparseSNFResult res;
  std::size_t unit_pivots = 0;

  std::vector<char> row_live(rows.size(), 1);
  std::vector<std::size_t> col_count(ncols, 0);
  for (const auto& r : rows)
    for (auto [c, v] : r) ++col_count[static_cast<std::size_t>(c)];

  auto row_nnz = [&](std::size_t ri) { return rows[ri].size(); };

  // column -> candidate rows (kept approximately, validated on use)
  std::vector<std::vector<int>> col_rows(ncols);
  for (std::size_t ri = 0; ri < rows.size(); ++ri)
    for (auto [c, v] : rows[ri]) col_rows[static_cast<std::size_t>(c)].push_back(static_cast<int>(ri));

  auto find_entry = [&](std::size_t ri, int c) -> std::int64_t {
    for (auto [cc, v] : rows[ri])
      if (cc == c) return v;
    return 0;
  };

  while (true) {
    // best unit pivot by Markowitz cost
    int best_row = -1, best_col = -1;
    std::size_t best_cost = static_cast<std::size_t>(-1);
    for (std::size_t ri = 0; ri < rows.size(); ++ri) {
      if (!row_live[ri] || rows[ri].empty()) continue;
      for (auto [c, v] : rows[ri]) {
        if (v != 1 && v != -1) continue;
        std::size_t cost = (row_nnz(ri) - 1) * (col_count[static_cast<std::size_t>(c)] - 1);
        if (cost < best_cost) {
          best_cost = cost;
          best_row = static_cast<int>(ri);
          best_col = c;
          if (cost == 0) break;
        }
      }
      if (best_cost == 0) break;
    }
    if (best_row < 0) break;

    const std::size_t pr = static_cast<std::size_t>(best_row);
    std::int64_t pv = find_entry(pr, best_col);
    // eliminate best_col from every other row carrying it
    std::vector<int> carriers = col_rows[static_cast<std::size_t>(best_col)];
    for (int ri : carriers) {
      std::size_t r = static_cast<std::size_t>(ri);
      if (!row_live[r] || r == pr) continue;
      std::int64_t v = find_entry(r, best_col);
      if (v == 0) continue;
      // row_r -= (v/pv) * row_pr  with pv = +-1
      std::int64_t f = pv == 1 ? v : -v;
      std::map<int, std::int64_t> merged;
      for (auto [c, x] : rows[r]) merged[c] = x;
      for (auto [c, x] : rows[pr]) {
        std::int64_t& slot = merged[c];
        slot = checked_sub(slot, checked_mul(f, x));
      }
      std::vector<std::pair<int, std::int64_t>> fresh;
      fresh.reserve(merged.size());
      for (auto [c, x] : merged) {
        if (x == 0) continue;
        fresh.emplace_back(c, x);
      }
      // column bookkeeping
      for (auto [c, x] : rows[r]) --col_count[static_cast<std::size_t>(c)];
      for (auto [c, x] : fresh) {
        ++col_count[static_cast<std::size_t>(c)];
        col_rows[static_cast<std::size_t>(c)].push_back(static_cast<int>(r));
      }
      rows[r] = std::move(fresh);
    }
    // retire pivot row and column
    for (auto [c, x] : rows[pr]) --col_count[static_cast<std::size_t>(c)];
    rows[pr].clear();
    row_live[pr] = 0;
    ++unit_pivots;
  }

  // dense core
  std::set<int> live_cols;
  std::size_t live_rows = 0;
  for (std::size_t ri = 0; ri < rows.size(); ++ri) {
    if (rows[ri].empty()) continue;
    ++live_rows;
    for (auto [c, v] : rows[ri]) live_cols.insert(c);
  }
  res.rank = unit_pivots;
  res.factors.assign(unit_pivots, BigInt(1));
  if (live_rows == 0) return res;

  std::map<int, std::size_t> colmap;
  for (int c : live_cols) colmap.emplace(c, colmap.size());
  IntMatrix core(live_rows, live_cols.size());
  std::size_t rr = 0;
  for (std::size_t ri = 0; ri < rows.size(); ++ri) {
    if (rows[ri].empty()) continue;
    for (auto [c, v] : rows[ri]) core.at(rr, colmap[c]) = v;
    ++rr;
  }
  SNFResult dense = smith_normal_form(core);
  res.rank += dense.rank;
  for (const BigInt& f : dense.factors) res.factors.push_back(f);
  return res;
}

// ---- chain complexes of 2-skeletons ------------------------------------------

inline std::vector<std::vector<std::pair<int, std::int64_t>>> boundary_rows_d1(
    const SimplicialData& sd) {
  std::vector<std::vector<std::pair<int, std::int64_t>>> rows;
  rows.reserve(sd.edges.size());
  for (auto [a, b] : sd.edges) rows.push_back({{a, -1}, {b, 1}});
  return rows;
}

// each triangle row lists its three edges with orientation signs
inline std::vector<std::vector<std::pair<int, std::int64_t>>> boundary_rows_d2(
    const SimplicialData& sd) {
  std::map<std::pair<int, int>, int> edge_id;
  for (std::size_t e = 0; e < sd.edges.size(); ++e) edge_id[sd.edges[e]] = static_cast<int>(e);
  std::vector<std::vector<std::pair<int, std::int64_t>>> rows;
  rows.reserve(sd.triangles.size());
  for (const auto& t : sd.triangles) {
    // d[abc] = [bc] - [ac] + [ab], vertices already sorted a < b < c
    auto eab = edge_id.find({t[0], t[1]});
    auto eac = edge_id.find({t[0], t[2]});
    auto ebc = edge_id.find({t[1], t[2]});
    if (eab == edge_id.end() || eac == edge_id.end() || ebc == edge_id.end())
      throw error("triangle with a missing edge");
    rows.push_back({{ebc->second, 1}, {eac->second, -1}, {eab->second, 1}});
  }
  return rows;
}

// checks d1 ( d2 (t) ) = 0 for every triangle
inline void verify_boundary_square(const SimplicialData& sd) {
  for (const auto& t : sd.triangles) {
    std::map<int, int> acc;
    auto add_edge = [&](int a, int b, int sign) {
      acc[a] += -sign;
      acc[b] += sign;
    };
    add_edge(t[1], t[2], 1);
    add_edge(t[0], t[2], -1);
    add_edge(t[0], t[1], 1);
    for (auto [v, c] : acc)
      if (c != 0) throw error("boundary of a boundary is nonzero");
  }
}

inline HomologyGroup homology_h0(const SimplicialData& sd) {
  HomologyGroup h;
  h.free_rank = components_of(sd).count;
  return h;
}

inline HomologyGroup homology_h1(const SimplicialData& sd) {
  verify_boundary_square(sd);
  const std::size_t components = components_of(sd).count;
  const std::size_t rank_d1 = sd.nverts - components;
  SparseSNFResult d2 = sparse_snf(boundary_rows_d2(sd), sd.edges.size());
  HomologyGroup h;
  h.free_rank = sd.edges.size() - rank_d1 - d2.rank;
  for (const BigInt& f : d2.factors)
    if (f != 1 && f != -1) h.torsion.push_back(f < 0 ? BigInt(-f) : f);
  return h;
}

// ---- elementary collapses -----------------------------------------------------

struct CollapseResult {
  SimplicialData data;            // same vertex numbering
  std::vector<char> vertex_alive;  // leaves removed by vertex-edge collapses
  std::size_t collapsed_pairs = 0;
};

// free-face collapses preserve the homotopy type; used to shrink big
// complexes before homology or edge-path work
inline CollapseResult collapse(const SimplicialData& sd) {
  CollapseResult out;
  out.vertex_alive.assign(sd.nverts, 1);
  std::vector<char> edge_alive(sd.edges.size(), 1), tri_alive(sd.triangles.size(), 1);
  std::map<std::pair<int, int>, int> edge_id;
  for (std::size_t e = 0; e < sd.edges.size(); ++e) edge_id[sd.edges[e]] = static_cast<int>(e);

  std::vector<std::vector<int>> edge_tris(sd.edges.size());
  for (std::size_t t = 0; t < sd.triangles.size(); ++t) {
    const auto& tr = sd.triangles[t];
    edge_tris[static_cast<std::size_t>(edge_id[{tr[0], tr[1]}])].push_back(static_cast<int>(t));
    edge_tris[static_cast<std::size_t>(edge_id[{tr[0], tr[2]}])].push_back(static_cast<int>(t));
    edge_tris[static_cast<std::size_t>(edge_id[{tr[1], tr[2]}])].push_back(static_cast<int>(t));
  }
  std::vector<int> edge_tri_count(sd.edges.size(), 0);
  for (std::size_t e = 0; e < sd.edges.size(); ++e)
    edge_tri_count[e] = static_cast<int>(edge_tris[e].size());

  // edge-triangle collapses
  std::vector<int> queue;
  for (std::size_t e = 0; e < sd.edges.size(); ++e)
    if (edge_tri_count[e] == 1) queue.push_back(static_cast<int>(e));
  auto tri_edges = [&](int t) {
    const auto& tr = sd.triangles[static_cast<std::size_t>(t)];
    return std::array<int, 3>{edge_id[{tr[0], tr[1]}], edge_id[{tr[0], tr[2]}],
                              edge_id[{tr[1], tr[2]}]};
  };
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int e = queue[head];
    if (!edge_alive[static_cast<std::size_t>(e)] || edge_tri_count[static_cast<std::size_t>(e)] != 1)
      continue;
    int tfound = -1;
    for (int t : edge_tris[static_cast<std::size_t>(e)])
      if (tri_alive[static_cast<std::size_t>(t)]) tfound = t;
    if (tfound < 0) continue;
    edge_alive[static_cast<std::size_t>(e)] = 0;
    tri_alive[static_cast<std::size_t>(tfound)] = 0;
    ++out.collapsed_pairs;
    for (int oe : tri_edges(tfound)) {
      if (!edge_alive[static_cast<std::size_t>(oe)]) continue;
      if (--edge_tri_count[static_cast<std::size_t>(oe)] == 1) queue.push_back(oe);
    }
  }

  // vertex-edge collapses on what remains
  std::vector<std::vector<int>> vertex_edges(sd.nverts);
  for (std::size_t e = 0; e < sd.edges.size(); ++e) {
    if (!edge_alive[e]) continue;
    vertex_edges[static_cast<std::size_t>(sd.edges[e].first)].push_back(static_cast<int>(e));
    vertex_edges[static_cast<std::size_t>(sd.edges[e].second)].push_back(static_cast<int>(e));
  }
  std::vector<int> vdeg(sd.nverts, 0);
  std::vector<int> vtris(sd.nverts, 0);
  for (std::size_t t = 0; t < sd.triangles.size(); ++t)
    if (tri_alive[t])
      for (int v : sd.triangles[t]) ++vtris[static_cast<std::size_t>(v)];
  for (std::size_t v = 0; v < sd.nverts; ++v) {
    for (int e : vertex_edges[v])
      if (edge_alive[static_cast<std::size_t>(e)]) ++vdeg[v];
  }
  std::vector<int> vqueue;
  for (std::size_t v = 0; v < sd.nverts; ++v)
    if (vdeg[v] == 1 && vtris[v] == 0) vqueue.push_back(static_cast<int>(v));
  for (std::size_t head = 0; head < vqueue.size(); ++head) {
    int v = vqueue[head];
    if (!out.vertex_alive[static_cast<std::size_t>(v)] || vdeg[static_cast<std::size_t>(v)] != 1 ||
        vtris[static_cast<std::size_t>(v)] != 0)
      continue;
    int efound = -1;
    for (int e : vertex_edges[static_cast<std::size_t>(v)])
      if (edge_alive[static_cast<std::size_t>(e)]) efound = e;
    if (efound < 0) continue;
    out.vertex_alive[static_cast<std::size_t>(v)] = 0;
    edge_alive[static_cast<std::size_t>(efound)] = 0;
    ++out.collapsed_pairs;
    auto [a, b] = sd.edges[static_cast<std::size_t>(efound)];
    int other = (a == v) ? b : a;
    if (--vdeg[static_cast<std::size_t>(other)] == 1 && vtris[static_cast<std::size_t>(other)] == 0)
      vqueue.push_back(other);
    vdeg[static_cast<std::size_t>(v)] = 0;
  }

  out.data.nverts = sd.nverts;
  for (std::size_t e = 0; e < sd.edges.size(); ++e)
    if (edge_alive[e]) out.data.edges.push_back(sd.edges[e]);
  for (std::size_t t = 0; t < sd.triangles.size(); ++t)
    if (tri_alive[t]) out.data.triangles.push_back(sd.triangles[t]);
  return out;
}

// H_1 with collapse preprocessing (the homotopy type is preserved)
inline HomologyGroup homology_h1_collapsed(const SimplicialData& sd) {
  CollapseResult c = collapse(sd);
  return homology_h1(c.data);
}

// ---- induced map on H_1 --------------------------------------------------------

struct InducedH1 {
  HomologyGroup domain, codomain;
  bool surjective = false;
};

namespace detail {

// integer kernel basis of d1 as cycle vectors (edge-indexed), via SNF
// transforms: kernel of A = columns of R beyond the rank, for L A R = D
inline std::vector<std::vector<BigInt>> cycle_basis(const SimplicialData& sd) {
  // A: nverts x nedges, column e = d(edge e)
  IntMatrix a(sd.nverts, sd.edges.size());
  for (std::size_t e = 0; e < sd.edges.size(); ++e) {
    a.at(static_cast<std::size_t>(sd.edges[e].first), e) -= 1;
    a.at(static_cast<std::size_t>(sd.edges[e].second), e) += 1;
  }
  SNFResult snf = smith_normal_form(a, true);
  std::vector<std::vector<BigInt>> basis;
  for (std::size_t c = snf.rank; c < sd.edges.size(); ++c) {
    std::vector<BigInt> v(sd.edges.size());
    for (std::size_t r = 0; r < sd.edges.size(); ++r) v[r] = snf.right.at(r, c);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace detail

// H_1(f) for a simplicial vertex map f: X -> Y between 2-skeletons; the
// verdict is whether the image classes generate H_1(Y).  Dense linear
// algebra: intended for the moderate complexes of the projection checks.
inline InducedH1 induced_h1(const SimplicialData& x, const SimplicialData& y, const VertexMap& f) {
  InducedH1 out;
  out.domain = homology_h1(x);
  out.codomain = homology_h1(y);

  std::map<std::pair<int, int>, std::size_t> yedge;
  for (std::size_t e = 0; e < y.edges.size(); ++e) yedge[y.edges[e]] = e;

  // chain image of each X-cycle in Y-edge coordinates
  auto push_cycle = [&](const std::vector<BigInt>& cyc) {
    std::vector<BigInt> out_vec(y.edges.size());
    for (std::size_t e = 0; e < x.edges.size(); ++e) {
      if (cyc[e] == 0) continue;
      int a = f(x.edges[e].first), b = f(x.edges[e].second);
      if (a == b) continue;
      BigInt sign = 1;
      if (a > b) { std::swap(a, b); sign = -1; }
      auto it = yedge.find({a, b});
      if (it == yedge.end()) throw error("vertex map is not simplicial on an edge");
      out_vec[it->second] += sign * cyc[e];
    }
    return out_vec;
  };

  auto xcycles = detail::cycle_basis(x);
  auto ycycles = detail::cycle_basis(y);

  // express [images | boundaries of Y] in the Y-cycle lattice and compare
  // against the full lattice: surjective iff the quotient is trivial
  // solve K * t = v for each column v (K = Y-cycle basis, full column rank)
  IntMatrix k(y.edges.size(), ycycles.size());
  for (std::size_t c = 0; c < ycycles.size(); ++c)
    for (std::size_t r = 0; r < y.edges.size(); ++r) k.at(r, c) = ycycles[c][r];
  SNFResult ksnf = smith_normal_form(k, true);

  auto in_cycle_coords = [&](const std::vector<BigInt>& v) {
    // t = R * D^{-1} * (L v)|first, exact division required
    std::vector<BigInt> lv(y.edges.size());
    for (std::size_t r = 0; r < y.edges.size(); ++r) {
      BigInt acc = 0;
      for (std::size_t c2 = 0; c2 < y.edges.size(); ++c2) acc += ksnf.left.at(r, c2) * v[c2];
      lv[r] = acc;
    }
    std::vector<BigInt> t(ycycles.size());
    for (std::size_t i = 0; i < ycycles.size(); ++i) {
      if (i < ksnf.rank) {
        if (lv[i] % ksnf.factors[i] != 0) throw error("cycle image outside the cycle lattice");
        t[i] = lv[i] / ksnf.factors[i];
      } else {
        t[i] = 0;
      }
    }
    for (std::size_t i = ycycles.size(); i < y.edges.size(); ++i)
      if (lv[i] != 0) throw error("cycle image outside the cycle lattice");
    std::vector<BigInt> coords(ycycles.size());
    for (std::size_t r = 0; r < ycycles.size(); ++r) {
      BigInt acc = 0;
      for (std::size_t c2 = 0; c2 < ycycles.size(); ++c2) acc += ksnf.right.at(r, c2) * t[c2];
      coords[r] = acc;
    }
    return coords;
  };

  std::vector<std::vector<BigInt>> columns;
  for (const auto& cyc : xcycles) columns.push_back(in_cycle_coords(push_cycle(cyc)));
  auto d2rows = boundary_rows_d2(y);
  for (const auto& row : d2rows) {
    std::vector<BigInt> v(y.edges.size());
    for (auto [e, s] : row) v[static_cast<std::size_t>(e)] = s;
    columns.push_back(in_cycle_coords(v));
  }

  IntMatrix m(ycycles.size(), columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (std::size_t r = 0; r < ycycles.size(); ++r) m.at(r, c) = columns[c][r];
  SNFResult msnf = smith_normal_form(m);
  bool full = msnf.rank == ycycles.size();
  for (std::size_t i = 0; full && i < msnf.rank; ++i)
    if (msnf.factors[i] != 1 && msnf.factors[i] != -1) full = false;
  out.surjective = full;
  return out;
}

}  // namespace wag
