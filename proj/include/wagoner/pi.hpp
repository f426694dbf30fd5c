#pragma once

// Homotopy computations: abelianizations, Reidemeister-Schreier rewriting,
// the stabilizer-colimit fundamental group harness (groups acting with a
// strict fundamental domain), Steinberg group orders, the subsystem colimit
// checks, and the full Wagoner pi_0/pi_1 pipeline with its independent
// edge-path oracle.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wagoner/edge_path.hpp"
#include "wagoner/group_system.hpp"
#include "wagoner/homology.hpp"
#include "wagoner/schreier.hpp"
#include "wagoner/wagoner_complex.hpp"

namespace wag {

// ---- abelianization ----------------------------------------------------------

inline HomologyGroup abelianization(const Presentation& p) {
  std::vector<std::vector<std::pair<int, std::int64_t>>> rows;
  rows.reserve(p.relators.size());
  for (const Word& r : p.relators) {
    std::map<int, std::int64_t> exp;
    for (int x : r) exp[std::abs(x) - 1] += x > 0 ? 1 : -1;
    std::vector<std::pair<int, std::int64_t>> row;
    for (auto [g, e] : exp)
      if (e != 0) row.emplace_back(g, e);
    rows.push_back(std::move(row));
  }
  SparseSNFResult snf = sparse_snf(std::move(rows), p.generators.size());
  HomologyGroup h;
  h.free_rank = p.generators.size() - snf.rank;
  for (const BigInt& f : snf.factors)
    if (f != 1 && f != -1) h.torsion.push_back(f < 0 ? BigInt(-f) : f);
  return h;
}

// ---- Reidemeister-Schreier -----------------------------------------------------

// presentation of the kernel of a homomorphism onto a finite group, given by
// the right-multiplication action of each generator on the finite group's
// elements (cosets of the kernel), base coset 0
inline Presentation reidemeister_schreier(const Presentation& p,
                                          const std::vector<Perm>& gen_action) {
  if (gen_action.size() != p.generators.size())
    throw invalid_argument("one action permutation per generator required");
  const std::size_t n = gen_action.empty() ? 1 : gen_action.front().size();

  // Schreier tree by BFS over cosets, generators in order, then inverses
  std::vector<int> parent_coset(n, -1), parent_letter(n, 0);
  std::vector<char> visited(n, 0);
  std::vector<int> order{0};
  visited[0] = 1;
  for (std::size_t head = 0; head < order.size(); ++head) {
    int c = order[head];
    for (std::size_t g = 0; g < gen_action.size(); ++g) {
      for (int dir : {+1, -1}) {
        int img = dir > 0 ? gen_action[g][static_cast<std::size_t>(c)]
                          : static_cast<int>(std::find(gen_action[g].begin(), gen_action[g].end(), c) -
                                             gen_action[g].begin());
        if (visited[static_cast<std::size_t>(img)]) continue;
        visited[static_cast<std::size_t>(img)] = 1;
        parent_coset[static_cast<std::size_t>(img)] = c;
        parent_letter[static_cast<std::size_t>(img)] = dir * (static_cast<int>(g) + 1);
        order.push_back(img);
      }
    }
  }
  for (char v : visited)
    if (!v) throw invalid_argument("coset action is not transitive");

  // Schreier generators: one per non-tree (coset, generator) pair
  Presentation out;
  std::map<std::pair<int, int>, int> schreier;  // (coset, gen) -> generator id
  auto is_tree_edge = [&](int c, int g1) {
    int img = gen_action[static_cast<std::size_t>(g1 - 1)][static_cast<std::size_t>(c)];
    return (parent_coset[static_cast<std::size_t>(img)] == c &&
            parent_letter[static_cast<std::size_t>(img)] == g1) ||
           (parent_coset[static_cast<std::size_t>(c)] == img &&
            parent_letter[static_cast<std::size_t>(c)] == -g1);
  };
  for (int c = 0; c < static_cast<int>(n); ++c)
    for (std::size_t g = 0; g < gen_action.size(); ++g) {
      if (is_tree_edge(c, static_cast<int>(g) + 1)) continue;
      schreier[{c, static_cast<int>(g)}] = static_cast<int>(out.generators.size());
      out.generators.push_back("s" + std::to_string(c) + "_" + std::to_string(g));
    }

  auto trace_letter = [&](int& c, int letter) -> int {
    // returns signed Schreier generator (0 for tree edges), advances coset
    if (letter > 0) {
      int g = letter - 1;
      int from = c;
      c = gen_action[static_cast<std::size_t>(g)][static_cast<std::size_t>(c)];
      if (is_tree_edge(from, letter)) return 0;
      return schreier.at({from, g}) + 1;
    }
    int g = -letter - 1;
    const Perm& act = gen_action[static_cast<std::size_t>(g)];
    int from = static_cast<int>(std::find(act.begin(), act.end(), c) - act.begin());
    int was = c;
    c = from;
    (void)was;
    if (is_tree_edge(from, -letter)) return 0;
    return -(schreier.at({from, g}) + 1);
  };

  for (const Word& r : p.relators)
    for (int c = 0; c < static_cast<int>(n); ++c) {
      Word w;
      int cur = c;
      for (int letter : r) {
        int s = trace_letter(cur, letter);
        if (s != 0) w.push_back(s);
      }
      if (cur != c) throw error("relator trace did not close");
      w = free_reduce(w);
      if (!w.empty()) out.relators.push_back(std::move(w));
    }
  out.reduce_relators();
  return out;
}

// ---- generic systems of permutation groups (Theorem 5.1 harness) ---------------

struct GroupSystem {
  struct Node {
    std::string label;
    std::vector<Perm> elements;  // sorted, including the identity
  };
  std::vector<Node> nodes;
  std::vector<std::pair<int, int>> arrows;  // (sub, super), verified inclusions

  void verify() const {
    for (auto [a, b] : arrows) {
      const auto& sub = nodes[static_cast<std::size_t>(a)].elements;
      const auto& sup = nodes[static_cast<std::size_t>(b)].elements;
      for (const Perm& m : sub)
        if (!std::binary_search(sup.begin(), sup.end(), m))
          throw invalid_argument("system arrow is not a subgroup inclusion");
    }
  }
};

// free product of the nodes modulo multiplication tables and identification
// along the arrows
inline Presentation colimit_presentation(const GroupSystem& sys) {
  sys.verify();
  Presentation p;
  std::map<std::pair<int, std::size_t>, int> genidx;
  for (std::size_t n = 0; n < sys.nodes.size(); ++n) {
    const auto& elems = sys.nodes[n].elements;
    for (std::size_t e = 0; e < elems.size(); ++e) {
      if (perm_is_identity(elems[e])) continue;
      genidx[{static_cast<int>(n), e}] = static_cast<int>(p.generators.size());
      p.generators.push_back(sys.nodes[n].label + "." + std::to_string(e));
    }
  }
  auto letter = [&](int node, const std::vector<Perm>& elems, const Perm& m) -> int {
    auto it = std::lower_bound(elems.begin(), elems.end(), m);
    if (it == elems.end() || *it != m) throw error("product left the node");
    auto g = genidx.find({node, static_cast<std::size_t>(it - elems.begin())});
    return g == genidx.end() ? 0 : g->second + 1;
  };
  for (std::size_t n = 0; n < sys.nodes.size(); ++n) {
    const auto& elems = sys.nodes[n].elements;
    for (const Perm& a : elems)
      for (const Perm& b : elems) {
        int la = letter(static_cast<int>(n), elems, a);
        int lb = letter(static_cast<int>(n), elems, b);
        if (la == 0 || lb == 0) continue;
        int lab = letter(static_cast<int>(n), elems, perm_mul(a, b));
        Word w{la, lb};
        if (lab != 0) w.push_back(-lab);
        p.relators.push_back(free_reduce(w));
      }
  }
  for (auto [sub, sup] : sys.arrows) {
    const auto& se = sys.nodes[static_cast<std::size_t>(sub)].elements;
    const auto& pe = sys.nodes[static_cast<std::size_t>(sup)].elements;
    for (const Perm& m : se) {
      int a = letter(sub, se, m);
      int b = letter(sup, pe, m);
      if (a == 0 && b == 0) continue;
      p.relators.push_back(free_reduce(Word{a, -b}));
    }
  }
  p.reduce_relators();
  return p;
}

// ---- Theorem 5.1 harness -------------------------------------------------------

struct Pi1Result {
  TCStatus status = TCStatus::overflow;
  std::uint64_t colimit_order = 0;  // valid when complete
  std::uint64_t g0_order = 0;
  std::uint64_t kernel_order = 0;  // colimit/|G_0| when complete
  std::size_t component_count = 0;
  HomologyGroup kernel_abelianization;
  std::string method;
  std::string note;
};

struct FundamentalDomain {
  std::vector<int> vertices;
  std::vector<std::pair<int, int>> edges;       // subsets of the complex's edges
  std::vector<std::array<int, 3>> triangles;
};

// pi_0 and pi_1 of a complex from a simplicial action with a strict
// fundamental domain; preconditions are machine-verified
inline Pi1Result pi1_via_action(const SimplicialData& x, const std::vector<Perm>& group,
                                const FundamentalDomain& y, TCOptions tc_opts = {}) {
  // --- strictness: every orbit meets Y exactly once
  auto orbit_hits = [&](auto simplex, auto apply, const auto& domain_list) {
    std::set<decltype(simplex)> orbit;
    for (const Perm& g : group) orbit.insert(apply(g, simplex));
    std::size_t hits = 0;
    for (const auto& d : domain_list)
      if (orbit.count(d)) ++hits;
    return hits;
  };
  auto apply_v = [](const Perm& g, int v) { return g[static_cast<std::size_t>(v)]; };
  auto apply_e = [](const Perm& g, std::pair<int, int> e) {
    int a = g[static_cast<std::size_t>(e.first)], b = g[static_cast<std::size_t>(e.second)];
    return std::make_pair(std::min(a, b), std::max(a, b));
  };
  auto apply_t = [](const Perm& g, std::array<int, 3> t) {
    std::array<int, 3> s{g[static_cast<std::size_t>(t[0])], g[static_cast<std::size_t>(t[1])],
                         g[static_cast<std::size_t>(t[2])]};
    std::sort(s.begin(), s.end());
    return s;
  };
  for (std::size_t v = 0; v < x.nverts; ++v)
    if (orbit_hits(static_cast<int>(v), apply_v, y.vertices) != 1)
      throw invalid_argument("fundamental domain is not strict on vertices");
  for (const auto& e : x.edges)
    if (orbit_hits(e, apply_e, y.edges) != 1)
      throw invalid_argument("fundamental domain is not strict on edges");
  for (const auto& t : x.triangles)
    if (orbit_hits(t, apply_t, y.triangles) != 1)
      throw invalid_argument("fundamental domain is not strict on triangles");

  // --- Y connected and simply connected, via the edge-path oracle
  {
    std::map<int, int> local;
    for (int v : y.vertices) local.emplace(v, static_cast<int>(local.size()));
    SimplicialData ysd;
    ysd.nverts = local.size();
    for (auto [a, b] : y.edges) ysd.edges.emplace_back(local.at(a), local.at(b));
    for (const auto& t : y.triangles)
      ysd.triangles.push_back({local.at(t[0]), local.at(t[1]), local.at(t[2])});
    ysd.sort_canonical();
    EdgePathResult ep = edge_path_presentation(ysd, 0);
    if (ep.component.size() != ysd.nverts)
      throw invalid_argument("fundamental domain is not connected");
    if (!ep.presentation.generators.empty()) {
      CosetTable tc(ep.presentation, TCOptions{std::max<std::size_t>(1 << 16, 4096), 4});
      if (tc.status() != TCStatus::complete || tc.order() != 1)
        throw invalid_argument("fundamental domain is not simply connected");
    }
  }

  // --- stabilizer system over the simplices of Y
  GroupSystem sys;
  std::vector<std::vector<Perm>> stab_sets;
  auto pointwise_stab = [&](const std::vector<int>& verts) {
    std::vector<Perm> out;
    for (const Perm& g : group) {
      bool fix = true;
      for (int v : verts)
        if (g[static_cast<std::size_t>(v)] != v) { fix = false; break; }
      if (fix) out.push_back(g);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  std::map<std::vector<int>, int> node_of_simplex;
  auto add_node = [&](const std::vector<int>& verts, const std::string& label) {
    GroupSystem::Node node{label, pointwise_stab(verts)};
    node_of_simplex[verts] = static_cast<int>(sys.nodes.size());
    sys.nodes.push_back(std::move(node));
  };
  for (int v : y.vertices) add_node({v}, "v" + std::to_string(v));
  for (auto [a, b] : y.edges) add_node({a, b}, "e" + std::to_string(a) + "_" + std::to_string(b));
  for (const auto& t : y.triangles)
    add_node({t[0], t[1], t[2]},
             "t" + std::to_string(t[0]) + "_" + std::to_string(t[1]) + "_" + std::to_string(t[2]));
  // arrows: stabilizer of a simplex into the stabilizer of each face
  for (auto [a, b] : y.edges) {
    int e = node_of_simplex.at({a, b});
    sys.arrows.emplace_back(e, node_of_simplex.at({a}));
    sys.arrows.emplace_back(e, node_of_simplex.at({b}));
  }
  for (const auto& t : y.triangles) {
    int tn = node_of_simplex.at({t[0], t[1], t[2]});
    sys.arrows.emplace_back(tn, node_of_simplex.at({t[0], t[1]}));
    sys.arrows.emplace_back(tn, node_of_simplex.at({t[0], t[2]}));
    sys.arrows.emplace_back(tn, node_of_simplex.at({t[1], t[2]}));
  }

  // --- G_0 = subgroup generated by all stabilizers
  std::set<Perm> g0{perm_identity(group.front().size())};
  {
    std::vector<Perm> gens;
    for (const auto& node : sys.nodes)
      for (const Perm& m : node.elements) gens.push_back(m);
    std::vector<Perm> queue(g0.begin(), g0.end());
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (const Perm& g : gens) {
        Perm nxt = perm_mul(queue[head], g);
        if (g0.insert(nxt).second) queue.push_back(nxt);
      }
  }

  Pi1Result res;
  res.method = "stabilizer-colimit";
  res.g0_order = g0.size();
  res.component_count = group.size() / g0.size();
  if (components_of(x).count != res.component_count)
    throw error("component count disagrees with [G : G_0]");

  Presentation pres = colimit_presentation(sys);
  CosetTable tc(pres, tc_opts);
  res.status = tc.status();
  if (res.status == TCStatus::complete) {
    res.colimit_order = tc.order();
    res.kernel_order = res.colimit_order / res.g0_order;
  }

  // kernel abelianization via Reidemeister-Schreier over the G_0 action:
  // the colimit surjects onto G_0, generators act by right multiplication
  {
    std::vector<Perm> g0_elems(g0.begin(), g0.end());
    std::map<Perm, int> idx;
    for (std::size_t i = 0; i < g0_elems.size(); ++i) idx.emplace(g0_elems[i], static_cast<int>(i));
    // generator -> its permutation element
    std::vector<Perm> gen_elems;
    for (std::size_t n = 0; n < sys.nodes.size(); ++n)
      for (const Perm& m : sys.nodes[n].elements)
        if (!perm_is_identity(m)) gen_elems.push_back(m);
    if (gen_elems.size() != pres.generators.size())
      throw error("generator bookkeeping mismatch");
    std::vector<Perm> action;
    for (const Perm& ge : gen_elems) {
      Perm a(g0_elems.size());
      for (std::size_t i = 0; i < g0_elems.size(); ++i)
        a[i] = idx.at(perm_mul(g0_elems[i], ge));
      action.push_back(std::move(a));
    }
    Presentation kernel = reidemeister_schreier(pres, action);
    tietze_simplify(kernel);
    res.kernel_abelianization = abelianization(kernel);
  }
  return res;
}

// ---- Steinberg group and subsystem orders ---------------------------------------

struct SteinbergReport {
  RootSystemColimit::Result non_nested, all_prenilpotent;
  bool variants_agree = false;
};

inline SteinbergReport steinberg_order(const RootDatumInstance& inst, TCOptions opts = {}) {
  RootSystemColimit eng(inst);
  SteinbergReport rep;
  rep.non_nested = eng.colimit_order(steinberg_nodes(inst, SteinbergVariant::non_nested_only), opts);
  rep.all_prenilpotent =
      eng.colimit_order(steinberg_nodes(inst, SteinbergVariant::all_prenilpotent), opts);
  rep.variants_agree = rep.non_nested.status == TCStatus::complete &&
                       rep.all_prenilpotent.status == TCStatus::complete &&
                       rep.non_nested.order == rep.all_prenilpotent.order;
  return rep;
}

struct TildeGReport {
  RootSystemColimit::Result tilde_g;   // colimit of the U_s system
  std::uint64_t steinberg = 0;          // |Ĝ| via the non-nested system
  bool tilde_equals_steinberg = false;
  struct Subsystem {
    CoxSimplex s;
    std::uint64_t expected = 0;  // |U_s|
    std::uint64_t got = 0;
    bool ok = false;
  };
  std::vector<Subsystem> subsystems;
  bool all_subsystems_ok = true;
};

inline TildeGReport tilde_g_checks(const RootDatumInstance& inst, TCOptions opts = {}) {
  RootSystemColimit eng(inst);
  TildeGReport rep;
  rep.tilde_g = eng.colimit_order(u_s_system_nodes(inst), opts);
  auto st = eng.colimit_order(steinberg_nodes(inst, SteinbergVariant::non_nested_only), opts);
  rep.steinberg = st.status == TCStatus::complete ? st.order : 0;
  rep.tilde_equals_steinberg = rep.tilde_g.status == TCStatus::complete &&
                               st.status == TCStatus::complete &&
                               rep.tilde_g.order == st.order;
  for (const CoxSimplex& s : inst.complex().simplices()) {
    if (!inst.complex().co_spherical(s)) continue;
    TildeGReport::Subsystem sub;
    sub.s = s;
    sub.expected = inst.u_s(s).order();
    // the honest direct-limit construction: per-node copies glued along the
    // actual inclusion arrows
    auto res = eng.colimit_order(u_s_subsystem_nodes(inst, s), opts, false);
    sub.got = res.status == TCStatus::complete ? res.order : 0;
    sub.ok = res.status == TCStatus::complete && sub.got == sub.expected;
    if (!sub.ok) rep.all_subsystems_ok = false;
    rep.subsystems.push_back(sub);
  }
  return rep;
}

// ---- the Wagoner pipeline --------------------------------------------------------

struct WagonerPi {
  std::size_t components = 0;
  std::uint64_t g_dagger_index = 0;
  bool pi0_matches = false;

  bool rank_hypothesis = false;  // spherical rank >= 3
  bool apartment_simply_connected = false;
  RootSystemColimit::Result tilde_g;
  std::uint64_t g_dagger_order = 0;
  std::uint64_t kernel_order = 0;  // |G~| / |G†|

  // edge-path oracle on the 2-skeleton (budget permitting)
  bool edge_path_ran = false;
  bool edge_path_completed = false;
  std::uint64_t edge_path_order = 0;
  HomologyGroup pi1_abelianization;  // from the edge-path presentation
  HomologyGroup h1;                   // H_1 of the 2-skeleton
  bool abelianization_matches_h1 = false;
  std::string note;
};

struct WagonerPiOptions {
  TCOptions colimit_tc;
  TCOptions edge_path_tc;
  bool run_edge_path = true;
  std::size_t edge_path_generator_limit = 48;  // TC only if Tietze gets below this
};

inline WagonerPi pi1_wagoner(const RootDatumInstance& inst, const CosetComplex& w,
                             WagonerPiOptions opts = {}) {
  WagonerPi out;
  SimplicialData sd = w.skeleton(2);
  out.components = components_of(sd).count;
  out.g_dagger_index = inst.g_dagger_index();
  out.pi0_matches = out.components == out.g_dagger_index;

  out.rank_hypothesis = inst.coxeter().rank() >= 3 && inst.coxeter().spherical();
  if (!out.rank_hypothesis) out.note = "outside theorem hypothesis";

  // strict fundamental domain: the apartment picks the identity coset of
  // every family, one per vertex orbit; edges and triangles are determined
  // by their smallest member, so orbit-uniqueness on vertices suffices
  std::vector<int> ap = w.identity_vertices();
  std::set<int> distinct(ap.begin(), ap.end());
  if (distinct.size() != w.family_count())
    throw error("apartment does not meet every vertex orbit exactly once");

  // apartment subcomplex and its simple connectivity
  {
    std::map<int, int> local;
    for (int v : ap) local.emplace(v, static_cast<int>(local.size()));
    SimplicialData asd;
    asd.nverts = local.size();
    for (auto [a, b] : sd.edges)
      if (local.count(a) && local.count(b)) asd.edges.emplace_back(local.at(a), local.at(b));
    for (const auto& t : sd.triangles)
      if (local.count(t[0]) && local.count(t[1]) && local.count(t[2]))
        asd.triangles.push_back({local.at(t[0]), local.at(t[1]), local.at(t[2])});
    asd.sort_canonical();
    EdgePathResult ep = edge_path_presentation(asd, 0);
    if (ep.component.size() != asd.nverts) throw error("apartment is not connected");
    if (ep.presentation.generators.empty()) {
      out.apartment_simply_connected = true;
    } else {
      Presentation p = ep.presentation;
      tietze_simplify(p);
      CosetTable tc(p, TCOptions{1 << 18, 4});
      out.apartment_simply_connected = tc.status() == TCStatus::complete && tc.order() == 1;
    }
  }

  RootSystemColimit eng(inst);
  out.tilde_g = eng.colimit_order(u_s_system_nodes(inst), opts.colimit_tc);
  out.g_dagger_order = inst.little_projective().order();
  if (out.tilde_g.status == TCStatus::complete) {
    if (out.tilde_g.order % out.g_dagger_order != 0)
      throw error("colimit order is not a multiple of |G dagger|");
    out.kernel_order = out.tilde_g.order / out.g_dagger_order;
  }

  // independent oracle: edge-path presentation of the 2-skeleton
  out.h1 = homology_h1_collapsed(sd);
  if (opts.run_edge_path) {
    out.edge_path_ran = true;
    CollapseResult c = collapse(sd);
    ComponentLabels labels = components_of(sd);
    int base = 0;
    while (base < static_cast<int>(sd.nverts) && !c.vertex_alive[static_cast<std::size_t>(base)])
      ++base;
    EdgePathResult ep = edge_path_presentation(c.data, base, &c.vertex_alive);
    Presentation p = ep.presentation;
    out.pi1_abelianization = abelianization(p);
    out.abelianization_matches_h1 =
        out.components == 1 && out.pi1_abelianization == out.h1;
    tietze_simplify(p);
    if (p.generators.size() <= opts.edge_path_generator_limit) {
      CosetTable tc(p, opts.edge_path_tc);
      if (tc.status() == TCStatus::complete) {
        out.edge_path_completed = true;
        out.edge_path_order = tc.order();
      }
    }
    (void)labels;
  }
  return out;
}

}  // namespace wag
