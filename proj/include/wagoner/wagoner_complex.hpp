#pragma once

// The Wagoner complex and its companions: coset flag complexes over the
// families {gU_s}, {gP_s}, the subdivided building {gP_J : J standard}, the
// building itself, the projection maps, the right N-action with its
// quotient, and the fundamental-chamber coset complex that the quotient is
// matched against.

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "wagoner/complex.hpp"
#include "wagoner/rootdatum.hpp"

namespace wag {

// A flag complex over cosets of finitely many subgroups, partially ordered
// by strict set inclusion.  A vertex is a coset g*U_f with canonical
// representative min(g*U_f); vertices of comparable families are joined when
// one coset contains the other, which makes every edge a saturation.
// How two coset families are joined:
//  * subgroup_inclusion: edges are strict set inclusions of cosets (the flag
//    complexes over {gU_s}, {gP_s} and the standard-parabolic poset);
//  * type_incidence: families carry simplex types; two cosets of strictly
//    comparable types are joined when they intersect (the fundamental-chamber
//    complex, whose same-sized subgroups are never nested).
enum class EdgeRule { subgroup_inclusion, type_incidence };

class CosetComplex {
 public:
  struct FamilySpec {
    std::string label;
    FinSubgroup group;
    CoxSimplex simplex{0, 0};
    bool has_simplex = false;
  };

  CosetComplex(const RootDatumInstance& inst, std::vector<FamilySpec> specs,
               EdgeRule rule = EdgeRule::subgroup_inclusion)
      : inst_(&inst), rule_(rule) {
    // merge set-equal subgroups (coset-set semantics); record coincidences
    for (auto& spec : specs) {
      if (!spec.group.is_explicit())
        throw cap_exceeded("coset complex needs explicit subgroup element lists");
      auto key = spec.group.canonical_key();
      auto it = family_by_key_.find(key);
      if (it != family_by_key_.end()) {
        coincidences_.push_back(spec.label + " = " + fams_[static_cast<std::size_t>(it->second)].label);
        continue;
      }
      family_by_key_.emplace(std::move(key), static_cast<int>(fams_.size()));
      fams_.push_back(std::move(spec));
    }
    enumerate_cosets();
    compute_inclusions();
  }

  const RootDatumInstance& instance() const { return *inst_; }
  std::size_t family_count() const { return fams_.size(); }
  const FamilySpec& family(int f) const { return fams_[static_cast<std::size_t>(f)]; }
  const std::vector<std::string>& coincidences() const { return coincidences_; }

  std::size_t vertex_count() const { return total_; }
  std::size_t family_size(int f) const { return reps_[static_cast<std::size_t>(f)].size(); }

  int family_of(int vid) const {
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), vid);
    return static_cast<int>(it - offsets_.begin()) - 1;
  }
  int local_of(int vid) const { return vid - offsets_[static_cast<std::size_t>(family_of(vid))]; }
  int vid_of(int f, int local) const { return offsets_[static_cast<std::size_t>(f)] + local; }

  const std::vector<Fq>& rep_encoding(int vid) const {
    return reps_[static_cast<std::size_t>(family_of(vid))][static_cast<std::size_t>(local_of(vid))];
  }

  FqMatrix rep_matrix(int vid) const { return decode(rep_encoding(vid)); }

  // canonical coset representative encoding of g*U_f
  std::vector<Fq> canon(const FqMatrix& g, int f) const {
    const auto& elems = fams_[static_cast<std::size_t>(f)].group.elements();
    const std::vector<Fq>* best = nullptr;
    FqMatrix cur(&inst_->field(), inst_->dim());
    std::vector<Fq> best_store;
    for (const FqMatrix& u : elems) {
      cur = g * u;
      if (best == nullptr || cur.encoding() < best_store) {
        best_store = cur.encoding();
        best = &best_store;
      }
    }
    return best_store;
  }

  int find_vertex(int f, const std::vector<Fq>& repenc) const {
    const auto& idx = index_[static_cast<std::size_t>(f)];
    auto it = idx.find(repenc);
    if (it == idx.end()) return -1;
    return vid_of(f, it->second);
  }

  int vertex_of_coset(const FqMatrix& g, int f) const { return find_vertex(f, canon(g, f)); }

  bool family_below(int f, int fp) const {
    return below_[static_cast<std::size_t>(f)][static_cast<std::size_t>(fp)];
  }

  // the vertex of family fp whose coset contains vid's coset
  int saturate(int vid, int fp) const {
    int f = family_of(vid);
    if (!family_below(f, fp)) throw invalid_argument("saturation needs comparable families");
    const auto& m = satmap(f, fp);
    return m[static_cast<std::size_t>(local_of(vid))];
  }

  SimplicialData skeleton(int dim = 2) const {
    return rule_ == EdgeRule::subgroup_inclusion ? inclusion_skeleton(dim)
                                                 : incidence_skeleton(dim);
  }

  // identity coset of every family: the standard apartment when the
  // families are the U_s over the Coxeter complex
  std::vector<int> identity_vertices() const {
    std::vector<int> out;
    FqMatrix id = FqMatrix::identity(&inst_->field(), inst_->dim());
    for (std::size_t f = 0; f < fams_.size(); ++f)
      out.push_back(vertex_of_coset(id, static_cast<int>(f)));
    return out;
  }

  // left translate of a vertex: g * (h U_f)
  int left_translate(const FqMatrix& g, int vid) const {
    int f = family_of(vid);
    return vertex_of_coset(g * rep_matrix(vid), f);
  }

  int family_with_simplex(const CoxSimplex& s) const {
    for (std::size_t f = 0; f < fams_.size(); ++f)
      if (fams_[f].has_simplex && fams_[f].simplex == s) return static_cast<int>(f);
    return -1;
  }

 private:
  FqMatrix decode(const std::vector<Fq>& enc) const {
    FqMatrix m(&inst_->field(), inst_->dim());
    for (std::size_t i = 0; i < inst_->dim(); ++i)
      for (std::size_t j = 0; j < inst_->dim(); ++j) m.at(i, j) = enc[i * inst_->dim() + j];
    return m;
  }

  struct VecHash {
    std::size_t operator()(const std::vector<Fq>& v) const {
      std::uint64_t h = 0xcbf29ce484222325ULL;
      for (Fq x : v) {
        h ^= x;
        h *= 0x100000001b3ULL;
      }
      return static_cast<std::size_t>(h);
    }
  };

  void enumerate_cosets() {
    auto gens = inst_->small_generators();
    reps_.resize(fams_.size());
    index_.resize(fams_.size());
    offsets_.clear();
    total_ = 0;
    FqMatrix id = FqMatrix::identity(&inst_->field(), inst_->dim());
    for (std::size_t f = 0; f < fams_.size(); ++f) {
      auto& reps = reps_[f];
      auto& idx = index_[f];
      std::vector<Fq> start = canon(id, static_cast<int>(f));
      idx.emplace(start, 0);
      reps.push_back(start);
      for (std::size_t head = 0; head < reps.size(); ++head) {
        FqMatrix g = decode(reps[head]);
        for (const FqMatrix& x : gens) {
          std::vector<Fq> nxt = canon(x * g, static_cast<int>(f));
          if (idx.emplace(nxt, static_cast<int>(reps.size())).second) reps.push_back(nxt);
        }
      }
      std::uint64_t expect = inst_->group().order() / fams_[f].group.order();
      if (reps.size() != expect)
        throw error("coset enumeration undercounts family " + fams_[f].label);
      offsets_.push_back(static_cast<int>(total_));
      total_ += reps.size();
    }
  }

  void compute_inclusions() {
    below_.assign(fams_.size(), std::vector<char>(fams_.size(), 0));
    for (std::size_t f = 0; f < fams_.size(); ++f)
      for (std::size_t fp = 0; fp < fams_.size(); ++fp) {
        if (f == fp) continue;
        if (rule_ == EdgeRule::subgroup_inclusion) {
          if (fams_[f].group.order() >= fams_[fp].group.order()) continue;
          below_[f][fp] = fams_[fp].group.contains_subgroup(fams_[f].group) ? 1 : 0;
        } else {
          // strict type containment: J_f is a proper superset of J_fp
          std::uint32_t a = fams_[f].simplex.jmask, b = fams_[fp].simplex.jmask;
          below_[f][fp] = (a != b && (a & b) == b) ? 1 : 0;
        }
      }
  }

  SimplicialData inclusion_skeleton(int dim) const {
    SimplicialData sd;
    sd.nverts = total_;
    for (std::size_t f = 0; f < fams_.size(); ++f)
      for (std::size_t fp = 0; fp < fams_.size(); ++fp) {
        if (!below_[f][fp]) continue;
        const auto& m = satmap(static_cast<int>(f), static_cast<int>(fp));
        for (std::size_t l = 0; l < m.size(); ++l)
          sd.edges.emplace_back(vid_of(static_cast<int>(f), static_cast<int>(l)), m[l]);
      }
    if (dim >= 2) {
      for (std::size_t f = 0; f < fams_.size(); ++f)
        for (std::size_t f1 = 0; f1 < fams_.size(); ++f1) {
          if (!below_[f][f1]) continue;
          for (std::size_t f2 = 0; f2 < fams_.size(); ++f2) {
            if (!below_[f1][f2]) continue;
            const auto& m1 = satmap(static_cast<int>(f), static_cast<int>(f1));
            const auto& m2 = satmap(static_cast<int>(f), static_cast<int>(f2));
            for (std::size_t l = 0; l < m1.size(); ++l) {
              std::array<int, 3> t{vid_of(static_cast<int>(f), static_cast<int>(l)), m1[l], m2[l]};
              sd.triangles.push_back(t);
            }
          }
        }
    }
    sd.sort_canonical();
    return sd;
  }

  // edges and triangles through common elements: each element of a coset of
  // the finest type determines one coset of every coarser comparable type
  SimplicialData incidence_skeleton(int dim) const {
    SimplicialData sd;
    sd.nverts = total_;
    for (std::size_t f = 0; f < fams_.size(); ++f)
      for (std::size_t f1 = 0; f1 < fams_.size(); ++f1) {
        if (!below_[f][f1]) continue;
        for (std::size_t l = 0; l < reps_[f].size(); ++l) {
          FqMatrix a = decode(reps_[f][l]);
          for (const FqMatrix& u : fams_[f].group.elements()) {
            int b = vertex_of_coset(a * u, static_cast<int>(f1));
            if (b < 0) throw error("incidence target missing");
            sd.edges.emplace_back(vid_of(static_cast<int>(f), static_cast<int>(l)), b);
            if (dim >= 2)
              for (std::size_t f2 = 0; f2 < fams_.size(); ++f2) {
                if (!below_[f1][f2]) continue;
                int c = vertex_of_coset(a * u, static_cast<int>(f2));
                std::array<int, 3> t{vid_of(static_cast<int>(f), static_cast<int>(l)), b, c};
                sd.triangles.push_back(t);
              }
          }
        }
      }
    sd.sort_canonical();
    return sd;
  }

  const std::vector<int>& satmap(int f, int fp) const {
    auto key = std::make_pair(f, fp);
    auto it = sat_.find(key);
    if (it != sat_.end()) return it->second;
    std::vector<int> m(reps_[static_cast<std::size_t>(f)].size());
    for (std::size_t l = 0; l < m.size(); ++l) {
      FqMatrix g = decode(reps_[static_cast<std::size_t>(f)][l]);
      int target = vertex_of_coset(g, fp);
      if (target < 0) throw error("saturation target missing");
      m[l] = target;
    }
    return sat_.emplace(key, std::move(m)).first->second;
  }

  const RootDatumInstance* inst_;
  EdgeRule rule_ = EdgeRule::subgroup_inclusion;
  std::vector<FamilySpec> fams_;
  std::map<std::vector<Fq>, int> family_by_key_;
  std::vector<std::string> coincidences_;
  std::vector<std::vector<std::vector<Fq>>> reps_;
  std::vector<std::unordered_map<std::vector<Fq>, int, VecHash>> index_;
  std::vector<int> offsets_;
  std::size_t total_ = 0;
  std::vector<std::vector<char>> below_;
  mutable std::map<std::pair<int, int>, std::vector<int>> sat_;
};

// ---- builders ---------------------------------------------------------------

inline CosetComplex build_wagoner(const RootDatumInstance& inst) {
  std::vector<CosetComplex::FamilySpec> fams;
  const CoxComplex& cc = inst.complex();
  for (const CoxSimplex& s : cc.simplices()) {
    if (!cc.co_spherical(s)) continue;
    fams.push_back({"U(" + cc.simplex_str(s) + ")", inst.u_s(s), s, true});
  }
  return CosetComplex(inst, std::move(fams));
}

inline CosetComplex build_parabolic_version(const RootDatumInstance& inst) {
  std::vector<CosetComplex::FamilySpec> fams;
  const CoxComplex& cc = inst.complex();
  for (const CoxSimplex& s : cc.simplices())
    fams.push_back({"P(" + cc.simplex_str(s) + ")", inst.parabolic(s), s, true});
  return CosetComplex(inst, std::move(fams));
}

// flag complex over the standard-parabolic coset poset: the barycentric
// subdivision of the building
inline CosetComplex build_subdivided_building(const RootDatumInstance& inst) {
  std::vector<CosetComplex::FamilySpec> fams;
  const CoxComplex& cc = inst.complex();
  const std::uint32_t full = (1u << inst.coxeter().rank()) - 1;
  for (std::uint32_t j = 0; j < full; ++j) {
    CoxSimplex s{j, 0};
    fams.push_back({"P(" + cc.simplex_str(s) + ")", inst.parabolic(s), s, true});
  }
  return CosetComplex(inst, std::move(fams));
}

// the fundamental-chamber coset complex Flag({g (U_J N_J)}): the quotient of
// the Wagoner complex by the right N-action is matched against this
inline CosetComplex build_fundamental_coset_complex(const RootDatumInstance& inst) {
  std::vector<CosetComplex::FamilySpec> fams;
  const CoxComplex& cc = inst.complex();
  const std::uint32_t full = (1u << inst.coxeter().rank()) - 1;
  for (std::uint32_t j = 0; j < full; ++j) {
    CoxSimplex s{j, 0};
    std::vector<FqMatrix> gens = inst.u_s(s).generators();
    for (const FqMatrix& h : inst.torus().generators()) gens.push_back(h);
    for (std::size_t g = 0; g < inst.coxeter().rank(); ++g)
      if (j & (1u << g)) gens.push_back(inst.simple_lift(g));
    fams.push_back({"UN(" + cc.simplex_str(s) + ")",
                    FinSubgroup(&inst.action(), std::move(gens)), s, true});
  }
  return CosetComplex(inst, std::move(fams), EdgeRule::type_incidence);
}

// the building as a simplicial complex: vertices are cosets of the maximal
// standard parabolics, maximal simplices come from the chamber cosets
struct BuildingComplex {
  CosetComplex cosets;  // families: chamber parabolic (index 0) + vertex types
  SimplicialData data;
  std::size_t points = 0;  // vertices of the building

  explicit BuildingComplex(const RootDatumInstance& inst)
      : cosets(inst, make_families(inst)) {
    const std::size_t rank = inst.coxeter().rank();
    // building vertices: families 1..rank
    std::size_t offset = cosets.family_size(0);
    points = cosets.vertex_count() - offset;
    data.nverts = points;
    for (std::size_t l = 0; l < cosets.family_size(0); ++l) {
      std::vector<int> corner;
      for (std::size_t f = 1; f <= rank; ++f)
        corner.push_back(cosets.saturate(cosets.vid_of(0, static_cast<int>(l)), static_cast<int>(f)) -
                         static_cast<int>(offset));
      for (std::size_t i = 0; i < corner.size(); ++i)
        for (std::size_t j = i + 1; j < corner.size(); ++j)
          data.edges.emplace_back(std::min(corner[i], corner[j]), std::max(corner[i], corner[j]));
      if (corner.size() >= 3)
        for (std::size_t i = 0; i < corner.size(); ++i)
          for (std::size_t j = i + 1; j < corner.size(); ++j)
            for (std::size_t k = j + 1; k < corner.size(); ++k) {
              std::array<int, 3> t{corner[i], corner[j], corner[k]};
              std::sort(t.begin(), t.end());
              data.triangles.push_back(t);
            }
    }
    data.sort_canonical();
  }

 private:
  static std::vector<CosetComplex::FamilySpec> make_families(const RootDatumInstance& inst) {
    std::vector<CosetComplex::FamilySpec> fams;
    const CoxComplex& cc = inst.complex();
    const std::uint32_t full = (1u << inst.coxeter().rank()) - 1;
    CoxSimplex chamber{0, 0};
    fams.push_back({"B", inst.parabolic(chamber), chamber, true});
    for (std::size_t u = 0; u < inst.coxeter().rank(); ++u) {
      std::uint32_t j = full & ~(1u << u);
      CoxSimplex s{j, 0};
      fams.push_back({"P(" + cc.simplex_str(s) + ")", inst.parabolic(s), s, true});
    }
    return fams;
  }
};

// ---- projections ------------------------------------------------------------

// gU_s -> gP_s into the parabolic version
inline VertexMap projection_to_parabolic(const CosetComplex& w, const CosetComplex& p) {
  VertexMap vm;
  vm.image.resize(w.vertex_count());
  for (std::size_t v = 0; v < w.vertex_count(); ++v) {
    int f = w.family_of(static_cast<int>(v));
    const CoxSimplex& s = w.family(f).simplex;
    int pf = p.family_with_simplex(s);
    if (pf < 0) throw error("parabolic family missing");
    int target = p.vertex_of_coset(w.rep_matrix(static_cast<int>(v)), pf);
    if (target < 0) throw error("projection target missing");
    vm.image[v] = target;
  }
  return vm;
}

// gU_s -> (g n_{w(s)}) P_{J(s)}: the projection onto the subdivided building
// (the simplex w s_J of the building is the coset (g n_w) P_J)
inline VertexMap projection_to_building_flag(const CosetComplex& w, const CosetComplex& bflag) {
  VertexMap vm;
  const RootDatumInstance& inst = w.instance();
  vm.image.resize(w.vertex_count());
  for (std::size_t v = 0; v < w.vertex_count(); ++v) {
    int f = w.family_of(static_cast<int>(v));
    const CoxSimplex& s = w.family(f).simplex;
    int pf = bflag.family_with_simplex(CoxSimplex{s.jmask, 0});
    if (pf < 0) throw error("standard parabolic family missing");
    FqMatrix g = w.rep_matrix(static_cast<int>(v)) * inst.weyl_lift(s.rep);
    int target = bflag.vertex_of_coset(g, pf);
    if (target < 0) throw error("projection target missing");
    vm.image[v] = target;
  }
  return vm;
}

// ---- right N-action ---------------------------------------------------------

struct GroupAction {
  std::vector<FqMatrix> elements;
  std::vector<std::vector<int>> table;  // per element: vertex permutation

  std::vector<std::vector<int>> orbits() const {
    if (table.empty()) return {};
    std::size_t n = table.front().size();
    UnionFind uf(n);
    for (const auto& t : table)
      for (std::size_t v = 0; v < n; ++v) uf.unite(static_cast<int>(v), t[v]);
    std::map<int, std::vector<int>> by_root;
    for (std::size_t v = 0; v < n; ++v) by_root[uf.find(static_cast<int>(v))].push_back(static_cast<int>(v));
    std::vector<std::vector<int>> out;
    for (auto& [r, o] : by_root) out.push_back(std::move(o));
    return out;
  }
};

// the right action gU_s n = (gn) U_{n^{-1} s}
inline GroupAction right_n_action(const CosetComplex& w) {
  const RootDatumInstance& inst = w.instance();
  GroupAction act;
  act.elements = inst.monomial().elements();
  const CoxBall& ball = inst.weyl_ball();
  for (const FqMatrix& n : act.elements) {
    int wn = inst.weyl_projection(n);
    int wni = ball.inverse(wn);
    std::vector<int> perm(w.vertex_count());
    for (std::size_t v = 0; v < w.vertex_count(); ++v) {
      int f = w.family_of(static_cast<int>(v));
      const CoxSimplex& s = w.family(f).simplex;
      int moved = ball.product(wni, s.rep);
      if (moved < 0) throw error("Weyl product left the group");
      CoxSimplex target = inst.complex().simplex(moved, s.jmask);
      int tf = w.family_with_simplex(target);
      if (tf < 0) throw error("moved simplex has no family");
      int tv = w.vertex_of_coset(w.rep_matrix(static_cast<int>(v)) * n, tf);
      if (tv < 0) throw error("moved coset missing");
      perm[v] = tv;
    }
    act.table.push_back(std::move(perm));
  }
  return act;
}

struct QuotientComplex {
  std::vector<std::vector<int>> orbits;
  VertexMap to_quotient;      // cover vertex -> orbit id
  std::vector<int> orbit_rep;  // orbit id -> least cover vertex
  SimplicialData data;
  bool action_free = true;
};

inline QuotientComplex quotient_complex(const SimplicialData& cover, const GroupAction& act) {
  QuotientComplex q;
  q.orbits = act.orbits();
  q.to_quotient.image.assign(cover.nverts, -1);
  for (std::size_t o = 0; o < q.orbits.size(); ++o) {
    q.orbit_rep.push_back(q.orbits[o].front());
    for (int v : q.orbits[o]) q.to_quotient.image[static_cast<std::size_t>(v)] = static_cast<int>(o);
    if (q.orbits[o].size() != act.elements.size()) q.action_free = false;
  }
  q.data = q.to_quotient.push(cover, q.orbits.size());
  return q;
}

// ---- explicit isomorphism checks ---------------------------------------------

struct IsoReport {
  bool vertex_bijection = false;
  bool simplicial_match = false;
  std::size_t lhs_vertices = 0, rhs_vertices = 0;
  std::string note;
};

// match the N-quotient of a coset complex against a target built over
// standard-simplex families: orbit of (s, g) -> canon(g n_{w(s)}, family J(s))
inline IsoReport match_quotient_to_standard(const CosetComplex& cover, const QuotientComplex& q,
                                            const CosetComplex& target) {
  const RootDatumInstance& inst = cover.instance();
  IsoReport rep;
  rep.lhs_vertices = q.orbits.size();
  rep.rhs_vertices = target.vertex_count();
  if (rep.lhs_vertices != rep.rhs_vertices) {
    rep.note = "vertex counts differ";
    return rep;
  }
  auto vertex_image = [&](int v) {
    int f = cover.family_of(v);
    const CoxSimplex& s = cover.family(f).simplex;
    int tf = target.family_with_simplex(CoxSimplex{s.jmask, 0});
    if (tf < 0) return -1;
    FqMatrix g = cover.rep_matrix(v) * inst.weyl_lift(s.rep);
    return target.vertex_of_coset(g, tf);
  };
  VertexMap vm;
  vm.image.assign(q.orbits.size(), -1);
  std::vector<char> hit(target.vertex_count(), 0);
  for (std::size_t o = 0; o < q.orbits.size(); ++o) {
    // well-defined: every member of the orbit lands on the same target coset
    for (int v : q.orbits[o]) {
      int tv = vertex_image(v);
      if (tv < 0) {
        rep.note = "image vertex missing";
        return rep;
      }
      if (vm.image[o] < 0) vm.image[o] = tv;
      if (vm.image[o] != tv) {
        rep.note = "map not constant on an orbit";
        return rep;
      }
    }
    if (hit[static_cast<std::size_t>(vm.image[o])]) {
      rep.note = "image not injective";
      return rep;
    }
    hit[static_cast<std::size_t>(vm.image[o])] = 1;
  }
  rep.vertex_bijection = true;
  SimplicialData mapped = vm.push(q.data, target.vertex_count());
  SimplicialData rhs = target.skeleton(2);
  rep.simplicial_match = mapped.edges == rhs.edges && mapped.triangles == rhs.triangles;
  if (!rep.simplicial_match) rep.note = "simplices differ";
  return rep;
}

}  // namespace wag
