#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "wagoner/pi.hpp"

using namespace wag;

namespace {

// D_6 (order 12) acting on the barycentric hexagon, a 12-cycle
std::vector<Perm> dihedral12() {
  std::vector<Perm> out;
  for (int k = 0; k < 12; k += 2) {
    Perm rot(12), refl(12);
    for (int i = 0; i < 12; ++i) {
      rot[static_cast<std::size_t>(i)] = (i + k) % 12;
      refl[static_cast<std::size_t>(i)] = ((k - i) % 12 + 12) % 12;
    }
    out.push_back(rot);
    out.push_back(refl);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Flag(Sigma) for a whole-group ball, with the W-action as vertex
// permutations; Y = the faces of the fundamental chamber
struct FlagSigma {
  SimplicialData data;
  std::vector<Perm> action;
  FundamentalDomain domain;
};

FlagSigma flag_sigma(const CoxeterSystem& sys) {
  CoxBall ball(sys, CoxBall::kWholeGroup);
  CoxComplex cc(ball);
  auto simp = cc.simplices();
  std::map<CoxSimplex, int> index;
  for (std::size_t i = 0; i < simp.size(); ++i) index.emplace(simp[i], static_cast<int>(i));

  FlagSigma out;
  out.data.nverts = simp.size();
  for (std::size_t i = 0; i < simp.size(); ++i)
    for (std::size_t j = 0; j < simp.size(); ++j) {
      if (i == j) continue;
      if (cc.face_le(simp[i], simp[j])) out.data.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  for (std::size_t i = 0; i < simp.size(); ++i)
    for (std::size_t j = 0; j < simp.size(); ++j)
      for (std::size_t k = 0; k < simp.size(); ++k) {
        if (i == j || j == k || i == k) continue;
        if (cc.face_le(simp[i], simp[j]) && cc.face_le(simp[j], simp[k])) {
          std::array<int, 3> t{static_cast<int>(i), static_cast<int>(j), static_cast<int>(k)};
          std::sort(t.begin(), t.end());
          out.data.triangles.push_back(t);
        }
      }
  out.data.sort_canonical();

  for (int w = 0; w < static_cast<int>(ball.size()); ++w) {
    Perm p(simp.size());
    for (std::size_t i = 0; i < simp.size(); ++i) {
      int moved = ball.product(w, simp[i].rep);
      REQUIRE(moved >= 0);
      CoxSimplex img = cc.simplex(moved, simp[i].jmask);
      p[i] = index.at(img);
    }
    out.action.push_back(p);
  }
  std::sort(out.action.begin(), out.action.end());

  // fundamental domain: the standard simplices (faces of the chamber at the
  // identity) with the induced edges and triangles
  std::set<int> std_verts;
  for (std::size_t i = 0; i < simp.size(); ++i)
    if (simp[i].rep == 0) {
      out.domain.vertices.push_back(static_cast<int>(i));
      std_verts.insert(static_cast<int>(i));
    }
  for (auto [a, b] : out.data.edges)
    if (std_verts.count(a) && std_verts.count(b)) out.domain.edges.emplace_back(a, b);
  for (const auto& t : out.data.triangles)
    if (std_verts.count(t[0]) && std_verts.count(t[1]) && std_verts.count(t[2]))
      out.domain.triangles.push_back(t);
  return out;
}

}  // namespace

TEST_CASE("pi1 via action: dihedral group on the hexagon boundary") {
  SimplicialData circle;
  circle.nverts = 12;
  for (int i = 0; i < 12; ++i) circle.edges.emplace_back(i, (i + 1) % 12);
  circle.sort_canonical();

  FundamentalDomain y;
  y.vertices = {0, 1};
  y.edges = {{0, 1}};

  TCOptions small;
  small.coset_cap = 2000;
  Pi1Result res = pi1_via_action(circle, dihedral12(), y, small);
  CHECK(res.status == TCStatus::overflow);  // Z/2 * Z/2 is infinite
  CHECK(res.g0_order == 12);
  CHECK(res.component_count == 1);
  // the kernel is the fundamental group of the circle
  CHECK(res.kernel_abelianization.free_rank == 1);
  CHECK(res.kernel_abelianization.torsion.empty());
}

TEST_CASE("pi1 via action: Weyl group on the barycentric 2-sphere") {
  FlagSigma fs = flag_sigma(CoxeterSystem({{1, 3, 2}, {3, 1, 3}, {2, 3, 1}}));
  CHECK(fs.data.nverts == 74);
  CHECK(fs.action.size() == 24);

  Pi1Result res = pi1_via_action(fs.data, fs.action, fs.domain);
  CHECK(res.status == TCStatus::complete);
  CHECK(res.g0_order == 24);
  CHECK(res.component_count == 1);
  CHECK(res.colimit_order == 24);
  CHECK(res.kernel_order == 1);  // the sphere is simply connected
  CHECK(res.kernel_abelianization.trivial());
}

TEST_CASE("pi1 via action: trivial group on a simply connected complex") {
  SimplicialData disc;
  disc.nverts = 3;
  disc.edges = {{0, 1}, {0, 2}, {1, 2}};
  disc.triangles = {{0, 1, 2}};
  FundamentalDomain y;
  y.vertices = {0, 1, 2};
  y.edges = {{0, 1}, {0, 2}, {1, 2}};
  y.triangles = {{0, 1, 2}};
  Pi1Result res = pi1_via_action(disc, {perm_identity(3)}, y);
  CHECK(res.component_count == 1);
  CHECK(res.kernel_order == 1);
}

TEST_CASE("pi1 via action rejects non-strict domains") {
  SimplicialData circle;
  circle.nverts = 12;
  for (int i = 0; i < 12; ++i) circle.edges.emplace_back(i, (i + 1) % 12);
  circle.sort_canonical();
  FundamentalDomain y;
  y.vertices = {0, 1, 2};  // vertex 2 repeats the orbit of 0
  y.edges = {{0, 1}, {1, 2}};
  CHECK_THROWS_AS(pi1_via_action(circle, dihedral12(), y), invalid_argument);
}

TEST_CASE("steinberg variants agree on SL_3(2)") {
  RootDatumInstance inst(Family::SL, 3, 2);
  SteinbergReport rep = steinberg_order(inst);
  REQUIRE(rep.non_nested.status == TCStatus::complete);
  CHECK(rep.variants_agree);
  CHECK(rep.non_nested.order % 168 == 0);
  // the kernel multiplier is a small regression value, recorded not asserted
  CHECK(rep.non_nested.order / 168 <= 2);
}

TEST_CASE("tilde G checks on SL_3(2)") {
  RootDatumInstance inst(Family::SL, 3, 2);
  TildeGReport rep = tilde_g_checks(inst);
  REQUIRE(rep.tilde_g.status == TCStatus::complete);
  CHECK(rep.tilde_equals_steinberg);
  CHECK(rep.all_subsystems_ok);
  for (const auto& sub : rep.subsystems) {
    CHECK(sub.got == sub.expected);
    if (sub.s.jmask == 0) CHECK(sub.expected == 8);
    else CHECK(sub.expected == 4);
  }
}

TEST_CASE("tilde G chamber subsystem for SL_3(3)") {
  RootDatumInstance inst(Family::SL, 3, 3);
  RootSystemColimit eng(inst);
  CoxSimplex chamber{0, 0};
  auto res = eng.colimit_order(u_s_subsystem_nodes(inst, chamber), TCOptions{}, false);
  REQUIRE(res.status == TCStatus::complete);
  CHECK(res.order == 27);  // |U_c| for q = 3
}

TEST_CASE("colimit node order is irrelevant") {
  RootDatumInstance inst(Family::SL, 3, 2);
  RootSystemColimit eng(inst);
  auto nodes = u_s_system_nodes(inst);
  auto r1 = eng.colimit_order(nodes);
  std::reverse(nodes.begin(), nodes.end());
  auto r2 = eng.colimit_order(nodes);
  REQUIRE(r1.status == TCStatus::complete);
  REQUIRE(r2.status == TCStatus::complete);
  CHECK(r1.order == r2.order);
}

TEST_CASE("pi0 and pi1 pipeline for SL_3(2)") {
  RootDatumInstance inst(Family::SL, 3, 2);
  CosetComplex w = build_wagoner(inst);
  WagonerPiOptions opts;
  opts.edge_path_tc.coset_cap = 1 << 18;
  WagonerPi res = pi1_wagoner(inst, w, opts);
  CHECK(res.components == 1);
  CHECK(res.pi0_matches);
  CHECK_FALSE(res.rank_hypothesis);  // rank 2: outside the pi_1 clause
  CHECK(res.note == "outside theorem hypothesis");
  CHECK_FALSE(res.apartment_simply_connected);  // the apartment is a circle
  REQUIRE(res.tilde_g.status == TCStatus::complete);
  CHECK(res.tilde_g.order % 168 == 0);
  CHECK(res.kernel_order == res.tilde_g.order / 168);
  // H_1 of the 1-dimensional complex is free of rank E - V + 1
  CHECK(res.h1.free_rank == 504 - 378 + 1);
  CHECK(res.edge_path_ran);
  CHECK(res.abelianization_matches_h1);
}

TEST_CASE("pi0 for GL_3(3): two components matching the index") {
  RootDatumInstance inst(Family::GL, 3, 3);
  CosetComplex w = build_wagoner(inst);
  SimplicialData sd = w.skeleton(1);
  CHECK(components_of(sd).count == 2);
  CHECK(inst.g_dagger_index() == 2);
}
