#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "wagoner/wagoner_complex.hpp"

using namespace wag;

TEST_CASE("wagoner complex of SL_3(2)") {
  RootDatumInstance inst(Family::SL, 3, 2);
  CosetComplex w = build_wagoner(inst);
  CHECK(w.vertex_count() == 378);  // 6*21 + 6*42
  CHECK(w.coincidences().empty());
  std::size_t chamber_cosets = 0, vertex_cosets = 0;
  for (std::size_t f = 0; f < w.family_count(); ++f) {
    if (w.family(static_cast<int>(f)).simplex.jmask == 0)
      chamber_cosets += w.family_size(static_cast<int>(f));
    else
      vertex_cosets += w.family_size(static_cast<int>(f));
  }
  CHECK(chamber_cosets == 126);
  CHECK(vertex_cosets == 252);

  SimplicialData sd = w.skeleton(2);
  CHECK(sd.triangles.empty());  // rank 2: inclusion chains have length <= 2
  CHECK(sd.edges.size() == 504);

  // the representative lies in its coset: canon(rep) == rep
  for (std::size_t v = 0; v < w.vertex_count(); ++v) {
    int f = w.family_of(static_cast<int>(v));
    CHECK(w.canon(w.rep_matrix(static_cast<int>(v)), f) == w.rep_encoding(static_cast<int>(v)));
  }
}

TEST_CASE("wagoner complex of SL_3(3) vertex count") {
  RootDatumInstance inst(Family::SL, 3, 3);
  CosetComplex w = build_wagoner(inst);
  CHECK(w.vertex_count() == 4992);  // 6*(5616/27) + 6*(5616/9)
}

TEST_CASE("standard apartment is the barycentric hexagon") {
  RootDatumInstance inst(Family::SL, 3, 2);
  CosetComplex w = build_wagoner(inst);
  auto ap = w.identity_vertices();
  CHECK(ap.size() == 12);
  std::set<int> apset(ap.begin(), ap.end());
  CHECK(apset.size() == 12);

  SimplicialData sd = w.skeleton(1);
  std::map<int, int> degree;
  std::size_t ap_edges = 0;
  for (auto [a, b] : sd.edges)
    if (apset.count(a) && apset.count(b)) {
      ++ap_edges;
      ++degree[a];
      ++degree[b];
    }
  CHECK(ap_edges == 12);  // a 12-cycle
  for (int v : ap) CHECK(degree[v] == 2);

  // left translates are apartments through the translated chamber coset
  FqMatrix g = inst.root_element(0, 1);
  std::set<int> translated;
  for (int v : ap) translated.insert(w.left_translate(g, v));
  CHECK(translated.size() == 12);
  int c0_family = w.family_with_simplex(CoxSimplex{0, 0});
  REQUIRE(c0_family >= 0);
  CHECK(translated.count(w.vertex_of_coset(g, c0_family)) == 1);
}

TEST_CASE("building complex: Fano incidence counts") {
  RootDatumInstance inst2(Family::SL, 3, 2);
  BuildingComplex b2(inst2);
  CHECK(b2.points == 14);  // 7 points + 7 lines
  CHECK(b2.data.edges.size() == 21);
  CHECK(b2.data.triangles.empty());

  RootDatumInstance inst3(Family::SL, 3, 3);
  BuildingComplex b3(inst3);
  CHECK(b3.points == 26);  // 13 + 13
  CHECK(b3.data.edges.size() == 52);
}

TEST_CASE("projection onto the subdivided building") {
  RootDatumInstance inst(Family::SL, 3, 2);
  CosetComplex w = build_wagoner(inst);
  CosetComplex bflag = build_subdivided_building(inst);
  CHECK(bflag.vertex_count() == 35);  // 21 chambers + 7 + 7

  VertexMap p = projection_to_building_flag(w, bflag);

  // the identity chamber coset maps to the identity Borel coset
  int c0w = w.family_with_simplex(CoxSimplex{0, 0});
  int c0b = bflag.family_with_simplex(CoxSimplex{0, 0});
  FqMatrix id = FqMatrix::identity(&inst.field(), 3);
  CHECK(p(w.vertex_of_coset(id, c0w)) == bflag.vertex_of_coset(id, c0b));

  // surjective on all base vertices; restricted to one coset family the
  // fiber has size [P_s : U_s], and each base vertex receives one family per
  // simplex of its type
  std::map<std::pair<int, int>, std::size_t> family_fiber;
  std::map<int, std::size_t> fiber;
  for (std::size_t v = 0; v < w.vertex_count(); ++v) {
    ++fiber[p(static_cast<int>(v))];
    ++family_fiber[{p(static_cast<int>(v)), w.family_of(static_cast<int>(v))}];
  }
  CHECK(fiber.size() == bflag.vertex_count());
  for (auto [key, count] : family_fiber) {
    bool chamber_type = bflag.family(bflag.family_of(key.first)).simplex.jmask == 0;
    CHECK(count == (chamber_type ? 1 : 6));  // [B:U_c]=1 at q=2, [P_v:U_v]=6
  }
  for (auto [bv, count] : fiber) {
    bool chamber_type = bflag.family(bflag.family_of(bv)).simplex.jmask == 0;
    CHECK(count == (chamber_type ? 6 * 1 : 3 * 6));  // [W:W_J] families of each type
  }

  // order preserving: edges map to edges or collapse
  SimplicialData sd = w.skeleton(1);
  SimplicialData base = bflag.skeleton(1);
  std::set<std::pair<int, int>> base_edges(base.edges.begin(), base.edges.end());
  std::set<std::pair<int, int>> image_edges;
  for (auto [a, b] : sd.edges) {
    int x = p(a), y = p(b);
    REQUIRE(x != y);  // strict inclusions stay strict here
    image_edges.emplace(std::min(x, y), std::max(x, y));
  }
  CHECK(image_edges == base_edges);  // surjective on edges too

  // the apartment maps bijectively onto the flags of the standard apartment
  auto ap = w.identity_vertices();
  std::set<int> ap_image;
  for (int v : ap) ap_image.insert(p(v));
  CHECK(ap_image.size() == ap.size());
}

TEST_CASE("right N-action: freeness, quotient, isomorphism") {
  for (int q : {2, 3}) {
    RootDatumInstance inst(Family::SL, 3, q);
    CosetComplex w = build_wagoner(inst);
    GroupAction act = right_n_action(w);
    std::size_t nsize = (q == 2) ? 6 : 24;
    CHECK(act.elements.size() == nsize);

    QuotientComplex quo = quotient_complex(w.skeleton(2), act);
    CHECK(quo.action_free);
    for (const auto& o : quo.orbits) CHECK(o.size() == nsize);
    CHECK(quo.orbits.size() == w.vertex_count() / nsize);
    if (q == 2) CHECK(quo.orbits.size() == 63);

    // quotient matches the fundamental-chamber coset complex
    CosetComplex fund = build_fundamental_coset_complex(inst);
    IsoReport iso = match_quotient_to_standard(w, quo, fund);
    CHECK(iso.vertex_bijection);
    CHECK(iso.simplicial_match);

    // ... and does not match the unsaturated standard coset family counts
    std::size_t unsaturated = 0;
    const std::uint32_t full = (1u << inst.coxeter().rank()) - 1;
    for (std::uint32_t j = 0; j < full; ++j)
      unsaturated += inst.group().order() / inst.u_s(CoxSimplex{j, 0}).order();
    CHECK(unsaturated != quo.orbits.size());
  }
}

TEST_CASE("apartment commutes with the N-action") {
  RootDatumInstance inst(Family::SL, 3, 2);
  CosetComplex w = build_wagoner(inst);
  GroupAction act = right_n_action(w);
  auto ap = w.identity_vertices();
  std::set<int> apset(ap.begin(), ap.end());
  for (std::size_t ni = 0; ni < act.elements.size(); ++ni) {
    // A n (right action on apartment vertices) equals n A (left translate)
    std::set<int> right_moved, left_moved;
    for (int v : ap) right_moved.insert(act.table[ni][static_cast<std::size_t>(v)]);
    for (int v : ap) left_moved.insert(w.left_translate(act.elements[ni], v));
    CHECK(right_moved == left_moved);
  }
}

TEST_CASE("diagram: projection factors through the quotient") {
  RootDatumInstance inst(Family::SL, 3, 2);
  CosetComplex w = build_wagoner(inst);
  CosetComplex pver = build_parabolic_version(inst);
  CosetComplex bflag = build_subdivided_building(inst);

  VertexMap top = projection_to_parabolic(w, pver);
  VertexMap pd = projection_to_building_flag(w, bflag);
  VertexMap pd_p = projection_to_building_flag(pver, bflag);

  GroupAction act = right_n_action(w);
  // p_Delta is constant on N-orbits
  for (std::size_t ni = 0; ni < act.elements.size(); ++ni)
    for (std::size_t v = 0; v < w.vertex_count(); ++v)
      CHECK(pd(static_cast<int>(v)) == pd(act.table[ni][v]));

  // the square commutes: project-to-parabolic then to the building equals
  // the direct projection
  for (std::size_t v = 0; v < w.vertex_count(); ++v)
    CHECK(pd_p(top(static_cast<int>(v))) == pd(static_cast<int>(v)));

  // parabolic version mod N is the subdivided building
  GroupAction pact = right_n_action(pver);
  QuotientComplex pq = quotient_complex(pver.skeleton(2), pact);
  CHECK_FALSE(pq.action_free);  // stabilizers meet the parabolics
  IsoReport iso = match_quotient_to_standard(pver, pq, bflag);
  CHECK(iso.vertex_bijection);
  CHECK(iso.simplicial_match);
}
