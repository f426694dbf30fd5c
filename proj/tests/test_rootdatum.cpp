#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "wagoner/rootdatum.hpp"

using namespace wag;

namespace {

// independent order oracle: plain set closure over generator products
std::size_t closure_order(const std::vector<FqMatrix>& gens) {
  std::set<FqMatrix> seen(gens.begin(), gens.end());
  std::vector<FqMatrix> queue(seen.begin(), seen.end());
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (const FqMatrix& g : gens) {
      FqMatrix nxt = queue[head] * g;
      if (seen.insert(nxt).second) queue.push_back(nxt);
    }
  return seen.size();
}

}  // namespace

TEST_CASE("instantiate shipped families") {
  RootDatumInstance sl32(Family::SL, 3, 2);
  CHECK(sl32.group().order() == 168);
  CHECK(closure_order(sl32.group_generators()) == 168);

  RootDatumInstance gl33(Family::GL, 3, 3);
  CHECK(gl33.group().order() == 11232);

  RootDatumInstance sp42(Family::Sp4, 4, 2);
  CHECK(sp42.group().order() == 720);
  CHECK(sp42.coxeter().m(0, 1) == 4);

  CHECK_THROWS_AS(RootDatumInstance(Family::SL, 2, 2), invalid_argument);
  CHECK_THROWS_AS(RootDatumInstance(Family::Sp4, 5, 2), invalid_argument);
  CHECK_THROWS_AS(RootDatumInstance(Family::SL, 3, 7), invalid_argument);
}

TEST_CASE("root groups of SL_3(2)") {
  RootDatumInstance inst(Family::SL, 3, 2);
  const FiniteField& F = inst.field();
  Root alpha = inst.roots().simple(0);
  const FinSubgroup& u = inst.root_group(alpha);
  CHECK(u.order() == 2);
  FqMatrix e12 = FqMatrix::identity(&F, 3);
  e12.at(0, 1) = 1;
  CHECK(u.member(e12));

  const FinSubgroup& un = inst.root_group(alpha.negated());
  FqMatrix e21 = FqMatrix::identity(&F, 3);
  e21.at(1, 0) = 1;
  CHECK(un.member(e21));
  CHECK(un.order() == 2);

  // s1 sends the first simple root to the high root, whose group is
  // {I + t E13}; oracle: conjugation by the lift
  const CoxBall& W = inst.weyl_ball();
  int s1 = -1;
  for (int w = 0; w < static_cast<int>(W.size()); ++w)
    if (W.length(w) == 1 && W.word(w)[0] == 1) s1 = w;
  REQUIRE(s1 >= 0);
  Root img = inst.roots().acted(s1, alpha);
  FqMatrix nw = inst.weyl_lift(s1);
  FqMatrix conj = nw * e12 * nw.inverse();
  CHECK(inst.root_group(img).member(conj));
  FqMatrix e13 = FqMatrix::identity(&F, 3);
  e13.at(0, 2) = 1;
  CHECK(inst.root_group(img).member(e13));
}

TEST_CASE("weyl lifts") {
  RootDatumInstance inst(Family::SL, 3, 3);
  const FiniteField& F = inst.field();
  FqMatrix n0 = inst.simple_lift(0);
  // the 2x2 block [[0,1],[-1,0]] in rows/cols 0,1
  CHECK(n0.at(0, 1) == F.one());
  CHECK(n0.at(1, 0) == F.neg(F.one()));
  CHECK(n0.at(0, 0) == 0);
  CHECK(n0.at(2, 2) == F.one());

  const CoxBall& W = inst.weyl_ball();
  int w0 = -1;
  for (int w = 0; w < static_cast<int>(W.size()); ++w)
    if (W.length(w) == 3) w0 = w;
  REQUIRE(w0 >= 0);
  FqMatrix lift = inst.weyl_lift(w0);
  CHECK(inst.weyl_projection(lift) == w0);

  // the other reduced word of w_0 gives a lift differing by a torus element
  auto word = W.word(w0);  // 010 or 101
  FqMatrix other = FqMatrix::identity(&F, 3);
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    other = other * inst.simple_lift(1 - *it);  // swap letters: also reduced for w_0 in A2
  CHECK(inst.weyl_projection(other) == w0);
  FqMatrix ratio = lift.inverse() * other;
  CHECK(inst.torus().member(ratio));
}

TEST_CASE("weyl equivariance of root groups") {
  for (auto fam : {Family::SL, Family::Sp4}) {
    RootDatumInstance inst(fam, fam == Family::Sp4 ? 4 : 3, fam == Family::Sp4 ? 3 : 3);
    const CoxBall& W = inst.weyl_ball();
    for (int w = 0; w < static_cast<int>(W.size()); ++w) {
      FqMatrix nw = inst.weyl_lift(w);
      FqMatrix nwi = nw.inverse();
      for (std::size_t r = 0; r < inst.roots().size(); ++r) {
        Root img = inst.roots().acted(w, inst.roots()[r]);
        const FinSubgroup& target = inst.root_group(img);
        for (const FqMatrix& m : inst.root_group(static_cast<int>(r)).elements())
          CHECK(target.member(nw * m * nwi));
      }
    }
  }
}

TEST_CASE("U_s orders and monotonicity") {
  RootDatumInstance inst(Family::SL, 3, 2);
  CoxSimplex chamber{0, 0};
  CHECK(inst.u_s(chamber).order() == 8);

  const CoxComplex& cc = inst.complex();
  auto simplices = cc.simplices();
  for (const auto& s : simplices)
    if (s.jmask != 0) CHECK(inst.u_s(s).order() == 4);  // q^2 for vertices

  // both directions of the remark: s <= s' iff U_s <= U_{s'}
  for (const auto& s : simplices)
    for (const auto& t : simplices) {
      bool incl = inst.u_s(t).contains_subgroup(inst.u_s(s));
      CHECK(incl == cc.face_le(s, t));
    }
}

TEST_CASE("U_s as unique ordered product of root groups") {
  RootDatumInstance inst(Family::SL, 3, 3);
  CoxSimplex chamber{0, 0};
  const FinSubgroup& u = inst.u_s(chamber);
  auto roots = inst.roots_containing_residue(chamber);
  REQUIRE(roots.size() == 3);
  std::set<FqMatrix> products;
  std::vector<int> t(roots.size(), 0);
  const FiniteField& F = inst.field();
  while (true) {
    FqMatrix prod = FqMatrix::identity(&F, 3);
    for (std::size_t i = 0; i < roots.size(); ++i)
      if (t[i] != 0) prod = prod * inst.root_element(roots[i], static_cast<Fq>(t[i]));
    products.insert(prod);
    std::size_t c = 0;
    while (c < t.size() && t[c] == F.order() - 1) t[c++] = 0;
    if (c == t.size()) break;
    ++t[c];
  }
  CHECK(products.size() == u.order());  // bijective factorization
  for (const FqMatrix& m : products) CHECK(u.member(m));
}

TEST_CASE("parabolics") {
  RootDatumInstance inst(Family::SL, 3, 2);
  CoxSimplex chamber{0, 0};
  const FinSubgroup& b = inst.parabolic(chamber);
  CHECK(b.order() == 8);  // Borel = U_c for q = 2
  CHECK(b.member(FqMatrix::identity(&inst.field(), 3)));

  const CoxComplex& cc = inst.complex();
  for (const auto& s : cc.simplices()) {
    const FinSubgroup& p = inst.parabolic(s);
    const FinSubgroup& u = inst.u_s(s);
    CHECK(p.contains_subgroup(u));  // U_s <= P_s
    if (s.jmask != 0) {
      CHECK(p.order() == 24);
      CHECK(inst.group().order() / p.order() == 7);
    }
    // orbit-stabilizer cross-check: the G-orbit of the coset space has size
    // |G| / |P_s|
    CHECK(p.index_in(inst.group()) * p.order() == inst.group().order());
  }

  // diagonal elements live in the Borel
  RootDatumInstance inst3(Family::SL, 3, 3);
  const FinSubgroup& b3 = inst3.parabolic(chamber);
  FqMatrix d(&inst3.field(), 3);
  d.at(0, 0) = 2;
  d.at(1, 1) = inst3.field().inv(2);
  d.at(2, 2) = 1;
  CHECK(b3.member(d));
  CHECK(inst3.u_s(chamber).index_in(inst3.group()) == 5616 / 27);
}

TEST_CASE("little projective group indices") {
  CHECK(RootDatumInstance(Family::SL, 3, 2).g_dagger_index() == 1);
  CHECK(RootDatumInstance(Family::GL, 3, 2).g_dagger_index() == 1);  // F_2^x trivial
  RootDatumInstance gl33(Family::GL, 3, 3);
  CHECK(gl33.g_dagger_index() == 2);
  // determinant cross-check: image of det on G has order q-1, on G^dagger 1
  std::set<Fq> dets;
  for (const FqMatrix& g : gl33.group_generators()) dets.insert(g.det());
  std::set<Fq> closure = dets;
  bool grew = true;
  while (grew) {
    grew = false;
    for (Fq a : closure)
      for (Fq b : closure)
        if (closure.insert(gl33.field().mul(a, b)).second) grew = true;
  }
  CHECK(closure.size() == 2);  // det image = F_3^x
}

TEST_CASE("U_c meets N trivially") {
  for (auto [fam, n, q] : std::vector<std::tuple<Family, std::size_t, int>>{
           {Family::SL, 3, 2}, {Family::SL, 3, 3}, {Family::Sp4, 4, 2}}) {
    RootDatumInstance inst(fam, n, q);
    const CoxComplex& cc = inst.complex();
    for (const auto& s : cc.simplices()) {
      if (s.jmask != 0) continue;  // chambers
      const FinSubgroup& u = inst.u_s(s);
      for (const FqMatrix& m : u.elements())
        if (!(m == FqMatrix::identity(&inst.field(), inst.dim())))
          CHECK_FALSE(inst.monomial().member(m));
    }
  }
}

TEST_CASE("side conditions") {
  auto sp = RootDatumInstance(Family::Sp4, 4, 2).side_conditions();
  REQUIRE(sp.pairs.size() == 1);
  CHECK(sp.pairs[0].quotient_order == 720);
  CHECK(sp.pairs[0].excluded);
  CHECK_FALSE(sp.co_star_pass);

  auto sl2 = RootDatumInstance(Family::SL, 3, 2).side_conditions();
  CHECK(sl2.co_star_pass);
  CHECK(sl2.pairs[0].x_order == 168);
  CHECK_FALSE(sl2.commutator_pass);  // H_alpha trivial for q = 2

  auto sl4 = RootDatumInstance(Family::SL, 3, 4).side_conditions();
  CHECK(sl4.co_star_pass);
  CHECK(sl4.commutator_pass);
}

TEST_CASE("product decomposition U_[a,b] = U_a U_]a,b]") {
  RootDatumInstance inst(Family::SL, 3, 2);
  Root a = inst.roots().simple(0), b = inst.roots().simple(1);
  CHECK(inst.product_decomposition_check(a, b));
  CHECK(inst.product_decomposition_check(a, a));  // singleton interval

  RootDatumInstance sp(Family::Sp4, 4, 3);
  Root la = sp.roots().simple(0), lb = sp.roots().simple(1);
  CHECK(sp.product_decomposition_check(la, lb));
}

TEST_CASE("commutator axiom on all prenilpotent pairs") {
  for (auto [fam, n, q] : std::vector<std::tuple<Family, std::size_t, int>>{
           {Family::SL, 3, 2}, {Family::Sp4, 4, 2}}) {
    RootDatumInstance inst(fam, n, q);
    const RootSet& rs = inst.roots();
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < rs.size(); ++j) {
        if (rs[i] == rs[j].negated()) continue;
        if (rs[i] == rs[j]) continue;
        RootInterval closed = inst.intervals().closed(rs[i], rs[j]);
        std::vector<int> open_idx;
        for (const Root& g : closed.members)
          if (g != rs[i] && g != rs[j]) open_idx.push_back(rs.index_of(g));
        FinSubgroup u_open = inst.u_of_roots(open_idx);
        for (const FqMatrix& x : inst.root_group(static_cast<int>(i)).elements())
          for (const FqMatrix& y : inst.root_group(static_cast<int>(j)).elements()) {
            FqMatrix comm = x * y * x.inverse() * y.inverse();
            CHECK(u_open.member(comm));
          }
      }
  }
}

TEST_CASE("stabiliser interval shadow witnesses") {
  RootDatumInstance inst(Family::SL, 3, 2);
  const CoxComplex& cc = inst.complex();
  Root a = inst.roots().simple(0), b = inst.roots().simple(1);

  // chamber inside alpha cap beta: the base case returns the pair unchanged
  CoxSimplex chamber{0, 0};
  auto w = inst.stabiliser_interval_shadow(chamber, a, b);
  CHECK(w.pair);
  CHECK(w.gamma == a);
  CHECK(w.delta == b);
  CHECK(w.steps == 0);

  // every valid triple admits a witness
  for (const auto& s : cc.simplices()) {
    bool meets = false;
    for (int c : cc.residue(s))
      if (inst.roots().member(c, a) && inst.roots().member(c, b)) meets = true;
    if (!meets) continue;
    CHECK_NOTHROW(inst.stabiliser_interval_shadow(s, a, b));
  }
}
