#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "wagoner/roots.hpp"

using namespace wag;

namespace {

CoxeterSystem a3() { return CoxeterSystem({{1, 3, 2}, {3, 1, 3}, {2, 3, 1}}); }

// Chambers of a 2m-gon in cyclic order: alternating words starting with s0.
std::vector<int> dihedral_cycle(const CoxBall& ball, int m) {
  std::vector<int> cyc;
  int cur = 0;
  for (int k = 0; k < 2 * m; ++k) {
    cyc.push_back(cur);
    cur = ball.right(cur, static_cast<std::size_t>(k % 2));
    REQUIRE(cur >= 0);
  }
  return cyc;
}

// The paper's cyclic root labels: alpha_i holds the m consecutive chambers
// starting at position i of the cycle.
std::vector<Root> cyclic_roots(const RootSet& rs, const std::vector<int>& cyc, int m) {
  std::vector<Root> labels;
  for (int i = 0; i < 2 * m; ++i) {
    std::set<int> want;
    for (int k = 0; k < m; ++k) want.insert(cyc[static_cast<std::size_t>((i + k) % (2 * m))]);
    bool found = false;
    for (const Root& r : rs.all()) {
      auto got = rs.chambers_in(r);
      if (std::set<int>(got.begin(), got.end()) == want) {
        labels.push_back(r);
        found = true;
        break;
      }
    }
    REQUIRE(found);
  }
  return labels;
}

}  // namespace

TEST_CASE("root counts and the half-space partition") {
  for (auto [sys, count] : std::vector<std::pair<CoxeterSystem, std::size_t>>{
           {CoxeterSystem({{1, 3}, {3, 1}}), 6},
           {CoxeterSystem({{1, 4}, {4, 1}}), 8},
           {CoxeterSystem::dihedral(6), 12},
           {a3(), 12},
           {CoxeterSystem({{1, 4, 2}, {4, 1, 3}, {2, 3, 1}}), 18}}) {
    CoxBall ball(sys, CoxBall::kWholeGroup);
    RootSet rs(ball);
    CHECK(rs.size() == count);
    for (const Root& r : rs.all()) {
      CHECK(rs.index_of(r.negated()) >= 0);
      for (int w = 0; w < static_cast<int>(ball.size()); ++w)
        CHECK(rs.member(w, r) != rs.member(w, r.negated()));
    }
  }
}

TEST_CASE("simple root membership") {
  CoxeterSystem sys({{1, 3}, {3, 1}});
  CoxBall ball(sys, CoxBall::kWholeGroup);
  RootSet rs(ball);
  Root alpha = rs.simple(0);
  CHECK(rs.member(0, alpha));  // identity chamber
  int s0 = ball.right(0, 0);
  CHECK_FALSE(rs.member(s0, alpha));
}

TEST_CASE("hexagon root contains three consecutive chambers") {
  CoxeterSystem sys({{1, 3}, {3, 1}});
  CoxBall ball(sys, CoxBall::kWholeGroup);
  RootSet rs(ball);
  auto cyc = dihedral_cycle(ball, 3);
  auto labels = cyclic_roots(rs, cyc, 3);
  // alpha_0 holds chambers c_0, c_1, c_2 (the vertex run x_0..x_3)
  auto inside = rs.chambers_in(labels[0]);
  CHECK(inside.size() == 3);
}

TEST_CASE("prenilpotency classification, spherical") {
  CoxeterSystem sys({{1, 3}, {3, 1}});
  CoxBall ball(sys, CoxBall::kWholeGroup);
  RootSet rs(ball);
  Root alpha = rs.simple(0);
  CHECK(classify_pair(rs, alpha, alpha.negated()).cls == PairClass::not_prenilpotent);
  CHECK(classify_pair(rs, alpha, alpha).cls == PairClass::prenilpotent_nested);
  Root beta = rs.simple(1);
  auto rep = classify_pair(rs, alpha, beta);
  CHECK(rep.cls == PairClass::prenilpotent_finite_order);
  CHECK(rep.order == 3);
  // spherical shortcut: prenilpotent iff alpha != -beta
  for (const Root& a : rs.all())
    for (const Root& b : rs.all()) {
      bool pre = classify_pair(rs, a, b).cls != PairClass::not_prenilpotent;
      CHECK(pre == (a != b.negated()));
    }
}

TEST_CASE("infinite dihedral: nested pair with infinite order product") {
  CoxeterSystem sys({{1, kInfOrder}, {kInfOrder, 1}});
  CoxBall ball(sys, 8);
  RootSet rs(ball);
  Root beta = rs.simple(0);  // chambers on the identity side of the first wall
  int s1 = -1;
  for (int i = 0; i < static_cast<int>(ball.size()); ++i)
    if (ball.length(i) == 1 && ball.word(i)[0] == 1) s1 = i;
  REQUIRE(s1 >= 0);
  // reflect the wall across the other generator and flip: a strictly smaller
  // half-line pointing the same way
  Root alpha = rs.acted(s1, beta).negated();
  auto rep = classify_pair(rs, alpha, beta);
  CHECK(rep.cls == PairClass::prenilpotent_nested);
  CHECK_FALSE(rep.finite_order);
  CHECK(rep.nested_direction == +1);  // alpha inside beta
  CHECK(reflection_product_order(sys, alpha, beta) == 0);
  // the facing-away pair is not prenilpotent
  auto facing = classify_pair(rs, alpha, beta.negated());
  CHECK(facing.cls == PairClass::not_prenilpotent);
}

TEST_CASE("2m-gon interval law") {
  for (int m : {2, 3, 4, 6}) {
    CoxeterSystem sys = CoxeterSystem::dihedral(m);
    CoxBall ball(sys, CoxBall::kWholeGroup);
    RootSet rs(ball);
    IntervalEngine eng(rs);
    auto cyc = dihedral_cycle(ball, m);
    auto labels = cyclic_roots(rs, cyc, m);
    for (int i = 1; i <= m - 1; ++i) {
      auto iv = eng.closed(labels[0], labels[static_cast<std::size_t>(i)]);
      std::vector<Root> expect(labels.begin(), labels.begin() + i + 1);
      std::sort(expect.begin(), expect.end());
      CHECK(iv.members == expect);
    }
  }
}

TEST_CASE("interval endpoints and degenerate cases") {
  CoxeterSystem sys({{1, 3}, {3, 1}});
  CoxBall ball(sys, CoxBall::kWholeGroup);
  RootSet rs(ball);
  IntervalEngine eng(rs);
  Root alpha = rs.simple(0);
  auto self = eng.closed(alpha, alpha);
  CHECK(self.members == std::vector<Root>{alpha});

  // A3 orthogonal pair: commuting reflections give the two-element interval
  CoxBall b3(a3(), CoxBall::kWholeGroup);
  RootSet rs3(b3);
  IntervalEngine eng3(rs3);
  Root a = rs3.simple(0), c = rs3.simple(2);
  CHECK(reflection_product_order(a3(), a, c) == 2);
  auto iv = eng3.closed(a, c);
  std::vector<Root> expect{a, c};
  std::sort(expect.begin(), expect.end());
  CHECK(iv.members == expect);
  // brute-force oracle over all 12 roots is what closed() already does;
  // cross-check the simplified spherical form { gamma : a cap c inside gamma }
  std::vector<int> both;
  for (int w = 0; w < static_cast<int>(b3.size()); ++w)
    if (rs3.member(w, a) && rs3.member(w, c)) both.push_back(w);
  std::vector<Root> simplified;
  for (const Root& g : rs3.all()) {
    bool ok = true;
    for (int w : both)
      if (!rs3.member(w, g)) ok = false;
    if (ok) simplified.push_back(g);
  }
  std::sort(simplified.begin(), simplified.end());
  CHECK(simplified == iv.members);
}

TEST_CASE("interval peel") {
  CoxeterSystem sys({{1, 3}, {3, 1}});
  CoxBall ball(sys, CoxBall::kWholeGroup);
  RootSet rs(ball);
  IntervalEngine eng(rs);
  auto cyc = dihedral_cycle(ball, 3);
  auto labels = cyclic_roots(rs, cyc, 3);

  auto res = eng.peel(labels[0], labels[2]);
  REQUIRE_FALSE(res.singleton);
  CHECK(*res.a_prime == labels[1]);
  CHECK(*res.b_prime == labels[1]);

  auto adj = eng.peel(labels[0], labels[1]);
  CHECK(adj.singleton);

  CoxBall b3(a3(), CoxBall::kWholeGroup);
  RootSet rs3(b3);
  IntervalEngine eng3(rs3);
  auto orth = eng3.peel(rs3.simple(0), rs3.simple(2));
  CHECK(orth.singleton);
}

TEST_CASE("peel reconstructs closed intervals") {
  // repeated right-peel walks [a,b] down to [a,a] in at most |[a,b]| steps
  for (int m : {3, 4, 6}) {
    CoxeterSystem sys = CoxeterSystem::dihedral(m);
    CoxBall ball(sys, CoxBall::kWholeGroup);
    RootSet rs(ball);
    IntervalEngine eng(rs);
    auto cyc = dihedral_cycle(ball, m);
    auto labels = cyclic_roots(rs, cyc, m);
    Root a = labels[0], b = labels[static_cast<std::size_t>(m - 1)];
    auto iv = eng.closed(a, b);
    std::size_t steps = 0;
    Root hi = b;
    std::set<std::vector<std::int64_t>> seen{hi.key()};
    while (!(hi == a)) {
      auto p = eng.peel(a, hi);
      REQUIRE(steps++ < iv.members.size());
      if (p.singleton) hi = a;
      else hi = *p.b_prime;
      seen.insert(hi.key());
    }
    CHECK(seen.size() == iv.members.size());
  }
}

TEST_CASE("link bijection in rank 2 uses the whole complex") {
  CoxeterSystem sys({{1, 4}, {4, 1}});
  CoxBall ball(sys, CoxBall::kWholeGroup);
  RootSet rs(ball);
  IntervalEngine eng(rs);
  Root a = rs.simple(0), b = rs.simple(1);
  auto maximal = eng.wall_intersection_maximal(a, b);
  REQUIRE(maximal.size() == 1);
  LinkBijection lk(eng, maximal[0]);
  CHECK(lk.link_ball().size() == ball.size());
  auto iv = eng.closed(a, b);
  auto link_iv = root_interval_spherical(lk.link_roots(), lk.restrict(a), lk.restrict(b));
  CHECK(iv.members.size() == 4);
  CHECK(link_iv.members.size() == 4);
}

TEST_CASE("link bijection for A3 pairs") {
  CoxBall ball(a3(), CoxBall::kWholeGroup);
  RootSet rs(ball);
  IntervalEngine eng(rs);
  CoxComplex cc(ball);

  Root a = rs.simple(0), b = rs.simple(1);  // m = 3
  auto iv = eng.closed(a, b);
  CHECK(iv.members.size() == 3);
  auto maximal = eng.wall_intersection_maximal(a, b);
  REQUIRE_FALSE(maximal.empty());
  for (const CoxSimplex& s : maximal) {
    LinkBijection lk(eng, s);
    Root la = lk.restrict(a), lb = lk.restrict(b);
    auto link_iv = root_interval_spherical(lk.link_roots(), la, lb);
    CHECK(link_iv.members.size() == iv.members.size());
    // gamma -> gamma cap lk(s) is injective onto the link interval
    std::set<std::vector<std::int64_t>> images;
    for (const Root& g : iv.members) {
      Root img = lk.restrict(g);
      CHECK(link_iv.contains(img));
      images.insert(img.key());
    }
    CHECK(images.size() == iv.members.size());
    // endpoints map to endpoints
    CHECK(lk.restrict(a) == la);
    CHECK(lk.restrict(b) == lb);
    // extend inverts restrict
    for (const Root& g : iv.members) CHECK(lk.extend(lk.restrict(g)) == g);
  }
}

TEST_CASE("affine A2: crossing pair through the link, nested unsupported") {
  CoxeterSystem sys({{1, 3, 3}, {3, 1, 3}, {3, 3, 1}});
  CoxBall ball(sys, 6);
  RootSet rs(ball);
  IntervalEngine eng(rs);
  Root a = rs.simple(0), b = rs.simple(1);
  auto rep = classify_pair(rs, a, b);
  REQUIRE(rep.cls == PairClass::prenilpotent_finite_order);
  auto iv = eng.closed(a, b);
  CHECK(iv.members.size() == 3);
  CHECK(iv.contains(a));
  CHECK(iv.contains(b));

  // find a nested pair and check the engine refuses it
  bool found_nested = false;
  for (const Root& x : rs.all()) {
    if (found_nested) break;
    for (const Root& y : rs.all()) {
      if (x == y) continue;
      PairReport r;
      try {
        r = classify_pair(rs, x, y);
      } catch (const cap_exceeded&) {
        continue;
      }
      if (r.cls == PairClass::prenilpotent_nested) {
        found_nested = true;
        CHECK_THROWS_AS(eng.closed(x, y), invalid_argument);
        break;
      }
    }
  }
  CHECK(found_nested);
}
