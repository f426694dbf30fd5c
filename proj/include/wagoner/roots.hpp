#pragma once

// Roots as half-spaces of chambers, prenilpotent pairs, root intervals, the
// peel characterisation and the link bijection.  Membership of a chamber in
// a root is decided exactly from the reflection representation, so the same
// code serves spherical systems (full enumeration) and bounded windows of
// affine ones.

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "wagoner/coxeter.hpp"

namespace wag {

// A root is a signed vector in the Tits representation: v is +/- the
// positive-root vector of its reflection; negation flips the half-space.
struct Root {
  QVec v;
  QMatrix refl;  // the reflection at the wall of this root

  Root negated() const {
    Root r = *this;
    for (auto& q : r.v) q = QuadInt(0) - q;
    return r;
  }

  bool positive() const { return !CoxBall::vec_negative(v); }

  std::vector<std::int64_t> key() const {
    std::vector<std::int64_t> k;
    k.reserve(v.size() * 4);
    for (const auto& q : v) { k.push_back(q.a); k.push_back(q.b); k.push_back(q.c); k.push_back(q.d); }
    return k;
  }

  friend bool operator==(const Root& a, const Root& b) { return a.v == b.v; }
  friend bool operator!=(const Root& a, const Root& b) { return !(a.v == b.v); }
  friend bool operator<(const Root& a, const Root& b) { return a.key() < b.key(); }
};

class RootSet {
 public:
  explicit RootSet(const CoxBall& ball) : ball_(&ball) {
    const CoxeterSystem& sys = ball.system();
    std::map<std::vector<std::int64_t>, Root> found;
    for (int w = 0; w < static_cast<int>(ball.size()); ++w) {
      for (std::size_t s = 0; s < sys.rank(); ++s) {
        Root r;
        r.v = ball.mat(w).apply(sys.simple_root(s));
        QMatrix t = ball.mat(w) * sys.generator_matrix(s) * ball.inv_mat(w);
        r.refl = t;
        found.emplace(r.key(), r);
        found.emplace(r.negated().key(), r.negated());
      }
    }
    for (auto& [k, r] : found) roots_.push_back(std::move(r));
  }

  const CoxBall& ball() const { return *ball_; }
  std::size_t size() const { return roots_.size(); }
  const Root& operator[](std::size_t i) const { return roots_[i]; }
  const std::vector<Root>& all() const { return roots_; }

  int index_of(const Root& r) const {
    auto it = std::lower_bound(roots_.begin(), roots_.end(), r);
    if (it == roots_.end() || !(*it == r)) return -1;
    return static_cast<int>(it - roots_.begin());
  }

  int negation_of(int i) const { return index_of(roots_[static_cast<std::size_t>(i)].negated()); }

  // w is in the half-space of r
  bool member(int chamber, const Root& r) const {
    QVec u = ball_->inv_mat(chamber).apply(r.v);
    return !CoxBall::vec_negative(u);
  }

  std::vector<int> chambers_in(const Root& r) const {
    std::vector<int> out;
    for (int w = 0; w < static_cast<int>(ball_->size()); ++w)
      if (member(w, r)) out.push_back(w);
    return out;
  }

  // simple root of generator s
  Root simple(std::size_t s) const {
    Root r;
    r.v = ball_->system().simple_root(s);
    r.refl = ball_->system().generator_matrix(s);
    return r;
  }

  // image of r under the chamber w (left action)
  Root acted(int w, const Root& r) const {
    Root out;
    out.v = ball_->mat(w).apply(r.v);
    out.refl = ball_->mat(w) * r.refl * ball_->inv_mat(w);
    return out;
  }

  // R_s is contained in the half-space of r
  bool residue_inside(const CoxComplex& cc, const CoxSimplex& s, const Root& r) const {
    for (int c : cc.residue(s))
      if (!member(c, r)) return false;
    return true;
  }

  // the simplex lies on the wall of r: the reflection permutes R_s
  bool on_wall(const CoxComplex& cc, const CoxSimplex& s, const Root& r) const {
    auto res = cc.residue(s);
    std::vector<std::vector<std::int64_t>> keys;
    keys.reserve(res.size());
    for (int c : res) keys.push_back(ball_->mat(c).key());
    std::sort(keys.begin(), keys.end());
    for (int c : res) {
      auto k = (r.refl * ball_->mat(c)).key();
      if (!std::binary_search(keys.begin(), keys.end(), k)) return false;
    }
    return true;
  }

 private:
  const CoxBall* ball_;
  std::vector<Root> roots_;
};

enum class PairClass {
  not_prenilpotent,
  prenilpotent_nested,       // includes (alpha, alpha)
  prenilpotent_finite_order  // non-nested
};

struct PairReport {
  PairClass cls = PairClass::not_prenilpotent;
  bool finite_order = false;
  int order = 0;           // order of s_alpha s_beta when finite
  int nested_direction = 0;  // +1: alpha inside beta, -1: beta inside alpha, 0: equal/none
};


// order of the product of the two reflections; 0 for infinite
inline int reflection_product_order(const CoxeterSystem& sys, const Root& a, const Root& b) {
  QuadInt c = sys.form2_value(a.v, b.v);  // 2B(v_a, v_b)
  QuadInt two(2);
  if ((two - c).sign() <= 0 || (two + c).sign() <= 0) {
    // |B| >= 1: equal walls give the identity product, otherwise the walls
    // are parallel or ultraparallel and the product has infinite order
    return a.refl == b.refl ? 1 : 0;
  }
  QMatrix prod = a.refl * b.refl;
  QMatrix acc = prod;
  QMatrix id = QMatrix::identity(a.v.size());
  for (int k = 1; k <= 64; ++k) {
    if (acc == id) return k;
    acc = acc * prod;
  }
  throw error("reflection product order exceeds 64; representation corrupt");
}

// Classification per the nested-or-finite-order lemma.  Exact on any ball:
// crossing walls (finite product order) leave all four sign quadrants
// nonempty; distinct non-crossing walls cut the complex into exactly three
// gallery-connected regions, so observing three distinct sign patterns
// certifies the fourth quadrant empty.  A ball too small to show three
// patterns raises a loud error rather than guessing.
inline PairReport classify_pair(const RootSet& rs, const Root& a, const Root& b) {
  PairReport rep;
  if (a == b) {
    rep.cls = PairClass::prenilpotent_nested;
    rep.finite_order = true;
    rep.order = 1;
    return rep;
  }
  if (a == b.negated()) {
    rep.cls = PairClass::not_prenilpotent;
    rep.finite_order = true;
    rep.order = 1;
    return rep;
  }
  int ord = reflection_product_order(rs.ball().system(), a, b);
  rep.finite_order = ord != 0;
  rep.order = ord;
  if (ord != 0) {
    rep.cls = PairClass::prenilpotent_finite_order;
    return rep;
  }
  const CoxBall& ball = rs.ball();
  bool seen[4] = {false, false, false, false};
  for (int w = 0; w < static_cast<int>(ball.size()); ++w) {
    int pat = (rs.member(w, a) ? 2 : 0) | (rs.member(w, b) ? 1 : 0);
    seen[pat] = true;
  }
  int count = seen[0] + seen[1] + seen[2] + seen[3];
  if (count < 3)
    throw cap_exceeded("pair classification undecidable inside the enumerated ball");
  if (count == 4) throw error("four quadrants realized for non-crossing walls");
  if (!seen[3] || !seen[0]) {
    rep.cls = PairClass::not_prenilpotent;
    return rep;
  }
  rep.cls = PairClass::prenilpotent_nested;
  rep.nested_direction = !seen[2] ? +1 : -1;  // alpha cap -beta empty: alpha inside beta
  return rep;
}

enum class IntervalVariant { closed, left_open, right_open };

struct RootInterval {
  Root lo, hi;
  IntervalVariant variant = IntervalVariant::closed;
  std::vector<Root> members;  // sorted by root key

  bool contains(const Root& r) const {
    return std::binary_search(members.begin(), members.end(), r);
  }
};

// the closed interval for a prenilpotent pair in a fully enumerated
// (spherical) system, straight from the definition
inline RootInterval root_interval_spherical(const RootSet& rs, const Root& a, const Root& b,
                                            IntervalVariant variant = IntervalVariant::closed) {
  const CoxBall& ball = rs.ball();
  if (!ball.whole_group()) throw invalid_argument("definitional interval needs the whole group");
  std::vector<char> in_ab(ball.size()), in_nanb(ball.size());
  Root na = a.negated(), nb = b.negated();
  bool have_pos = false, have_neg = false;
  for (int w = 0; w < static_cast<int>(ball.size()); ++w) {
    in_ab[static_cast<std::size_t>(w)] = rs.member(w, a) && rs.member(w, b);
    in_nanb[static_cast<std::size_t>(w)] = rs.member(w, na) && rs.member(w, nb);
    have_pos |= in_ab[static_cast<std::size_t>(w)] != 0;
    have_neg |= in_nanb[static_cast<std::size_t>(w)] != 0;
  }
  if (!have_pos || !have_neg) throw invalid_argument("pair is not prenilpotent");
  RootInterval out;
  out.lo = a;
  out.hi = b;
  out.variant = variant;
  for (const Root& g : rs.all()) {
    bool ok = true;
    for (int w = 0; ok && w < static_cast<int>(ball.size()); ++w) {
      if (in_ab[static_cast<std::size_t>(w)] && !rs.member(w, g)) ok = false;
      if (in_nanb[static_cast<std::size_t>(w)] && rs.member(w, g)) ok = false;
    }
    if (!ok) continue;
    if (variant == IntervalVariant::left_open && g == a) continue;
    if (variant == IntervalVariant::right_open && g == b) continue;
    out.members.push_back(g);
  }
  std::sort(out.members.begin(), out.members.end());
  return out;
}

struct PeelResult {
  bool singleton = false;       // ]a,b] = {b} and [a,b[ = {a}
  std::optional<Root> a_prime;  // ]a,b] = [a',b]
  std::optional<Root> b_prime;  // [a,b[ = [a,b']
};

class LinkBijection;

// Root intervals with the general entry point: definitional for spherical
// systems, through the link bijection for non-nested pairs in non-spherical
// systems.
class IntervalEngine {
 public:
  explicit IntervalEngine(const RootSet& rs) : rs_(&rs), cc_(rs.ball()) {}

  const RootSet& roots() const { return *rs_; }
  const CoxComplex& complex() const { return cc_; }

  RootInterval closed(const Root& a, const Root& b) const {
    return interval(a, b, IntervalVariant::closed);
  }

  RootInterval interval(const Root& a, const Root& b, IntervalVariant variant) const;

  // Lemma "root_intervals": either roots a', b' with ]a,b] = [a',b] and
  // [a,b[ = [a,b'], or the interval has the two endpoints only.  Verified
  // extensionally before returning.
  PeelResult peel(const Root& a, const Root& b) const {
    PairReport rep = classify_pair(*rs_, a, b);
    if (rep.cls != PairClass::prenilpotent_finite_order)
      throw invalid_argument("peel needs a prenilpotent non-nested pair");
    RootInterval full = closed(a, b);
    RootInterval lo = interval(a, b, IntervalVariant::left_open);
    RootInterval ro = interval(a, b, IntervalVariant::right_open);
    PeelResult out;
    if (full.members.size() == 2) {
      if (!(lo.members.size() == 1 && lo.members[0] == b))
        throw error("peel: ]a,b] is not {b} for an endpoint-only interval");
      if (!(ro.members.size() == 1 && ro.members[0] == a))
        throw error("peel: [a,b[ is not {a} for an endpoint-only interval");
      out.singleton = true;
      return out;
    }
    for (const Root& cand : full.members) {
      if (cand == a) continue;
      RootInterval trial = closed(cand, b);
      if (trial.members == lo.members) { out.a_prime = cand; break; }
    }
    for (const Root& cand : full.members) {
      if (cand == b) continue;
      RootInterval trial = closed(a, cand);
      if (trial.members == ro.members) { out.b_prime = cand; break; }
    }
    if (!out.a_prime || !out.b_prime)
      throw error("peel: no witness roots found (falsifies the interval lemma)");
    return out;
  }

  // all maximal simplices in the intersection of the two walls; in rank 2
  // the intersection of distinct walls is the empty face, whose link is the
  // whole complex
  std::vector<CoxSimplex> wall_intersection_maximal(const Root& a, const Root& b) const {
    const std::size_t rank = cc_.system().rank();
    if (rank == 2) {
      CoxSimplex empty_face{(1u << rank) - 1, 0};
      return {empty_face};
    }
    std::vector<CoxSimplex> hits;
    for (const CoxSimplex& s : cc_.simplices()) {
      if (__builtin_popcount(s.jmask) != 2) continue;  // codimension 2
      if (!cc_.co_spherical(s)) continue;
      try {
        if (rs_->on_wall(cc_, s, a) && rs_->on_wall(cc_, s, b)) hits.push_back(s);
      } catch (const cap_exceeded&) {
        // residue not fully inside the ball: unusable as a certified link
      }
    }
    return hits;
  }

 private:
  const RootSet* rs_;
  CoxComplex cc_;
};

// The link of a codimension-2 simplex s as a standalone dihedral system,
// with the dictionary between ambient roots whose wall contains s and the
// roots of the link.
class LinkBijection {
 public:
  LinkBijection(const IntervalEngine& eng, const CoxSimplex& s)
      : eng_(&eng), s_(s), link_sys_(make_link_system(eng, s)), link_ball_(link_sys_, CoxBall::kWholeGroup),
        link_roots_(link_ball_) {
    const CoxComplex& cc = eng.complex();
    residue_ = cc.residue(s);
    // identify residue chambers with W_J elements: rep * u  <->  u
    const CoxBall& ball = cc.ball();
    gens_.clear();
    for (std::size_t g = 0; g < cc.system().rank(); ++g)
      if (s.jmask & (1u << g)) gens_.push_back(g);
    for (int u = 0; u < static_cast<int>(link_ball_.size()); ++u) {
      QMatrix m = ball.mat(s.rep);
      for (std::uint8_t gl : link_ball_.word(u)) m = m * cc.system().generator_matrix(gens_[gl]);
      int idx = ball.find(m);
      if (idx < 0) throw cap_exceeded("link residue leaves the ball");
      chamber_of_link_.push_back(idx);
    }
  }

  const CoxeterSystem& link_system() const { return link_sys_; }
  const CoxBall& link_ball() const { return link_ball_; }
  const RootSet& link_roots() const { return link_roots_; }
  const std::vector<int>& residue() const { return residue_; }

  // gamma cap lk(s): the link root with the same chamber trace on R_s;
  // requires the wall of gamma to contain s
  Root restrict(const Root& gamma) const {
    std::vector<char> trace(link_ball_.size());
    for (std::size_t u = 0; u < link_ball_.size(); ++u)
      trace[u] = eng_->roots().member(chamber_of_link_[u], gamma) ? 1 : 0;
    for (const Root& lr : link_roots_.all()) {
      bool match = true;
      for (std::size_t u = 0; match && u < link_ball_.size(); ++u)
        if ((link_roots_.member(static_cast<int>(u), lr) ? 1 : 0) != trace[u]) match = false;
      if (match) return lr;
    }
    throw error("no link root matches the chamber trace (simplex not on the wall?)");
  }

  // the ambient root gamma with wall through s whose trace equals the link
  // root; inverse of restrict
  Root extend(const Root& link_root) const {
    const CoxComplex& cc = eng_->complex();
    const CoxBall& ball = cc.ball();
    // candidate ambient roots: w*simple over chambers of the residue; the
    // walls through s are exactly the conjugates of the W_J reflections
    std::vector<Root> candidates;
    for (int c : residue_) {
      for (std::size_t gi : gens_) {
        Root r;
        r.v = ball.mat(c).apply(cc.system().simple_root(gi));
        r.refl = ball.mat(c) * cc.system().generator_matrix(gi) * ball.inv_mat(c);
        candidates.push_back(r);
        candidates.push_back(r.negated());
      }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end(),
                                 [](const Root& x, const Root& y) { return x == y; }),
                     candidates.end());
    for (const Root& cand : candidates) {
      bool match = true;
      for (std::size_t u = 0; match && u < link_ball_.size(); ++u) {
        bool amb = eng_->roots().member(chamber_of_link_[u], cand);
        bool lnk = link_roots_.member(static_cast<int>(u), link_root);
        if (amb != lnk) match = false;
      }
      if (match) return cand;
    }
    throw error("no ambient root extends the link root");
  }

 private:
  static CoxeterSystem make_link_system(const IntervalEngine& eng, const CoxSimplex& s) {
    if (__builtin_popcount(s.jmask) != 2)
      throw invalid_argument("link bijection needs a codimension-2 simplex");
    if (!eng.complex().co_spherical(s))
      throw invalid_argument("link must be spherical (finite order pair)");
    return eng.complex().system().subsystem(s.jmask);
  }

  const IntervalEngine* eng_;
  CoxSimplex s_;
  CoxeterSystem link_sys_;
  CoxBall link_ball_;
  RootSet link_roots_;
  std::vector<int> residue_;
  std::vector<std::size_t> gens_;
  std::vector<int> chamber_of_link_;
};

inline RootInterval IntervalEngine::interval(const Root& a, const Root& b,
                                             IntervalVariant variant) const {
  if (rs_->ball().whole_group()) return root_interval_spherical(*rs_, a, b, variant);
  PairReport rep = classify_pair(*rs_, a, b);
  if (rep.cls == PairClass::not_prenilpotent) throw invalid_argument("pair is not prenilpotent");
  if (a == b) {
    RootInterval out;
    out.lo = a;
    out.hi = b;
    out.variant = variant;
    if (variant == IntervalVariant::closed) out.members = {a};
    return out;
  }
  if (rep.cls == PairClass::prenilpotent_nested)
    throw invalid_argument("root intervals for nested pairs in a non-spherical system are unsupported");
  // finite order: reduce to the link of a maximal wall-intersection simplex
  auto maximal = wall_intersection_maximal(a, b);
  if (maximal.empty()) throw cap_exceeded("no wall-intersection simplex inside the ball");
  LinkBijection lk(*this, maximal.front());
  Root la = lk.restrict(a), lb = lk.restrict(b);
  RootInterval link_iv = root_interval_spherical(lk.link_roots(), la, lb, IntervalVariant::closed);
  RootInterval out;
  out.lo = a;
  out.hi = b;
  out.variant = variant;
  for (const Root& lr : link_iv.members) {
    Root amb = lk.extend(lr);
    if (variant == IntervalVariant::left_open && amb == a) continue;
    if (variant == IntervalVariant::right_open && amb == b) continue;
    out.members.push_back(amb);
  }
  std::sort(out.members.begin(), out.members.end());
  return out;
}

}  // namespace wag
