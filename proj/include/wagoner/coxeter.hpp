#pragma once

// Coxeter systems with entries in {2,3,4,6,inf}, their elements as exact
// reflection-representation matrices over Z[sqrt2,sqrt3], ShortLex ball
// enumeration, and the simplices of the Coxeter complex as parabolic cosets.
//
// Conventions:
//  * chambers are identified with W elements (the coset wW_empty);
//  * a simplex is a coset wW_J with J a proper subset of S (the empty face,
//    which would be J = S, is never generated);
//  * the fundamental chamber c_0 is the identity.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <string>
#include <unordered_map>
#include <vector>

#include "wagoner/quadint.hpp"

namespace wag {

constexpr int kInfOrder = 0;  // marker for m(s,t) = infinity

using QVec = std::vector<QuadInt>;

// Small dense matrix over Z[sqrt2,sqrt3]; rank of a Coxeter system is tiny.
class QMatrix {
 public:
  QMatrix() = default;
  explicit QMatrix(std::size_t n) : n_(n), e_(n * n) {}

  static QMatrix identity(std::size_t n) {
    QMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = QuadInt(1);
    return m;
  }

  std::size_t size() const { return n_; }
  QuadInt& at(std::size_t r, std::size_t c) { return e_[r * n_ + c]; }
  const QuadInt& at(std::size_t r, std::size_t c) const { return e_[r * n_ + c]; }

  friend QMatrix operator*(const QMatrix& x, const QMatrix& y) {
    QMatrix z(x.n_);
    for (std::size_t i = 0; i < x.n_; ++i)
      for (std::size_t k = 0; k < x.n_; ++k) {
        const QuadInt& v = x.at(i, k);
        if (v.is_zero()) continue;
        for (std::size_t j = 0; j < x.n_; ++j) z.at(i, j) += v * y.at(k, j);
      }
    return z;
  }

  friend bool operator==(const QMatrix& x, const QMatrix& y) { return x.e_ == y.e_; }

  QVec apply(const QVec& v) const {
    QVec out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out[i] += at(i, j) * v[j];
    return out;
  }

  std::vector<std::int64_t> key() const {
    std::vector<std::int64_t> k;
    k.reserve(e_.size() * 4);
    for (const auto& q : e_) { k.push_back(q.a); k.push_back(q.b); k.push_back(q.c); k.push_back(q.d); }
    return k;
  }

 private:
  std::size_t n_ = 0;
  std::vector<QuadInt> e_;
};

struct KeyHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::int64_t x : v) {
      for (int i = 0; i < 8; ++i) {
        h ^= static_cast<unsigned char>(x >> (8 * i));
        h *= 0x100000001b3ULL;
      }
    }
    return static_cast<std::size_t>(h);
  }
};

struct CoxeterOptions {
  // m(s,t) = 2 everywhere off the diagonal of some generator is rejected by
  // default; links and 2m-gon oracles construct such rank-2 systems
  // deliberately.
  bool allow_isolated_nodes = false;
  std::size_t spherical_enum_cap = 2000000;
};

class CoxeterSystem {
 public:
  // matrix entries: m(s,s) = 1, off-diagonal in {2,3,4,6} or kInfOrder.
  explicit CoxeterSystem(std::vector<std::vector<int>> m, CoxeterOptions opts = {})
      : m_(std::move(m)), opts_(opts) {
    rank_ = m_.size();
    if (rank_ < 2) throw invalid_argument("Coxeter rank must be at least 2");
    for (std::size_t i = 0; i < rank_; ++i) {
      if (m_[i].size() != rank_) throw invalid_argument("Coxeter matrix not square");
      if (m_[i][i] != 1) throw invalid_argument("Coxeter matrix diagonal must be 1");
      for (std::size_t j = 0; j < rank_; ++j) {
        if (m_[i][j] != m_[j][i]) throw invalid_argument("Coxeter matrix not symmetric");
        if (i != j && m_[i][j] != 2 && m_[i][j] != 3 && m_[i][j] != 4 && m_[i][j] != 6 &&
            m_[i][j] != kInfOrder)
          throw invalid_argument("unsupported Coxeter matrix entry (need 2,3,4,6 or inf)");
      }
    }
    if (!opts_.allow_isolated_nodes) {
      for (std::size_t i = 0; i < rank_; ++i) {
        bool connected = false;
        for (std::size_t j = 0; j < rank_; ++j)
          if (i != j && m_[i][j] != 2) connected = true;
        if (!connected) throw invalid_argument("Coxeter diagram has an isolated node");
      }
    }
    build_form_and_generators();
    spherical_ = positive_definite();
  }

  std::size_t rank() const { return rank_; }
  int m(std::size_t s, std::size_t t) const { return m_[s][t]; }
  bool spherical() const { return spherical_; }
  const CoxeterOptions& options() const { return opts_; }
  const QMatrix& generator_matrix(std::size_t s) const { return gens_[s]; }

  // twice the Tits bilinear form: B2(e_s,e_t) = -2cos(pi/m(s,t))
  const QMatrix& form2() const { return form2_; }

  QuadInt form2_value(const QVec& u, const QVec& v) const {
    QuadInt acc;
    for (std::size_t i = 0; i < rank_; ++i) {
      if (u[i].is_zero()) continue;
      for (std::size_t j = 0; j < rank_; ++j) acc += u[i] * form2_.at(i, j) * v[j];
    }
    return acc;
  }

  QVec simple_root(std::size_t s) const {
    QVec v(rank_);
    v[s] = QuadInt(1);
    return v;
  }

  // dihedral convenience
  static CoxeterSystem dihedral(int order_m, CoxeterOptions opts = {}) {
    if (order_m == 2) opts.allow_isolated_nodes = true;
    return CoxeterSystem({{1, order_m}, {order_m, 1}}, opts);
  }

  // standard parabolic subsystem on the generator subset J (as a bitmask);
  // isolated nodes are always allowed in subsystems.
  CoxeterSystem subsystem(std::uint32_t jmask) const {
    std::vector<std::size_t> idx;
    for (std::size_t s = 0; s < rank_; ++s)
      if (jmask & (1u << s)) idx.push_back(s);
    if (idx.size() < 2) throw invalid_argument("subsystem needs at least 2 generators");
    std::vector<std::vector<int>> sub(idx.size(), std::vector<int>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) sub[i][j] = m_[idx[i]][idx[j]];
    CoxeterOptions o = opts_;
    o.allow_isolated_nodes = true;
    return CoxeterSystem(std::move(sub), o);
  }

  // |W_J|, or 0 if infinite.  Exact: positive-definiteness decides
  // finiteness, then breadth-first enumeration counts.
  std::uint64_t parabolic_order(std::uint32_t jmask) const;

  bool parabolic_spherical(std::uint32_t jmask) const {
    int c = __builtin_popcount(jmask);
    if (c <= 1) return true;
    return subsystem(jmask).spherical();
  }

 private:
  void build_form_and_generators() {
    form2_ = QMatrix(rank_);
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t j = 0; j < rank_; ++j) form2_.at(i, j) = minus_two_cos(m_[i][j]);
    gens_.clear();
    for (std::size_t s = 0; s < rank_; ++s) {
      QMatrix g = QMatrix::identity(rank_);
      // sigma_s(e_t) = e_t - 2B(e_s,e_t) e_s: row s picks up -B2(s,t)
      for (std::size_t t = 0; t < rank_; ++t) {
        if (t == s)
          g.at(s, s) = QuadInt(-1);
        else
          g.at(s, t) = QuadInt(0) - form2_.at(s, t);
      }
      gens_.push_back(g);
    }
  }

  static QuadInt minus_two_cos(int m) {
    switch (m) {
      case 1: return QuadInt(2);    // -2cos(pi) = 2
      case 2: return QuadInt(0);
      case 3: return QuadInt(-1);
      case 4: return QuadInt(0, -1);     // -sqrt2
      case 6: return QuadInt(0, 0, -1);  // -sqrt3
      case kInfOrder: return QuadInt(-2);
      default: throw invalid_argument("unsupported Coxeter entry");
    }
  }

  bool positive_definite() const {
    // Sylvester: all leading principal minors of the form are positive.
    for (std::size_t k = 1; k <= rank_; ++k) {
      if (minor_det(k).sign() <= 0) return false;
    }
    return true;
  }

  QuadInt minor_det(std::size_t k) const {
    std::vector<std::size_t> rows(k), cols(k);
    for (std::size_t i = 0; i < k; ++i) rows[i] = cols[i] = i;
    return det_rec(rows, cols);
  }

  QuadInt det_rec(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    if (rows.size() == 1) return form2_.at(rows[0], cols[0]);
    QuadInt acc;
    std::vector<std::size_t> sub(rows.begin() + 1, rows.end());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const QuadInt& v = form2_.at(rows[0], cols[j]);
      if (v.is_zero()) continue;
      std::vector<std::size_t> rest;
      for (std::size_t t = 0; t < cols.size(); ++t)
        if (t != j) rest.push_back(cols[t]);
      QuadInt term = v * det_rec(sub, rest);
      acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
  }

  std::vector<std::vector<int>> m_;
  CoxeterOptions opts_;
  std::size_t rank_ = 0;
  bool spherical_ = false;
  QMatrix form2_;
  std::vector<QMatrix> gens_;
};

// ShortLex ball: every element of length <= radius (or the whole group when
// spherical and radius is npos), in ShortLex discovery order, deduplicated by
// exact matrix.
class CoxBall {
 public:
  static constexpr std::size_t kWholeGroup = static_cast<std::size_t>(-1);

  CoxBall(const CoxeterSystem& sys, std::size_t radius, std::size_t cap = 2000000)
      : sys_(sys), radius_(radius) {
    if (radius == kWholeGroup && !sys.spherical())
      throw invalid_argument("whole-group enumeration requires a spherical system");
    const std::size_t rank = sys.rank();
    push(QMatrix::identity(rank), {});
    std::size_t layer_begin = 0;
    std::size_t len = 0;
    while (layer_begin < words_.size() && (radius == kWholeGroup || len < radius)) {
      std::size_t layer_end = words_.size();
      for (std::size_t i = layer_begin; i < layer_end; ++i) {
        for (std::size_t s = 0; s < rank; ++s) {
          QMatrix m = mats_[i] * sys.generator_matrix(s);
          auto k = m.key();
          if (index_.count(k)) continue;
          if (words_.size() >= cap) throw cap_exceeded("Coxeter ball enumeration cap exceeded");
          std::vector<std::uint8_t> w = words_[i];
          w.push_back(static_cast<std::uint8_t>(s));
          index_.emplace(std::move(k), static_cast<int>(words_.size()));
          words_.push_back(std::move(w));
          mats_.push_back(std::move(m));
          inv_mats_.push_back(sys.generator_matrix(s) * inv_mats_[i]);
        }
      }
      layer_begin = layer_end;
      ++len;
    }
    complete_ = (layer_begin == words_.size());  // no element of length radius+1 exists
  }

  const CoxeterSystem& system() const { return sys_; }
  std::size_t size() const { return words_.size(); }
  std::size_t radius() const { return radius_; }

  // true iff the enumeration closed (the ball is the whole group)
  bool whole_group() const { return complete_; }

  const std::vector<std::uint8_t>& word(int i) const { return words_[static_cast<std::size_t>(i)]; }
  std::size_t length(int i) const { return words_[static_cast<std::size_t>(i)].size(); }
  const QMatrix& mat(int i) const { return mats_[static_cast<std::size_t>(i)]; }
  const QMatrix& inv_mat(int i) const { return inv_mats_[static_cast<std::size_t>(i)]; }

  int find(const QMatrix& m) const {
    auto it = index_.find(m.key());
    return it == index_.end() ? -1 : it->second;
  }

  // ws as an index, -1 if outside the ball
  int right(int i, std::size_t s) const { return find(mat(i) * sys_.generator_matrix(s)); }
  int left(std::size_t s, int i) const { return find(sys_.generator_matrix(s) * mat(i)); }
  int product(int i, int j) const { return find(mat(i) * mat(j)); }
  int inverse(int i) const { return find(inv_mat(i)); }

  // ell(ws) < ell(w), decided exactly from the representation
  bool right_descent(int i, std::size_t s) const {
    return vec_negative(mat(i).apply(sys_.simple_root(s)));
  }
  bool left_descent(std::size_t s, int i) const {
    return vec_negative(inv_mat(i).apply(sys_.simple_root(s)));
  }

  // root-vector sign; vectors in the Tits representation of a root are
  // coordinate-wise sign-coherent
  static bool vec_negative(const QVec& v) {
    bool has_neg = false;
    for (const auto& q : v) {
      int s = q.sign();
      if (s > 0) return false;
      if (s < 0) has_neg = true;
    }
    if (!has_neg) throw error("zero vector has no sign");
    return true;
  }

 private:
  void push(QMatrix m, std::vector<std::uint8_t> w) {
    index_.emplace(m.key(), static_cast<int>(words_.size()));
    words_.push_back(std::move(w));
    mats_.push_back(m);
    inv_mats_.push_back(std::move(m));
  }

  CoxeterSystem sys_;
  std::size_t radius_;
  bool complete_ = false;
  std::vector<std::vector<std::uint8_t>> words_;
  std::vector<QMatrix> mats_, inv_mats_;
  std::unordered_map<std::vector<std::int64_t>, int, KeyHash> index_;
};

inline std::uint64_t CoxeterSystem::parabolic_order(std::uint32_t jmask) const {
  int c = __builtin_popcount(jmask);
  if (c == 0) return 1;
  if (c == 1) return 2;
  CoxeterSystem sub = subsystem(jmask);
  if (!sub.spherical()) return 0;
  CoxBall ball(sub, CoxBall::kWholeGroup, opts_.spherical_enum_cap);
  return ball.size();
}

// A simplex of the Coxeter complex: the coset (rep)W_J, with rep the unique
// ShortLex-minimal coset element.
struct CoxSimplex {
  std::uint32_t jmask = 0;
  int rep = 0;

  friend bool operator==(const CoxSimplex& a, const CoxSimplex& b) {
    return a.jmask == b.jmask && a.rep == b.rep;
  }
  friend bool operator<(const CoxSimplex& a, const CoxSimplex& b) {
    if (a.jmask != b.jmask) return a.jmask < b.jmask;
    return a.rep < b.rep;
  }
};

struct CoxSimplexHash {
  std::size_t operator()(const CoxSimplex& s) const {
    return std::hash<std::uint64_t>()((static_cast<std::uint64_t>(s.jmask) << 32) ^
                                      static_cast<std::uint64_t>(s.rep));
  }
};

class CoxComplex {
 public:
  explicit CoxComplex(const CoxBall& ball) : ball_(&ball) {}

  const CoxBall& ball() const { return *ball_; }
  const CoxeterSystem& system() const { return ball_->system(); }

  // minimal coset representative of w W_J
  int coset_rep(int w, std::uint32_t jmask) const {
    bool descended = true;
    while (descended) {
      descended = false;
      for (std::size_t s = 0; s < system().rank(); ++s) {
        if (!(jmask & (1u << s))) continue;
        if (ball_->right_descent(w, s)) {
          int nxt = ball_->right(w, s);
          if (nxt < 0) throw error("coset descent left the ball");
          w = nxt;
          descended = true;
        }
      }
    }
    return w;
  }

  CoxSimplex simplex(int w, std::uint32_t jmask) const { return {jmask, coset_rep(w, jmask)}; }

  // all simplices wW_J with J a proper subset of S, within the ball; for a
  // whole-group ball this is the full (finite) Coxeter complex
  std::vector<CoxSimplex> simplices() const {
    const std::uint32_t full = (1u << system().rank()) - 1;
    std::vector<CoxSimplex> out;
    std::unordered_map<std::uint64_t, bool> seen;
    for (std::uint32_t j = 0; j < full; ++j) {
      for (int w = 0; w < static_cast<int>(ball_->size()); ++w) {
        CoxSimplex s = simplex(w, j);
        std::uint64_t k = (static_cast<std::uint64_t>(j) << 32) | static_cast<std::uint64_t>(s.rep);
        if (seen.emplace(k, true).second) out.push_back(s);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool co_spherical(const CoxSimplex& s) const { return system().parabolic_spherical(s.jmask); }

  // chambers of the residue R_s (all chambers whose simplex contains s);
  // throws if the residue is not entirely inside the ball
  std::vector<int> residue(const CoxSimplex& s) const {
    std::vector<int> out{s.rep};
    std::unordered_map<int, bool> seen{{s.rep, true}};
    for (std::size_t head = 0; head < out.size(); ++head) {
      int w = out[head];
      for (std::size_t g = 0; g < system().rank(); ++g) {
        if (!(s.jmask & (1u << g))) continue;
        int nxt = ball_->right(w, g);
        if (nxt < 0) throw cap_exceeded("residue leaves the enumerated ball");
        if (seen.emplace(nxt, true).second) out.push_back(nxt);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // face order: s <= t iff R_s contains R_t, i.e. J_s contains J_t and the
  // cosets satisfy rep_t in (rep_s)W_{J_s}
  bool face_le(const CoxSimplex& a, const CoxSimplex& b) const {
    if ((a.jmask & b.jmask) != b.jmask) return false;
    return coset_rep(b.rep, a.jmask) == a.rep;
  }

  std::string simplex_str(const CoxSimplex& s) const {
    std::string out = "w=";
    for (auto g : ball_->word(s.rep)) out += static_cast<char>('0' + g);
    if (ball_->word(s.rep).empty()) out += "e";
    out += ",J={";
    for (std::size_t g = 0; g < system().rank(); ++g)
      if (s.jmask & (1u << g)) { out += static_cast<char>('0' + g); }
    out += "}";
    return out;
  }

 private:
  const CoxBall* ball_;
};

}  // namespace wag
