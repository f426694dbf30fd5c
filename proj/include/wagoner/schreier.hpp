#pragma once

// Deterministic Schreier-Sims stabilizer chains for matrix groups acting on
// the nonzero vectors of F_q^n.  The point count (q^n - 1) stays small for
// every shipped instance, so the plain textbook algorithm is enough.

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <vector>

#include "wagoner/matgroup.hpp"

namespace wag {

using Perm = std::vector<int>;

inline Perm perm_identity(std::size_t n) {
  Perm p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<int>(i);
  return p;
}

inline bool perm_is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i)) return false;
  return true;
}

inline Perm perm_mul(const Perm& a, const Perm& b) {  // (a*b)(x) = a(b(x))
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[static_cast<std::size_t>(b[i])];
  return r;
}

inline Perm perm_inv(const Perm& a) {
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[static_cast<std::size_t>(a[i])] = static_cast<int>(i);
  return r;
}

// The faithful action of n x n matrices over F_q on nonzero column vectors.
class VectorAction {
 public:
  VectorAction(const FiniteField* field, std::size_t n) : field_(field), n_(n) {
    std::vector<Fq> v(n, 0);
    // enumerate nonzero vectors in canonical (odometer) order
    while (true) {
      std::size_t i = 0;
      while (i < n && v[i] == static_cast<Fq>(field->order() - 1)) v[i++] = 0;
      if (i == n) break;
      v[i] = static_cast<Fq>(v[i] + 1);
      index_.emplace(encode(v), static_cast<int>(points_.size()));
      points_.push_back(v);
    }
  }

  std::size_t degree() const { return points_.size(); }
  const FiniteField& field() const { return *field_; }
  std::size_t dim() const { return n_; }

  Perm perm_of(const FqMatrix& m) const {
    Perm p(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
      auto img = m.apply(points_[i]);
      auto it = index_.find(encode(img));
      if (it == index_.end()) throw error("matrix action left the point set (singular?)");
      p[i] = it->second;
    }
    return p;
  }

 private:
  std::uint64_t encode(const std::vector<Fq>& v) const {
    std::uint64_t e = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
      e = e * static_cast<std::uint64_t>(field_->order()) + v[i];
    return e;
  }

  const FiniteField* field_;
  std::size_t n_;
  std::vector<std::vector<Fq>> points_;
  std::unordered_map<std::uint64_t, int> index_;
};

// Stabilizer chain with deterministic base selection (smallest moved point).
class PermGroup {
 public:
  explicit PermGroup(std::size_t degree) : degree_(degree) {}

  PermGroup(std::size_t degree, const std::vector<Perm>& gens) : degree_(degree) {
    for (const Perm& g : gens) extend(g);
  }

  std::size_t degree() const { return degree_; }

  void extend(const Perm& g) {
    if (perm_is_identity(g)) return;
    if (contains(g)) return;
    add(0, g);
    verify_from(0);
  }

  bool contains(const Perm& g) const {
    Perm h = g;
    for (const Level& lvl : levels_) {
      int img = h[static_cast<std::size_t>(lvl.base)];
      auto it = lvl.transversal.find(img);
      if (it == lvl.transversal.end()) return false;
      h = perm_mul(perm_inv(it->second), h);
    }
    return perm_is_identity(h);
  }

  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (const Level& lvl : levels_) o *= lvl.transversal.size();
    return o;
  }

  // All elements by transversal products, smallest-depth factors last.
  // Guarded: refuses to materialize beyond the cap.
  std::vector<Perm> elements(std::uint64_t cap = 2000000) const {
    if (order() > cap) throw cap_exceeded("element enumeration beyond cap");
    std::vector<Perm> out{perm_identity(degree_)};
    for (auto it = levels_.rbegin(); it != levels_.rend(); ++it) {
      std::vector<int> pts;
      pts.reserve(it->transversal.size());
      for (const auto& [p, u] : it->transversal) pts.push_back(p);
      std::sort(pts.begin(), pts.end());
      std::vector<Perm> next;
      next.reserve(out.size() * pts.size());
      for (int p : pts) {
        const Perm& u = it->transversal.at(p);
        for (const Perm& e : out) next.push_back(perm_mul(u, e));
      }
      out = std::move(next);
    }
    return out;
  }

  const std::vector<int>& base() const { return base_points_; }

  std::vector<std::size_t> orbit_sizes() const {
    std::vector<std::size_t> out;
    for (const Level& lvl : levels_) out.push_back(lvl.transversal.size());
    return out;
  }

 private:
  struct Level {
    int base = -1;
    std::vector<Perm> gens;
    std::unordered_map<int, Perm> transversal;  // point -> u with u(base) = point
  };

  void add(std::size_t lvl, const Perm& g) {
    if (lvl == levels_.size()) {
      Level L;
      for (std::size_t i = 0; i < degree_; ++i)
        if (g[i] != static_cast<int>(i)) { L.base = static_cast<int>(i); break; }
      levels_.push_back(std::move(L));
      base_points_.push_back(levels_.back().base);
    }
    levels_[lvl].gens.push_back(g);
    rebuild_orbit(lvl);
  }

  void rebuild_orbit(std::size_t lvl) {
    Level& L = levels_[lvl];
    L.transversal.clear();
    L.transversal.emplace(L.base, perm_identity(degree_));
    std::vector<int> queue{L.base};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      int p = queue[head];
      const Perm u = L.transversal.at(p);
      for (const Perm& s : L.gens) {
        int q = s[static_cast<std::size_t>(p)];
        if (!L.transversal.count(q)) {
          L.transversal.emplace(q, perm_mul(s, u));
          queue.push_back(q);
        }
      }
    }
  }

  // check and repair the chain condition at and below lvl
  void verify_from(std::size_t start) {
    for (std::size_t lvl = start; lvl < levels_.size(); ++lvl) {
      Level& L = levels_[lvl];
      std::vector<int> pts;
      for (const auto& [p, u] : L.transversal) pts.push_back(p);
      std::sort(pts.begin(), pts.end());
      for (int p : pts) {
        const Perm u = L.transversal.at(p);
        for (std::size_t gi = 0; gi < L.gens.size(); ++gi) {
          Perm schreier = perm_mul(perm_inv(L.transversal.at(L.gens[gi][static_cast<std::size_t>(p)])),
                                   perm_mul(L.gens[gi], u));
          if (perm_is_identity(schreier)) continue;
          // sift through deeper levels
          Perm h = schreier;
          std::size_t at = lvl + 1;
          bool stripped = true;
          while (at < levels_.size() && stripped) {
            int img = h[static_cast<std::size_t>(levels_[at].base)];
            auto it = levels_[at].transversal.find(img);
            if (it == levels_[at].transversal.end()) { stripped = false; break; }
            h = perm_mul(perm_inv(it->second), h);
            if (perm_is_identity(h)) break;
            ++at;
          }
          if (!perm_is_identity(h)) {
            add(std::min(at, levels_.size()), h);
            verify_from(lvl + 1);
          }
        }
      }
    }
  }

  std::size_t degree_;
  // deque: add() grows the chain while verify_from holds references
  std::deque<Level> levels_;
  std::vector<int> base_points_;
};

}  // namespace wag
