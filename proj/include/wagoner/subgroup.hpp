#pragma once

// Finite matrix subgroups with two backends: an explicit element set for
// small orders and a Schreier-Sims stabilizer chain (over the action on
// nonzero vectors) beyond that.  Canonical keys: the sorted element-encoding
// list when the explicit set fits, which is an exact set identity.

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <vector>

#include "wagoner/schreier.hpp"

namespace wag {

constexpr std::size_t kExplicitSubgroupCap = 4096;

class FinSubgroup {
 public:
  FinSubgroup() = default;

  // closure of the generators; switches to a stabilizer chain when the
  // explicit closure would exceed the cap
  FinSubgroup(const VectorAction* action, std::vector<FqMatrix> gens,
              std::size_t explicit_cap = kExplicitSubgroupCap)
      : action_(action), gens_(std::move(gens)) {
    if (gens_.empty()) throw invalid_argument("subgroup needs at least the identity generator");
    n_ = gens_.front().size();
    field_ = &gens_.front().field();
    if (!try_explicit_closure(explicit_cap)) build_chain();
  }

  static FinSubgroup trivial(const VectorAction* action, const FiniteField* f, std::size_t n) {
    return FinSubgroup(action, {FqMatrix::identity(f, n)});
  }

  const VectorAction& action() const { return *action_; }
  const std::vector<FqMatrix>& generators() const { return gens_; }
  bool is_explicit() const { return chain_ == nullptr; }

  std::uint64_t order() const { return chain_ ? chain_->order() : elements_.size(); }

  bool member(const FqMatrix& m) const {
    if (chain_) return chain_->contains(action_->perm_of(m));
    return std::binary_search(elements_.begin(), elements_.end(), m);
  }

  // explicit elements in canonical order; enumerates through the chain when
  // needed (guarded by cap)
  const std::vector<FqMatrix>& elements(std::uint64_t cap = 2000000) const {
    if (elements_.empty() && chain_) {
      auto perms = chain_->elements(cap);
      // recover matrices: image of the standard basis vectors under the
      // permutation determines the matrix columns
      elements_ = matrices_from_perms(perms);
      std::sort(elements_.begin(), elements_.end());
    }
    return elements_;
  }

  // sorted element encodings; exact set identity for explicit groups
  std::vector<Fq> canonical_key() const {
    if (!is_explicit()) throw cap_exceeded("canonical set key needs the explicit backend");
    std::vector<Fq> key;
    key.reserve(elements_.size() * n_ * n_);
    for (const FqMatrix& m : elements_)
      key.insert(key.end(), m.encoding().begin(), m.encoding().end());
    return key;
  }

  // order plus base-orbit signature; cheap non-set key for chain groups
  std::vector<std::uint64_t> chain_signature() const {
    std::vector<std::uint64_t> sig{order()};
    if (chain_) {
      for (int b : chain_->base()) sig.push_back(static_cast<std::uint64_t>(b));
      for (std::size_t s : chain_->orbit_sizes()) sig.push_back(s);
    }
    return sig;
  }

  bool contains_subgroup(const FinSubgroup& other) const {
    for (const FqMatrix& g : other.generators())
      if (!member(g)) return false;
    return true;
  }

  bool same_subgroup(const FinSubgroup& other) const {
    return order() == other.order() && contains_subgroup(other);
  }

  std::uint64_t index_in(const FinSubgroup& larger) const {
    if (!larger.contains_subgroup(*this)) throw invalid_argument("not a subgroup of the target");
    return larger.order() / order();
  }

  bool normalized_by(const FqMatrix& g) const {
    FqMatrix gi = g.inverse();
    for (const FqMatrix& h : generators())
      if (!member(g * h * gi)) return false;
    return true;
  }

  // center by brute force over the element list
  std::vector<FqMatrix> center(std::uint64_t cap = 2000000) const {
    std::vector<FqMatrix> z;
    for (const FqMatrix& e : elements(cap)) {
      bool central = true;
      for (const FqMatrix& g : gens_)
        if (!(e * g == g * e)) { central = false; break; }
      if (central) z.push_back(e);
    }
    return z;
  }

 private:
  bool try_explicit_closure(std::size_t cap) {
    std::set<FqMatrix> seen;
    std::vector<FqMatrix> queue;
    FqMatrix id = FqMatrix::identity(field_, n_);
    seen.insert(id);
    queue.push_back(id);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (const FqMatrix& g : gens_) {
        FqMatrix next = queue[head] * g;
        if (seen.insert(next).second) {
          if (seen.size() > cap) return false;
          queue.push_back(next);
        }
      }
    }
    elements_.assign(seen.begin(), seen.end());
    return true;
  }

  void build_chain() {
    std::vector<Perm> perms;
    perms.reserve(gens_.size());
    for (const FqMatrix& g : gens_) perms.push_back(action_->perm_of(g));
    chain_ = std::make_shared<PermGroup>(action_->degree(), perms);
  }

  std::vector<FqMatrix> matrices_from_perms(const std::vector<Perm>& perms) const;

  const VectorAction* action_ = nullptr;
  std::vector<FqMatrix> gens_;
  const FiniteField* field_ = nullptr;
  std::size_t n_ = 0;
  mutable std::vector<FqMatrix> elements_;
  std::shared_ptr<PermGroup> chain_;
};

inline std::vector<FqMatrix> FinSubgroup::matrices_from_perms(const std::vector<Perm>& perms) const {
  // index of the j-th standard basis vector in the VectorAction point order:
  // points are enumerated in odometer order, so e_j sits at position
  // q^j - 1 ... recover instead by building a lookup once per call
  std::vector<std::vector<Fq>> points;
  {
    std::vector<Fq> v(n_, 0);
    while (true) {
      std::size_t i = 0;
      while (i < n_ && v[i] == static_cast<Fq>(field_->order() - 1)) v[i++] = 0;
      if (i == n_) break;
      v[i] = static_cast<Fq>(v[i] + 1);
      points.push_back(v);
    }
  }
  std::vector<std::size_t> basis_pos(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    std::vector<Fq> e(n_, 0);
    e[j] = 1;
    for (std::size_t i = 0; i < points.size(); ++i)
      if (points[i] == e) { basis_pos[j] = i; break; }
  }
  std::vector<FqMatrix> out;
  out.reserve(perms.size());
  for (const Perm& p : perms) {
    FqMatrix m(field_, n_);
    for (std::size_t j = 0; j < n_; ++j) {
      const auto& img = points[static_cast<std::size_t>(p[basis_pos[j]])];
      for (std::size_t i = 0; i < n_; ++i) m.at(i, j) = img[i];
    }
    out.push_back(m);
  }
  return out;
}

// product of two element sets, as a sorted vector
inline std::vector<FqMatrix> set_product(const std::vector<FqMatrix>& a,
                                         const std::vector<FqMatrix>& b) {
  std::set<FqMatrix> out;
  for (const FqMatrix& x : a)
    for (const FqMatrix& y : b) out.insert(x * y);
  return {out.begin(), out.end()};
}

}  // namespace wag
