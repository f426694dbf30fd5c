#pragma once

// Systems of groups with inclusion arrows and their colimits, computed as
// finite presentations fed to Todd-Coxeter.
//
// Two presentation schemes:
//  * root systems of subgroups U_Psi of one instance share the generator
//    namespace x_{root,t}; identification along inclusion arrows is then
//    syntactic.  This is sound exactly when, for every generator, the nodes
//    containing it are connected in the arrow graph; the builder verifies
//    that (it is the connectedness argument behind the direct-limit
//    comparisons) and refuses otherwise.
//  * arbitrary finite groups get per-node generator copies with explicit
//    identification relators along the verified arrows.
//
// Every node presentation is certified by a standalone enumeration before
// it is allowed into a colimit: the presented group must have exactly the
// node's order.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "wagoner/complex.hpp"
#include "wagoner/rootdatum.hpp"
#include "wagoner/todd_coxeter.hpp"

namespace wag {

// ---- U_Psi node presentations over the x_{root,t} namespace -----------------

class RootSystemColimit {
 public:
  explicit RootSystemColimit(const RootDatumInstance& inst) : inst_(&inst) {
    const int q = inst.field().order();
    for (std::size_t r = 0; r < inst.roots().size(); ++r)
      for (int t = 1; t < q; ++t) {
        symbol_index_[{static_cast<int>(r), static_cast<Fq>(t)}] =
            static_cast<int>(symbols_.size());
        symbols_.push_back({static_cast<int>(r), static_cast<Fq>(t)});
      }
  }

  const RootDatumInstance& instance() const { return *inst_; }

  // nodes: sets of root indices (sorted); the presentation is the union of
  // certified node presentations over the shared namespace
  Presentation colimit_presentation(const std::vector<std::vector<int>>& nodes) const {
    verify_connectivity(nodes);
    Presentation p;
    for (const auto& [ri, t] : symbols_)
      p.generators.push_back("x" + std::to_string(ri) + "_" + std::to_string(static_cast<int>(t)));
    std::set<std::vector<int>> seen;
    for (const auto& node : nodes) {
      std::vector<int> key = node;
      std::sort(key.begin(), key.end());
      if (!seen.insert(key).second) continue;
      const auto& rel = node_relators(key);
      p.relators.insert(p.relators.end(), rel.begin(), rel.end());
    }
    p.reduce_relators();
    return p;
  }

  // the same colimit with per-node generator copies and identifications
  // only along the actual inclusion arrows (A inside B as root sets); this
  // is the direct [free product mod inclusions] construction and makes no
  // connectivity assumption, so it is the honest object for injectivity
  // tests of the subsystem lemmas
  Presentation colimit_presentation_disjoint(const std::vector<std::vector<int>>& nodes) const {
    Presentation p;
    const int q = inst_->field().order();
    std::map<std::pair<std::size_t, int>, int> local;  // (node, symbol) -> generator
    std::vector<std::vector<int>> sorted(nodes.size());
    for (std::size_t n = 0; n < nodes.size(); ++n) {
      sorted[n] = nodes[n];
      std::sort(sorted[n].begin(), sorted[n].end());
      for (int ri : sorted[n])
        for (int t = 1; t < q; ++t) {
          local[{n, symbol(ri, static_cast<Fq>(t))}] = static_cast<int>(p.generators.size());
          p.generators.push_back("n" + std::to_string(n) + "x" + std::to_string(ri) + "_" +
                                 std::to_string(t));
        }
    }
    for (std::size_t n = 0; n < nodes.size(); ++n) {
      for (const Word& r : node_relators(sorted[n])) {
        Word w;
        for (int x : r) {
          int g = local.at({n, std::abs(x) - 1});
          w.push_back(x > 0 ? g + 1 : -(g + 1));
        }
        p.relators.push_back(std::move(w));
      }
    }
    for (std::size_t a = 0; a < nodes.size(); ++a)
      for (std::size_t b = 0; b < nodes.size(); ++b) {
        if (a == b || sorted[a].size() > sorted[b].size()) continue;
        if (!std::includes(sorted[b].begin(), sorted[b].end(), sorted[a].begin(), sorted[a].end()))
          continue;
        for (int ri : sorted[a])
          for (int t = 1; t < q; ++t) {
            int ga = local.at({a, symbol(ri, static_cast<Fq>(t))});
            int gb = local.at({b, symbol(ri, static_cast<Fq>(t))});
            if (ga != gb) p.relators.push_back(Word{ga + 1, -(gb + 1)});
          }
      }
    p.reduce_relators();
    return p;
  }

  struct Result {
    Presentation presentation;
    TCStatus status = TCStatus::overflow;
    std::uint64_t order = 0;
    std::string table_digest;
  };

  Result colimit_order(const std::vector<std::vector<int>>& nodes, TCOptions opts = {},
                       bool shared_namespace = true) const {
    Result res;
    res.presentation =
        shared_namespace ? colimit_presentation(nodes) : colimit_presentation_disjoint(nodes);
    CosetTable tc(res.presentation, opts);
    res.status = tc.status();
    if (res.status == TCStatus::complete) {
      res.order = tc.order();
      res.table_digest = tc.table_digest();
    }
    return res;
  }

  // normal-form word of an element of U_Psi over the node's roots
  Word normal_form(const std::vector<int>& roots_sorted, const FqMatrix& m) const {
    const auto& forms = factorization(roots_sorted);
    auto it = forms.find(m.encoding());
    if (it == forms.end()) throw invalid_argument("element is not in U_Psi");
    Word w;
    for (auto [ri, t] : it->second) w.push_back(symbol(ri, t) + 1);
    return w;
  }

 private:
  using SymbolKey = std::pair<int, Fq>;

  int symbol(int root, Fq t) const { return symbol_index_.at({root, t}); }

  // tuple factorization of U_Psi along the ordered product of root groups;
  // verified bijective (throws otherwise)
  const std::map<std::vector<Fq>, std::vector<SymbolKey>>& factorization(
      const std::vector<int>& roots_sorted) const {
    auto it = fact_cache_.find(roots_sorted);
    if (it != fact_cache_.end()) return it->second;
    const FiniteField& F = inst_->field();
    const std::size_t n = inst_->dim();
    FinSubgroup u = inst_->u_of_roots(roots_sorted);
    std::map<std::vector<Fq>, std::vector<SymbolKey>> forms;
    std::vector<int> t(roots_sorted.size(), 0);
    while (true) {
      FqMatrix prod = FqMatrix::identity(&F, n);
      std::vector<SymbolKey> word;
      for (std::size_t i = 0; i < roots_sorted.size(); ++i)
        if (t[i] != 0) {
          prod = prod * inst_->root_element(roots_sorted[i], static_cast<Fq>(t[i]));
          word.emplace_back(roots_sorted[i], static_cast<Fq>(t[i]));
        }
      if (!forms.emplace(prod.encoding(), std::move(word)).second)
        throw error("root group factorization is not unique");
      std::size_t c = 0;
      while (c < t.size() && t[c] == F.order() - 1) t[c++] = 0;
      if (c == t.size()) break;
      ++t[c];
    }
    if (forms.size() != u.order()) throw error("root group factorization misses elements");
    return fact_cache_.emplace(roots_sorted, std::move(forms)).first->second;
  }

  const std::vector<Word>& node_relators(const std::vector<int>& roots_sorted) const {
    auto it = rel_cache_.find(roots_sorted);
    if (it != rel_cache_.end()) return it->second;
    const FiniteField& F = inst_->field();
    const int q = F.order();
    std::vector<Word> rel;

    // parameter addition within one root group
    for (int ri : roots_sorted)
      for (int t = 1; t < q; ++t)
        for (int u = 1; u < q; ++u) {
          Word w{symbol(ri, static_cast<Fq>(t)) + 1, symbol(ri, static_cast<Fq>(u)) + 1};
          Fq sum = F.add(static_cast<Fq>(t), static_cast<Fq>(u));
          if (sum != 0) w.push_back(-(symbol(ri, sum) + 1));
          rel.push_back(free_reduce(w));
        }

    // out-of-order pair products rewritten to normal form
    for (std::size_t j = 0; j < roots_sorted.size(); ++j)
      for (std::size_t i = 0; i < j; ++i)
        for (int u = 1; u < q; ++u)
          for (int t = 1; t < q; ++t) {
            FqMatrix prod = inst_->root_element(roots_sorted[j], static_cast<Fq>(u)) *
                            inst_->root_element(roots_sorted[i], static_cast<Fq>(t));
            Word nf = normal_form(roots_sorted, prod);
            Word w{symbol(roots_sorted[j], static_cast<Fq>(u)) + 1,
                   symbol(roots_sorted[i], static_cast<Fq>(t)) + 1};
            Word nfi = inverse_word(nf);
            w.insert(w.end(), nfi.begin(), nfi.end());
            rel.push_back(free_reduce(w));
          }

    if (!certify(roots_sorted, rel)) {
      // fall back to the full right-multiplication table
      const auto& forms = factorization(roots_sorted);
      for (const auto& [enc, word] : forms) {
        FqMatrix g(&inst_->field(), inst_->dim());
        for (std::size_t r = 0; r < inst_->dim(); ++r)
          for (std::size_t c = 0; c < inst_->dim(); ++c) g.at(r, c) = enc[r * inst_->dim() + c];
        for (int ri : roots_sorted)
          for (int t = 1; t < q; ++t) {
            FqMatrix prod = g * inst_->root_element(ri, static_cast<Fq>(t));
            Word lhs;
            for (auto [rr, tt] : word) lhs.push_back(symbol(rr, tt) + 1);
            lhs.push_back(symbol(ri, static_cast<Fq>(t)) + 1);
            Word nfi = inverse_word(normal_form(roots_sorted, prod));
            lhs.insert(lhs.end(), nfi.begin(), nfi.end());
            rel.push_back(free_reduce(lhs));
          }
      }
      if (!certify(roots_sorted, rel))
        throw error("node presentation fails certification even with the full table");
    }
    return rel_cache_.emplace(roots_sorted, std::move(rel)).first->second;
  }

  // standalone enumeration of the node presentation must give |U_Psi|
  bool certify(const std::vector<int>& roots_sorted, const std::vector<Word>& rel) const {
    FinSubgroup u = inst_->u_of_roots(roots_sorted);
    Presentation p;
    std::map<int, int> local;  // global symbol -> local generator
    for (int ri : roots_sorted)
      for (int t = 1; t < inst_->field().order(); ++t) {
        local[symbol(ri, static_cast<Fq>(t))] = static_cast<int>(p.generators.size());
        p.generators.push_back("g" + std::to_string(p.generators.size()));
      }
    for (const Word& r : rel) {
      Word w;
      for (int x : r) {
        int g = local.at(std::abs(x) - 1);
        w.push_back(x > 0 ? g + 1 : -(g + 1));
      }
      p.relators.push_back(std::move(w));
    }
    TCOptions opts;
    opts.coset_cap = std::max<std::size_t>(16 * u.order(), 4096);
    CosetTable tc(p, opts);
    return tc.status() == TCStatus::complete && tc.order() == u.order();
  }

  // for every generator symbol, the nodes containing its root must be
  // connected through inclusion arrows
  void verify_connectivity(const std::vector<std::vector<int>>& nodes) const {
    for (std::size_t r = 0; r < inst_->roots().size(); ++r) {
      std::vector<int> holders;
      for (std::size_t n = 0; n < nodes.size(); ++n) {
        if (std::find(nodes[n].begin(), nodes[n].end(), static_cast<int>(r)) != nodes[n].end())
          holders.push_back(static_cast<int>(n));
      }
      if (holders.size() <= 1) continue;
      UnionFind uf(holders.size());
      for (std::size_t i = 0; i < holders.size(); ++i)
        for (std::size_t j = i + 1; j < holders.size(); ++j) {
          const auto &a = nodes[static_cast<std::size_t>(holders[i])],
                     &b = nodes[static_cast<std::size_t>(holders[j])];
          bool ab = std::includes(b.begin(), b.end(), a.begin(), a.end());
          bool ba = std::includes(a.begin(), a.end(), b.begin(), b.end());
          if (ab || ba) uf.unite(static_cast<int>(i), static_cast<int>(j));
        }
      int root0 = uf.find(0);
      for (std::size_t i = 1; i < holders.size(); ++i)
        if (uf.find(static_cast<int>(i)) != root0)
          throw error("system of groups is not identification-connected");
    }
  }

  const RootDatumInstance* inst_;
  std::vector<SymbolKey> symbols_;
  std::map<SymbolKey, int> symbol_index_;
  mutable std::map<std::vector<int>, std::map<std::vector<Fq>, std::vector<SymbolKey>>> fact_cache_;
  mutable std::map<std::vector<int>, std::vector<Word>> rel_cache_;
};

// ---- node collections for the shipped systems -------------------------------

// prenilpotent pairs of a spherical instance: unordered, alpha != +-beta
inline std::vector<std::pair<int, int>> prenilpotent_pairs(const RootDatumInstance& inst) {
  std::vector<std::pair<int, int>> out;
  const RootSet& rs = inst.roots();
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = i + 1; j < rs.size(); ++j) {
      if (rs[static_cast<int>(i)] == rs[static_cast<int>(j)].negated()) continue;
      out.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  return out;
}

enum class SteinbergVariant { all_prenilpotent, non_nested_only };

// nodes of the Steinberg system: all root groups and the interval groups of
// prenilpotent pairs (the all-prenilpotent variant only adds the diagonal
// pairs, whose intervals are the singletons already present)
inline std::vector<std::vector<int>> steinberg_nodes(const RootDatumInstance& inst,
                                                     SteinbergVariant variant) {
  std::vector<std::vector<int>> nodes;
  const RootSet& rs = inst.roots();
  for (std::size_t r = 0; r < rs.size(); ++r) nodes.push_back({static_cast<int>(r)});
  for (auto [i, j] : prenilpotent_pairs(inst)) {
    RootInterval iv = inst.intervals().closed(rs[static_cast<std::size_t>(i)],
                                              rs[static_cast<std::size_t>(j)]);
    nodes.push_back(inst.interval_root_indices(iv));
    std::sort(nodes.back().begin(), nodes.back().end());
  }
  if (variant == SteinbergVariant::all_prenilpotent) {
    // diagonal pairs: [alpha, alpha] = {alpha}; duplicates of the root nodes
    for (std::size_t r = 0; r < rs.size(); ++r) nodes.push_back({static_cast<int>(r)});
  }
  return nodes;
}

// nodes of the U_s system: one node per co-spherical simplex
inline std::vector<std::vector<int>> u_s_system_nodes(const RootDatumInstance& inst) {
  std::vector<std::vector<int>> nodes;
  const CoxComplex& cc = inst.complex();
  for (const CoxSimplex& s : cc.simplices()) {
    if (!cc.co_spherical(s)) continue;
    nodes.push_back(inst.roots_containing_residue(s));
    std::sort(nodes.back().begin(), nodes.back().end());
  }
  return nodes;
}

// the subsystem of roots and intervals around one co-spherical simplex
inline std::vector<std::vector<int>> u_s_subsystem_nodes(const RootDatumInstance& inst,
                                                         const CoxSimplex& s) {
  std::vector<std::vector<int>> nodes;
  const RootSet& rs = inst.roots();
  std::vector<int> around = inst.roots_containing_residue(s);
  std::set<int> around_set(around.begin(), around.end());
  for (int r : around) nodes.push_back({r});
  for (auto [i, j] : prenilpotent_pairs(inst)) {
    if (!around_set.count(i) || !around_set.count(j)) continue;
    // R_s inside alpha cap beta
    RootInterval iv = inst.intervals().closed(rs[static_cast<std::size_t>(i)],
                                              rs[static_cast<std::size_t>(j)]);
    nodes.push_back(inst.interval_root_indices(iv));
    std::sort(nodes.back().begin(), nodes.back().end());
  }
  return nodes;
}

}  // namespace wag
