#pragma once

// Finite group presentations: named generators, relators as words over
// signed generator indices, free/cyclic reduction, a plain-text exchange
// format, and Tietze simplification used to shrink edge-path presentations
// before coset enumeration.

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "wagoner/common.hpp"

namespace wag {

// letters are +-(index+1); negative = inverse
using Word = std::vector<int>;

inline Word free_reduce(const Word& w) {
  Word out;
  for (int x : w) {
    if (!out.empty() && out.back() == -x) out.pop_back();
    else out.push_back(x);
  }
  return out;
}

inline Word cyclic_reduce(Word w) {
  w = free_reduce(w);
  while (w.size() >= 2 && w.front() == -w.back()) {
    w.erase(w.begin());
    w.pop_back();
  }
  return w;
}

inline Word inverse_word(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
  return out;
}

struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  std::size_t total_length() const {
    std::size_t n = 0;
    for (const Word& r : relators) n += r.size();
    return n;
  }

  void reduce_relators() {
    for (Word& r : relators) r = cyclic_reduce(r);
    relators.erase(std::remove_if(relators.begin(), relators.end(),
                                  [](const Word& r) { return r.empty(); }),
                   relators.end());
    // canonical duplicate removal: least cyclic rotation of the word or its
    // inverse
    auto canon = [](const Word& r) {
      Word best;
      for (const Word& base : {r, inverse_word(r)}) {
        for (std::size_t s = 0; s < base.size(); ++s) {
          Word rot(base.begin() + static_cast<long>(s), base.end());
          rot.insert(rot.end(), base.begin(), base.begin() + static_cast<long>(s));
          if (best.empty() || rot < best) best = rot;
        }
      }
      return best;
    };
    std::map<Word, bool> seen;
    std::vector<Word> keep;
    for (Word& r : relators) {
      Word c = canon(r);
      if (seen.emplace(c, true).second) keep.push_back(std::move(r));
    }
    relators = std::move(keep);
    std::sort(relators.begin(), relators.end(), [](const Word& a, const Word& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });
  }

  void validate() const {
    for (const Word& r : relators)
      for (int x : r) {
        std::size_t idx = static_cast<std::size_t>(std::abs(x)) - 1;
        if (x == 0 || idx >= generators.size())
          throw invalid_argument("relator letter out of range");
      }
  }

  std::string to_text() const {
    std::ostringstream os;
    os << "generators:";
    for (const auto& g : generators) os << " " << g;
    os << "\n";
    for (const Word& r : relators) {
      bool first = true;
      for (int x : r) {
        if (!first) os << " ";
        first = false;
        os << generators[static_cast<std::size_t>(std::abs(x)) - 1];
        if (x < 0) os << "^-1";
      }
      os << "\n";
    }
    return os.str();
  }

  static Presentation from_text(const std::string& text) {
    Presentation p;
    std::istringstream is(text);
    std::string line;
    std::map<std::string, int> index;
    bool have_gens = false;
    while (std::getline(is, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream ls(line);
      if (!have_gens) {
        std::string head;
        ls >> head;
        if (head != "generators:") throw invalid_argument("presentation text must start with 'generators:'");
        std::string g;
        while (ls >> g) {
          index.emplace(g, static_cast<int>(p.generators.size()));
          p.generators.push_back(g);
        }
        have_gens = true;
        continue;
      }
      Word r;
      std::string tok;
      while (ls >> tok) {
        bool inv = false;
        if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
          inv = true;
          tok = tok.substr(0, tok.size() - 3);
        }
        auto it = index.find(tok);
        if (it == index.end()) throw invalid_argument("unknown generator '" + tok + "'");
        r.push_back(inv ? -(it->second + 1) : it->second + 1);
      }
      if (!r.empty()) p.relators.push_back(std::move(r));
    }
    if (!have_gens) throw invalid_argument("empty presentation text");
    return p;
  }
};

struct TietzeStats {
  std::size_t eliminated = 0;
  std::size_t passes = 0;
};

// Eliminate generators that occur exactly once in some relator, shortest
// relators first, within a total-length budget.  Dead generators keep their
// slots; compact() renumbers.
inline TietzeStats tietze_simplify(Presentation& p, std::size_t target_generators = 0,
                                   std::size_t length_budget_factor = 6,
                                   std::size_t max_passes = 60) {
  TietzeStats stats;
  p.reduce_relators();
  const std::size_t budget = std::max<std::size_t>(p.total_length() * length_budget_factor, 4096);
  std::vector<char> alive(p.generators.size(), 1);
  auto live_count = [&] {
    std::size_t n = 0;
    for (char a : alive) n += static_cast<std::size_t>(a);
    return n;
  };

  for (; stats.passes < max_passes; ++stats.passes) {
    if (target_generators && live_count() <= target_generators) break;
    // find (relator, generator with exactly one occurrence), shortest first
    int best_rel = -1, best_gen = 0;
    for (std::size_t ri = 0; ri < p.relators.size(); ++ri) {
      const Word& r = p.relators[ri];
      std::map<int, int> occ;
      for (int x : r) ++occ[std::abs(x)];
      for (auto [g, c] : occ)
        if (c == 1) {
          if (best_rel < 0 || r.size() < p.relators[static_cast<std::size_t>(best_rel)].size()) {
            best_rel = static_cast<int>(ri);
            best_gen = g;
          }
          break;
        }
    }
    if (best_rel < 0) break;

    // solve r = 1 for g: rotate r so g is first, then g = (rest)^-1
    Word r = p.relators[static_cast<std::size_t>(best_rel)];
    std::size_t pos = 0;
    while (std::abs(r[pos]) != best_gen) ++pos;
    std::rotate(r.begin(), r.begin() + static_cast<long>(pos), r.end());
    Word rest(r.begin() + 1, r.end());
    Word value = inverse_word(rest);          // g = value when r[0] = +g
    if (r[0] < 0) value = rest;               // g^-1 = rest^-1 => g = rest

    // substitute in every other relator
    std::vector<Word> next;
    next.reserve(p.relators.size());
    std::size_t total = 0;
    bool over_budget = false;
    for (std::size_t ri = 0; ri < p.relators.size(); ++ri) {
      if (ri == static_cast<std::size_t>(best_rel)) continue;
      Word out;
      for (int x : p.relators[ri]) {
        if (std::abs(x) != best_gen) {
          out.push_back(x);
        } else if (x > 0) {
          out.insert(out.end(), value.begin(), value.end());
        } else {
          Word vi = inverse_word(value);
          out.insert(out.end(), vi.begin(), vi.end());
        }
      }
      out = cyclic_reduce(out);
      total += out.size();
      if (total > budget) {
        over_budget = true;
        break;
      }
      if (!out.empty()) next.push_back(std::move(out));
    }
    if (over_budget) break;
    p.relators = std::move(next);
    p.reduce_relators();
    alive[static_cast<std::size_t>(best_gen) - 1] = 0;
    ++stats.eliminated;
  }

  // renumber the surviving generators
  std::vector<int> newidx(p.generators.size(), 0);
  std::vector<std::string> gens;
  for (std::size_t g = 0; g < p.generators.size(); ++g) {
    if (!alive[g]) continue;
    newidx[g] = static_cast<int>(gens.size()) + 1;
    gens.push_back(p.generators[g]);
  }
  for (Word& r : p.relators)
    for (int& x : r) {
      int idx = newidx[static_cast<std::size_t>(std::abs(x)) - 1];
      if (idx == 0) throw error("eliminated generator survives in a relator");
      x = x > 0 ? idx : -idx;
    }
  p.generators = std::move(gens);
  return stats;
}

}  // namespace wag
