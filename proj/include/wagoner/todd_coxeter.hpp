#pragma once

// Todd-Coxeter coset enumeration over the trivial subgroup: HLT relator
// scanning with gap filling, full coincidence processing, and periodic
// lookahead passes with table compaction.  Deterministic for a fixed
// presentation and strategy settings; overflow is a result, not an error.

#include <string>
#include <vector>

#include "wagoner/presentation.hpp"

namespace wag {

enum class TCStatus { complete, overflow };

struct TCOptions {
  std::size_t coset_cap = 1000000;  // max live cosets at any time
  std::size_t lookahead_factor = 4; // lookahead when allocations reach factor*live
};

class CosetTable {
 public:
  CosetTable(const Presentation& p, TCOptions opts = {}) : opts_(opts) {
    p.validate();
    ngens_ = p.generators.size();
    ncols_ = 2 * ngens_;
    for (const Word& r : p.relators) {
      Word rr = cyclic_reduce(r);
      if (!rr.empty()) relators_.push_back(std::move(rr));
    }
    run();
  }

  TCStatus status() const { return status_; }
  std::uint64_t order() const {
    if (status_ != TCStatus::complete) throw error("coset table did not complete");
    return live_count_;
  }
  std::size_t allocated() const { return rows_; }

  // live-coset permutation action of a generator (complete tables only)
  std::vector<int> generator_permutation(std::size_t gen) const {
    if (status_ != TCStatus::complete) throw error("coset table did not complete");
    std::vector<int> live_index(rows_, -1);
    int k = 0;
    for (std::size_t c = 0; c < rows_; ++c)
      if (is_rep(static_cast<int>(c))) live_index[c] = k++;
    std::vector<int> perm(static_cast<std::size_t>(k), -1);
    for (std::size_t c = 0; c < rows_; ++c) {
      if (live_index[c] < 0) continue;
      int img = rep(entry(static_cast<int>(c), 2 * gen));
      perm[static_cast<std::size_t>(live_index[c])] = live_index[static_cast<std::size_t>(img)];
    }
    return perm;
  }

  // digest of the completed table, for determinism checks
  std::string table_digest() const {
    Digest d;
    for (std::size_t c = 0; c < rows_; ++c) {
      if (!is_rep(static_cast<int>(c))) continue;
      for (std::size_t x = 0; x < ncols_; ++x) {
        int e = table_[c * ncols_ + x];
        e = e < 0 ? -1 : rep(e);
        d.update(&e, sizeof(e));
      }
    }
    return d.hex();
  }

 private:
  std::size_t col(int letter) const {
    return letter > 0 ? 2 * static_cast<std::size_t>(letter - 1)
                      : 2 * static_cast<std::size_t>(-letter - 1) + 1;
  }
  static std::size_t invcol(std::size_t c) { return c ^ 1u; }

  int entry(int coset, std::size_t c) const { return table_[static_cast<std::size_t>(coset) * ncols_ + c]; }
  void set_entry(int coset, std::size_t c, int v) { table_[static_cast<std::size_t>(coset) * ncols_ + c] = v; }

  int rep(int c) const {
    while (parent_[static_cast<std::size_t>(c)] != c) c = parent_[static_cast<std::size_t>(c)];
    return c;
  }
  bool is_rep(int c) const { return parent_[static_cast<std::size_t>(c)] == c; }

  int new_coset() {
    table_.resize(table_.size() + ncols_, -1);
    parent_.push_back(static_cast<int>(rows_));
    ++rows_;
    ++live_count_;
    return static_cast<int>(rows_ - 1);
  }

  // define tau(a, c) = b and tau(b, c^-1) = a, merging on clashes
  void deduce(int a, std::size_t c, int b) {
    int ex = entry(a, c);
    if (ex >= 0) {
      if (rep(ex) != rep(b)) enqueue_coincidence(ex, b);
    } else {
      set_entry(a, c, b);
    }
    ex = entry(b, invcol(c));
    if (ex >= 0) {
      if (rep(ex) != rep(a)) enqueue_coincidence(ex, a);
    } else {
      set_entry(b, invcol(c), a);
    }
  }

  void enqueue_coincidence(int a, int b) { pending_.emplace_back(a, b); }

  void process_coincidences() {
    while (!pending_.empty()) {
      auto [a, b] = pending_.back();
      pending_.pop_back();
      a = rep(a);
      b = rep(b);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      // b dies; re-insert its edges at a (stale entries elsewhere are
      // rep-resolved on every read)
      parent_[static_cast<std::size_t>(b)] = a;
      --live_count_;
      for (std::size_t c = 0; c < ncols_; ++c) {
        int e = entry(b, c);
        if (e < 0) continue;
        set_entry(b, c, -1);
        e = rep(e);
        int ae = entry(a, c);
        if (ae >= 0 && rep(ae) != e) enqueue_coincidence(ae, e);
        if (ae < 0) set_entry(a, c, e);
        int eb = entry(e, invcol(c));
        if (eb >= 0 && rep(eb) != a) enqueue_coincidence(eb, a);
        if (eb < 0) set_entry(e, invcol(c), a);
      }
    }
  }

  // scan the relator at the coset; fill gaps when filling is enabled
  void scan(int c, const Word& r, bool fill) {
    int f = c;
    std::size_t i = 0;
    const std::size_t n = r.size();
    while (true) {
      while (i < n) {
        int nxt = entry(f, col(r[i]));
        if (nxt < 0) break;
        f = rep(nxt);
        ++i;
      }
      if (i == n) {
        if (f != rep(c)) enqueue_coincidence(f, c);
        return;
      }
      // backward
      int b = rep(c);
      std::size_t j = n;
      while (j > i + 1) {
        int nxt = entry(b, invcol(col(r[j - 1])));
        if (nxt < 0) break;
        b = rep(nxt);
        --j;
      }
      if (j == i + 1) {
        deduce(f, col(r[i]), b);
        return;
      }
      if (!fill) return;
      if (live_count_ >= opts_.coset_cap) {
        status_ = TCStatus::overflow;
        return;
      }
      int d = new_coset();
      deduce(f, col(r[i]), d);
      f = rep(d);
      ++i;
    }
  }

  void lookahead() {
    for (std::size_t c = 0; c < rows_ && status_ == TCStatus::complete; ++c) {
      if (!is_rep(static_cast<int>(c))) continue;
      for (const Word& r : relators_) {
        scan(static_cast<int>(c), r, false);
        process_coincidences();
        if (!is_rep(static_cast<int>(c))) break;
      }
    }
  }

  void compact() {
    std::vector<int> remap(rows_, -1);
    std::size_t k = 0;
    for (std::size_t c = 0; c < rows_; ++c)
      if (is_rep(static_cast<int>(c))) remap[c] = static_cast<int>(k++);
    std::vector<int> fresh(k * ncols_, -1);
    for (std::size_t c = 0; c < rows_; ++c) {
      if (remap[c] < 0) continue;
      for (std::size_t x = 0; x < ncols_; ++x) {
        int e = entry(static_cast<int>(c), x);
        fresh[static_cast<std::size_t>(remap[c]) * ncols_ + x] = e < 0 ? -1 : remap[static_cast<std::size_t>(rep(e))];
      }
    }
    table_ = std::move(fresh);
    rows_ = k;
    parent_.resize(k);
    for (std::size_t c = 0; c < k; ++c) parent_[c] = static_cast<int>(c);
  }

  void run() {
    status_ = TCStatus::complete;
    new_coset();
    std::size_t next_lookahead = 4096;
    for (std::size_t c = 0; c < rows_; ++c) {
      if (!is_rep(static_cast<int>(c))) continue;
      for (const Word& r : relators_) {
        scan(static_cast<int>(c), r, true);
        process_coincidences();
        if (status_ != TCStatus::complete) return;
        if (!is_rep(static_cast<int>(c))) break;
      }
      if (!is_rep(static_cast<int>(c))) continue;
      for (std::size_t x = 0; x < ncols_; ++x) {
        if (entry(static_cast<int>(c), x) >= 0) continue;
        if (live_count_ >= opts_.coset_cap) {
          status_ = TCStatus::overflow;
          return;
        }
        int d = new_coset();
        set_entry(static_cast<int>(c), x, d);
        set_entry(d, invcol(x), static_cast<int>(c));
      }
      if (rows_ >= next_lookahead && rows_ > opts_.lookahead_factor * live_count_) {
        lookahead();
        process_coincidences();
        if (status_ != TCStatus::complete) return;
        compact();
        // the current row index is stale after compaction; restart the scan
        // from the first row (already-closed rows rescan quickly)
        c = static_cast<std::size_t>(-1);
        next_lookahead = std::max<std::size_t>(2 * rows_ + 4096, 4096);
      }
    }
    // merges may have disturbed rows processed earlier; sweep until stable
    while (true) {
      std::uint64_t live_before = live_count_;
      std::size_t rows_before = rows_;
      for (std::size_t c = 0; c < rows_ && status_ == TCStatus::complete; ++c) {
        if (!is_rep(static_cast<int>(c))) continue;
        for (const Word& r : relators_) {
          scan(static_cast<int>(c), r, true);
          process_coincidences();
          if (status_ != TCStatus::complete) return;
          if (!is_rep(static_cast<int>(c))) break;
        }
        if (!is_rep(static_cast<int>(c))) continue;
        for (std::size_t x = 0; x < ncols_; ++x) {
          if (entry(static_cast<int>(c), x) >= 0) continue;
          if (live_count_ >= opts_.coset_cap) {
            status_ = TCStatus::overflow;
            return;
          }
          int d = new_coset();
          set_entry(static_cast<int>(c), x, d);
          set_entry(d, invcol(x), static_cast<int>(c));
        }
      }
      if (live_count_ == live_before && rows_ == rows_before) break;
    }
  }

  TCOptions opts_;
  std::size_t ngens_ = 0, ncols_ = 0, rows_ = 0;
  std::uint64_t live_count_ = 0;
  std::vector<int> table_;
  std::vector<int> parent_;
  std::vector<std::pair<int, int>> pending_;
  std::vector<Word> relators_;
  TCStatus status_ = TCStatus::complete;
};

}  // namespace wag
