#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "linkhom/numeric.hpp"

namespace linkhom {

// One page of the spectral sequence attached to a filtered complex: the
// surviving generator counts per (filtration level, total degree) together
// with the entries of the page differential, whose filtration shift is
// exactly the page index.
struct PageReport {
  int index = 0;
  std::map<std::pair<int, int>, long long> ranks;  // (filt, deg) -> count
  std::vector<std::tuple<std::size_t, std::size_t, Rat>> d;  // (from, to, coeff)
  // rank of the page differential leaving each (filt, deg) position; each
  // cancellation at this page's shift removes one source generator there
  std::map<std::pair<int, int>, long long> d_rank;
  bool stable = false;  // no differential of this shift or higher remains
};

// Cochain complex over the rationals with a filtration level on each
// generator. The differential must not decrease the level. Reduction cancels
// invertible entries in increasing order of level shift, which walks through
// the pages of the associated spectral sequence: after every entry of shift
// below r is gone, the survivors count the rank of page r and the shift-r
// entries form its differential.
class FilteredReducer {
 public:
  std::size_t add_gen(int deg, int filt) {
    gens_.push_back({deg, filt, true});
    out_.emplace_back();
    in_.emplace_back();
    return gens_.size() - 1;
  }

  void add_entry(std::size_t from, std::size_t to, const Rat& c) {
    if (c == 0) return;
    if (gens_[to].deg != gens_[from].deg + 1) throw internal_error("entry must raise degree by 1");
    if (gens_[to].filt < gens_[from].filt)
      throw internal_error("entry must not decrease the filtration level");
    set_entry(from, to, entry(from, to) + c);
  }

  std::size_t size() const { return gens_.size(); }
  int deg(std::size_t g) const { return gens_[g].deg; }
  int filt(std::size_t g) const { return gens_[g].filt; }
  bool alive(std::size_t g) const { return gens_[g].alive; }

  // d^2 = 0 sanity check; call before reduce while entries are original
  void validate() const {
    for (std::size_t g = 0; g < gens_.size(); ++g) {
      std::map<std::size_t, Rat> acc;
      for (auto& [mid, c1] : out_[g])
        for (auto& [tgt, c2] : out_[mid]) {
          acc[tgt] += c1 * c2;
          if (acc[tgt] == 0) acc.erase(tgt);
        }
      if (!acc.empty()) throw internal_error("d^2 != 0");
    }
  }

  void reduce() {
    if (reduced_) return;
    original_out_ = out_;
    for (std::size_t g = 0; g < gens_.size(); ++g)
      for (auto& [t, c] : out_[g]) queue_[shift_of(g, t)].push_back({g, t});
    int page = 0;
    snapshot(page, true);
    while (!queue_.empty()) {
      auto bucket = queue_.begin();
      int s = bucket->first;
      if (bucket->second.empty()) {
        queue_.erase(bucket);
        continue;
      }
      auto [from, to] = bucket->second.front();
      bucket->second.pop_front();
      if (!gens_[from].alive || !gens_[to].alive) continue;
      Rat e = entry(from, to);
      if (e == 0 || shift_of(from, to) != s) continue;
      while (page < s) snapshot(++page, true);
      cancels_by_shift_[s][{gens_[from].filt, gens_[from].deg}]++;
      cancel(from, to, e);
    }
    // one final page past the last cancellation: zero differential from here
    snapshot(++page, false);
    pages_.back().stable = true;
    for (auto& rep : pages_) {
      auto it = cancels_by_shift_.find(rep.index);
      if (it != cancels_by_shift_.end()) rep.d_rank = it->second;
    }
    // mark the earliest page that already equals the limit
    for (std::size_t p = pages_.size(); p-- > 0;) {
      if (pages_[p].d.empty())
        pages_[p].stable = true;
      else
        break;
    }
    reduced_ = true;
  }

  const std::vector<PageReport>& pages() const { return pages_; }

  std::map<std::pair<int, int>, long long> limit_ranks() const {
    std::map<std::pair<int, int>, long long> out;
    for (std::size_t g = 0; g < gens_.size(); ++g)
      if (gens_[g].alive) out[{gens_[g].filt, gens_[g].deg}]++;
    return out;
  }

  // Push a chain written in original coordinates through the logged
  // cancellations; the image lives on the surviving generators. Each step
  // applies z -> drop(alpha, beta) - (z_alpha / e) * rest(d beta). Because
  // entries are cancelled in increasing shift order, rest(d beta) sits at
  // levels >= level(alpha), so the map respects the filtration.
  std::map<std::size_t, Rat> project(const std::map<std::size_t, Rat>& chain) const {
    std::map<std::size_t, Rat> z = chain;
    for (auto& step : log_) {
      Rat za = 0;
      if (auto it = z.find(step.alpha); it != z.end()) {
        za = it->second;
        z.erase(it);
      }
      z.erase(step.beta);
      if (za != 0)
        for (auto& [t, c] : step.beta_out) {
          z[t] -= za / step.e * c;
          if (z[t] == 0) z.erase(t);
        }
    }
    return z;
  }

  // Filtration degree of the class of a cycle: the minimum level in the
  // support of its reduced representative. Empty image means the class is 0.
  std::optional<int> class_filtration(const std::map<std::size_t, Rat>& cycle) const {
    auto z = project(cycle);
    std::optional<int> lvl;
    for (auto& [g, c] : z)
      if (!lvl || gens_[g].filt < *lvl) lvl = gens_[g].filt;
    return lvl;
  }

  // Apply the ORIGINAL differential to a chain (available after reduce too).
  std::map<std::size_t, Rat> apply_original(const std::map<std::size_t, Rat>& chain) const {
    const auto& src = reduced_ ? original_out_ : out_;
    std::map<std::size_t, Rat> img;
    for (auto& [g, c] : chain)
      for (auto& [t, c2] : src[g]) {
        img[t] += c * c2;
        if (img[t] == 0) img.erase(t);
      }
    return img;
  }

 private:
  struct Gen {
    int deg, filt;
    bool alive;
  };
  struct LogStep {
    std::size_t beta, alpha;
    Rat e;
    std::vector<std::pair<std::size_t, Rat>> beta_out;  // d(beta) minus e*alpha
  };

  int shift_of(std::size_t from, std::size_t to) const {
    return gens_[to].filt - gens_[from].filt;
  }

  Rat entry(std::size_t from, std::size_t to) const {
    auto it = out_[from].find(to);
    return it == out_[from].end() ? Rat(0) : it->second;
  }

  void set_entry(std::size_t from, std::size_t to, const Rat& c) {
    if (c == 0) {
      out_[from].erase(to);
      in_[to].erase(from);
    } else {
      out_[from][to] = c;
      in_[to].insert(from);
      if (reducing_) queue_[shift_of(from, to)].push_back({from, to});
    }
  }

  // Remove the pair (beta -> alpha) and splice the induced entries.
  void cancel(std::size_t beta, std::size_t alpha, const Rat& e) {
    reducing_ = true;
    LogStep step{beta, alpha, e, {}};
    for (auto& [t, c] : out_[beta])
      if (t != alpha) step.beta_out.push_back({t, c});
    std::vector<std::pair<std::size_t, Rat>> into_alpha;
    for (std::size_t u : in_[alpha])
      if (u != beta) into_alpha.push_back({u, entry(u, alpha)});

    gens_[beta].alive = gens_[alpha].alive = false;
    for (auto& [t, c] : std::map<std::size_t, Rat>(out_[beta])) set_entry(beta, t, 0);
    for (std::size_t u : std::vector<std::size_t>(in_[alpha].begin(), in_[alpha].end()))
      set_entry(u, alpha, 0);
    for (auto& [t, c] : std::map<std::size_t, Rat>(out_[alpha])) set_entry(alpha, t, 0);
    for (std::size_t u : std::vector<std::size_t>(in_[beta].begin(), in_[beta].end()))
      set_entry(u, beta, 0);

    for (auto& [u, cu] : into_alpha)
      for (auto& [t, ct] : step.beta_out) set_entry(u, t, entry(u, t) - cu / e * ct);
    log_.push_back(std::move(step));
    reducing_ = false;
  }

  void snapshot(int page, bool with_d) {
    PageReport rep;
    rep.index = page;
    for (std::size_t g = 0; g < gens_.size(); ++g)
      if (gens_[g].alive) rep.ranks[{gens_[g].filt, gens_[g].deg}]++;
    if (with_d)
      for (std::size_t g = 0; g < gens_.size(); ++g)
        if (gens_[g].alive)
          for (auto& [t, c] : out_[g])
            if (shift_of(g, t) == page) rep.d.push_back({g, t, c});
    pages_.push_back(std::move(rep));
  }

  std::vector<Gen> gens_;
  std::vector<std::map<std::size_t, Rat>> out_;
  std::vector<std::set<std::size_t>> in_;
  std::vector<std::map<std::size_t, Rat>> original_out_;
  std::map<int, std::deque<std::pair<std::size_t, std::size_t>>> queue_;
  std::map<int, std::map<std::pair<int, int>, long long>> cancels_by_shift_;
  std::vector<LogStep> log_;
  std::vector<PageReport> pages_;
  bool reduced_ = false;
  bool reducing_ = false;
};

}  // namespace linkhom
