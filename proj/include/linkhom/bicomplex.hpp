#pragma once

#include <array>
#include <map>
#include <vector>

#include "linkhom/laurent.hpp"
#include "linkhom/numeric.hpp"
#include "linkhom/reduction.hpp"

namespace linkhom {

// Which index of the bidegree (k, i) drives the filtration of the total
// complex.
enum class BiAxis { ByFirst, BySecond };

// Double complex over the rationals with anticommuting differentials
//   d1 : (k, i) -> (k+1, i)     d2 : (k, i) -> (k, i+1)
// and a quantum grading j preserved by both. Spectral sequences of the two
// canonical filtrations of the totalization are computed per j slice.
class Bicomplex {
 public:
  std::size_t add_gen(int k, int i, int j) {
    gens_.push_back({k, i, j});
    return gens_.size() - 1;
  }

  void add_d1(std::size_t from, std::size_t to, const Rat& c) {
    check_step(from, to, 1, 0);
    push(d1_, from, to, c);
  }
  void add_d2(std::size_t from, std::size_t to, const Rat& c) {
    check_step(from, to, 0, 1);
    push(d2_, from, to, c);
  }

  std::size_t size() const { return gens_.size(); }
  std::array<int, 3> bidegree(std::size_t g) const { return gens_[g]; }

  void validate() const {
    check_square(d1_, "d1^2 != 0");
    check_square(d2_, "d2^2 != 0");
    // anticommutation d1 d2 + d2 d1 = 0
    std::map<std::pair<std::size_t, std::size_t>, Rat> acc;
    compose_into(acc, d1_, d2_, 1);
    compose_into(acc, d2_, d1_, 1);
    for (auto& [k, v] : acc)
      if (v != 0) throw internal_error("d1 and d2 do not anticommute");
  }

  struct Pages {
    // one map per page r: (k, i, j) -> rank, and the rank of the page
    // differential leaving each spot
    std::vector<std::map<std::array<int, 3>, long long>> ranks;
    std::vector<std::map<std::array<int, 3>, long long>> d_rank;
    std::map<std::array<int, 3>, long long> limit;
    int stable = 0;

    const std::map<std::array<int, 3>, long long>& page(std::size_t r) const {
      return r < ranks.size() ? ranks[r] : limit;
    }

    // sum_j q^j sum_{k,i} (-1)^{k+i} rank at page r
    Laurent euler(std::size_t r) const {
      Laurent p;
      for (auto& [kij, cnt] : page(r)) {
        int64_t sign = ((kij[0] + kij[1]) % 2 == 0) ? 1 : -1;
        p += Laurent(sign * cnt, kij[2]);
      }
      return p;
    }
  };

  Pages pages(BiAxis axis) const {
    std::map<int, std::vector<std::size_t>> slices;
    for (std::size_t g = 0; g < gens_.size(); ++g) slices[gens_[g][2]].push_back(g);
    Pages out;
    for (auto& [j, ids] : slices) {
      FilteredReducer red;
      std::map<std::size_t, std::size_t> local;
      for (std::size_t g : ids) {
        auto [k, i, jj] = gens_[g];
        int deg = k + i;
        int filt = axis == BiAxis::ByFirst ? k : i;
        local[g] = red.add_gen(deg, filt);
      }
      auto feed = [&](const Entries& es) {
        for (auto& [ft, c] : es) {
          auto itf = local.find(ft.first);
          if (itf == local.end()) continue;
          red.add_entry(itf->second, local.at(ft.second), c);
        }
      };
      feed(d1_);
      feed(d2_);
      red.reduce();

      const auto& ps = red.pages();
      if (out.ranks.size() < ps.size()) {
        std::size_t old = out.ranks.size();
        out.ranks.resize(ps.size());
        out.d_rank.resize(ps.size());
        // slices merged so far sit at their limit from page old-1 onward
        for (std::size_t r = old; old > 0 && r < out.ranks.size(); ++r)
          out.ranks[r] = out.ranks[old - 1];
      }
      int slice_stable = 0;
      for (std::size_t r = 0; r < ps.size(); ++r)
        if (ps[r].stable) {
          slice_stable = static_cast<int>(r);
          break;
        }
      out.stable = std::max(out.stable, slice_stable);
      for (std::size_t r = 0; r < out.ranks.size(); ++r) {
        const auto& rep = ps[std::min(r, ps.size() - 1)];
        for (auto& [fd, cnt] : rep.ranks) out.ranks[r][key(axis, fd, j)] += cnt;
        if (r < ps.size())
          for (auto& [fd, cnt] : rep.d_rank) out.d_rank[r][key(axis, fd, j)] += cnt;
      }
      for (auto& [fd, cnt] : red.limit_ranks()) out.limit[key(axis, fd, j)] += cnt;
    }
    return out;
  }

 private:
  using Entries = std::map<std::pair<std::size_t, std::size_t>, Rat>;

  static std::array<int, 3> key(BiAxis axis, std::pair<int, int> filt_deg, int j) {
    int filt = filt_deg.first, deg = filt_deg.second;
    int k = axis == BiAxis::ByFirst ? filt : deg - filt;
    int i = axis == BiAxis::ByFirst ? deg - filt : filt;
    return {k, i, j};
  }

  void check_step(std::size_t from, std::size_t to, int dk, int di) const {
    auto [k0, i0, j0] = gens_.at(from);
    auto [k1, i1, j1] = gens_.at(to);
    if (k1 != k0 + dk || i1 != i0 + di) throw internal_error("entry has the wrong bidegree step");
    if (j1 != j0) throw internal_error("entry does not preserve the quantum grading");
  }

  static void push(Entries& es, std::size_t from, std::size_t to, const Rat& c) {
    auto& v = es[{from, to}];
    v += c;
    if (v == 0) es.erase({from, to});
  }

  void check_square(const Entries& es, const char* msg) const {
    std::map<std::pair<std::size_t, std::size_t>, Rat> acc;
    compose_into(acc, es, es, 1);
    for (auto& [k, v] : acc)
      if (v != 0) throw internal_error(msg);
  }

  // acc += second after first
  static void compose_into(std::map<std::pair<std::size_t, std::size_t>, Rat>& acc,
                           const Entries& first, const Entries& second, int scale) {
    std::map<std::size_t, std::vector<std::pair<std::size_t, Rat>>> by_source;
    for (auto& [ft, c] : second) by_source[ft.first].push_back({ft.second, c});
    for (auto& [ft, c] : first) {
      auto it = by_source.find(ft.second);
      if (it == by_source.end()) continue;
      for (auto& [tgt, c2] : it->second) {
        acc[{ft.first, tgt}] += scale * c * c2;
        if (acc[{ft.first, tgt}] == 0) acc.erase({ft.first, tgt});
      }
    }
  }

  std::vector<std::array<int, 3>> gens_;
  Entries d1_, d2_;
};

}  // namespace linkhom
