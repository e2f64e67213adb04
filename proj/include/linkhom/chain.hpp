#pragma once

#include <cstdint>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "linkhom/intmatrix.hpp"
#include "linkhom/laurent.hpp"
#include "linkhom/numeric.hpp"
#include "linkhom/snf.hpp"

namespace linkhom {

// Auxiliary multigrading carried by each generator and preserved by the
// differential. For link homology this is the single quantum grading {j}.
using Grading = std::vector<int>;

struct HomologyEntry {
  long long rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1, ascending chain
  bool trivial() const { return rank == 0 && torsion.empty(); }
};

class HomologyTable {
 public:
  using Key = std::pair<int, Grading>;

  HomologyEntry& at(int deg, const Grading& aux) { return entries_[{deg, aux}]; }
  const HomologyEntry* find(int deg, const Grading& aux) const {
    auto it = entries_.find({deg, aux});
    return it == entries_.end() ? nullptr : &it->second;
  }
  const std::map<Key, HomologyEntry>& entries() const { return entries_; }

  void insert(int deg, const Grading& aux, HomologyEntry e) {
    if (!e.trivial()) entries_[{deg, aux}] = std::move(e);
  }

  long long total_rank() const {
    long long t = 0;
    for (auto& [k, e] : entries_) t += e.rank;
    return t;
  }

  // sum of (-1)^deg q^{aux[0]} rank; meaningful when aux is one-dimensional
  Laurent graded_euler() const {
    Laurent p;
    for (auto& [k, e] : entries_) {
      int64_t sign = (k.first % 2 == 0) ? 1 : -1;
      p += Laurent(sign * e.rank, k.second.at(0));
    }
    return p;
  }

 private:
  std::map<Key, HomologyEntry> entries_;
};

// Cochain complex of free abelian groups with an auxiliary grading. The
// differential raises the homological degree by one and must preserve aux.
class CochainComplex {
 public:
  std::size_t add_generator(int deg, Grading aux) {
    auto& v = gens_[deg];
    v.push_back(std::move(aux));
    return v.size() - 1;
  }

  void reserve(int deg, std::size_t n) { gens_[deg].reserve(n); }

  // coefficient of gen 'to' (degree deg+1) in d(gen 'from' at degree deg)
  void add_diff(int deg, std::size_t from, std::size_t to, const Int& coeff) {
    diff_[deg].emplace_back(to, from, coeff);
  }

  std::size_t dim(int deg) const {
    auto it = gens_.find(deg);
    return it == gens_.end() ? 0 : it->second.size();
  }
  const Grading& grading(int deg, std::size_t idx) const { return gens_.at(deg).at(idx); }
  int min_deg() const { return gens_.empty() ? 0 : gens_.begin()->first; }
  int max_deg() const { return gens_.empty() ? 0 : gens_.rbegin()->first; }

  IntMat matrix(int deg) const {
    IntMat m(dim(deg + 1), dim(deg));
    auto it = diff_.find(deg);
    if (it != diff_.end())
      for (auto& [to, from, c] : it->second) m.add(to, from, c);
    return m;
  }

  void validate() const {
    for (auto& [deg, trips] : diff_) {
      IntMat d = matrix(deg);
      for (auto& [r, row] : enumerate_rows(d))
        for (auto& [c, v] : row)
          if (grading(deg + 1, r) != grading(deg, c))
            throw internal_error("differential does not preserve the auxiliary grading");
      IntMat dd = matrix(deg + 1) * d;
      if (!dd.is_zero()) throw internal_error("d^2 != 0");
    }
  }

  // Integral homology per (degree, aux grading). The differential is block
  // diagonal over aux, so each block is handled on its own.
  HomologyTable homology() const {
    HomologyTable out;
    for (auto& [deg, v] : gens_) {
      for (auto& [aux, cols] : buckets(deg)) {
        IntMat d_out = block(deg, aux);
        IntMat d_in = block(deg - 1, aux);
        auto s_out = smith_normal_form(d_out, false);
        auto s_in = smith_normal_form(d_in, false);
        HomologyEntry e;
        e.rank = static_cast<long long>(cols.size()) - static_cast<long long>(s_out.rank) -
                 static_cast<long long>(s_in.rank);
        for (auto& f : s_in.factors)
          if (f > 1) e.torsion.push_back(f);
        out.insert(deg, aux, std::move(e));
      }
    }
    return out;
  }

  // Ranks of homology with rational coefficients, same block structure.
  std::map<HomologyTable::Key, long long> rational_ranks() const {
    std::map<HomologyTable::Key, long long> out;
    HomologyTable h = homology();
    for (auto& [k, e] : h.entries())
      if (e.rank > 0) out[k] = e.rank;
    return out;
  }

  // dimension of each aux-graded piece at a degree
  std::map<Grading, long long> graded_dims(int deg) const {
    std::map<Grading, long long> out;
    auto it = gens_.find(deg);
    if (it != gens_.end())
      for (auto& g : it->second) out[g]++;
    return out;
  }

  // sum over all degrees of (-1)^deg q^{aux[0]} dim, straight from the chain
  // level; equals the same sum over homology ranks
  Laurent graded_euler_from_dims() const {
    Laurent p;
    for (auto& [deg, v] : gens_) {
      int64_t sign = (deg % 2 == 0) ? 1 : -1;
      for (auto& g : v) p += Laurent(sign, g.at(0));
    }
    return p;
  }

 private:
  static std::vector<std::pair<std::size_t, std::map<std::size_t, Int>>> enumerate_rows(
      const IntMat& m) {
    std::vector<std::pair<std::size_t, std::map<std::size_t, Int>>> out;
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (!m.row(r).empty()) out.emplace_back(r, m.row(r));
    return out;
  }

  std::map<Grading, std::vector<std::size_t>> buckets(int deg) const {
    std::map<Grading, std::vector<std::size_t>> out;
    auto it = gens_.find(deg);
    if (it != gens_.end())
      for (std::size_t i = 0; i < it->second.size(); ++i) out[it->second[i]].push_back(i);
    return out;
  }

  // restriction of d: C^deg -> C^{deg+1} to the aux-graded piece
  IntMat block(int deg, const Grading& aux) const {
    auto bc = buckets(deg), br = buckets(deg + 1);
    auto itc = bc.find(aux), itr = br.find(aux);
    std::size_t nc = itc == bc.end() ? 0 : itc->second.size();
    std::size_t nr = itr == br.end() ? 0 : itr->second.size();
    IntMat m(nr, nc);
    if (nr == 0 || nc == 0) return m;
    std::map<std::size_t, std::size_t> colpos, rowpos;
    for (std::size_t i = 0; i < itc->second.size(); ++i) colpos[itc->second[i]] = i;
    for (std::size_t i = 0; i < itr->second.size(); ++i) rowpos[itr->second[i]] = i;
    auto itd = diff_.find(deg);
    if (itd != diff_.end())
      for (auto& [to, from, c] : itd->second) {
        auto fc = colpos.find(from);
        auto fr = rowpos.find(to);
        if (fc != colpos.end() && fr != rowpos.end()) m.add(fr->second, fc->second, c);
      }
    return m;
  }

  std::map<int, std::vector<Grading>> gens_;
  std::map<int, std::vector<std::tuple<std::size_t, std::size_t, Int>>> diff_;
};

}  // namespace linkhom
