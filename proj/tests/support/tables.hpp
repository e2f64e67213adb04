#pragma once

#include <map>
#include <utility>
#include <vector>

#include "linkhom/chain.hpp"

namespace support {

using TableKey = std::pair<int, std::vector<int>>;
using TableMap = std::map<TableKey, std::pair<long long, std::vector<linkhom::Int>>>;

inline TableMap table_map(const linkhom::HomologyTable& t) {
  TableMap out;
  for (auto& [k, e] : t.entries()) out[k] = {e.rank, e.torsion};
  return out;
}

inline std::map<TableKey, long long> rank_map(const linkhom::HomologyTable& t) {
  std::map<TableKey, long long> out;
  for (auto& [k, e] : t.entries())
    if (e.rank > 0) out[k] = e.rank;
  return out;
}

inline std::map<TableKey, long long> negated_rank_map(const linkhom::HomologyTable& t) {
  std::map<TableKey, long long> out;
  for (auto& [k, e] : t.entries()) {
    if (e.rank == 0) continue;
    std::vector<int> aux;
    for (int v : k.second) aux.push_back(-v);
    out[{-k.first, aux}] = e.rank;
  }
  return out;
}

}  // namespace support
