#pragma once

#include "linkhom/braid.hpp"
#include "linkhom/pd.hpp"

namespace corpus {

inline linkhom::PDCode unknot() {
  return linkhom::PDCode::from_data({}, {{}});
}

inline linkhom::PDCode right_trefoil() {
  return linkhom::PDCode::from_data({{3, 1, 4, 6}, {1, 5, 2, 4}, {5, 3, 6, 2}},
                                    {{1, 2, 3, 4, 5, 6}});
}

inline linkhom::PDCode left_trefoil() {
  return linkhom::PDCode::from_data({{6, 3, 1, 4}, {4, 1, 5, 2}, {2, 5, 3, 6}},
                                    {{1, 2, 3, 4, 5, 6}});
}

inline linkhom::PDCode hopf_positive() {
  return linkhom::PDCode::from_data({{4, 1, 3, 2}, {1, 4, 2, 3}}, {{1, 2}, {3, 4}});
}

inline linkhom::PDCode kink_positive() {
  return linkhom::PDCode::from_data({{1, 1, 2, 2}}, {{1, 2}});
}

inline linkhom::PDCode kink_negative() {
  return linkhom::PDCode::from_data({{1, 2, 2, 1}}, {{1, 2}});
}

inline linkhom::PDCode figure_eight() {
  return linkhom::braid_closure(3, {1, -2, 1, -2});
}

}  // namespace corpus
