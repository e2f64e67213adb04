#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "linkhom/numeric.hpp"

namespace linkhom {

// Planar diagram code. Each crossing is a 4-tuple of arc labels listed
// counterclockwise from the incoming under-strand, so slot 0 is the under-in
// and slot 2 the under-out. Slot 1 holds the over-out exactly when the
// crossing is positive. Components are oriented arc cycles; signs are derived
// from them, never stored in input files.
class PDCode {
 public:
  struct Crossing {
    std::array<int, 4> e;
    int sign = 0;
  };

  PDCode() = default;

  static PDCode from_data(std::vector<std::array<int, 4>> tuples,
                          std::vector<std::vector<int>> components) {
    PDCode d;
    for (auto& t : tuples) d.crossings_.push_back({t, 0});
    d.components_ = std::move(components);
    d.finish();
    return d;
  }

  // Same construction with the crossing signs supplied by the caller. The
  // stored signs are verified against the orientation cycles instead of
  // searched for, which also settles codes whose orientation data alone is
  // consistent with more than one assignment.
  static PDCode from_data(std::vector<std::array<int, 4>> tuples,
                          std::vector<std::vector<int>> components,
                          const std::vector<int>& signs) {
    if (signs.size() != tuples.size()) throw validation_error("one sign per crossing");
    PDCode d;
    for (std::size_t k = 0; k < tuples.size(); ++k) {
      if (signs[k] != 1 && signs[k] != -1)
        throw validation_error("crossing sign must be +1 or -1");
      d.crossings_.push_back({tuples[k], signs[k]});
    }
    d.components_ = std::move(components);
    d.build_next();
    d.check_signs();
    d.validate();
    return d;
  }

  static PDCode parse(const std::string& text) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw validation_error(std::string("bad PD JSON: ") + e.what());
    }
    return from_json(j);
  }

  static PDCode from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("crossings") || !j.contains("orientations") ||
        !j.contains("components"))
      throw validation_error("PD JSON needs crossings, orientations, components");
    std::vector<std::array<int, 4>> tuples;
    for (auto& t : j.at("crossings")) {
      if (!t.is_array() || t.size() != 4) throw validation_error("crossing must be a 4-tuple");
      tuples.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>(), t[3].get<int>()});
    }
    std::vector<std::vector<int>> comps;
    for (auto& c : j.at("orientations")) comps.push_back(c.get<std::vector<int>>());
    if (j.at("components").get<std::size_t>() != comps.size())
      throw validation_error("component count disagrees with orientations");
    return from_data(std::move(tuples), std::move(comps));
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["crossings"] = nlohmann::json::array();
    for (auto& c : crossings_) j["crossings"].push_back(c.e);
    j["orientations"] = components_;
    j["components"] = components_.size();
    return j;
  }

  std::size_t crossing_count() const { return crossings_.size(); }
  std::size_t component_count() const { return components_.size(); }
  const Crossing& crossing(std::size_t c) const { return crossings_.at(c); }
  const std::vector<std::vector<int>>& components() const { return components_; }

  int writhe() const {
    int w = 0;
    for (auto& c : crossings_) w += c.sign;
    return w;
  }

  // crossings where both passes belong to the given component
  int self_writhe(std::size_t comp) const {
    int w = 0;
    for (auto& c : crossings_)
      if (comp_of_arc_.at(c.e[0]) == comp && comp_of_arc_.at(over_in(c)) == comp) w += c.sign;
    return w;
  }

  std::size_t component_of_arc(int arc) const { return comp_of_arc_.at(arc); }
  int positive_count() const {
    int n = 0;
    for (auto& c : crossings_)
      if (c.sign > 0) ++n;
    return n;
  }
  int negative_count() const { return static_cast<int>(crossings_.size()) - positive_count(); }

  // over-in arc of a crossing: slot 3 when positive, slot 1 when negative
  static int over_in(const Crossing& c) { return c.sign >= 0 ? c.e[3] : c.e[1]; }
  static int over_out(const Crossing& c) { return c.sign >= 0 ? c.e[1] : c.e[3]; }

  // Mirror image: over and under swap at every crossing, which re-reads each
  // tuple counterclockwise from the old over-in. Orientations are untouched.
  PDCode mirror() const {
    std::vector<std::array<int, 4>> tuples;
    std::vector<int> signs;
    for (auto& c : crossings_) {
      const auto& e = c.e;
      if (c.sign > 0)
        tuples.push_back({e[3], e[0], e[1], e[2]});
      else
        tuples.push_back({e[1], e[2], e[3], e[0]});
      signs.push_back(-c.sign);
    }
    return from_data(std::move(tuples), components_, signs);
  }

  // Reverse the orientation of the selected components. Reversing the under
  // strand moves the under-in to the old under-out, which rotates the tuple
  // half way around; the counterclockwise reading is direction independent.
  PDCode reversed(const std::vector<bool>& flip) const {
    if (flip.size() != components_.size()) throw validation_error("flip mask length");
    std::vector<std::array<int, 4>> tuples;
    std::vector<int> signs;
    for (auto& c : crossings_) {
      const auto& e = c.e;
      if (flip[comp_of_arc_.at(e[0])])
        tuples.push_back({e[2], e[3], e[0], e[1]});
      else
        tuples.push_back(e);
      // the sign flips when exactly one of the two strands turns around
      bool u = flip[comp_of_arc_.at(e[0])], o = flip[comp_of_arc_.at(over_in(c))];
      signs.push_back(u == o ? c.sign : -c.sign);
    }
    auto comps = components_;
    for (std::size_t k = 0; k < comps.size(); ++k)
      if (flip[k]) std::reverse(comps[k].begin(), comps[k].end());
    return from_data(std::move(tuples), std::move(comps), signs);
  }

  // Insert a Reidemeister I kink on the given arc. The arc is cut in two
  // places: it runs into the new crossing as the under strand, loops back
  // over itself, and continues under its old head. Two fresh labels n1, n2
  // follow 'arc' in its component.
  PDCode with_kink(int arc, int sign) const {
    int n1 = 1 + max_arc_label(), n2 = n1 + 1;
    std::vector<std::array<int, 4>> tuples;
    for (auto& c : crossings_) {
      auto e = c.e;
      // the head occurrence of 'arc' now belongs to the last fresh arc
      std::size_t head = head_slot(c, arc);
      if (head != 4) e[head] = n2;
      tuples.push_back(e);
    }
    if (sign > 0)
      tuples.push_back({arc, n2, n1, n1});
    else
      tuples.push_back({arc, n1, n1, n2});
    auto comps = components_;
    bool placed = false;
    for (auto& cyc : comps)
      for (std::size_t t = 0; t < cyc.size() && !placed; ++t)
        if (cyc[t] == arc) {
          cyc.insert(cyc.begin() + t + 1, {n1, n2});
          placed = true;
        }
    if (!placed) throw validation_error("kink arc not found");
    std::vector<int> signs;
    for (auto& c : crossings_) signs.push_back(c.sign);
    signs.push_back(sign > 0 ? 1 : -1);
    return from_data(std::move(tuples), std::move(comps), signs);
  }

  int max_arc_label() const {
    int m = 0;
    for (auto& cyc : components_)
      for (int a : cyc) m = std::max(m, a);
    return m;
  }

  // arc following a within its oriented component
  int next_arc(int a) const { return next_.at(a); }

 private:
  // slot where this crossing consumes the head of the given arc (the arc
  // ends there); 4 when the arc's head is elsewhere
  std::size_t head_slot(const Crossing& c, int arc) const {
    for (std::size_t s : {0u, 1u, 3u}) {
      if (c.e[s] != arc) continue;
      bool in_slot = s == 0 || (s == 1 && c.sign < 0) || (s == 3 && c.sign > 0);
      if (in_slot) return s;
    }
    return 4;
  }

  void finish() {
    build_next();
    assign_signs();
    validate();
  }

  void build_next() {
    next_.clear();
    comp_of_arc_.clear();
    for (std::size_t k = 0; k < components_.size(); ++k) {
      const auto& cyc = components_[k];
      for (std::size_t t = 0; t < cyc.size(); ++t) {
        if (next_.count(cyc[t])) throw validation_error("arc repeated in orientations");
        next_[cyc[t]] = cyc[(t + 1) % cyc.size()];
        comp_of_arc_[cyc[t]] = k;
      }
    }
    std::map<int, int> uses;
    for (auto& c : crossings_)
      for (int a : c.e) uses[a]++;
    for (auto& [a, n] : uses) {
      if (n != 2) throw validation_error("arc label must appear exactly twice");
      if (!next_.count(a)) throw validation_error("arc missing from orientations");
    }
    for (auto& [a, b] : next_)
      if (!crossings_.empty() && !uses.count(a))
        throw validation_error("orientations mention an unused arc");
  }

  // Decide each crossing's sign so that every consecutive arc pair in the
  // orientation cycles is carried by exactly one strand pass. Forced choices
  // propagate to a fixpoint; any residue is settled by search, and the input
  // is rejected unless exactly one full assignment works.
  void assign_signs() {
    auto demand = under_demand();
    std::vector<std::size_t> open;
    for (std::size_t ci = 0; ci < crossings_.size(); ++ci) open.push_back(ci);
    std::vector<int> signs(crossings_.size(), 0);
    int found = 0;
    std::vector<int> unique;
    search_signs(demand, open, signs, found, unique);
    if (found == 0) throw validation_error("over strand disagrees with orientations");
    if (found > 1) throw validation_error("orientation data does not determine crossing signs");
    for (std::size_t ci = 0; ci < crossings_.size(); ++ci) crossings_[ci].sign = unique[ci];
    for (auto& c : crossings_) {
      auto d = demand.find({over_in(c), over_out(c)});
      if (d == demand.end() || d->second == 0)
        throw validation_error("orientation pair not realized by any strand");
      d->second--;
    }
    for (auto& [pair, n] : demand)
      if (n != 0) throw validation_error("orientation pair not realized by any strand");
  }

  // Consecutive orientation pairs still waiting for a strand pass after the
  // under strands are accounted for.
  std::map<std::pair<int, int>, int> under_demand() const {
    std::map<std::pair<int, int>, int> demand;  // consecutive pair -> passes needed
    for (auto& [a, b] : next_) demand[{a, b}]++;
    for (auto& c : crossings_) {
      auto it = next_.find(c.e[0]);
      if (it == next_.end() || it->second != c.e[2])
        throw validation_error("under strand disagrees with orientations");
      auto d = demand.find({c.e[0], c.e[2]});
      if (d == demand.end() || d->second == 0)
        throw validation_error("orientation pair used more than once");
      d->second--;
    }
    return demand;
  }

  // Check that the stored signs realize every orientation pair exactly once.
  void check_signs() const {
    auto demand = under_demand();
    for (auto& c : crossings_) {
      auto d = demand.find({over_in(c), over_out(c)});
      if (d == demand.end() || d->second == 0)
        throw validation_error("over strand disagrees with orientations");
      d->second--;
    }
    for (auto& [pair, n] : demand)
      if (n != 0) throw validation_error("orientation pair not realized by any strand");
  }

  void search_signs(std::map<std::pair<int, int>, int> demand, std::vector<std::size_t> open,
                    std::vector<int> signs, int& found, std::vector<int>& unique) const {
    bool progress = true;
    while (!open.empty() && progress) {
      progress = false;
      std::vector<std::size_t> still;
      for (std::size_t ci : open) {
        const auto& c = crossings_[ci];
        bool plus_ok = pass_available(demand, c.e[3], c.e[1]);
        bool minus_ok = pass_available(demand, c.e[1], c.e[3]);
        if (!plus_ok && !minus_ok) return;
        if (plus_ok && minus_ok) {
          still.push_back(ci);
          continue;
        }
        signs[ci] = plus_ok ? 1 : -1;
        demand[{plus_ok ? c.e[3] : c.e[1], plus_ok ? c.e[1] : c.e[3]}]--;
        progress = true;
      }
      open = std::move(still);
    }
    if (open.empty()) {
      if (++found == 1) unique = signs;
      return;
    }
    std::size_t ci = open.back();
    open.pop_back();
    const auto& c = crossings_[ci];
    for (int s : {1, -1}) {
      if (found > 1) return;
      int in = s > 0 ? c.e[3] : c.e[1], out = s > 0 ? c.e[1] : c.e[3];
      if (!pass_available(demand, in, out)) continue;
      auto d2 = demand;
      d2[{in, out}]--;
      auto s2 = signs;
      s2[ci] = s;
      search_signs(std::move(d2), open, std::move(s2), found, unique);
    }
  }

  static bool pass_available(const std::map<std::pair<int, int>, int>& demand, int from, int to) {
    auto it = demand.find({from, to});
    return it != demand.end() && it->second > 0;
  }

  void validate() const {
    for (auto& c : crossings_)
      if (c.sign != 1 && c.sign != -1) throw internal_error("sign not assigned");
  }

  std::vector<Crossing> crossings_;
  std::vector<std::vector<int>> components_;
  std::map<int, int> next_;
  std::map<int, std::size_t> comp_of_arc_;
};

}  // namespace linkhom
