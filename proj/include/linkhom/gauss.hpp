#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "linkhom/numeric.hpp"
#include "linkhom/pd.hpp"

namespace linkhom {

// Signed Gauss phrase: one word per component over crossing letters, each
// letter occurring exactly twice in the whole phrase, with a sign and a flag
// telling whether its first occurrence (in reading order, words left to
// right) is the over-pass.
//
// Text form, two lines:
//   A:+O B:-U
//   AB|BA
// Header annotations are space separated; an empty header line means no
// letters. Words are joined by "|"; an empty word is an empty segment.
// Letters beyond Z are written [27], [28], ...
class GaussPhrase {
 public:
  struct Letter {
    int sign = 1;
    bool over_first = true;
  };

  GaussPhrase() = default;

  static GaussPhrase from_words(std::vector<std::vector<std::size_t>> words,
                                std::vector<Letter> letters) {
    GaussPhrase g;
    g.words_ = std::move(words);
    g.letters_ = std::move(letters);
    g.validate();
    return g;
  }

  static GaussPhrase parse(const std::string& text) {
    std::istringstream in(text);
    std::string header, phrase;
    std::getline(in, header);
    if (!std::getline(in, phrase)) {
      // single-line input: treat a blank text as empty phrase
      phrase = "";
    }
    GaussPhrase g;
    std::map<std::string, std::size_t> names;
    std::istringstream hs(header);
    std::string tok;
    while (hs >> tok) {
      auto colon = tok.find(':');
      if (colon == std::string::npos || colon + 3 != tok.size())
        throw validation_error("bad letter annotation: " + tok);
      std::string name = tok.substr(0, colon);
      char sgn = tok[colon + 1], pass = tok[colon + 2];
      if ((sgn != '+' && sgn != '-') || (pass != 'O' && pass != 'U'))
        throw validation_error("bad letter annotation: " + tok);
      if (names.count(name)) throw validation_error("letter annotated twice: " + name);
      names[name] = g.letters_.size();
      g.letters_.push_back({sgn == '+' ? 1 : -1, pass == 'O'});
    }
    g.words_.push_back({});
    for (std::size_t p = 0; p < phrase.size();) {
      char ch = phrase[p];
      if (ch == '|') {
        g.words_.push_back({});
        ++p;
        continue;
      }
      std::string name;
      if (ch == '[') {
        auto close = phrase.find(']', p);
        if (close == std::string::npos) throw validation_error("unterminated letter token");
        name = phrase.substr(p, close - p + 1);
        p = close + 1;
      } else {
        name = std::string(1, ch);
        ++p;
      }
      auto it = names.find(name);
      if (it == names.end()) throw validation_error("letter without annotation: " + name);
      g.words_.back().push_back(it->second);
    }
    g.validate();
    return g;
  }

  std::string serialize() const {
    std::ostringstream out;
    for (std::size_t l = 0; l < letters_.size(); ++l) {
      if (l) out << ' ';
      out << letter_name(l) << ':' << (letters_[l].sign > 0 ? '+' : '-')
          << (letters_[l].over_first ? 'O' : 'U');
    }
    out << '\n';
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (w) out << '|';
      for (std::size_t l : words_[w]) out << letter_name(l);
    }
    out << '\n';
    return out.str();
  }

  static std::string letter_name(std::size_t l) {
    if (l < 26) return std::string(1, static_cast<char>('A' + l));
    return "[" + std::to_string(l + 1) + "]";
  }

  std::size_t letter_count() const { return letters_.size(); }
  std::size_t word_count() const { return words_.size(); }
  const std::vector<std::vector<std::size_t>>& words() const { return words_; }
  const Letter& letter(std::size_t l) const { return letters_.at(l); }

  int writhe() const {
    int w = 0;
    for (auto& l : letters_) w += l.sign;
    return w;
  }

  // occurrences in reading order: (word, position, letter, over pass)
  struct Occ {
    std::size_t word, pos, letter;
    bool over;
  };
  std::vector<Occ> occurrences() const {
    std::vector<Occ> out;
    std::map<std::size_t, int> seen;
    for (std::size_t w = 0; w < words_.size(); ++w)
      for (std::size_t p = 0; p < words_[w].size(); ++p) {
        std::size_t l = words_[w][p];
        bool first = seen[l]++ == 0;
        out.push_back({w, p, l, first == letters_[l].over_first});
      }
    return out;
  }

  // new phrase with each component rotated by the given offsets
  GaussPhrase rotated(const std::vector<std::size_t>& offs) const {
    std::vector<std::vector<std::size_t>> words = words_;
    for (std::size_t w = 0; w < words.size(); ++w) {
      if (words[w].empty()) continue;
      std::size_t k = offs.at(w) % words[w].size();
      std::rotate(words[w].begin(), words[w].begin() + k, words[w].end());
    }
    // over_first flags are tied to reading order; recompute them so each
    // occurrence keeps its over/under role
    std::map<std::size_t, bool> role_of_first;
    {
      auto occ = occurrences();
      std::map<std::pair<std::size_t, std::size_t>, bool> over_at;
      for (auto& o : occ) over_at[{o.word, o.pos}] = o.over;
      std::map<std::size_t, int> cnt;
      for (std::size_t w = 0; w < words.size(); ++w)
        for (std::size_t p = 0; p < words[w].size(); ++p) {
          std::size_t l = words[w][p];
          if (cnt[l]++ == 0) {
            // position p in the rotated word came from offset position
            std::size_t orig = (p + offs.at(w)) % words_[w].size();
            role_of_first[l] = over_at.at({w, orig});
          }
        }
    }
    std::vector<Letter> letters = letters_;
    for (std::size_t l = 0; l < letters.size(); ++l) letters[l].over_first = role_of_first.at(l);
    return from_words(std::move(words), std::move(letters));
  }

  // Relabel letters by first occurrence and serialize; minimal over all
  // component rotations. Two diagrams are combinatorially equal exactly when
  // these strings agree (component order fixed).
  std::string canonical_form() const {
    std::vector<std::size_t> offs(words_.size(), 0), best_offs;
    std::string best;
    std::size_t total = 1;
    for (auto& w : words_) total *= std::max<std::size_t>(1, w.size());
    if (total > 200000) throw budget_exceeded("too many rotations for canonical form");
    for (std::size_t it = 0;; ++it) {
      std::string cand = rotated(offs).relabeled_serialization();
      if (best.empty() || cand < best) best = cand;
      // odometer over rotations
      std::size_t w = 0;
      while (w < words_.size()) {
        offs[w]++;
        if (offs[w] < std::max<std::size_t>(1, words_[w].size())) break;
        offs[w] = 0;
        ++w;
      }
      if (w == words_.size()) break;
    }
    return best;
  }

  std::string relabeled_serialization() const {
    std::map<std::size_t, std::size_t> order;
    for (auto& o : occurrences())
      if (!order.count(o.letter)) order.emplace(o.letter, order.size());
    std::vector<std::vector<std::size_t>> words = words_;
    for (auto& w : words)
      for (auto& l : w) l = order.at(l);
    std::vector<Letter> letters(letters_.size());
    for (auto& [from, to] : order) letters[to] = letters_[from];
    return from_words(std::move(words), std::move(letters)).serialize();
  }

  void validate() const {
    std::map<std::size_t, int> cnt;
    for (auto& w : words_)
      for (std::size_t l : w) {
        if (l >= letters_.size()) throw validation_error("letter out of range");
        cnt[l]++;
      }
    for (std::size_t l = 0; l < letters_.size(); ++l)
      if (cnt[l] != 2) throw validation_error("each letter must occur exactly twice");
  }

 private:
  std::vector<std::vector<std::size_t>> words_;
  std::vector<Letter> letters_;
};

// Gauss phrase read off a PD code by walking its oriented components.
inline GaussPhrase pd_to_gauss(const PDCode& d) {
  std::vector<std::vector<std::size_t>> words;
  std::vector<GaussPhrase::Letter> letters;
  std::map<std::size_t, std::size_t> letter_of_crossing;
  std::map<std::size_t, int> seen;
  // locate the crossing consuming each arc's head, and whether as over pass
  std::map<int, std::pair<std::size_t, bool>> head;
  for (std::size_t c = 0; c < d.crossing_count(); ++c) {
    const auto& cr = d.crossing(c);
    head[cr.e[0]] = {c, false};
    head[PDCode::over_in(cr)] = {c, true};
  }
  for (auto& cyc : d.components()) {
    words.push_back({});
    for (int a : cyc) {
      auto [c, over] = head.at(a);
      auto it = letter_of_crossing.find(c);
      std::size_t l;
      if (it == letter_of_crossing.end()) {
        l = letters.size();
        letter_of_crossing[c] = l;
        letters.push_back({d.crossing(c).sign, over});
      } else {
        l = it->second;
      }
      words.back().push_back(l);
    }
  }
  return GaussPhrase::from_words(std::move(words), std::move(letters));
}

namespace detail {

// darts of the 4-valent structure: 4 per letter, indexed by the tuple slot
// convention of PDCode (slot 0 under-in, ccw). For sign + the over-in sits at
// slot 3, for sign - at slot 1.
struct GaussStructure {
  std::size_t letters = 0;
  // slot of each occurrence's entry and exit
  std::vector<std::pair<std::size_t, std::size_t>> arc_ends;  // dart pairs joined by arcs
  std::vector<int> free_loops;  // count of crossing-free components
  std::vector<int> sign;

  static std::size_t enter_slot(bool over, int sgn) {
    if (!over) return 0;
    return sgn > 0 ? 3 : 1;
  }
  static std::size_t exit_slot(bool over, int sgn) {
    if (!over) return 2;
    return sgn > 0 ? 1 : 3;
  }
};

inline GaussStructure structure_of(const GaussPhrase& g) {
  GaussStructure s;
  s.letters = g.letter_count();
  for (std::size_t l = 0; l < g.letter_count(); ++l) s.sign.push_back(g.letter(l).sign);
  auto occ = g.occurrences();
  std::map<std::size_t, std::vector<GaussPhrase::Occ>> by_word;
  for (auto& o : occ) by_word[o.word].push_back(o);
  for (std::size_t w = 0; w < g.word_count(); ++w) {
    auto it = by_word.find(w);
    if (it == by_word.end() || it->second.empty()) {
      s.free_loops.push_back(1);
      continue;
    }
    auto& os = it->second;
    for (std::size_t t = 0; t < os.size(); ++t) {
      const auto& cur = os[t];
      const auto& nxt = os[(t + 1) % os.size()];
      std::size_t from = 4 * cur.letter + GaussStructure::exit_slot(cur.over, g.letter(cur.letter).sign);
      std::size_t to = 4 * nxt.letter + GaussStructure::enter_slot(nxt.over, g.letter(nxt.letter).sign);
      s.arc_ends.push_back({from, to});
    }
  }
  return s;
}

struct DSU {
  std::vector<std::size_t> up;
  explicit DSU(std::size_t n) : up(n) {
    for (std::size_t i = 0; i < n; ++i) up[i] = i;
  }
  std::size_t find(std::size_t x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  }
  void join(std::size_t a, std::size_t b) { up[find(a)] = find(b); }
};

}  // namespace detail

// Planarity of a signed Gauss phrase through the genus of the surface built
// from the sign-determined rotation system: every connected piece of the
// 4-valent graph must close up with Euler characteristic 2.
inline bool realizable(const GaussPhrase& g) {
  auto s = detail::structure_of(g);
  if (s.letters == 0) return true;
  std::size_t nd = 4 * s.letters;
  // arc involution on darts
  std::vector<std::size_t> other(nd, nd);
  for (auto& [a, b] : s.arc_ends) {
    other[a] = b;
    other[b] = a;
  }
  // faces: orbits of rotate-after-cross
  std::vector<bool> used(nd, false);
  std::size_t faces = 0;
  for (std::size_t d0 = 0; d0 < nd; ++d0) {
    if (used[d0]) continue;
    ++faces;
    std::size_t d = d0;
    do {
      used[d] = true;
      std::size_t crossed = other[d];
      d = (crossed & ~std::size_t(3)) + ((crossed + 1) & 3);
    } while (d != d0);
  }
  // connected components of the crossing graph
  detail::DSU dsu(s.letters);
  for (auto& [a, b] : s.arc_ends) dsu.join(a / 4, b / 4);
  std::set<std::size_t> comps;
  for (std::size_t l = 0; l < s.letters; ++l) comps.insert(dsu.find(l));
  // per component: V - E + F = 2; summed: letters - 2*letters + faces = 2 * pieces
  return static_cast<long long>(faces) - static_cast<long long>(s.letters) ==
         2 * static_cast<long long>(comps.size());
}

namespace detail {

// PD data read off a Gauss phrase with no planarity demand; the result is the
// abstract 4-valent code, which the state-sum operations accept as is.
inline PDCode gauss_pd_any(const GaussPhrase& g) {
  std::vector<std::array<int, 4>> tuples(g.letter_count(), {0, 0, 0, 0});
  std::vector<std::vector<int>> comps;
  auto occ = g.occurrences();
  std::map<std::size_t, std::vector<GaussPhrase::Occ>> by_word;
  for (auto& o : occ) by_word[o.word].push_back(o);
  int arc = 0;
  for (std::size_t w = 0; w < g.word_count(); ++w) {
    comps.push_back({});
    auto it = by_word.find(w);
    if (it == by_word.end() || it->second.empty()) continue;
    auto& os = it->second;
    std::vector<int> arcs;
    for (std::size_t t = 0; t < os.size(); ++t) arcs.push_back(++arc);
    for (std::size_t t = 0; t < os.size(); ++t) {
      // arc[t] runs from occurrence t to occurrence t+1
      const auto& nxt = os[(t + 1) % os.size()];
      const auto& cur = os[t];
      int sgn_c = g.letter(cur.letter).sign, sgn_n = g.letter(nxt.letter).sign;
      tuples[cur.letter][detail::GaussStructure::exit_slot(cur.over, sgn_c)] = arcs[t];
      tuples[nxt.letter][detail::GaussStructure::enter_slot(nxt.over, sgn_n)] = arcs[t];
      comps.back().push_back(arcs[t]);
    }
  }
  std::vector<int> signs;
  for (std::size_t l = 0; l < g.letter_count(); ++l) signs.push_back(g.letter(l).sign);
  // hand the signs over: a symmetric code can fit two assignments, and only
  // the phrase knows which one it meant
  return PDCode::from_data(std::move(tuples), std::move(comps), signs);
}

}  // namespace detail

// PD code whose Gauss phrase is the given one. Requires realizability.
inline PDCode gauss_to_pd(const GaussPhrase& g) {
  if (!realizable(g)) throw not_realizable("gauss phrase is not planar");
  return detail::gauss_pd_any(g);
}

// combinatorial equality of diagrams, insensitive to arc labels and to
// rotations of each component
inline bool same_diagram(const PDCode& a, const PDCode& b) {
  if (a.component_count() != b.component_count() || a.crossing_count() != b.crossing_count())
    return false;
  return pd_to_gauss(a).canonical_form() == pd_to_gauss(b).canonical_form();
}

}  // namespace linkhom
