#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "linkhom/budget.hpp"
#include "linkhom/cable.hpp"
#include "linkhom/chain.hpp"
#include "linkhom/colored.hpp"
#include "linkhom/gauss.hpp"
#include "linkhom/khovanov.hpp"
#include "linkhom/numeric.hpp"
#include "linkhom/pd.hpp"

namespace linkhom {

// Homotopy data: a finite alphabet together with two involutions tau and nu
// and a set of admissible triples gating the third move. Symbols are handled
// by index; the names only matter for I/O.
struct HomotopyData {
  std::vector<std::string> symbols;
  std::vector<std::size_t> tau, nu;
  std::set<std::array<std::size_t, 3>> s;

  std::size_t size() const { return symbols.size(); }

  std::size_t index_of(const std::string& name) const {
    for (std::size_t i = 0; i < symbols.size(); ++i)
      if (symbols[i] == name) return i;
    throw validation_error("unknown symbol: " + name);
  }

  bool commuting() const {
    for (std::size_t i = 0; i < size(); ++i)
      if (nu[tau[i]] != tau[nu[i]]) return false;
    return true;
  }

  void validate() const {
    if (tau.size() != size() || nu.size() != size())
      throw validation_error("involution tables must cover the alphabet");
    std::set<std::string> names(symbols.begin(), symbols.end());
    if (names.size() != size()) throw validation_error("duplicate symbol name");
    for (auto* inv : {&tau, &nu})
      for (std::size_t i = 0; i < size(); ++i) {
        if ((*inv)[i] >= size()) throw validation_error("involution value out of range");
        if ((*inv)[(*inv)[i]] != i) throw validation_error("involution must square to the identity");
      }
    for (auto& t : s)
      for (auto v : t)
        if (v >= size()) throw validation_error("triple entry out of range");
  }

  static HomotopyData from_parts(std::vector<std::string> symbols, std::vector<std::size_t> tau,
                                 std::vector<std::size_t> nu,
                                 std::set<std::array<std::size_t, 3>> s) {
    HomotopyData d;
    d.symbols = std::move(symbols);
    d.tau = std::move(tau);
    d.nu = std::move(nu);
    d.s = std::move(s);
    d.validate();
    return d;
  }
};

// Triple set generated by the involutions: for every pair a = nu(tau(b)) take
// the six triples over {a, b} that are not strictly alternating. Needs the
// involutions to commute, which makes their composite an involution as well;
// in particular the whole diagonal (x, x, x) is always admissible.
inline HomotopyData make_s_sharp(std::vector<std::string> symbols, std::vector<std::size_t> tau,
                                 std::vector<std::size_t> nu) {
  HomotopyData d;
  d.symbols = std::move(symbols);
  d.tau = std::move(tau);
  d.nu = std::move(nu);
  d.validate();
  if (!d.commuting()) throw validation_error("triple set needs commuting involutions");
  for (std::size_t b = 0; b < d.size(); ++b) {
    std::size_t a = d.nu[d.tau[b]];
    const std::array<std::size_t, 3> six[] = {{a, a, a}, {a, a, b}, {b, a, a},
                                              {b, b, a}, {a, b, b}, {b, b, b}};
    for (auto& t : six) d.s.insert(t);
  }
  return d;
}

// Virtual-link target alphabet, symbols a+, a-, b+, b- in this index order.
// tau pairs a+ with b- and a- with b+; nu exchanges the families a and b and
// keeps the subscript.
inline const HomotopyData& alpha_star() {
  static const HomotopyData d = make_s_sharp({"a+", "a-", "b+", "b-"}, {3, 2, 1, 0}, {2, 3, 0, 1});
  return d;
}

// Pseudolink target alphabet, symbols 1 and -1; tau exchanges them, nu is
// trivial.
inline const HomotopyData& alpha_one() {
  static const HomotopyData d = make_s_sharp({"1", "-1"}, {1, 0}, {0, 1});
  return d;
}

// Two-symbol alphabet with trivial tau and swapping nu.
inline const HomotopyData& alpha_two() {
  static const HomotopyData d = make_s_sharp({"c", "d"}, {0, 1}, {1, 0});
  return d;
}

// Two-symbol alphabet with trivial tau and swapping nu, used as the target of
// the free functor below.
inline const HomotopyData& alpha_zero() {
  static const HomotopyData d = make_s_sharp({"a", "b"}, {0, 1}, {1, 0});
  return d;
}

// Phrase over an alphabet: an ordered list of words over a letter set, every
// letter occurring exactly twice across the whole phrase, each letter
// projecting to a symbol. Letters are 0-based indices.
class Nanophrase {
 public:
  Nanophrase() = default;

  static Nanophrase from_words(std::vector<std::vector<std::size_t>> words,
                               std::vector<std::size_t> proj) {
    Nanophrase p;
    p.words_ = std::move(words);
    p.proj_ = std::move(proj);
    p.validate();
    return p;
  }

  std::size_t letter_count() const { return proj_.size(); }
  std::size_t word_count() const { return words_.size(); }
  const std::vector<std::vector<std::size_t>>& words() const { return words_; }
  std::size_t proj(std::size_t l) const { return proj_.at(l); }

  static std::string letter_name(std::size_t l) { return GaussPhrase::letter_name(l); }

  // letters relabeled by first occurrence, then words and symbols printed;
  // two phrases get the same key exactly when they differ by renaming the
  // letter set
  std::string canonical_key() const {
    std::map<std::size_t, std::size_t> order;
    for (auto& w : words_)
      for (std::size_t l : w)
        if (!order.count(l)) order.emplace(l, order.size());
    std::ostringstream out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (w) out << '|';
      for (std::size_t i = 0; i < words_[w].size(); ++i) {
        if (i) out << ',';
        out << order.at(words_[w][i]);
      }
    }
    out << '/';
    std::vector<std::size_t> sym(proj_.size());
    for (auto& [from, to] : order) sym[to] = proj_[from];
    for (std::size_t i = 0; i < sym.size(); ++i) {
      if (i) out << ',';
      out << sym[i];
    }
    return out.str();
  }

  void validate() const {
    std::map<std::size_t, int> cnt;
    for (auto& w : words_)
      for (std::size_t l : w) {
        if (l >= proj_.size()) throw validation_error("letter out of range");
        cnt[l]++;
      }
    for (std::size_t l = 0; l < proj_.size(); ++l)
      if (cnt[l] != 2) throw validation_error("each letter must occur exactly twice");
  }

 private:
  std::vector<std::vector<std::size_t>> words_;
  std::vector<std::size_t> proj_;
};

namespace detail {

inline void check_over(const Nanophrase& p, const HomotopyData& d) {
  for (std::size_t l = 0; l < p.letter_count(); ++l)
    if (p.proj(l) >= d.size()) throw validation_error("phrase symbol out of range for the data");
}

}  // namespace detail

// Sign profile: representative sets L and L1 cutting the alphabet into the
// classes read off by sign_couple. L holds one symbol of each tau pair it
// touches, L1 one symbol of each nu pair inside L, with the nu image of L1
// kept inside L.
struct SignProfile {
  std::set<std::size_t> l, l1;

  static SignProfile make(const HomotopyData& d, std::set<std::size_t> l,
                          std::set<std::size_t> l1) {
    if (!d.commuting()) throw validation_error("sign profiles need commuting involutions");
    if (l.empty() || l1.empty()) throw validation_error("profile sets must be nonempty");
    for (auto s : l)
      if (s >= d.size()) throw validation_error("profile symbol out of range");
    for (auto s : l1)
      if (!l.count(s)) throw validation_error("inner set must sit inside the outer one");
    for (auto s : l)
      if (l.count(d.tau[s])) throw validation_error("outer set meets its tau image");
    for (auto s : l1) {
      if (l1.count(d.nu[s])) throw validation_error("inner set meets its nu image");
      if (!l.count(d.nu[s]))
        throw validation_error("outer set must contain the nu image of the inner one");
    }
    SignProfile p;
    p.l = std::move(l);
    p.l1 = std::move(l1);
    return p;
  }
};

// Couple of signs of a symbol: the first coordinate reads membership in L
// against tau(L), the second refines it through L1 against nu(L1), with the
// tau images of those sets taking over on the tau(L) side. Symbols fixed by
// tau get first coordinate 0, symbols fixed by nu get second coordinate 0.
inline std::pair<int, int> sign_couple(const HomotopyData& d, const SignProfile& prof,
                                       std::size_t symbol) {
  if (symbol >= d.size()) throw validation_error("symbol out of range");
  auto has = [](const std::set<std::size_t>& set, std::size_t v) { return set.count(v) > 0; };
  int first = 0;
  if (has(prof.l, symbol))
    first = 1;
  else if (has(prof.l, d.tau[symbol]))
    first = -1;
  int second = 0;
  if (first == 1) {
    if (has(prof.l1, symbol))
      second = 1;
    else if (has(prof.l1, d.nu[symbol]))
      second = -1;
  } else if (first == -1) {
    if (has(prof.l1, d.tau[symbol]))
      second = 1;
    else if (has(prof.l1, d.tau[d.nu[symbol]]))
      second = -1;
  }
  return {first, second};
}

enum class MoveKind { h1, h1_inverse, h2, h2_inverse, h3, h3_inverse, shift, shift_inverse, isomorphism };

// A move together with its site. Word and position fields locate the blocks
// the move touches, given in reading order where several are needed;
// insertion moves carry the symbols of the letters they create.
struct Move {
  MoveKind kind = MoveKind::h1;
  std::size_t word = 0, pos = 0;
  std::size_t word2 = 0, pos2 = 0;
  std::size_t word3 = 0, pos3 = 0;
  std::size_t symbol = 0, symbol2 = 0;
  std::vector<std::size_t> letter_map;  // isomorphism: new index of each letter
  std::vector<std::size_t> symbol_map;  // isomorphism: alphabet automorphism, empty keeps symbols

  static Move h1(std::size_t w, std::size_t p) {
    Move m;
    m.kind = MoveKind::h1;
    m.word = w;
    m.pos = p;
    return m;
  }
  static Move h1_inverse(std::size_t w, std::size_t p, std::size_t sym) {
    Move m;
    m.kind = MoveKind::h1_inverse;
    m.word = w;
    m.pos = p;
    m.symbol = sym;
    return m;
  }
  static Move h2(std::size_t w1, std::size_t p1, std::size_t w2, std::size_t p2) {
    Move m;
    m.kind = MoveKind::h2;
    m.word = w1;
    m.pos = p1;
    m.word2 = w2;
    m.pos2 = p2;
    return m;
  }
  static Move h2_inverse(std::size_t w1, std::size_t p1, std::size_t w2, std::size_t p2,
                         std::size_t sym_a, std::size_t sym_b) {
    Move m;
    m.kind = MoveKind::h2_inverse;
    m.word = w1;
    m.pos = p1;
    m.word2 = w2;
    m.pos2 = p2;
    m.symbol = sym_a;
    m.symbol2 = sym_b;
    return m;
  }
  static Move h3(std::size_t w1, std::size_t p1, std::size_t w2, std::size_t p2, std::size_t w3,
                 std::size_t p3) {
    Move m;
    m.kind = MoveKind::h3;
    m.word = w1;
    m.pos = p1;
    m.word2 = w2;
    m.pos2 = p2;
    m.word3 = w3;
    m.pos3 = p3;
    return m;
  }
  static Move h3_inverse(std::size_t w1, std::size_t p1, std::size_t w2, std::size_t p2,
                         std::size_t w3, std::size_t p3) {
    Move m = h3(w1, p1, w2, p2, w3, p3);
    m.kind = MoveKind::h3_inverse;
    return m;
  }
  static Move shift(std::size_t w) {
    Move m;
    m.kind = MoveKind::shift;
    m.word = w;
    return m;
  }
  static Move shift_inverse(std::size_t w) {
    Move m;
    m.kind = MoveKind::shift_inverse;
    m.word = w;
    return m;
  }
  static Move isomorphism(std::vector<std::size_t> letters, std::vector<std::size_t> symbols = {}) {
    Move m;
    m.kind = MoveKind::isomorphism;
    m.letter_map = std::move(letters);
    m.symbol_map = std::move(symbols);
    return m;
  }
};

namespace detail {

// drop the listed letters everywhere and compact the survivors
inline Nanophrase delete_letters(const Nanophrase& p, const std::set<std::size_t>& gone) {
  std::vector<std::size_t> remap(p.letter_count(), 0);
  std::vector<std::size_t> proj;
  for (std::size_t l = 0; l < p.letter_count(); ++l)
    if (!gone.count(l)) {
      remap[l] = proj.size();
      proj.push_back(p.proj(l));
    }
  std::vector<std::vector<std::size_t>> words;
  for (auto& w : p.words()) {
    words.push_back({});
    for (std::size_t l : w)
      if (!gone.count(l)) words.back().push_back(remap[l]);
  }
  return Nanophrase::from_words(std::move(words), std::move(proj));
}

// the two letters of the adjacent block starting at the given slot
inline std::pair<std::size_t, std::size_t> block_at(const Nanophrase& p, std::size_t w,
                                                    std::size_t pos) {
  if (w >= p.word_count() || pos + 1 >= p.words()[w].size())
    throw validation_error("move site out of range");
  return {p.words()[w][pos], p.words()[w][pos + 1]};
}

inline void check_anchor(const Nanophrase& p, std::size_t w, std::size_t pos) {
  if (w >= p.word_count() || pos > p.words()[w].size())
    throw validation_error("insertion site out of range");
}

}  // namespace detail

// One homotopy move applied at an explicit site. Pattern or side-condition
// failures raise validation_error; the result is always a valid phrase.
inline Nanophrase apply_move(const Nanophrase& p, const HomotopyData& d, const Move& m) {
  detail::check_over(p, d);
  switch (m.kind) {
    case MoveKind::h1: {
      auto [x, y] = detail::block_at(p, m.word, m.pos);
      if (x != y) throw validation_error("first move needs a doubled letter");
      return detail::delete_letters(p, {x});
    }
    case MoveKind::h1_inverse: {
      if (m.symbol >= d.size()) throw validation_error("symbol out of range");
      detail::check_anchor(p, m.word, m.pos);
      auto words = p.words();
      std::size_t fresh = p.letter_count();
      words[m.word].insert(words[m.word].begin() + m.pos, 2, fresh);
      std::vector<std::size_t> proj;
      for (std::size_t l = 0; l < p.letter_count(); ++l) proj.push_back(p.proj(l));
      proj.push_back(m.symbol);
      return Nanophrase::from_words(std::move(words), std::move(proj));
    }
    case MoveKind::h2: {
      if (std::make_pair(m.word, m.pos) >= std::make_pair(m.word2, m.pos2))
        throw validation_error("second move sites must come in reading order");
      auto [x, y] = detail::block_at(p, m.word, m.pos);
      auto [u, v] = detail::block_at(p, m.word2, m.pos2);
      if (u != y || v != x || x == y) throw validation_error("second move needs mirrored blocks");
      std::set<std::pair<std::size_t, std::size_t>> slots = {
          {m.word, m.pos}, {m.word, m.pos + 1}, {m.word2, m.pos2}, {m.word2, m.pos2 + 1}};
      if (slots.size() != 4) throw validation_error("second move blocks overlap");
      if (d.tau[p.proj(y)] != p.proj(x))
        throw validation_error("second move needs tau-paired symbols");
      return detail::delete_letters(p, {x, y});
    }
    case MoveKind::h2_inverse: {
      if (m.symbol >= d.size() || m.symbol2 >= d.size())
        throw validation_error("symbol out of range");
      if (d.tau[m.symbol2] != m.symbol)
        throw validation_error("second move needs tau-paired symbols");
      if (std::make_pair(m.word, m.pos) > std::make_pair(m.word2, m.pos2))
        throw validation_error("insertion anchors out of order");
      detail::check_anchor(p, m.word, m.pos);
      detail::check_anchor(p, m.word2, m.pos2);
      auto words = p.words();
      std::size_t a = p.letter_count(), b = a + 1;
      // later anchor first so the earlier one keeps its coordinates
      words[m.word2].insert(words[m.word2].begin() + m.pos2, {b, a});
      words[m.word].insert(words[m.word].begin() + m.pos, {a, b});
      std::vector<std::size_t> proj;
      for (std::size_t l = 0; l < p.letter_count(); ++l) proj.push_back(p.proj(l));
      proj.push_back(m.symbol);
      proj.push_back(m.symbol2);
      return Nanophrase::from_words(std::move(words), std::move(proj));
    }
    case MoveKind::h3:
    case MoveKind::h3_inverse: {
      auto s1 = std::make_pair(m.word, m.pos);
      auto s2 = std::make_pair(m.word2, m.pos2);
      auto s3 = std::make_pair(m.word3, m.pos3);
      if (!(s1 < s2 && s2 < s3))
        throw validation_error("third move sites must come in reading order");
      auto [a1, b1] = detail::block_at(p, m.word, m.pos);
      auto [a2, b2] = detail::block_at(p, m.word2, m.pos2);
      auto [a3, b3] = detail::block_at(p, m.word3, m.pos3);
      std::set<std::pair<std::size_t, std::size_t>> slots = {
          {m.word, m.pos},   {m.word, m.pos + 1},  {m.word2, m.pos2},
          {m.word2, m.pos2 + 1}, {m.word3, m.pos3}, {m.word3, m.pos3 + 1}};
      if (slots.size() != 6) throw validation_error("third move blocks overlap");
      std::array<std::size_t, 3> triple;
      if (m.kind == MoveKind::h3) {
        if (a1 != a2 || b1 != a3 || b2 != b3)
          throw validation_error("third move pattern mismatch");
        triple = {p.proj(a1), p.proj(b1), p.proj(b2)};
      } else {
        if (b1 != b2 || a1 != b3 || a2 != a3)
          throw validation_error("third move pattern mismatch");
        triple = {p.proj(b1), p.proj(a1), p.proj(a2)};
      }
      if (!d.s.count(triple)) throw validation_error("triple not admissible");
      auto words = p.words();
      std::swap(words[m.word][m.pos], words[m.word][m.pos + 1]);
      std::swap(words[m.word2][m.pos2], words[m.word2][m.pos2 + 1]);
      std::swap(words[m.word3][m.pos3], words[m.word3][m.pos3 + 1]);
      std::vector<std::size_t> proj;
      for (std::size_t l = 0; l < p.letter_count(); ++l) proj.push_back(p.proj(l));
      return Nanophrase::from_words(std::move(words), std::move(proj));
    }
    case MoveKind::shift:
    case MoveKind::shift_inverse: {
      if (m.word >= p.word_count() || p.words()[m.word].empty())
        throw validation_error("shift needs a nonempty word");
      auto words = p.words();
      auto& w = words[m.word];
      std::size_t moved;
      if (m.kind == MoveKind::shift) {
        moved = w.front();
        w.erase(w.begin());
        w.push_back(moved);
      } else {
        moved = w.back();
        w.pop_back();
        w.insert(w.begin(), moved);
      }
      std::vector<std::size_t> proj;
      for (std::size_t l = 0; l < p.letter_count(); ++l) proj.push_back(p.proj(l));
      // the moved letter changes its reading role only when the word holds
      // both of its occurrences; only then does nu rewrite it
      int inside = 0;
      for (std::size_t l : p.words()[m.word]) inside += l == moved;
      if (inside == 2) proj[moved] = d.nu[proj[moved]];
      return Nanophrase::from_words(std::move(words), std::move(proj));
    }
    case MoveKind::isomorphism: {
      const auto& lm = m.letter_map;
      if (lm.size() != p.letter_count()) throw validation_error("letter map size mismatch");
      std::vector<bool> hit(lm.size(), false);
      for (auto v : lm) {
        if (v >= lm.size() || hit[v]) throw validation_error("letter map is not a permutation");
        hit[v] = true;
      }
      std::vector<std::size_t> sm = m.symbol_map;
      if (sm.empty()) {
        sm.resize(d.size());
        for (std::size_t i = 0; i < sm.size(); ++i) sm[i] = i;
      } else {
        if (sm.size() != d.size()) throw validation_error("symbol map size mismatch");
        std::vector<bool> used(sm.size(), false);
        for (auto v : sm) {
          if (v >= sm.size() || used[v]) throw validation_error("symbol map is not a permutation");
          used[v] = true;
        }
        for (std::size_t i = 0; i < d.size(); ++i)
          if (sm[d.tau[i]] != d.tau[sm[i]] || sm[d.nu[i]] != d.nu[sm[i]])
            throw validation_error("symbol map must commute with the involutions");
        for (auto& t : d.s)
          if (!d.s.count({sm[t[0]], sm[t[1]], sm[t[2]]}))
            throw validation_error("symbol map must preserve the triple set");
      }
      std::vector<std::vector<std::size_t>> words;
      for (auto& w : p.words()) {
        words.push_back({});
        for (std::size_t l : w) words.back().push_back(lm[l]);
      }
      std::vector<std::size_t> proj(p.letter_count());
      for (std::size_t l = 0; l < p.letter_count(); ++l) proj[lm[l]] = sm[p.proj(l)];
      return Nanophrase::from_words(std::move(words), std::move(proj));
    }
  }
  throw internal_error("unhandled move kind");
}

// Every applicable move, with insertions bounded by the letter cap.
// Isomorphisms are not listed; searches quotient them away through canonical
// keys.
inline std::vector<Move> enumerate_moves(const Nanophrase& p, const HomotopyData& d,
                                         std::size_t max_letters) {
  detail::check_over(p, d);
  std::vector<Move> out;
  const auto& ws = p.words();
  std::vector<std::pair<std::size_t, std::size_t>> spots;
  for (std::size_t w = 0; w < ws.size(); ++w)
    for (std::size_t q = 0; q + 1 < ws[w].size(); ++q) spots.push_back({w, q});

  for (auto& [w, q] : spots)
    if (ws[w][q] == ws[w][q + 1]) out.push_back(Move::h1(w, q));

  auto overlap = [&](std::size_t i, std::size_t j) {
    return spots[i].first == spots[j].first && spots[i].second + 1 == spots[j].second;
  };
  for (std::size_t i = 0; i < spots.size(); ++i)
    for (std::size_t j = i + 1; j < spots.size(); ++j) {
      if (overlap(i, j)) continue;
      auto [w1, q1] = spots[i];
      auto [w2, q2] = spots[j];
      std::size_t x = ws[w1][q1], y = ws[w1][q1 + 1];
      if (x != y && ws[w2][q2] == y && ws[w2][q2 + 1] == x && d.tau[p.proj(y)] == p.proj(x))
        out.push_back(Move::h2(w1, q1, w2, q2));
    }

  for (std::size_t i = 0; i < spots.size(); ++i)
    for (std::size_t j = i + 1; j < spots.size(); ++j) {
      if (overlap(i, j)) continue;
      for (std::size_t k = j + 1; k < spots.size(); ++k) {
        if (overlap(j, k) || overlap(i, k)) continue;
        auto [w1, q1] = spots[i];
        auto [w2, q2] = spots[j];
        auto [w3, q3] = spots[k];
        std::size_t a1 = ws[w1][q1], b1 = ws[w1][q1 + 1];
        std::size_t a2 = ws[w2][q2], b2 = ws[w2][q2 + 1];
        std::size_t a3 = ws[w3][q3], b3 = ws[w3][q3 + 1];
        if (a1 == a2 && b1 == a3 && b2 == b3 &&
            d.s.count({p.proj(a1), p.proj(b1), p.proj(b2)}))
          out.push_back(Move::h3(w1, q1, w2, q2, w3, q3));
        if (b1 == b2 && a1 == b3 && a2 == a3 &&
            d.s.count({p.proj(b1), p.proj(a1), p.proj(a2)}))
          out.push_back(Move::h3_inverse(w1, q1, w2, q2, w3, q3));
      }
    }

  for (std::size_t w = 0; w < ws.size(); ++w)
    if (!ws[w].empty()) {
      out.push_back(Move::shift(w));
      out.push_back(Move::shift_inverse(w));
    }

  if (p.letter_count() + 1 <= max_letters)
    for (std::size_t w = 0; w < ws.size(); ++w)
      for (std::size_t q = 0; q <= ws[w].size(); ++q)
        for (std::size_t s = 0; s < d.size(); ++s) out.push_back(Move::h1_inverse(w, q, s));

  if (p.letter_count() + 2 <= max_letters) {
    std::vector<std::pair<std::size_t, std::size_t>> anchors;
    for (std::size_t w = 0; w < ws.size(); ++w)
      for (std::size_t q = 0; q <= ws[w].size(); ++q) anchors.push_back({w, q});
    for (std::size_t i = 0; i < anchors.size(); ++i)
      for (std::size_t j = i; j < anchors.size(); ++j)
        for (std::size_t sb = 0; sb < d.size(); ++sb)
          out.push_back(Move::h2_inverse(anchors[i].first, anchors[i].second, anchors[j].first,
                                         anchors[j].second, d.tau[sb], sb));
  }
  return out;
}

enum class Homotopy { yes, no_within_bound, budget_exceeded };

inline const char* to_string(Homotopy h) {
  switch (h) {
    case Homotopy::yes:
      return "yes";
    case Homotopy::no_within_bound:
      return "no-within-bound";
    default:
      return "budget-exceeded";
  }
}

// Bounded bidirectional search over the move graph. "yes" is a proof; the
// negative answer only says no chain was found within the depth, the letter
// cap, and the node budget. Moves never change the number of words, so
// phrases with different word counts are negative at once. The letter cap is
// the larger input length plus extra_letters.
inline Homotopy homotopic(const Nanophrase& a, const Nanophrase& b, const HomotopyData& d,
                          std::size_t depth, std::size_t extra_letters,
                          std::size_t node_budget = 200000) {
  detail::check_over(a, d);
  detail::check_over(b, d);
  if (a.word_count() != b.word_count()) return Homotopy::no_within_bound;
  if (a.canonical_key() == b.canonical_key()) return Homotopy::yes;
  std::size_t cap = std::max(a.letter_count(), b.letter_count()) + extra_letters;
  std::map<std::string, Nanophrase> visited[2];
  std::vector<Nanophrase> frontier[2];
  visited[0].emplace(a.canonical_key(), a);
  visited[1].emplace(b.canonical_key(), b);
  frontier[0].push_back(a);
  frontier[1].push_back(b);
  std::size_t rounds = 0;
  while (rounds < depth) {
    int side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
    if (frontier[side].empty()) side = 1 - side;
    if (frontier[side].empty()) return Homotopy::no_within_bound;
    std::vector<Nanophrase> next;
    for (auto& q : frontier[side])
      for (auto& mv : enumerate_moves(q, d, cap)) {
        Nanophrase r = apply_move(q, d, mv);
        std::string key = r.canonical_key();
        if (visited[side].count(key)) continue;
        if (visited[1 - side].count(key)) return Homotopy::yes;
        if (visited[0].size() + visited[1].size() >= node_budget)
          return Homotopy::budget_exceeded;
        visited[side].emplace(key, r);
        next.push_back(std::move(r));
      }
    frontier[side] = std::move(next);
    ++rounds;
  }
  return Homotopy::no_within_bound;
}

namespace detail {

// rewrite letters through a symbol table, dropping those mapped negative
inline Nanophrase map_letters(const Nanophrase& p, const std::vector<int>& symbol_to) {
  std::vector<std::size_t> remap(p.letter_count(), 0);
  std::vector<std::size_t> proj;
  std::vector<bool> keep(p.letter_count(), false);
  for (std::size_t l = 0; l < p.letter_count(); ++l) {
    int t = symbol_to[p.proj(l)];
    keep[l] = t >= 0;
    if (keep[l]) {
      remap[l] = proj.size();
      proj.push_back(static_cast<std::size_t>(t));
    }
  }
  std::vector<std::vector<std::size_t>> words;
  for (auto& w : p.words()) {
    words.push_back({});
    for (std::size_t l : w)
      if (keep[l]) words.back().push_back(remap[l]);
  }
  return Nanophrase::from_words(std::move(words), std::move(proj));
}

inline void check_half(const HomotopyData& d, const std::set<std::size_t>& l,
                       const std::vector<std::size_t>& inv) {
  if (l.empty()) throw validation_error("representative set must be nonempty");
  for (auto s : l) {
    if (s >= d.size()) throw validation_error("representative symbol out of range");
    if (l.count(inv[s])) throw validation_error("representative set meets its involution image");
  }
}

inline std::vector<int> half_signs(const HomotopyData& d, const std::set<std::size_t>& l,
                                   const std::vector<std::size_t>& inv, int plus, int minus) {
  std::vector<int> to(d.size(), -1);
  for (std::size_t s = 0; s < d.size(); ++s) {
    if (l.count(s))
      to[s] = plus;
    else if (l.count(inv[s]))
      to[s] = minus;
  }
  return to;
}

}  // namespace detail

// Delete the letters with a degenerate sign couple and rewrite the rest over
// the virtual alphabet: (1,1) to a+, (1,-1) to b+, (-1,1) to b-, (-1,-1) to
// a-.
inline Nanophrase functor_V(const Nanophrase& p, const HomotopyData& d, const SignProfile& prof) {
  detail::check_over(p, d);
  std::vector<int> to(d.size(), -1);
  for (std::size_t s = 0; s < d.size(); ++s) {
    auto [f, g] = sign_couple(d, prof, s);
    if (f == 0 || g == 0) continue;
    if (f == 1)
      to[s] = g == 1 ? 0 : 2;
    else
      to[s] = g == 1 ? 3 : 1;
  }
  return detail::map_letters(p, to);
}

// Pseudolink functor: needs trivial nu on the source. Letters are signed
// against (L, tau L); zeros are deleted, the signs land on the alphabet
// {1, -1}.
inline Nanophrase functor_V1(const Nanophrase& p, const HomotopyData& d,
                             const std::set<std::size_t>& l) {
  detail::check_over(p, d);
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d.nu[i] != i) throw validation_error("functor needs trivial nu on the source");
  detail::check_half(d, l, d.tau);
  return detail::map_letters(p, detail::half_signs(d, l, d.tau, 0, 1));
}

// The same construction with the involution roles exchanged: needs trivial
// tau, signs against (L, nu L), target alphabet {c, d}.
inline Nanophrase functor_V2(const Nanophrase& p, const HomotopyData& d,
                             const std::set<std::size_t>& l) {
  detail::check_over(p, d);
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d.tau[i] != i) throw validation_error("functor needs trivial tau on the source");
  detail::check_half(d, l, d.nu);
  return detail::map_letters(p, detail::half_signs(d, l, d.nu, 0, 1));
}

// Free variant with no restriction on the source involutions: signs against
// (L, nu L), target alphabet {a, b}.
inline Nanophrase functor_U(const Nanophrase& p, const HomotopyData& d,
                            const std::set<std::size_t>& l) {
  detail::check_over(p, d);
  detail::check_half(d, l, d.nu);
  return detail::map_letters(p, detail::half_signs(d, l, d.nu, 0, 1));
}

// Gauss phrase of a phrase over the virtual alphabet: the letter family says
// which pass comes first in reading order (family a reads over first), the
// subscript is the crossing sign.
inline GaussPhrase to_gauss(const Nanophrase& p) {
  std::vector<GaussPhrase::Letter> letters(p.letter_count());
  for (std::size_t l = 0; l < p.letter_count(); ++l) {
    std::size_t s = p.proj(l);
    if (s >= 4) throw validation_error("phrase is not over the virtual alphabet");
    letters[l] = {s == 0 || s == 2 ? 1 : -1, s <= 1};
  }
  return GaussPhrase::from_words(p.words(), std::move(letters));
}

// Projection to pseudolinks: both families keep only their subscript, + to
// the symbol 1 and - to the symbol -1.
inline Nanophrase project_p(const Nanophrase& p) {
  std::vector<std::size_t> proj;
  for (std::size_t l = 0; l < p.letter_count(); ++l) {
    std::size_t s = p.proj(l);
    if (s >= 4) throw validation_error("phrase is not over the virtual alphabet");
    proj.push_back(s == 0 || s == 2 ? 0 : 1);
  }
  return Nanophrase::from_words(p.words(), std::move(proj));
}

// Link invariants of a phrase through the virtual dictionary. The colored
// polynomial is defined for every phrase; the homology needs a planar
// representative and stays empty otherwise.
struct NanophraseInvariants {
  Laurent jones;
  bool realizable = false;
  HomologyTable khovanov;  // filled only when realizable
};

inline NanophraseInvariants nanophrase_invariants(const Nanophrase& p, const HomotopyData& d,
                                                  const SignProfile& prof,
                                                  const std::vector<int>& n,
                                                  const Budgets& budgets = default_budgets()) {
  Nanophrase img = functor_V(p, d, prof);
  if (n.size() != img.word_count()) throw validation_error("color count must match word count");
  GaussPhrase g = to_gauss(img);
  PDCode code = detail::gauss_pd_any(g);
  NanophraseInvariants out;
  out.jones = colored_jones(code, n, FramingPolicy::normalize, budgets);
  out.realizable = realizable(g);
  if (out.realizable) out.khovanov = khovanov_homology(code, budgets);
  return out;
}

// Text format for homotopy data and phrases. Lines in any order, '#' starts
// a comment line:
//   alphabet: a b
//   tau: a<->b
//   nu:
//   L: a
//   L1: a
//   letters: A=a B=b
//   ABBA
// Involution lines list the swapped pairs, fixed points omitted; a bare line
// keeps the identity; the UTF-8 arrow is accepted in place of "<->". The
// triple set is always rebuilt from the involutions. The first line that is
// no header is the phrase body: words joined by '|', an empty word written
// '-', the zero-word phrase written '()'. Letter names are single characters
// or bracketed tokens like [10].
struct NanoFile {
  bool has_alphabet = false;
  std::vector<std::string> alphabet;
  std::vector<std::pair<std::string, std::string>> tau_pairs, nu_pairs;
  bool has_phrase = false;
  bool zero_words = false;
  std::vector<std::pair<std::string, std::string>> letter_decls;
  std::vector<std::vector<std::string>> body;
  bool has_l = false, has_l1 = false;
  std::vector<std::string> l_names, l1_names;

  HomotopyData data() const {
    if (!has_alphabet) throw validation_error("file declares no alphabet");
    auto build = [&](const std::vector<std::pair<std::string, std::string>>& pairs) {
      std::vector<std::size_t> inv(alphabet.size());
      for (std::size_t i = 0; i < inv.size(); ++i) inv[i] = i;
      std::vector<bool> taken(alphabet.size(), false);
      auto find = [&](const std::string& name) {
        for (std::size_t i = 0; i < alphabet.size(); ++i)
          if (alphabet[i] == name) return i;
        throw validation_error("unknown symbol: " + name);
      };
      for (auto& [x, y] : pairs) {
        std::size_t ix = find(x), iy = find(y);
        if (taken[ix] || taken[iy]) throw validation_error("symbol appears in two pairs");
        taken[ix] = taken[iy] = true;
        inv[ix] = iy;
        inv[iy] = ix;
      }
      return inv;
    };
    return make_s_sharp(alphabet, build(tau_pairs), build(nu_pairs));
  }

  Nanophrase phrase(const HomotopyData& d) const {
    if (!has_phrase) throw validation_error("file has no phrase body");
    std::map<std::string, std::size_t> idx;
    std::vector<std::size_t> proj;
    for (auto& [name, sym] : letter_decls) {
      if (idx.count(name)) throw validation_error("letter declared twice: " + name);
      idx[name] = proj.size();
      proj.push_back(d.index_of(sym));
    }
    std::vector<std::vector<std::size_t>> words;
    for (auto& w : body) {
      words.push_back({});
      for (auto& name : w) {
        auto it = idx.find(name);
        if (it == idx.end()) throw validation_error("letter without declaration: " + name);
        words.back().push_back(it->second);
      }
    }
    return Nanophrase::from_words(std::move(words), std::move(proj));
  }

  std::set<std::size_t> l_set(const HomotopyData& d) const {
    if (!has_l) throw validation_error("file declares no L line");
    std::set<std::size_t> out;
    for (auto& n : l_names) out.insert(d.index_of(n));
    return out;
  }

  std::set<std::size_t> l1_set(const HomotopyData& d) const {
    if (!has_l1) throw validation_error("file declares no L1 line");
    std::set<std::size_t> out;
    for (auto& n : l1_names) out.insert(d.index_of(n));
    return out;
  }
};

inline NanoFile parse_nano_file(const std::string& text) {
  NanoFile f;
  std::istringstream in(text);
  std::string line;
  auto split = [](const std::string& s) {
    std::istringstream ss(s);
    std::vector<std::string> out;
    std::string t;
    while (ss >> t) out.push_back(t);
    return out;
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    std::string rest = line.substr(first);
    std::size_t last = rest.find_last_not_of(" \t");
    rest = rest.substr(0, last + 1);
    auto starts = [&](const char* key) { return rest.rfind(key, 0) == 0; };
    if (starts("alphabet:")) {
      if (f.has_alphabet) throw validation_error("alphabet declared twice");
      f.has_alphabet = true;
      f.alphabet = split(rest.substr(9));
      continue;
    }
    if (starts("tau:") || starts("nu:")) {
      bool is_tau = starts("tau:");
      auto& pairs = is_tau ? f.tau_pairs : f.nu_pairs;
      for (auto& tok : split(rest.substr(is_tau ? 4 : 3))) {
        std::size_t cut = tok.find("<->");
        if (cut == std::string::npos) cut = tok.find("\xe2\x86\x94");
        if (cut == std::string::npos) throw validation_error("bad involution pair: " + tok);
        pairs.push_back({tok.substr(0, cut), tok.substr(cut + 3)});
      }
      continue;
    }
    if (starts("L1:")) {
      f.has_l1 = true;
      f.l1_names = split(rest.substr(3));
      continue;
    }
    if (starts("L:")) {
      f.has_l = true;
      f.l_names = split(rest.substr(2));
      continue;
    }
    if (starts("letters:")) {
      for (auto& tok : split(rest.substr(8))) {
        std::size_t eq = tok.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == tok.size())
          throw validation_error("bad letter declaration: " + tok);
        f.letter_decls.push_back({tok.substr(0, eq), tok.substr(eq + 1)});
      }
      continue;
    }
    if (f.has_phrase) throw validation_error("second phrase body line");
    f.has_phrase = true;
    if (rest == "()") {
      f.zero_words = true;
      continue;
    }
    f.body.push_back({});
    for (std::size_t p = 0; p < rest.size();) {
      char ch = rest[p];
      if (ch == '|') {
        f.body.push_back({});
        ++p;
        continue;
      }
      if (ch == '-') {
        if (!f.body.back().empty() || (p + 1 < rest.size() && rest[p + 1] != '|'))
          throw validation_error("stray dash in phrase body");
        ++p;
        continue;
      }
      if (ch == ' ' || ch == '\t' || ch == ']')
        throw validation_error("stray character in phrase body");
      std::string name;
      if (ch == '[') {
        auto close = rest.find(']', p);
        if (close == std::string::npos) throw validation_error("unterminated letter token");
        name = rest.substr(p, close - p + 1);
        p = close + 1;
      } else {
        name = std::string(1, ch);
        ++p;
      }
      f.body.back().push_back(name);
    }
  }
  return f;
}

inline std::string serialize_homotopy_data(const HomotopyData& d) {
  std::ostringstream out;
  out << "alphabet:";
  for (auto& s : d.symbols) out << ' ' << s;
  out << '\n';
  auto line = [&](const char* key, const std::vector<std::size_t>& inv) {
    out << key << ':';
    for (std::size_t i = 0; i < inv.size(); ++i)
      if (i < inv[i]) out << ' ' << d.symbols[i] << "<->" << d.symbols[inv[i]];
    out << '\n';
  };
  line("tau", d.tau);
  line("nu", d.nu);
  return out.str();
}

inline std::string serialize_nanophrase(const Nanophrase& p, const HomotopyData& d) {
  detail::check_over(p, d);
  std::ostringstream out;
  out << "letters:";
  for (std::size_t l = 0; l < p.letter_count(); ++l)
    out << ' ' << Nanophrase::letter_name(l) << '=' << d.symbols[p.proj(l)];
  out << '\n';
  if (p.word_count() == 0) {
    out << "()\n";
    return out.str();
  }
  for (std::size_t w = 0; w < p.word_count(); ++w) {
    if (w) out << '|';
    if (p.words()[w].empty()) out << '-';
    for (std::size_t l : p.words()[w]) out << Nanophrase::letter_name(l);
  }
  out << '\n';
  return out.str();
}

}  // namespace linkhom
