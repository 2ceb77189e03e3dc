// Brute-force reference implementations used to cross-check the library.
// Everything here works on explicit word sets and walks transitions directly,
// sharing no algorithmic machinery with the code under test.
#pragma once

#include <deque>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "fstsc/fst.hpp"

namespace oracle {

using fstsc::Fst;
using fstsc::kEpsilon;
using fstsc::Symbol;
using fstsc::Word;

using Relation = std::set<std::pair<Word, Word>>;
using PairWord = std::vector<std::pair<Symbol, Symbol>>;

// All (input, output) pairs of accepting paths with both sides within the
// given bounds, found by exhaustive search over configurations.
inline Relation relation_upto(const Fst& fst, int in_bound, int out_bound) {
  Relation result;
  using Config = std::tuple<fstsc::State, Word, Word>;
  std::set<Config> seen;
  std::deque<Config> queue;
  queue.emplace_back(fst.initial, Word{}, Word{});
  seen.insert(queue.front());
  while (!queue.empty()) {
    auto [state, in, out] = queue.front();
    queue.pop_front();
    if (fst.is_final(state)) result.emplace(in, out);
    for (const auto& t : fst.transitions) {
      if (t.src != state) continue;
      Word next_in = in;
      Word next_out = out;
      if (t.ilabel != kEpsilon) {
        if (static_cast<int>(in.size()) >= in_bound) continue;
        next_in.push_back(t.ilabel);
      }
      if (t.olabel != kEpsilon) {
        if (static_cast<int>(out.size()) >= out_bound) continue;
        next_out.push_back(t.olabel);
      }
      Config config{t.dst, std::move(next_in), std::move(next_out)};
      if (seen.insert(config).second) queue.push_back(config);
    }
  }
  return result;
}

// Accepting label-pair sequences with (eps, eps) steps skipped, bounded by
// the number of non-silent steps.
inline std::set<PairWord> pair_words_upto(const Fst& fst, int bound) {
  std::set<PairWord> result;
  using Config = std::pair<fstsc::State, PairWord>;
  std::set<Config> seen;
  std::deque<Config> queue;
  queue.emplace_back(fst.initial, PairWord{});
  seen.insert(queue.front());
  while (!queue.empty()) {
    auto [state, seq] = queue.front();
    queue.pop_front();
    if (fst.is_final(state)) result.insert(seq);
    for (const auto& t : fst.transitions) {
      if (t.src != state) continue;
      PairWord next = seq;
      if (t.ilabel != kEpsilon || t.olabel != kEpsilon) {
        if (static_cast<int>(seq.size()) >= bound) continue;
        next.emplace_back(t.ilabel, t.olabel);
      }
      Config config{t.dst, std::move(next)};
      if (seen.insert(config).second) queue.push_back(config);
    }
  }
  return result;
}

inline Relation compose_relations(const Relation& a, const Relation& b) {
  Relation result;
  for (const auto& [in, mid_a] : a) {
    for (const auto& [mid_b, out] : b) {
      if (mid_a == mid_b) result.emplace(in, out);
    }
  }
  return result;
}

inline Relation invert_relation(const Relation& r) {
  Relation result;
  for (const auto& [in, out] : r) result.emplace(out, in);
  return result;
}

inline Relation union_relations(const Relation& a, const Relation& b) {
  Relation result = a;
  result.insert(b.begin(), b.end());
  return result;
}

inline std::set<Word> inputs_of(const Relation& r) {
  std::set<Word> result;
  for (const auto& [in, out] : r) result.insert(in);
  return result;
}

inline std::set<Word> outputs_of(const Relation& r) {
  std::set<Word> result;
  for (const auto& [in, out] : r) result.insert(out);
  return result;
}

inline std::set<Word> outputs_for(const Relation& r, const Word& input) {
  std::set<Word> result;
  for (const auto& [in, out] : r) {
    if (in == input) result.insert(out);
  }
  return result;
}

inline std::set<Word> prefix_close(const std::set<Word>& words) {
  std::set<Word> result;
  for (const Word& w : words) {
    for (size_t len = 0; len <= w.size(); ++len) {
      result.emplace(w.begin(), w.begin() + len);
    }
  }
  return result;
}

inline Word longest_prefix_in(const std::set<Word>& language, const Word& w) {
  for (size_t len = w.size() + 1; len-- > 0;) {
    Word prefix(w.begin(), w.begin() + len);
    if (language.count(prefix)) return prefix;
  }
  return {};
}

// Classical controllability of a prefix-closed K within L: no word of K may
// be extended by an uncontrollable event into L \ K. Checked over all words
// up to the length bound.
inline bool classical_controllable(const std::set<Word>& desired, const std::set<Word>& plant,
                                   const std::set<Symbol>& uncontrollable, int bound) {
  for (const Word& w : desired) {
    if (static_cast<int>(w.size()) + 1 > bound) continue;
    for (Symbol u : uncontrollable) {
      Word extended = w;
      extended.push_back(u);
      if (plant.count(extended) && !desired.count(extended)) return false;
    }
  }
  return true;
}

}  // namespace oracle
