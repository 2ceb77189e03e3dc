#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "fstsc/algebra.hpp"
#include "fstsc/fst.hpp"

namespace fstsc {

namespace detail {

inline void require_in_alphabet(const SymbolTable& alphabet, const std::set<Symbol>& symbols,
                                const char* what) {
  for (Symbol s : symbols)
    if (s == kEpsilon || !alphabet.contains(s))
      throw FstError(std::string(what) + ": symbol not in alphabet");
}

inline Fst single_state_attack(const SymbolTable& alphabet) {
  Fst fst;
  fst.input_alphabet = alphabet;
  fst.output_alphabet = alphabet;
  fst.add_state(true);
  return fst;
}

}  // namespace detail

// Erases symbols outside `keep`: i|i when kept, i|eps otherwise.
inline Fst projection_attack(const SymbolTable& alphabet, const std::set<Symbol>& keep) {
  detail::require_in_alphabet(alphabet, keep, "projection_attack");
  Fst fst = detail::single_state_attack(alphabet);
  for (Symbol s : alphabet.symbols())
    fst.add_transition(0, s, keep.contains(s) ? s : kEpsilon, 0);
  return fst;
}

// May drop any symbol outside `protected_symbols`: i|i always, plus i|eps for
// unprotected symbols.
inline Fst deletion_attack(const SymbolTable& alphabet, const std::set<Symbol>& protected_symbols) {
  detail::require_in_alphabet(alphabet, protected_symbols, "deletion_attack");
  Fst fst = detail::single_state_attack(alphabet);
  for (Symbol s : alphabet.symbols()) {
    fst.add_transition(0, s, s, 0);
    if (!protected_symbols.contains(s)) fst.add_transition(0, s, kEpsilon, 0);
  }
  return fst;
}

// May insert symbols from `injectable` anywhere: i|i always, plus eps|j.
inline Fst injection_attack(const SymbolTable& alphabet, const std::set<Symbol>& injectable) {
  detail::require_in_alphabet(alphabet, injectable, "injection_attack");
  Fst fst = detail::single_state_attack(alphabet);
  for (Symbol s : alphabet.symbols()) fst.add_transition(0, s, s, 0);
  for (Symbol s : injectable)
    if (alphabet.contains(s)) fst.add_transition(0, kEpsilon, s, 0);
  return fst;
}

// Replacing-removing rule: every input symbol maps to a nonempty set of
// alternatives, each a symbol or epsilon (removal).
struct ReplacementRule {
  std::map<Symbol, std::set<Symbol>> mapping;
};

inline Fst replacement_removal_attack(const SymbolTable& alphabet, const ReplacementRule& rule) {
  for (const auto& [sym, choices] : rule.mapping) {
    if (sym == kEpsilon || !alphabet.contains(sym))
      throw FstError("replacement_removal_attack: rule domain symbol not in alphabet");
    if (choices.empty())
      throw FstError("replacement_removal_attack: empty choice set for " + alphabet.name(sym));
    for (Symbol c : choices)
      if (c != kEpsilon && !alphabet.contains(c))
        throw FstError("replacement_removal_attack: rule image symbol not in alphabet");
  }
  for (Symbol s : alphabet.symbols())
    if (!rule.mapping.contains(s))
      throw FstError("replacement_removal_attack: rule does not cover " + alphabet.name(s));

  Fst fst = detail::single_state_attack(alphabet);
  for (Symbol s : alphabet.symbols())
    for (Symbol choice : rule.mapping.at(s)) fst.add_transition(0, s, choice, 0);
  return fst;
}

// Nondeterministically inserts or removes symbols in `vulnerable`; all other
// symbols pass through untouched.
inline Fst injection_removal_attack(const SymbolTable& alphabet,
                                    const std::set<Symbol>& vulnerable) {
  detail::require_in_alphabet(alphabet, vulnerable, "injection_removal_attack");
  Fst fst = detail::single_state_attack(alphabet);
  for (Symbol s : alphabet.symbols()) {
    if (vulnerable.contains(s)) {
      fst.add_transition(0, s, kEpsilon, 0);
      fst.add_transition(0, kEpsilon, s, 0);
    } else {
      fst.add_transition(0, s, s, 0);
    }
  }
  return fst;
}

namespace detail {

// The k-branch of the replay attack: copy the first k symbols verbatim, then
// replace every further input symbol by the next recorded symbol, cyclically.
inline Fst replay_branch(const SymbolTable& alphabet, int k) {
  Fst fst;
  fst.input_alphabet = alphabet;
  fst.output_alphabet = alphabet;

  std::map<Word, State> record_state;
  std::map<std::pair<Word, int>, State> replay_state;

  // Record tree over words shorter than k, breadth-first in lexicographic order.
  std::vector<Word> level{{}};
  record_state[{}] = fst.add_state(true);
  for (int depth = 0; depth < k; ++depth) {
    std::vector<Word> next_level;
    for (const Word& u : level)
      for (Symbol s : alphabet.symbols()) {
        Word extended = u;
        extended.push_back(s);
        if (depth + 1 < k) {
          record_state[extended] = fst.add_state(true);
          next_level.push_back(extended);
        } else {
          for (int pos = 0; pos < k; ++pos)
            replay_state[{extended, pos}] = fst.add_state(true);
        }
      }
    level = std::move(next_level);
  }

  for (const auto& [u, src] : record_state)
    for (Symbol s : alphabet.symbols()) {
      Word extended = u;
      extended.push_back(s);
      State dst = static_cast<int>(extended.size()) < k ? record_state.at(extended)
                                                        : replay_state.at({extended, 0});
      fst.add_transition(src, s, s, dst);
    }

  for (const auto& [key, src] : replay_state) {
    const auto& [w, pos] = key;
    State dst = replay_state.at({w, (pos + 1) % k});
    for (Symbol s : alphabet.symbols())
      fst.add_transition(src, s, w[static_cast<size_t>(pos)], dst);
  }
  return fst;
}

}  // namespace detail

// Records a prefix of up to `memory` symbols and cyclically replays it in
// place of the rest of the word; the branches for each record length are
// joined by parallel composition.
inline Fst replay_attack(const SymbolTable& alphabet, int memory) {
  if (memory < 1) throw FstError("replay_attack: memory must be at least 1");
  Fst result = detail::replay_branch(alphabet, 1);
  for (int k = 2; k <= memory; ++k) result = parallel(result, detail::replay_branch(alphabet, k));
  return result;
}

// Gates an attack behind a counter automaton over {D, E}: each counter step
// corresponds to one attack transition, rewritten on E-steps and passed
// through unchanged (olabel := ilabel) on D-steps.
struct FrequencyCounter {
  Fst automaton;
  Symbol disabled = kEpsilon;  // "D"
  Symbol enabled = kEpsilon;   // "E"
};

inline void validate_counter(const FrequencyCounter& counter) {
  counter.automaton.check();
  if (counter.disabled == kEpsilon || counter.enabled == kEpsilon ||
      counter.disabled == counter.enabled)
    throw FstError("frequency counter needs distinct non-epsilon D and E symbols");
  for (const auto& t : counter.automaton.transitions) {
    if (t.ilabel != t.olabel) throw FstError("frequency counter must be identity-labeled");
    if (t.ilabel != counter.disabled && t.ilabel != counter.enabled)
      throw FstError("frequency counter carries a label outside {D, E}");
  }
  for (State s = 0; s < counter.automaton.num_states; ++s)
    if (!counter.automaton.is_final(s))
      throw FstError("frequency counter states must all be final");
}

// Builds a counter from an automaton whose alphabet names the symbols "D" and "E".
inline FrequencyCounter make_frequency_counter(Fst automaton) {
  FrequencyCounter counter;
  auto d = automaton.input_alphabet.find("D");
  auto e = automaton.input_alphabet.find("E");
  if (!d || !e) throw FstError("frequency counter alphabet must name symbols D and E");
  counter.automaton = std::move(automaton);
  counter.disabled = *d;
  counter.enabled = *e;
  validate_counter(counter);
  return counter;
}

inline Fst frequency_constrain(const Fst& attack, const FrequencyCounter& counter) {
  attack.check();
  validate_counter(counter);

  const Fst& ctr = counter.automaton;
  Fst out;
  out.input_alphabet = attack.input_alphabet;
  out.output_alphabet = attack.output_alphabet;

  // Product state (c, s) = counter state c, attack state s.
  auto pair_state = [&](State c, State s) { return c * attack.num_states + s; };
  for (State c = 0; c < ctr.num_states; ++c)
    for (State s = 0; s < attack.num_states; ++s)
      out.add_state(ctr.is_final(c) && attack.is_final(s));
  out.initial = pair_state(ctr.initial, attack.initial);

  for (const auto& ct : ctr.transitions)
    for (const auto& at : attack.transitions) {
      Symbol olabel = ct.ilabel == counter.enabled ? at.olabel : at.ilabel;
      out.add_transition(pair_state(ct.src, at.src), at.ilabel, olabel,
                         pair_state(ct.dst, at.dst));
    }
  return out;
}

}  // namespace fstsc
