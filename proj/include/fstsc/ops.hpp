#pragma once

#include <deque>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "fstsc/fst.hpp"

namespace fstsc {

namespace detail {

// Epsilon closure over eps|eps transitions, returned as a sorted state set.
inline std::vector<State> epsilon_closure(const Fst& fst,
                                          const std::vector<std::vector<int>>& index,
                                          std::vector<State> seed) {
  std::vector<bool> in_set(static_cast<size_t>(fst.num_states), false);
  std::deque<State> queue;
  for (State s : seed) {
    if (!in_set[static_cast<size_t>(s)]) {
      in_set[static_cast<size_t>(s)] = true;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    for (int ti : index[static_cast<size_t>(s)]) {
      const auto& t = fst.transitions[static_cast<size_t>(ti)];
      if (t.ilabel == kEpsilon && t.olabel == kEpsilon && !in_set[static_cast<size_t>(t.dst)]) {
        in_set[static_cast<size_t>(t.dst)] = true;
        queue.push_back(t.dst);
      }
    }
  }
  std::vector<State> closure;
  for (State s = 0; s < fst.num_states; ++s)
    if (in_set[static_cast<size_t>(s)]) closure.push_back(s);
  return closure;
}

inline void require_automaton(const Fst& fst, const char* op) {
  if (!is_identity_labeled(fst))
    throw FstError(std::string(op) + " requires an identity-labeled machine");
}

}  // namespace detail

// Empty-relation machine: one non-final state, given alphabets.
inline Fst empty_fst(const SymbolTable& input_alphabet, const SymbolTable& output_alphabet) {
  Fst fst;
  fst.input_alphabet = input_alphabet;
  fst.output_alphabet = output_alphabet;
  fst.add_state(false);
  return fst;
}

// Removes states that are unreachable from the initial state or cannot reach a
// final state. The relation is unchanged; a machine with an empty relation
// collapses to a single non-final initial state.
inline Fst trim(const Fst& fst) {
  fst.check();
  auto index = outgoing_index(fst);

  std::vector<bool> reachable(static_cast<size_t>(fst.num_states), false);
  std::deque<State> queue{fst.initial};
  reachable[static_cast<size_t>(fst.initial)] = true;
  while (!queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    for (int ti : index[static_cast<size_t>(s)]) {
      State dst = fst.transitions[static_cast<size_t>(ti)].dst;
      if (!reachable[static_cast<size_t>(dst)]) {
        reachable[static_cast<size_t>(dst)] = true;
        queue.push_back(dst);
      }
    }
  }

  std::vector<std::vector<State>> incoming(static_cast<size_t>(fst.num_states));
  for (const auto& t : fst.transitions) incoming[static_cast<size_t>(t.dst)].push_back(t.src);
  std::vector<bool> coaccessible(static_cast<size_t>(fst.num_states), false);
  for (State s = 0; s < fst.num_states; ++s)
    if (fst.is_final(s)) {
      coaccessible[static_cast<size_t>(s)] = true;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    for (State p : incoming[static_cast<size_t>(s)])
      if (!coaccessible[static_cast<size_t>(p)]) {
        coaccessible[static_cast<size_t>(p)] = true;
        queue.push_back(p);
      }
  }

  std::vector<State> renumber(static_cast<size_t>(fst.num_states), -1);
  Fst out;
  out.input_alphabet = fst.input_alphabet;
  out.output_alphabet = fst.output_alphabet;
  for (State s = 0; s < fst.num_states; ++s)
    if (reachable[static_cast<size_t>(s)] && coaccessible[static_cast<size_t>(s)])
      renumber[static_cast<size_t>(s)] = out.add_state(fst.is_final(s));

  if (renumber[static_cast<size_t>(fst.initial)] < 0) return empty_fst(fst.input_alphabet, fst.output_alphabet);

  out.initial = renumber[static_cast<size_t>(fst.initial)];
  for (const auto& t : fst.transitions) {
    State src = renumber[static_cast<size_t>(t.src)];
    State dst = renumber[static_cast<size_t>(t.dst)];
    if (src >= 0 && dst >= 0) out.add_transition(src, t.ilabel, t.olabel, dst);
  }
  return out;
}

// Splits word-labeled transitions into single-symbol chains. Pending output is
// emitted as early as possible along the chain, so (i1 i2 | o1) becomes
// (i1|o1),(i2|eps).
inline Fst normalize(const WordFst& machine) {
  Fst out;
  out.num_states = machine.num_states;
  out.initial = machine.initial;
  out.input_alphabet = machine.input_alphabet;
  out.output_alphabet = machine.output_alphabet;
  out.finals = machine.finals;
  if (out.num_states <= 0) throw FstError("fst has no states");

  for (const auto& t : machine.transitions) {
    for (Symbol s : t.ilabels)
      if (s == kEpsilon || !machine.input_alphabet.contains(s))
        throw FstError("word label carries an invalid input symbol");
    for (Symbol s : t.olabels)
      if (s == kEpsilon || !machine.output_alphabet.contains(s))
        throw FstError("word label carries an invalid output symbol");

    size_t links = std::max<size_t>({t.ilabels.size(), t.olabels.size(), 1});
    State from = t.src;
    for (size_t k = 0; k < links; ++k) {
      State to = (k + 1 == links) ? t.dst : out.add_state(false);
      Symbol ilabel = k < t.ilabels.size() ? t.ilabels[k] : kEpsilon;
      Symbol olabel = k < t.olabels.size() ? t.olabels[k] : kEpsilon;
      out.add_transition(from, ilabel, olabel, to);
      from = to;
    }
  }
  return out;
}

struct ApplyResult {
  std::set<Word> outputs;
  bool truncated = false;
};

// Computes { O : (input, O) in R_fst, |O| <= max_out_len }. The truncated flag
// reports that some accepting output longer than the bound exists (eps-input
// cycles with non-eps output make the full image infinite).
inline ApplyResult apply(const Fst& fst, const Word& input, int max_out_len) {
  fst.check();
  if (max_out_len < 0) throw FstError("apply: negative output bound");
  for (Symbol s : input)
    if (s == kEpsilon || !fst.input_alphabet.contains(s))
      throw FstError("apply: input word carries an invalid symbol");

  auto index = outgoing_index(fst);
  const int positions = static_cast<int>(input.size()) + 1;
  auto config = [&](State s, int pos) { return s * positions + pos; };

  // Configurations (state, consumed prefix length) from which an accepting
  // configuration is reachable; used to recognize genuine truncation.
  std::vector<bool> coaccessible(static_cast<size_t>(fst.num_states * positions), false);
  {
    std::vector<std::vector<int>> reverse(static_cast<size_t>(fst.num_states * positions));
    for (const auto& t : fst.transitions) {
      for (int pos = 0; pos < positions; ++pos) {
        if (t.ilabel == kEpsilon) {
          reverse[static_cast<size_t>(config(t.dst, pos))].push_back(config(t.src, pos));
        } else if (pos + 1 < positions && input[static_cast<size_t>(pos)] == t.ilabel) {
          reverse[static_cast<size_t>(config(t.dst, pos + 1))].push_back(config(t.src, pos));
        }
      }
    }
    std::deque<int> queue;
    for (State s = 0; s < fst.num_states; ++s)
      if (fst.is_final(s)) {
        coaccessible[static_cast<size_t>(config(s, positions - 1))] = true;
        queue.push_back(config(s, positions - 1));
      }
    while (!queue.empty()) {
      int c = queue.front();
      queue.pop_front();
      for (int p : reverse[static_cast<size_t>(c)])
        if (!coaccessible[static_cast<size_t>(p)]) {
          coaccessible[static_cast<size_t>(p)] = true;
          queue.push_back(p);
        }
    }
  }

  ApplyResult result;
  std::set<std::tuple<State, int, Word>> seen;
  std::deque<std::tuple<State, int, Word>> queue;
  queue.emplace_back(fst.initial, 0, Word{});
  seen.insert(queue.front());

  while (!queue.empty()) {
    auto [s, pos, out] = queue.front();
    queue.pop_front();
    if (pos + 1 == positions && fst.is_final(s)) result.outputs.insert(out);

    for (int ti : index[static_cast<size_t>(s)]) {
      const auto& t = fst.transitions[static_cast<size_t>(ti)];
      int next_pos;
      if (t.ilabel == kEpsilon) {
        next_pos = pos;
      } else if (pos + 1 < positions && input[static_cast<size_t>(pos)] == t.ilabel) {
        next_pos = pos + 1;
      } else {
        continue;
      }
      Word next_out = out;
      if (t.olabel != kEpsilon) {
        if (static_cast<int>(out.size()) == max_out_len) {
          if (coaccessible[static_cast<size_t>(config(t.dst, next_pos))]) result.truncated = true;
          continue;
        }
        next_out.push_back(t.olabel);
      }
      auto key = std::make_tuple(t.dst, next_pos, std::move(next_out));
      if (seen.insert(key).second) queue.push_back(key);
    }
  }
  return result;
}

// Replaces eps|eps moves by direct transitions (closure on the source side);
// other labels are untouched. Intended for automata and one-sided projections.
inline Fst eliminate_epsilon(const Fst& fst) {
  fst.check();
  auto index = outgoing_index(fst);
  Fst out;
  out.num_states = fst.num_states;
  out.initial = fst.initial;
  out.input_alphabet = fst.input_alphabet;
  out.output_alphabet = fst.output_alphabet;
  out.finals.assign(static_cast<size_t>(fst.num_states), false);

  std::set<Transition> transitions;
  for (State s = 0; s < fst.num_states; ++s) {
    auto closure = detail::epsilon_closure(fst, index, {s});
    for (State c : closure) {
      if (fst.is_final(c)) out.finals[static_cast<size_t>(s)] = true;
      for (int ti : index[static_cast<size_t>(c)]) {
        const auto& t = fst.transitions[static_cast<size_t>(ti)];
        if (t.ilabel == kEpsilon && t.olabel == kEpsilon) continue;
        transitions.insert({s, t.ilabel, t.olabel, t.dst});
      }
    }
  }
  out.transitions.assign(transitions.begin(), transitions.end());
  return out;
}

// L_in / L_out as identity-labeled automata: drop the other label side, then
// eliminate the resulting eps-moves.
inline Fst project_input(const Fst& fst) {
  Fst nfa;
  nfa.num_states = fst.num_states;
  nfa.initial = fst.initial;
  nfa.input_alphabet = fst.input_alphabet;
  nfa.output_alphabet = fst.input_alphabet;
  nfa.finals = fst.finals;
  for (const auto& t : fst.transitions) nfa.add_transition(t.src, t.ilabel, t.ilabel, t.dst);
  return eliminate_epsilon(nfa);
}

inline Fst project_output(const Fst& fst) {
  Fst nfa;
  nfa.num_states = fst.num_states;
  nfa.initial = fst.initial;
  nfa.input_alphabet = fst.output_alphabet;
  nfa.output_alphabet = fst.output_alphabet;
  nfa.finals = fst.finals;
  for (const auto& t : fst.transitions) nfa.add_transition(t.src, t.olabel, t.olabel, t.dst);
  return eliminate_epsilon(nfa);
}

// Subset construction with epsilon closure. Input must be identity-labeled;
// output is a deterministic, eps-free automaton for the same language.
inline Fst determinize(const Fst& automaton) {
  automaton.check();
  detail::require_automaton(automaton, "determinize");
  auto index = outgoing_index(automaton);

  Fst out;
  out.input_alphabet = automaton.input_alphabet;
  out.output_alphabet = automaton.output_alphabet;

  std::map<std::vector<State>, State> ids;
  std::deque<std::vector<State>> queue;

  auto subset_id = [&](std::vector<State> subset) {
    auto it = ids.find(subset);
    if (it != ids.end()) return it->second;
    bool final = std::any_of(subset.begin(), subset.end(),
                             [&](State s) { return automaton.is_final(s); });
    State id = out.add_state(final);
    ids.emplace(subset, id);
    queue.push_back(std::move(subset));
    return id;
  };

  subset_id(detail::epsilon_closure(automaton, index, {automaton.initial}));

  while (!queue.empty()) {
    auto subset = queue.front();
    queue.pop_front();
    State src = ids.at(subset);
    for (Symbol sym : automaton.input_alphabet.symbols()) {
      std::set<State> next;
      for (State s : subset)
        for (int ti : index[static_cast<size_t>(s)]) {
          const auto& t = automaton.transitions[static_cast<size_t>(ti)];
          if (t.ilabel == sym) next.insert(t.dst);
        }
      if (next.empty()) continue;
      auto closed = detail::epsilon_closure(automaton, index,
                                            std::vector<State>(next.begin(), next.end()));
      State dst = subset_id(std::move(closed));
      out.add_transition(src, sym, sym, dst);
    }
  }
  return out;
}

namespace detail {

// Deterministic transition table [state][symbol] -> state, -1 when absent.
inline std::vector<std::vector<State>> dfa_table(const Fst& dfa) {
  std::vector<std::vector<State>> table(static_cast<size_t>(dfa.num_states),
                                        std::vector<State>(static_cast<size_t>(dfa.input_alphabet.size()), -1));
  for (const auto& t : dfa.transitions)
    table[static_cast<size_t>(t.src)][static_cast<size_t>(t.ilabel)] = t.dst;
  return table;
}

}  // namespace detail

// Makes a deterministic automaton complete by adding a non-final dead state
// for every missing (state, symbol) move.
inline Fst complete(const Fst& dfa) {
  Fst out = dfa;
  auto table = detail::dfa_table(dfa);
  State dead = -1;
  auto dead_state = [&]() {
    if (dead < 0) {
      dead = out.add_state(false);
      for (Symbol sym : out.input_alphabet.symbols()) out.add_transition(dead, sym, sym, dead);
    }
    return dead;
  };
  for (State s = 0; s < dfa.num_states; ++s)
    for (Symbol sym : dfa.input_alphabet.symbols())
      if (table[static_cast<size_t>(s)][static_cast<size_t>(sym)] < 0)
        out.add_transition(s, sym, sym, dead_state());
  return out;
}

// Decides L(a) subset-of L(b) for identity-labeled machines over the same
// alphabet via determinize(b), completion, complement, and a product reach-
// ability walk; the witness is a shortest word of L(a) \ L(b).
inline Verdict language_included(const Fst& a, const Fst& b) {
  detail::require_automaton(a, "language_included");
  detail::require_automaton(b, "language_included");
  if (!(a.input_alphabet == b.input_alphabet))
    throw FstError("language_included: alphabet mismatch");

  Fst left = eliminate_epsilon(a);
  Fst right = complete(determinize(b));
  auto left_index = outgoing_index(left);
  auto right_table = detail::dfa_table(right);

  struct Node {
    State left;
    State right;
  };
  std::map<std::pair<State, State>, std::pair<std::pair<State, State>, Symbol>> parent;
  std::deque<std::pair<State, State>> queue;

  auto visit = [&](std::pair<State, State> node, std::pair<State, State> from, Symbol via) {
    if (parent.contains(node)) return;
    parent.emplace(node, std::make_pair(from, via));
    queue.push_back(node);
  };

  std::pair<State, State> start{left.initial, right.initial};
  visit(start, start, kEpsilon);

  while (!queue.empty()) {
    auto node = queue.front();
    queue.pop_front();
    if (left.is_final(node.first) && !right.is_final(node.second)) {
      Word witness;
      auto cur = node;
      while (cur != start) {
        auto [from, via] = parent.at(cur);
        witness.push_back(via);
        cur = from;
      }
      std::reverse(witness.begin(), witness.end());
      return {false, witness};
    }
    for (int ti : left_index[static_cast<size_t>(node.first)]) {
      const auto& t = left.transitions[static_cast<size_t>(ti)];
      State rdst = right_table[static_cast<size_t>(node.second)][static_cast<size_t>(t.ilabel)];
      visit({t.dst, rdst}, node, t.ilabel);
    }
  }
  return {true, std::nullopt};
}

inline bool language_equal(const Fst& a, const Fst& b) {
  return language_included(a, b).holds && language_included(b, a).holds;
}

// Enumerates words over the alphabet in length-lexicographic order.
inline std::vector<Word> words_upto(const SymbolTable& alphabet, int max_len) {
  std::vector<Word> words{{}};
  size_t level_begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    size_t level_end = words.size();
    for (size_t i = level_begin; i < level_end; ++i)
      for (Symbol s : alphabet.symbols()) {
        Word next = words[i];
        next.push_back(s);
        words.push_back(std::move(next));
      }
    level_begin = level_end;
  }
  return words;
}

// Does the automaton accept the word? NFA simulation with eps-closure.
inline bool accepts(const Fst& automaton, const Word& word) {
  detail::require_automaton(automaton, "accepts");
  auto index = outgoing_index(automaton);
  auto current = detail::epsilon_closure(automaton, index, {automaton.initial});
  for (Symbol sym : word) {
    std::set<State> next;
    for (State s : current)
      for (int ti : index[static_cast<size_t>(s)]) {
        const auto& t = automaton.transitions[static_cast<size_t>(ti)];
        if (t.ilabel == sym) next.insert(t.dst);
      }
    if (next.empty()) return false;
    current = detail::epsilon_closure(automaton, index,
                                      std::vector<State>(next.begin(), next.end()));
  }
  return std::any_of(current.begin(), current.end(),
                     [&](State s) { return automaton.is_final(s); });
}

// Accepted words up to the length bound.
inline std::set<Word> language_upto(const Fst& automaton, int max_len) {
  Fst dfa = trim(determinize(automaton));
  auto table = detail::dfa_table(dfa);
  std::set<Word> result;
  // Depth-first over the trimmed DFA; every path stays useful, the bound cuts.
  std::vector<std::pair<State, Word>> stack{{dfa.initial, {}}};
  while (!stack.empty()) {
    auto [s, w] = stack.back();
    stack.pop_back();
    if (dfa.is_final(s)) result.insert(w);
    if (static_cast<int>(w.size()) == max_len) continue;
    for (Symbol sym : dfa.input_alphabet.symbols()) {
      State dst = table[static_cast<size_t>(s)][static_cast<size_t>(sym)];
      if (dst < 0) continue;
      Word next = w;
      next.push_back(sym);
      stack.emplace_back(dst, std::move(next));
    }
  }
  return result;
}

// Product automaton for the intersection of two identity-labeled languages.
inline Fst intersect_automata(const Fst& a, const Fst& b) {
  detail::require_automaton(a, "intersect_automata");
  detail::require_automaton(b, "intersect_automata");
  if (!(a.input_alphabet == b.input_alphabet))
    throw FstError("intersect_automata: alphabet mismatch");

  Fst left = eliminate_epsilon(a);
  Fst right = eliminate_epsilon(b);
  auto left_index = outgoing_index(left);
  auto right_index = outgoing_index(right);

  Fst out;
  out.input_alphabet = a.input_alphabet;
  out.output_alphabet = a.input_alphabet;

  std::map<std::pair<State, State>, State> ids;
  std::deque<std::pair<State, State>> queue;
  auto pair_id = [&](std::pair<State, State> pair) {
    auto it = ids.find(pair);
    if (it != ids.end()) return it->second;
    State id = out.add_state(left.is_final(pair.first) && right.is_final(pair.second));
    ids.emplace(pair, id);
    queue.push_back(pair);
    return id;
  };

  pair_id({left.initial, right.initial});
  while (!queue.empty()) {
    auto pair = queue.front();
    queue.pop_front();
    State src = ids.at(pair);
    for (int li : left_index[static_cast<size_t>(pair.first)]) {
      const auto& lt = left.transitions[static_cast<size_t>(li)];
      for (int ri : right_index[static_cast<size_t>(pair.second)]) {
        const auto& rt = right.transitions[static_cast<size_t>(ri)];
        if (lt.ilabel == rt.ilabel)
          out.add_transition(src, lt.ilabel, lt.ilabel, pair_id({lt.dst, rt.dst}));
      }
    }
  }
  return trim(out);
}

// Whether the language is closed under taking prefixes. Checked on the
// determinized machine, where closure is exactly "every useful state is
// final"; the empty language is vacuously closed.
inline bool prefix_closed(const Fst& automaton) {
  Fst dfa = trim(determinize(automaton));
  if (dfa.final_states().empty()) return true;
  return std::all_of(dfa.finals.begin(), dfa.finals.end(), [](bool f) { return f; });
}

// Bounded relation equality: both machines produce the same output sets for
// every input up to max_len (outputs also bounded by max_len). The witness
// interleaves the differing input/output pair.
inline Verdict relation_equal_upto(const Fst& a, const Fst& b, int max_len) {
  if (!(a.input_alphabet == b.input_alphabet) || !(a.output_alphabet == b.output_alphabet))
    throw FstError("relation_equal_upto: alphabet mismatch");

  for (const Word& input : words_upto(a.input_alphabet, max_len)) {
    auto outs_a = apply(a, input, max_len).outputs;
    auto outs_b = apply(b, input, max_len).outputs;
    if (outs_a == outs_b) continue;

    Word diff;
    for (const auto& o : outs_a)
      if (!outs_b.contains(o)) {
        diff = o;
        break;
      }
    if (outs_a.size() <= outs_b.size())
      for (const auto& o : outs_b)
        if (!outs_a.contains(o)) {
          diff = o;
          break;
        }

    Word witness;
    for (size_t k = 0; k < std::max(input.size(), diff.size()); ++k) {
      if (k < input.size()) witness.push_back(input[k]);
      if (k < diff.size()) witness.push_back(diff[k]);
    }
    return {false, witness};
  }
  return {true, std::nullopt};
}

// Canonical form: breadth-first state renumbering from the initial state with
// transitions explored in (ilabel, olabel, dst) order, unreachable states
// dropped, transitions sorted and deduplicated. Idempotent.
inline Fst canonicalize(const Fst& fst) {
  fst.check();
  auto index = outgoing_index(fst);
  for (auto& list : index)
    std::sort(list.begin(), list.end(), [&](int x, int y) {
      const auto& a = fst.transitions[static_cast<size_t>(x)];
      const auto& b = fst.transitions[static_cast<size_t>(y)];
      return std::tie(a.ilabel, a.olabel, a.dst) < std::tie(b.ilabel, b.olabel, b.dst);
    });

  std::vector<State> renumber(static_cast<size_t>(fst.num_states), -1);
  std::vector<State> order;
  std::deque<State> queue{fst.initial};
  renumber[static_cast<size_t>(fst.initial)] = 0;
  order.push_back(fst.initial);
  while (!queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    for (int ti : index[static_cast<size_t>(s)]) {
      State dst = fst.transitions[static_cast<size_t>(ti)].dst;
      if (renumber[static_cast<size_t>(dst)] < 0) {
        renumber[static_cast<size_t>(dst)] = static_cast<State>(order.size());
        order.push_back(dst);
        queue.push_back(dst);
      }
    }
  }

  Fst out;
  out.input_alphabet = fst.input_alphabet;
  out.output_alphabet = fst.output_alphabet;
  out.initial = 0;
  for (State s : order) out.add_state(fst.is_final(s));

  std::set<Transition> transitions;
  for (const auto& t : fst.transitions) {
    State src = renumber[static_cast<size_t>(t.src)];
    State dst = renumber[static_cast<size_t>(t.dst)];
    if (src >= 0 && dst >= 0) transitions.insert({src, t.ilabel, t.olabel, dst});
  }
  out.transitions.assign(transitions.begin(), transitions.end());
  return out;
}

// Deterministic execution mode: follow the lexicographically least enabled
// transition (eps-input moves sort first) until the input is consumed and a
// final state is reached. Returns the produced output, or nothing when the
// run dead-ends or cycles without consuming.
inline std::optional<Word> run_pick_one(const Fst& fst, const Word& input) {
  fst.check();
  auto index = outgoing_index(fst);
  State state = fst.initial;
  size_t pos = 0;
  Word output;
  long steps = 0;
  const long max_steps = static_cast<long>(fst.num_states) * (static_cast<long>(input.size()) + 1) + 1;

  while (true) {
    if (pos == input.size() && fst.is_final(state)) return output;
    if (++steps > max_steps) return std::nullopt;

    const Transition* best = nullptr;
    for (int ti : index[static_cast<size_t>(state)]) {
      const auto& t = fst.transitions[static_cast<size_t>(ti)];
      if (t.ilabel != kEpsilon && (pos == input.size() || t.ilabel != input[pos])) continue;
      if (!best || std::tie(t.ilabel, t.olabel, t.dst) < std::tie(best->ilabel, best->olabel, best->dst))
        best = &t;
    }
    if (!best) return std::nullopt;
    if (best->ilabel != kEpsilon) ++pos;
    if (best->olabel != kEpsilon) output.push_back(best->olabel);
    state = best->dst;
  }
}

}  // namespace fstsc
