#pragma once

#include <deque>
#include <map>
#include <utility>
#include <vector>

#include "fstsc/fst.hpp"
#include "fstsc/ops.hpp"

namespace fstsc {

// Maps each composed-product state back to its (left, right) source pair.
struct CompositionTrace {
  std::vector<std::pair<State, State>> state_pairs;
};

// Serial composition: feed a's output into b's input. Transitions either
// contract on a shared non-eps symbol, keep a's eps-output moves against a
// fixed b-state, or keep b's eps-input moves against a fixed a-state. Only
// the reachable part of the product is built and the result is trimmed.
inline Fst compose(const Fst& a, const Fst& b, CompositionTrace* trace = nullptr) {
  a.check();
  b.check();
  if (!(a.output_alphabet == b.input_alphabet))
    throw FstError("compose: left output alphabet differs from right input alphabet");

  auto a_index = outgoing_index(a);
  auto b_index = outgoing_index(b);

  Fst product;
  product.input_alphabet = a.input_alphabet;
  product.output_alphabet = b.output_alphabet;

  std::vector<std::pair<State, State>> pairs;
  std::map<std::pair<State, State>, State> ids;
  std::deque<std::pair<State, State>> queue;
  auto pair_id = [&](std::pair<State, State> pair) {
    auto it = ids.find(pair);
    if (it != ids.end()) return it->second;
    State id = product.add_state(a.is_final(pair.first) && b.is_final(pair.second));
    ids.emplace(pair, id);
    pairs.push_back(pair);
    queue.push_back(pair);
    return id;
  };

  pair_id({a.initial, b.initial});
  while (!queue.empty()) {
    auto [sa, sb] = queue.front();
    queue.pop_front();
    State src = ids.at({sa, sb});

    for (int ai : a_index[static_cast<size_t>(sa)]) {
      const auto& ta = a.transitions[static_cast<size_t>(ai)];
      if (ta.olabel == kEpsilon) {
        product.add_transition(src, ta.ilabel, kEpsilon, pair_id({ta.dst, sb}));
      } else {
        for (int bi : b_index[static_cast<size_t>(sb)]) {
          const auto& tb = b.transitions[static_cast<size_t>(bi)];
          if (tb.ilabel == ta.olabel)
            product.add_transition(src, ta.ilabel, tb.olabel, pair_id({ta.dst, tb.dst}));
        }
      }
    }
    for (int bi : b_index[static_cast<size_t>(sb)]) {
      const auto& tb = b.transitions[static_cast<size_t>(bi)];
      if (tb.ilabel == kEpsilon)
        product.add_transition(src, kEpsilon, tb.olabel, pair_id({sa, tb.dst}));
    }
  }

  // Trim in place so the trace can follow the renumbering.
  std::vector<std::vector<State>> incoming(static_cast<size_t>(product.num_states));
  for (const auto& t : product.transitions) incoming[static_cast<size_t>(t.dst)].push_back(t.src);
  std::vector<bool> coaccessible(static_cast<size_t>(product.num_states), false);
  std::deque<State> back;
  for (State s = 0; s < product.num_states; ++s)
    if (product.is_final(s)) {
      coaccessible[static_cast<size_t>(s)] = true;
      back.push_back(s);
    }
  while (!back.empty()) {
    State s = back.front();
    back.pop_front();
    for (State p : incoming[static_cast<size_t>(s)])
      if (!coaccessible[static_cast<size_t>(p)]) {
        coaccessible[static_cast<size_t>(p)] = true;
        back.push_back(p);
      }
  }

  Fst out;
  out.input_alphabet = product.input_alphabet;
  out.output_alphabet = product.output_alphabet;
  std::vector<State> renumber(static_cast<size_t>(product.num_states), -1);
  std::vector<std::pair<State, State>> kept_pairs;
  for (State s = 0; s < product.num_states; ++s)
    if (coaccessible[static_cast<size_t>(s)]) {
      renumber[static_cast<size_t>(s)] = out.add_state(product.is_final(s));
      kept_pairs.push_back(pairs[static_cast<size_t>(s)]);
    }

  if (renumber[static_cast<size_t>(product.initial)] < 0) {
    if (trace) trace->state_pairs = {{a.initial, b.initial}};
    return empty_fst(product.input_alphabet, product.output_alphabet);
  }

  out.initial = renumber[static_cast<size_t>(product.initial)];
  for (const auto& t : product.transitions) {
    State src = renumber[static_cast<size_t>(t.src)];
    State dst = renumber[static_cast<size_t>(t.dst)];
    if (src >= 0 && dst >= 0) out.add_transition(src, t.ilabel, t.olabel, dst);
  }
  if (trace) trace->state_pairs = std::move(kept_pairs);
  return out;
}

// Inversion: swap the labels on every transition and swap the alphabets; the
// state graph is untouched and the relation is inverted.
inline Fst invert(const Fst& a) {
  a.check();
  Fst out = a;
  std::swap(out.input_alphabet, out.output_alphabet);
  for (auto& t : out.transitions) std::swap(t.ilabel, t.olabel);
  return out;
}

// Parallel composition (union of relations): disjoint state union behind a
// fresh non-final initial state with eps|eps moves into both machines.
inline Fst parallel(const Fst& a, const Fst& b) {
  a.check();
  b.check();
  if (!(a.input_alphabet == b.input_alphabet) || !(a.output_alphabet == b.output_alphabet))
    throw FstError("parallel: alphabet mismatch");

  Fst out;
  out.input_alphabet = a.input_alphabet;
  out.output_alphabet = a.output_alphabet;
  out.add_state(false);

  State offset_a = 1;
  for (State s = 0; s < a.num_states; ++s) out.add_state(a.is_final(s));
  State offset_b = 1 + a.num_states;
  for (State s = 0; s < b.num_states; ++s) out.add_state(b.is_final(s));

  out.add_transition(0, kEpsilon, kEpsilon, offset_a + a.initial);
  out.add_transition(0, kEpsilon, kEpsilon, offset_b + b.initial);
  for (const auto& t : a.transitions)
    out.add_transition(offset_a + t.src, t.ilabel, t.olabel, offset_a + t.dst);
  for (const auto& t : b.transitions)
    out.add_transition(offset_b + t.src, t.ilabel, t.olabel, offset_b + t.dst);
  return out;
}

}  // namespace fstsc
