#pragma once

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "fstsc/algebra.hpp"
#include "fstsc/fst.hpp"
#include "fstsc/ops.hpp"

namespace fstsc {

// Subset construction of an FST over its pair alphabet: a deterministic view
// where each transition carries one of the machine's label pairs and each
// state is a set of original states closed under epsilon|epsilon moves.
struct DeterminizedMachine {
  std::vector<std::vector<State>> subset_states;
  State initial = 0;
  std::vector<Transition> transitions;
  std::vector<bool> finals;
  SymbolTable input_alphabet;
  SymbolTable output_alphabet;
};

inline DeterminizedMachine determinize_pairs(const Fst& fst) {
  fst.check();
  auto index = outgoing_index(fst);

  DeterminizedMachine out;
  out.input_alphabet = fst.input_alphabet;
  out.output_alphabet = fst.output_alphabet;

  std::set<std::pair<Symbol, Symbol>> pairs;
  for (const auto& t : fst.transitions)
    if (!(t.ilabel == kEpsilon && t.olabel == kEpsilon)) pairs.insert({t.ilabel, t.olabel});

  std::map<std::vector<State>, State> ids;
  std::deque<State> queue;
  auto subset_id = [&](std::vector<State> subset) {
    auto it = ids.find(subset);
    if (it != ids.end()) return it->second;
    State id = static_cast<State>(out.subset_states.size());
    bool final = false;
    for (State s : subset) final = final || fst.is_final(s);
    out.subset_states.push_back(std::move(subset));
    out.finals.push_back(final);
    ids.emplace(out.subset_states.back(), id);
    queue.push_back(id);
    return id;
  };

  out.initial = subset_id(detail::epsilon_closure(fst, index, {fst.initial}));
  while (!queue.empty()) {
    State src = queue.front();
    queue.pop_front();
    std::vector<State> subset = out.subset_states[static_cast<size_t>(src)];
    for (const auto& [ilabel, olabel] : pairs) {
      std::set<State> next;
      for (State s : subset)
        for (int ti : index[static_cast<size_t>(s)]) {
          const Transition& t = fst.transitions[static_cast<size_t>(ti)];
          if (t.ilabel == ilabel && t.olabel == olabel) next.insert(t.dst);
        }
      if (next.empty()) continue;
      State dst = subset_id(
          detail::epsilon_closure(fst, index, std::vector<State>(next.begin(), next.end())));
      out.transitions.push_back({src, ilabel, olabel, dst});
    }
  }
  return out;
}

struct NonblockingReport {
  bool nonblocking = true;
  // Transition of the determinized machine whose source subset disagrees,
  // with the source subset spelled out in original state ids.
  std::optional<Transition> violation;
  std::vector<State> violating_subset;
  // Shortest relation behavior (input word, output word) reaching the
  // disagreeing subset.
  std::optional<std::pair<Word, Word>> witness;
};

namespace detail {

// All states of the subset must offer the same epsilon-closed successor set
// on the given label pair, otherwise the machine can silently commit to a
// strict subset of the futures the pair promises.
inline bool uniform_pair_successors(const Fst& fst, const std::vector<std::vector<int>>& index,
                                    const std::vector<State>& subset, Symbol ilabel,
                                    Symbol olabel) {
  std::optional<std::vector<State>> common;
  for (State s : subset) {
    std::set<State> next;
    for (State c : epsilon_closure(fst, index, {s}))
      for (int ti : index[static_cast<size_t>(c)]) {
        const Transition& t = fst.transitions[static_cast<size_t>(ti)];
        if (t.ilabel == ilabel && t.olabel == olabel) next.insert(t.dst);
      }
    std::vector<State> closed =
        epsilon_closure(fst, index, std::vector<State>(next.begin(), next.end()));
    if (!common)
      common = std::move(closed);
    else if (*common != closed)
      return false;
  }
  return true;
}

// Identity automaton over a fresh pair alphabet, one symbol per label pair;
// epsilon|epsilon transitions stay epsilon.
inline Fst pair_encode(const Fst& fst, const SymbolTable& pair_table,
                       const std::map<std::pair<Symbol, Symbol>, Symbol>& pair_ids) {
  Fst out;
  out.num_states = fst.num_states;
  out.initial = fst.initial;
  out.finals = fst.finals;
  out.input_alphabet = pair_table;
  out.output_alphabet = pair_table;
  for (const auto& t : fst.transitions) {
    if (t.ilabel == kEpsilon && t.olabel == kEpsilon) {
      out.add_transition(t.src, kEpsilon, kEpsilon, t.dst);
    } else {
      Symbol p = pair_ids.at({t.ilabel, t.olabel});
      out.add_transition(t.src, p, p, t.dst);
    }
  }
  return out;
}

}  // namespace detail

// Nonblocking check of `fst` against a sub-relation of its behaviors: along
// every behavior of `relation`, each label pair the determinized view of
// `fst` offers must lead all matching states to the same closed successor
// set. Only transitions on accepting product paths are examined, so shrinking
// the relation can never introduce a violation.
inline NonblockingReport check_nonblocking(const Fst& fst, const Fst& relation) {
  fst.check();
  relation.check();
  if (!(fst.input_alphabet == relation.input_alphabet) ||
      !(fst.output_alphabet == relation.output_alphabet))
    throw FstError("check_nonblocking: alphabet mismatch");

  // One shared symbol per label pair of either machine, in sorted pair order.
  std::set<std::pair<Symbol, Symbol>> pair_set;
  for (const auto& t : fst.transitions)
    if (!(t.ilabel == kEpsilon && t.olabel == kEpsilon)) pair_set.insert({t.ilabel, t.olabel});
  for (const auto& t : relation.transitions)
    if (!(t.ilabel == kEpsilon && t.olabel == kEpsilon)) pair_set.insert({t.ilabel, t.olabel});

  SymbolTable pair_table;
  std::map<std::pair<Symbol, Symbol>, Symbol> pair_ids;
  std::vector<std::pair<Symbol, Symbol>> pair_of = {{kEpsilon, kEpsilon}};
  for (const auto& p : pair_set) {
    Symbol id = pair_table.add(fst.input_alphabet.name(p.first) + "," +
                               fst.output_alphabet.name(p.second));
    pair_ids.emplace(p, id);
    pair_of.push_back(p);
  }

  Fst fst_pairs = detail::pair_encode(fst, pair_table, pair_ids);
  Fst rel_pairs = detail::pair_encode(relation, pair_table, pair_ids);
  if (!language_included(rel_pairs, fst_pairs).holds)
    throw FstError("check_nonblocking: relation is not contained in the pair language of the machine");

  DeterminizedMachine dm = determinize_pairs(fst);
  std::map<std::pair<State, Symbol>, State> dm_next;
  for (const auto& t : dm.transitions)
    dm_next.emplace(std::make_pair(t.src, pair_ids.at({t.ilabel, t.olabel})), t.dst);

  Fst follower = eliminate_epsilon(rel_pairs);
  auto follower_index = outgoing_index(follower);
  auto fst_index = outgoing_index(fst);

  // Reachable product of the relation with the determinized machine.
  struct Edge {
    int dst;
    Symbol pair;
  };
  std::map<std::pair<State, State>, int> node_ids;
  std::vector<std::pair<State, State>> nodes;
  std::vector<std::vector<Edge>> out_edges;
  std::vector<bool> accepting;
  std::deque<int> queue;
  auto node_id = [&](State a, State d) {
    auto it = node_ids.find({a, d});
    if (it != node_ids.end()) return it->second;
    int id = static_cast<int>(nodes.size());
    node_ids.emplace(std::make_pair(a, d), id);
    nodes.push_back({a, d});
    out_edges.emplace_back();
    accepting.push_back(follower.is_final(a) && dm.finals[static_cast<size_t>(d)]);
    queue.push_back(id);
    return id;
  };
  node_id(follower.initial, dm.initial);
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    auto [a, d] = nodes[static_cast<size_t>(id)];
    for (int ti : follower_index[static_cast<size_t>(a)]) {
      const Transition& t = follower.transitions[static_cast<size_t>(ti)];
      auto it = dm_next.find({d, t.ilabel});
      if (it == dm_next.end()) continue;
      int dst = node_id(t.dst, it->second);
      out_edges[static_cast<size_t>(id)].push_back({dst, t.ilabel});
    }
  }

  // Keep only product states that can still reach acceptance; transitions off
  // accepting paths are not part of any relation behavior.
  std::vector<std::vector<int>> in_edges(nodes.size());
  for (size_t src = 0; src < nodes.size(); ++src)
    for (const Edge& e : out_edges[src]) in_edges[static_cast<size_t>(e.dst)].push_back(static_cast<int>(src));
  std::vector<bool> useful = accepting;
  std::deque<int> stack;
  for (size_t i = 0; i < nodes.size(); ++i)
    if (useful[i]) stack.push_back(static_cast<int>(i));
  while (!stack.empty()) {
    int id = stack.front();
    stack.pop_front();
    for (int src : in_edges[static_cast<size_t>(id)])
      if (!useful[static_cast<size_t>(src)]) {
        useful[static_cast<size_t>(src)] = true;
        stack.push_back(src);
      }
  }

  NonblockingReport report;
  if (nodes.empty() || !useful[0]) return report;

  // Breadth-first over useful nodes; the first disagreeing transition met is
  // reached by a shortest relation behavior.
  std::vector<std::pair<int, Symbol>> parent(nodes.size(), {-1, kEpsilon});
  std::vector<bool> visited(nodes.size(), false);
  std::set<std::pair<State, Symbol>> examined;
  std::deque<int> order;
  visited[0] = true;
  order.push_back(0);
  while (!order.empty()) {
    int id = order.front();
    order.pop_front();
    State d = nodes[static_cast<size_t>(id)].second;
    for (const Edge& e : out_edges[static_cast<size_t>(id)]) {
      if (!useful[static_cast<size_t>(e.dst)]) continue;
      if (examined.insert({d, e.pair}).second) {
        auto [ilabel, olabel] = pair_of[static_cast<size_t>(e.pair)];
        const auto& subset = dm.subset_states[static_cast<size_t>(d)];
        if (!detail::uniform_pair_successors(fst, fst_index, subset, ilabel, olabel)) {
          report.nonblocking = false;
          report.violation =
              Transition{d, ilabel, olabel, nodes[static_cast<size_t>(e.dst)].second};
          report.violating_subset = subset;
          Word in_word, out_word;
          std::vector<Symbol> path;
          for (int at = id; parent[static_cast<size_t>(at)].first >= 0;
               at = parent[static_cast<size_t>(at)].first)
            path.push_back(parent[static_cast<size_t>(at)].second);
          for (auto it = path.rbegin(); it != path.rend(); ++it) {
            auto [wi, wo] = pair_of[static_cast<size_t>(*it)];
            if (wi != kEpsilon) in_word.push_back(wi);
            if (wo != kEpsilon) out_word.push_back(wo);
          }
          report.witness = {std::move(in_word), std::move(out_word)};
          return report;
        }
      }
      if (!visited[static_cast<size_t>(e.dst)]) {
        visited[static_cast<size_t>(e.dst)] = true;
        parent[static_cast<size_t>(e.dst)] = {id, e.pair};
        order.push_back(e.dst);
      }
    }
  }
  return report;
}

enum class LoopMode { sensor, actuator, both };

// Nonblocking check of the attacked loop: the machine is the plant seen
// through the attacks, the relation is what the supervisor actually drives
// it through. A caller-supplied relation overrides the induced one.
inline NonblockingReport check_closed_loop_nonblocking(const Fst& plant, const Fst& sensor_attack,
                                                       const Fst& actuator_attack,
                                                       const Fst& supervisor, LoopMode mode,
                                                       const Fst* relation_override = nullptr) {
  Fst chain;
  switch (mode) {
    case LoopMode::sensor:
      chain = compose(plant, sensor_attack);
      break;
    case LoopMode::actuator:
      chain = compose(actuator_attack, plant);
      break;
    case LoopMode::both:
      chain = compose(compose(actuator_attack, plant), sensor_attack);
      break;
  }
  Fst induced =
      relation_override ? *relation_override : compose(project_output(supervisor), chain);
  return check_nonblocking(chain, induced);
}

}  // namespace fstsc
