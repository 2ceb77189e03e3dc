#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace fstsc {

using Symbol = int;
using State = int;

// Symbol id 0 is epsilon in every alphabet.
inline constexpr Symbol kEpsilon = 0;
inline constexpr const char* kEpsilonName = "<eps>";

struct FstError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bijection between symbol names and dense ids, with id 0 fixed to "<eps>".
class SymbolTable {
 public:
  SymbolTable() {
    names_.push_back(kEpsilonName);
    ids_.emplace(kEpsilonName, kEpsilon);
  }

  static SymbolTable from_names(const std::vector<std::string>& names) {
    SymbolTable table;
    for (const auto& n : names) table.add(n);
    return table;
  }

  // Returns the id of `name`, inserting it at the next free id if absent.
  Symbol add(const std::string& name) {
    auto it = ids_.find(name);
    if (it != ids_.end()) return it->second;
    Symbol id = static_cast<Symbol>(names_.size());
    names_.push_back(name);
    ids_.emplace(name, id);
    return id;
  }

  std::optional<Symbol> find(const std::string& name) const {
    auto it = ids_.find(name);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  Symbol id(const std::string& name) const {
    auto found = find(name);
    if (!found) throw FstError("unknown symbol: " + name);
    return *found;
  }

  const std::string& name(Symbol id) const {
    if (!contains(id)) throw FstError("symbol id out of range: " + std::to_string(id));
    return names_[static_cast<size_t>(id)];
  }

  bool contains(Symbol id) const {
    return id >= 0 && static_cast<size_t>(id) < names_.size();
  }

  int size() const { return static_cast<int>(names_.size()); }

  // Non-epsilon ids, ascending.
  std::vector<Symbol> symbols() const {
    std::vector<Symbol> out;
    for (Symbol s = 1; s < size(); ++s) out.push_back(s);
    return out;
  }

  const std::vector<std::string>& names() const { return names_; }

  friend bool operator==(const SymbolTable& a, const SymbolTable& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Symbol> ids_;
};

struct Transition {
  State src = 0;
  Symbol ilabel = kEpsilon;
  Symbol olabel = kEpsilon;
  State dst = 0;

  friend auto operator<=>(const Transition&, const Transition&) = default;
};

// A word is a sequence of non-epsilon symbol ids.
using Word = std::vector<Symbol>;

struct Verdict {
  bool holds = true;
  std::optional<Word> witness;
};

// Finite state transducer. Transitions carry at most one input and one output
// symbol (either may be epsilon). An automaton is an Fst with ilabel == olabel
// on every transition; it models the language it accepts on either side.
struct Fst {
  int num_states = 0;
  State initial = 0;
  SymbolTable input_alphabet;
  SymbolTable output_alphabet;
  std::vector<Transition> transitions;
  std::vector<bool> finals;

  State add_state(bool final = false) {
    State s = num_states++;
    finals.push_back(final);
    return s;
  }

  void add_transition(State src, Symbol ilabel, Symbol olabel, State dst) {
    transitions.push_back({src, ilabel, olabel, dst});
  }

  bool is_final(State s) const {
    return s >= 0 && static_cast<size_t>(s) < finals.size() && finals[static_cast<size_t>(s)];
  }

  void set_final(State s, bool value = true) {
    finals.at(static_cast<size_t>(s)) = value;
  }

  std::vector<State> final_states() const {
    std::vector<State> out;
    for (State s = 0; s < num_states; ++s)
      if (finals[static_cast<size_t>(s)]) out.push_back(s);
    return out;
  }

  // Validates the structural invariants; throws FstError on violation.
  void check() const {
    if (num_states <= 0) throw FstError("fst has no states");
    if (initial < 0 || initial >= num_states) throw FstError("initial state out of range");
    if (static_cast<int>(finals.size()) != num_states)
      throw FstError("final-state mask size does not match state count");
    for (const auto& t : transitions) {
      if (t.src < 0 || t.src >= num_states || t.dst < 0 || t.dst >= num_states)
        throw FstError("transition references a state out of range");
      if (!input_alphabet.contains(t.ilabel))
        throw FstError("transition input label not in input alphabet");
      if (!output_alphabet.contains(t.olabel))
        throw FstError("transition output label not in output alphabet");
    }
  }
};

// Word-labeled machine: transitions carry input/output words of any length.
// normalize() turns these into ordinary single-symbol Fsts.
struct WordTransition {
  State src = 0;
  Word ilabels;
  Word olabels;
  State dst = 0;
};

struct WordFst {
  int num_states = 0;
  State initial = 0;
  SymbolTable input_alphabet;
  SymbolTable output_alphabet;
  std::vector<WordTransition> transitions;
  std::vector<bool> finals;
};

inline bool is_identity_labeled(const Fst& fst) {
  return std::all_of(fst.transitions.begin(), fst.transitions.end(),
                     [](const Transition& t) { return t.ilabel == t.olabel; });
}

inline bool has_epsilon_epsilon(const Fst& fst) {
  return std::any_of(fst.transitions.begin(), fst.transitions.end(), [](const Transition& t) {
    return t.ilabel == kEpsilon && t.olabel == kEpsilon;
  });
}

// Identity automaton on alphabet*, a single final state looping i|i for every
// non-epsilon symbol.
inline Fst identity_fst(const SymbolTable& alphabet) {
  Fst fst;
  fst.input_alphabet = alphabet;
  fst.output_alphabet = alphabet;
  fst.add_state(true);
  for (Symbol s : alphabet.symbols()) fst.add_transition(0, s, s, 0);
  return fst;
}

// Single-word identity machine accepting exactly the pair (word, word).
inline Fst word_fst(const Word& word, const SymbolTable& alphabet) {
  Fst fst;
  fst.input_alphabet = alphabet;
  fst.output_alphabet = alphabet;
  fst.add_state(word.empty());
  for (size_t k = 0; k < word.size(); ++k) {
    State next = fst.add_state(k + 1 == word.size());
    fst.add_transition(static_cast<State>(k), word[k], word[k], next);
  }
  return fst;
}

// Outgoing-transition index: result[s] lists indices into fst.transitions.
inline std::vector<std::vector<int>> outgoing_index(const Fst& fst) {
  std::vector<std::vector<int>> index(static_cast<size_t>(fst.num_states));
  for (int i = 0; i < static_cast<int>(fst.transitions.size()); ++i)
    index[static_cast<size_t>(fst.transitions[static_cast<size_t>(i)].src)].push_back(i);
  return index;
}

}  // namespace fstsc
