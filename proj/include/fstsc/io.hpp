#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fstsc/fst.hpp"

// Line-oriented text format.
//
//   transition line:  src <TAB> dst <TAB> ilabel_name <TAB> olabel_name
//   final-state line: state
//
// The first content line's first field names the initial state; "<eps>"
// denotes epsilon. Blank lines and lines starting with '#' are ignored.
// Symbol-table files carry "name <TAB> id" pairs and must contain "<eps> 0".

namespace fstsc {

namespace detail {

inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream stream(line);
  std::string field;
  while (stream >> field) fields.push_back(field);
  return fields;
}

inline int parse_state(const std::string& field, int line_no) {
  for (char c : field)
    if (c < '0' || c > '9')
      throw FstError("line " + std::to_string(line_no) + ": malformed state id '" + field + "'");
  try {
    return std::stoi(field);
  } catch (const std::exception&) {
    throw FstError("line " + std::to_string(line_no) + ": state id out of range '" + field + "'");
  }
}

inline Symbol resolve_symbol(const std::string& name, SymbolTable& table, bool fixed_table,
                             int line_no) {
  if (fixed_table) {
    auto id = table.find(name);
    if (!id) throw FstError("line " + std::to_string(line_no) + ": unknown symbol '" + name + "'");
    return *id;
  }
  return table.add(name);
}

}  // namespace detail

// Parses the text format. When symbol tables are supplied they are authoritative
// and unknown names are errors; otherwise tables are built from the text in
// order of first appearance.
inline Fst read_fst(std::istream& in, const SymbolTable* input_symbols = nullptr,
                    const SymbolTable* output_symbols = nullptr) {
  Fst fst;
  const bool fixed_input = input_symbols != nullptr;
  const bool fixed_output = output_symbols != nullptr;
  if (fixed_input) fst.input_alphabet = *input_symbols;
  if (fixed_output) fst.output_alphabet = *output_symbols;

  std::vector<Transition> transitions;
  std::vector<State> final_decls;
  State initial = -1;
  int max_state = -1;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto fields = detail::split_fields(line);
    if (fields.empty() || fields[0][0] == '#') continue;

    State first = detail::parse_state(fields[0], line_no);
    if (initial < 0) initial = first;
    max_state = std::max(max_state, first);

    if (fields.size() == 1) {
      for (State s : final_decls)
        if (s == first)
          throw FstError("line " + std::to_string(line_no) +
                         ": duplicate final declaration for state " + std::to_string(first));
      final_decls.push_back(first);
    } else if (fields.size() == 4) {
      State dst = detail::parse_state(fields[1], line_no);
      max_state = std::max(max_state, dst);
      Symbol ilabel = detail::resolve_symbol(fields[2], fst.input_alphabet, fixed_input, line_no);
      Symbol olabel = detail::resolve_symbol(fields[3], fst.output_alphabet, fixed_output, line_no);
      transitions.push_back({first, ilabel, olabel, dst});
    } else {
      throw FstError("line " + std::to_string(line_no) + ": malformed line, expected 1 or 4 fields, got " +
                     std::to_string(fields.size()));
    }
  }

  if (initial < 0) throw FstError("no initial state (empty input)");

  fst.num_states = max_state + 1;
  fst.initial = initial;
  fst.finals.assign(static_cast<size_t>(fst.num_states), false);
  for (State s : final_decls) fst.finals[static_cast<size_t>(s)] = true;
  fst.transitions = std::move(transitions);
  fst.check();
  return fst;
}

inline Fst read_fst(const std::string& text, const SymbolTable* input_symbols = nullptr,
                    const SymbolTable* output_symbols = nullptr) {
  std::istringstream stream(text);
  return read_fst(stream, input_symbols, output_symbols);
}

// Serializes in stored transition order, finals ascending afterwards. The first
// emitted line always carries the initial state, which requires a small dance
// when the initial state has no outgoing transition: its final line moves to
// the front, and a machine with an empty relation and a non-final initial state
// (nothing to write at all) gets a single relation-neutral eps|eps self-loop.
inline void write_fst(std::ostream& out, const Fst& fst) {
  fst.check();
  const auto& isyms = fst.input_alphabet;
  const auto& osyms = fst.output_alphabet;

  auto emit_transition = [&](const Transition& t) {
    out << t.src << '\t' << t.dst << '\t' << isyms.name(t.ilabel) << '\t' << osyms.name(t.olabel)
        << '\n';
  };

  bool initial_leads = !fst.transitions.empty() && fst.transitions.front().src == fst.initial;
  bool initial_final_emitted = false;

  if (!initial_leads) {
    bool initial_has_outgoing = false;
    for (const auto& t : fst.transitions)
      if (t.src == fst.initial) initial_has_outgoing = true;

    if (initial_has_outgoing) {
      // Reorder once: transitions leaving the initial state come first.
      for (const auto& t : fst.transitions)
        if (t.src == fst.initial) emit_transition(t);
      for (const auto& t : fst.transitions)
        if (t.src != fst.initial) emit_transition(t);
    } else if (fst.is_final(fst.initial)) {
      out << fst.initial << '\n';
      initial_final_emitted = true;
      for (const auto& t : fst.transitions) emit_transition(t);
    } else {
      emit_transition({fst.initial, kEpsilon, kEpsilon, fst.initial});
      for (const auto& t : fst.transitions) emit_transition(t);
    }
  } else {
    for (const auto& t : fst.transitions) emit_transition(t);
  }

  for (State s = 0; s < fst.num_states; ++s)
    if (fst.is_final(s) && !(initial_final_emitted && s == fst.initial)) out << s << '\n';
}

inline std::string write_fst(const Fst& fst) {
  std::ostringstream out;
  write_fst(out, fst);
  return out.str();
}

inline SymbolTable read_symbols(std::istream& in) {
  std::vector<std::pair<Symbol, std::string>> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto fields = detail::split_fields(line);
    if (fields.empty() || fields[0][0] == '#') continue;
    if (fields.size() != 2)
      throw FstError("line " + std::to_string(line_no) + ": malformed symbol entry");
    entries.emplace_back(detail::parse_state(fields[1], line_no), fields[0]);
  }

  std::sort(entries.begin(), entries.end());
  SymbolTable table;
  for (const auto& [id, name] : entries) {
    if (id == kEpsilon) {
      if (name != kEpsilonName) throw FstError("symbol id 0 must be " + std::string(kEpsilonName));
      continue;
    }
    if (id != table.size()) throw FstError("symbol ids must be dense from 0, missing id " +
                                           std::to_string(table.size()));
    table.add(name);
  }
  if (entries.empty() || entries.front().first != kEpsilon)
    throw FstError("symbol table must contain <eps> with id 0");
  return table;
}

inline SymbolTable read_symbols(const std::string& text) {
  std::istringstream stream(text);
  return read_symbols(stream);
}

inline void write_symbols(std::ostream& out, const SymbolTable& table) {
  for (Symbol s = 0; s < table.size(); ++s) out << table.name(s) << '\t' << s << '\n';
}

inline std::string write_symbols(const SymbolTable& table) {
  std::ostringstream out;
  write_symbols(out, table);
  return out.str();
}

}  // namespace fstsc
