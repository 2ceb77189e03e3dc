#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "fstsc/algebra.hpp"
#include "fstsc/attacks.hpp"
#include "fstsc/casestudy.hpp"
#include "fstsc/fst.hpp"
#include "fstsc/io.hpp"
#include "fstsc/nonblocking.hpp"
#include "fstsc/ops.hpp"
#include "fstsc/synthesis.hpp"

namespace fstsc::cli {

inline std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FstError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct LoadedFsts {
  SymbolTable table;
  std::vector<Fst> fsts;
};

// Reads a batch of FST files against one shared symbol table so downstream
// compositions line up. With --symbols the table is fixed and unknown names
// are errors; otherwise it is the union of every file's names in order of
// appearance.
inline LoadedFsts load_fsts(const std::vector<std::string>& paths,
                            const std::string& symbols_path) {
  LoadedFsts out;
  std::vector<std::string> texts;
  texts.reserve(paths.size());
  for (const auto& p : paths) texts.push_back(slurp(p));

  if (!symbols_path.empty()) {
    out.table = read_symbols(slurp(symbols_path));
  } else {
    for (const auto& text : texts) {
      Fst probe = read_fst(text);
      for (const auto& name : probe.input_alphabet.names()) out.table.add(name);
      for (const auto& name : probe.output_alphabet.names()) out.table.add(name);
    }
  }
  for (const auto& text : texts) out.fsts.push_back(read_fst(text, &out.table, &out.table));
  return out;
}

// Every emitted machine is canonicalized first, keeping output diff-stable.
inline void emit_fst(const Fst& fst, const std::string& path, std::ostream& out) {
  Fst canon = canonicalize(fst);
  if (path.empty() || path == "-") {
    write_fst(out, canon);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw FstError("cannot open '" + path + "' for writing");
  write_fst(file, canon);
}

inline Word parse_word(const std::string& text, const SymbolTable& table) {
  Word word;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    auto id = table.find(token);
    if (!id || *id == kEpsilon) throw FstError("unknown symbol '" + token + "' in word");
    word.push_back(*id);
  }
  return word;
}

inline std::string format_word(const Word& word, const SymbolTable& table) {
  if (word.empty()) return kEpsilonName;
  std::string out;
  for (size_t k = 0; k < word.size(); ++k) {
    if (k) out += ' ';
    out += table.name(word[k]);
  }
  return out;
}

inline std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    size_t first = item.find_first_not_of(" \t");
    size_t last = item.find_last_not_of(" \t");
    if (first == std::string::npos) continue;
    parts.push_back(item.substr(first, last - first + 1));
  }
  return parts;
}

inline SymbolTable attack_alphabet(const std::string& alphabet_csv,
                                   const std::string& symbols_path) {
  if (!symbols_path.empty()) return read_symbols(slurp(symbols_path));
  if (alphabet_csv.empty())
    throw FstError("attack builders need --symbols FILE or --alphabet \"i1,i2,...\"");
  return SymbolTable::from_names(split_csv(alphabet_csv));
}

inline std::set<Symbol> parse_symbol_set(const std::string& csv, const SymbolTable& table) {
  std::set<Symbol> out;
  for (const auto& name : split_csv(csv)) {
    auto id = table.find(name);
    if (!id || *id == kEpsilon) throw FstError("unknown symbol '" + name + "'");
    out.insert(*id);
  }
  return out;
}

namespace detail {

inline int report_verdict(const Verdict& verdict, const char* yes, const char* no,
                          const SymbolTable& table, std::ostream& out) {
  if (verdict.holds) {
    out << yes << "\n";
    return 0;
  }
  out << no << "\n";
  if (verdict.witness) out << "witness: " << format_word(*verdict.witness, table) << "\n";
  return 1;
}

inline int report_synthesis(const SynthesisReport& report, const SymbolTable& table,
                            std::ostream& out) {
  if (report.controllable) {
    out << "controllable\n";
    return 0;
  }
  out << "not controllable (weakly controllable)\n";
  if (report.witness) out << "witness: " << format_word(*report.witness, table) << "\n";
  return 1;
}

inline int report_nonblocking(const NonblockingReport& report, const SymbolTable& input_table,
                              const SymbolTable& output_table, std::ostream& out) {
  if (report.nonblocking) {
    out << "nonblocking\n";
    return 0;
  }
  out << "blocking\n";
  if (report.violation) {
    out << "violation: pair " << input_table.name(report.violation->ilabel) << "|"
        << output_table.name(report.violation->olabel) << " at subset {";
    for (size_t k = 0; k < report.violating_subset.size(); ++k) {
      if (k) out << ", ";
      out << report.violating_subset[k];
    }
    out << "}\n";
  }
  if (report.witness)
    out << "witness: " << format_word(report.witness->first, input_table) << " | "
        << format_word(report.witness->second, output_table) << "\n";
  return 1;
}

}  // namespace detail

// Command-line driver. Returns 0 on success or a true verdict, 1 on a false
// verdict, 2 on usage or input errors.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"finite state transducer toolkit for attack-resilient supervisory control"};
  app.require_subcommand(1);
  int seed = 1;
  app.add_option("--seed", seed, "seed for randomized harnesses (reserved)");
  int exit_code = 0;

  // Binary machine operations.
  struct BinaryOpts {
    std::string a, b, out = "-", symbols;
  };
  for (const auto& [name, help] :
       std::vector<std::pair<std::string, std::string>>{
           {"compose", "serial composition: feed a's output to b's input"},
           {"parallel", "parallel composition: union of the two relations"}}) {
    auto o = std::make_shared<BinaryOpts>();
    CLI::App* cmd = app.add_subcommand(name, help);
    cmd->add_option("a", o->a, "left machine (- for stdin)")->required();
    cmd->add_option("b", o->b, "right machine (- for stdin)")->required();
    cmd->add_option("-o,--out", o->out, "output file (- for stdout)");
    cmd->add_option("--symbols", o->symbols, "fixed symbol table file");
    bool is_compose = name == "compose";
    cmd->callback([&, o, is_compose] {
      auto loaded = load_fsts({o->a, o->b}, o->symbols);
      Fst result = is_compose ? compose(loaded.fsts[0], loaded.fsts[1])
                              : fstsc::parallel(loaded.fsts[0], loaded.fsts[1]);
      emit_fst(result, o->out, out);
    });
  }

  // Unary machine operations.
  struct UnaryOpts {
    std::string a, out = "-", symbols;
  };
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"invert", "swap input and output labels"},
           {"determinize", "subset construction for an automaton"},
           {"trim", "drop states off accepting paths"}}) {
    auto o = std::make_shared<UnaryOpts>();
    CLI::App* cmd = app.add_subcommand(name, help);
    cmd->add_option("a", o->a, "machine (- for stdin)")->required();
    cmd->add_option("-o,--out", o->out, "output file (- for stdout)");
    cmd->add_option("--symbols", o->symbols, "fixed symbol table file");
    std::string op = name;
    cmd->callback([&, o, op] {
      auto loaded = load_fsts({o->a}, o->symbols);
      Fst result = op == "invert"      ? invert(loaded.fsts[0])
                   : op == "determinize" ? determinize(loaded.fsts[0])
                                         : trim(loaded.fsts[0]);
      emit_fst(result, o->out, out);
    });
  }

  // project input|output FILE
  {
    auto o = std::make_shared<UnaryOpts>();
    auto side = std::make_shared<std::string>();
    CLI::App* cmd = app.add_subcommand("project", "keep one side of the relation as an automaton");
    cmd->add_option("side", *side, "input or output")
        ->required()
        ->check(CLI::IsMember({"input", "output"}));
    cmd->add_option("a", o->a, "machine (- for stdin)")->required();
    cmd->add_option("-o,--out", o->out, "output file (- for stdout)");
    cmd->add_option("--symbols", o->symbols, "fixed symbol table file");
    cmd->callback([&, o, side] {
      auto loaded = load_fsts({o->a}, o->symbols);
      emit_fst(*side == "input" ? project_input(loaded.fsts[0]) : project_output(loaded.fsts[0]),
               o->out, out);
    });
  }

  // run: bounded application of a machine to one input word
  {
    struct RunOpts {
      std::string fst, input, symbols;
      int max_len = 6;
      bool pick_one = false;
    };
    auto o = std::make_shared<RunOpts>();
    CLI::App* cmd = app.add_subcommand("run", "apply a machine to an input word");
    cmd->add_option("--fst", o->fst, "machine (- for stdin)")->required();
    cmd->add_option("--input", o->input, "input word, symbols separated by spaces");
    cmd->add_option("--max-len", o->max_len, "output length bound");
    cmd->add_flag("--pick-one", o->pick_one, "deterministic single-output execution");
    cmd->add_option("--symbols", o->symbols, "fixed symbol table file");
    cmd->callback([&, o] {
      auto loaded = load_fsts({o->fst}, o->symbols);
      Word input = parse_word(o->input, loaded.table);
      if (o->pick_one) {
        auto output = run_pick_one(loaded.fsts[0], input);
        if (!output) {
          out << "no accepting run\n";
          exit_code = 1;
          return;
        }
        out << format_word(*output, loaded.table) << "\n";
        return;
      }
      ApplyResult result = apply(loaded.fsts[0], input, o->max_len);
      for (const Word& w : result.outputs) out << format_word(w, loaded.table) << "\n";
      if (result.truncated) out << "# truncated\n";
    });
  }

  // filter: longest-prefix supervisor front end
  {
    struct FilterOpts {
      std::string desired, plant, out = "-", symbols;
    };
    auto o = std::make_shared<FilterOpts>();
    CLI::App* cmd = app.add_subcommand("filter", "longest-prefix filter for a desired language");
    cmd->add_option("--desired", o->desired, "desired language automaton")->required();
    cmd->add_option("--plant", o->plant, "plant machine")->required();
    cmd->add_option("-o,--out", o->out, "output file (- for stdout)");
    cmd->add_option("--symbols", o->symbols, "fixed symbol table file");
    cmd->callback([&, o] {
      auto loaded = load_fsts({o->desired, o->plant}, o->symbols);
      DesiredLanguage desired = make_desired(loaded.fsts[0]);
      emit_fst(filter(desired, project_input(loaded.fsts[1])), o->out, out);
    });
  }

  // attack: builder mini-DSL
  {
    CLI::App* atk = app.add_subcommand("attack", "build attack transducers");
    atk->require_subcommand(1);

    struct AttackOpts {
      std::string alphabet, symbols, out = "-";
      std::string keep, protected_, inject, vulnerable;
      std::vector<std::string> maps;
      int memory = 1;
      std::string counter, inner;
    };

    auto add_common = [&](CLI::App* cmd, std::shared_ptr<AttackOpts> o, bool needs_alphabet) {
      if (needs_alphabet)
        cmd->add_option("--alphabet", o->alphabet, "comma-separated symbol names");
      cmd->add_option("--symbols", o->symbols, "fixed symbol table file");
      cmd->add_option("-o,--out", o->out, "output file (- for stdout)");
    };

    {
      auto o = std::make_shared<AttackOpts>();
      CLI::App* cmd = atk->add_subcommand("projection", "erase all symbols outside --keep");
      cmd->add_option("--keep", o->keep, "symbols passed through unchanged");
      add_common(cmd, o, true);
      cmd->callback([&, o] {
        SymbolTable table = attack_alphabet(o->alphabet, o->symbols);
        emit_fst(projection_attack(table, parse_symbol_set(o->keep, table)), o->out, out);
      });
    }
    {
      auto o = std::make_shared<AttackOpts>();
      CLI::App* cmd = atk->add_subcommand("deletion", "optionally drop unprotected symbols");
      cmd->add_option("--protected", o->protected_, "symbols that cannot be dropped");
      add_common(cmd, o, true);
      cmd->callback([&, o] {
        SymbolTable table = attack_alphabet(o->alphabet, o->symbols);
        emit_fst(deletion_attack(table, parse_symbol_set(o->protected_, table)), o->out, out);
      });
    }
    {
      auto o = std::make_shared<AttackOpts>();
      CLI::App* cmd = atk->add_subcommand("injection", "insert symbols from --inject anywhere");
      cmd->add_option("--inject", o->inject, "injectable symbols");
      add_common(cmd, o, true);
      cmd->callback([&, o] {
        SymbolTable table = attack_alphabet(o->alphabet, o->symbols);
        emit_fst(injection_attack(table, parse_symbol_set(o->inject, table)), o->out, out);
      });
    }
    {
      auto o = std::make_shared<AttackOpts>();
      CLI::App* cmd =
          atk->add_subcommand("rep-rem", "replace or remove symbols by a per-symbol rule");
      cmd->add_option("--map", o->maps, "rule entry lhs=rhs, rhs may be <eps>; repeatable")
          ->required();
      add_common(cmd, o, true);
      cmd->callback([&, o] {
        SymbolTable table = attack_alphabet(o->alphabet, o->symbols);
        ReplacementRule rule;
        for (const auto& entry : o->maps) {
          size_t eq = entry.find('=');
          if (eq == std::string::npos)
            throw FstError("malformed --map entry '" + entry + "', expected lhs=rhs");
          std::string lhs = entry.substr(0, eq);
          std::string rhs = entry.substr(eq + 1);
          auto l = table.find(lhs);
          if (!l || *l == kEpsilon) throw FstError("unknown symbol '" + lhs + "'");
          Symbol r = kEpsilon;
          if (rhs != kEpsilonName) {
            auto found = table.find(rhs);
            if (!found || *found == kEpsilon) throw FstError("unknown symbol '" + rhs + "'");
            r = *found;
          }
          rule.mapping[*l].insert(r);
        }
        emit_fst(replacement_removal_attack(table, rule), o->out, out);
      });
    }
    {
      auto o = std::make_shared<AttackOpts>();
      CLI::App* cmd =
          atk->add_subcommand("ins-rem", "inject or remove the vulnerable symbols anywhere");
      cmd->add_option("--vulnerable", o->vulnerable, "symbols that may be injected or removed");
      add_common(cmd, o, true);
      cmd->callback([&, o] {
        SymbolTable table = attack_alphabet(o->alphabet, o->symbols);
        emit_fst(injection_removal_attack(table, parse_symbol_set(o->vulnerable, table)), o->out,
                 out);
      });
    }
    {
      auto o = std::make_shared<AttackOpts>();
      CLI::App* cmd = atk->add_subcommand("replay", "record a prefix, then replay it cyclically");
      cmd->add_option("--n", o->memory, "record length (memory)")->required();
      add_common(cmd, o, true);
      cmd->callback([&, o] {
        SymbolTable table = attack_alphabet(o->alphabet, o->symbols);
        emit_fst(replay_attack(table, o->memory), o->out, out);
      });
    }
    {
      auto o = std::make_shared<AttackOpts>();
      CLI::App* cmd =
          atk->add_subcommand("freq", "gate an attack by a D/E frequency counter");
      cmd->add_option("--counter", o->counter, "counter automaton over {D, E}")->required();
      cmd->add_option("--inner", o->inner, "attack machine to constrain")->required();
      add_common(cmd, o, false);
      cmd->callback([&, o] {
        auto loaded = load_fsts({o->inner}, o->symbols);
        FrequencyCounter counter = make_frequency_counter(read_fst(slurp(o->counter)));
        emit_fst(frequency_constrain(loaded.fsts[0], counter), o->out, out);
      });
    }
  }

  // synth: supervisor synthesis
  {
    struct SynthOpts {
      std::string mode, plant, attack_s, attack_a, desired, symbols;
      std::string supervisor_out = "supervisor.fst", superset_out;
      bool drop_plant_inverse = false;
    };
    auto o = std::make_shared<SynthOpts>();
    CLI::App* cmd = app.add_subcommand("synth", "synthesize an attack-resilient supervisor");
    cmd->add_option("mode", o->mode, "sensor, actuator, or both")
        ->required()
        ->check(CLI::IsMember({"sensor", "actuator", "both"}));
    cmd->add_option("--plant", o->plant, "plant machine")->required();
    cmd->add_option("--attack-s", o->attack_s, "sensor attack machine");
    cmd->add_option("--attack-a", o->attack_a, "actuator attack machine");
    cmd->add_option("--desired", o->desired, "desired language automaton")->required();
    cmd->add_option("--supervisor-out", o->supervisor_out, "supervisor output file");
    cmd->add_option("--superset-out", o->superset_out,
                    "also write the minimal controllable superset automaton");
    cmd->add_flag("--drop-plant-inverse", o->drop_plant_inverse,
                  "omit the inverted plant from the supervisor chain");
    cmd->add_option("--symbols", o->symbols, "fixed symbol table file");
    cmd->callback([&, o] {
      bool needs_sensor = o->mode != "actuator";
      bool needs_actuator = o->mode != "sensor";
      if (needs_sensor && o->attack_s.empty())
        throw FstError("synth " + o->mode + " requires --attack-s");
      if (needs_actuator && o->attack_a.empty())
        throw FstError("synth " + o->mode + " requires --attack-a");

      std::vector<std::string> paths = {o->plant, o->desired};
      if (needs_sensor) paths.push_back(o->attack_s);
      if (needs_actuator) paths.push_back(o->attack_a);
      auto loaded = load_fsts(paths, o->symbols);
      const Fst& plant = loaded.fsts[0];
      DesiredLanguage desired = make_desired(loaded.fsts[1]);
      const Fst* attack_s = needs_sensor ? &loaded.fsts[2] : nullptr;
      const Fst* attack_a = needs_actuator ? &loaded.fsts[needs_sensor ? 3 : 2] : nullptr;

      SynthesisReport report;
      if (o->mode == "sensor")
        report = synth_sensor(plant, *attack_s, desired);
      else if (o->mode == "actuator")
        report = synth_actuator(plant, *attack_a, desired, nullptr, o->drop_plant_inverse);
      else
        report = synth_both(plant, *attack_a, *attack_s, desired, nullptr, o->drop_plant_inverse);

      emit_fst(report.supervisor, o->supervisor_out, out);
      if (!o->superset_out.empty()) emit_fst(report.minimal_superset, o->superset_out, out);
      exit_code = detail::report_synthesis(report, loaded.table, out);
    });
  }

  // check: verdicts with exit codes
  {
    CLI::App* check = app.add_subcommand("check", "decision procedures");
    check->require_subcommand(1);

    {
      struct NbOpts {
        std::string fst, relation, symbols;
      };
      auto o = std::make_shared<NbOpts>();
      CLI::App* cmd = check->add_subcommand("nonblocking", "nonblocking check of an FST");
      cmd->add_option("--fst", o->fst, "machine to check")->required();
      cmd->add_option("--relation", o->relation, "sub-relation driving the check")->required();
      cmd->add_option("--symbols", o->symbols, "fixed symbol table file");
      cmd->callback([&, o] {
        auto loaded = load_fsts({o->fst, o->relation}, o->symbols);
        NonblockingReport report = check_nonblocking(loaded.fsts[0], loaded.fsts[1]);
        exit_code = detail::report_nonblocking(report, loaded.table, loaded.table, out);
      });
    }
    {
      struct LoopOpts {
        std::string mode, plant, supervisor, attack_s, attack_a, relation, symbols;
      };
      auto o = std::make_shared<LoopOpts>();
      CLI::App* cmd =
          check->add_subcommand("loop-nonblocking", "nonblocking check of the attacked loop");
      cmd->add_option("--mode", o->mode, "sensor, actuator, or both")
          ->required()
          ->check(CLI::IsMember({"sensor", "actuator", "both"}));
      cmd->add_option("--plant", o->plant, "plant machine")->required();
      cmd->add_option("--supervisor", o->supervisor, "supervisor machine")->required();
      cmd->add_option("--attack-s", o->attack_s, "sensor attack (identity when omitted)");
      cmd->add_option("--attack-a", o->attack_a, "actuator attack (identity when omitted)");
      cmd->add_option("--relation", o->relation, "explicit relation override");
      cmd->add_option("--symbols", o->symbols, "fixed symbol table file");
      cmd->callback([&, o] {
        std::vector<std::string> paths = {o->plant, o->supervisor};
        if (!o->attack_s.empty()) paths.push_back(o->attack_s);
        if (!o->attack_a.empty()) paths.push_back(o->attack_a);
        if (!o->relation.empty()) paths.push_back(o->relation);
        auto loaded = load_fsts(paths, o->symbols);
        size_t next = 2;
        Fst attack_s =
            o->attack_s.empty() ? identity_fst(loaded.table) : loaded.fsts[next++];
        Fst attack_a =
            o->attack_a.empty() ? identity_fst(loaded.table) : loaded.fsts[next++];
        const Fst* relation = o->relation.empty() ? nullptr : &loaded.fsts[next];
        LoopMode mode = o->mode == "sensor"     ? LoopMode::sensor
                        : o->mode == "actuator" ? LoopMode::actuator
                                                : LoopMode::both;
        NonblockingReport report = check_closed_loop_nonblocking(
            loaded.fsts[0], attack_s, attack_a, loaded.fsts[1], mode, relation);
        exit_code = detail::report_nonblocking(report, loaded.table, loaded.table, out);
      });
    }
    {
      struct CtlOpts {
        std::string plant, attack_a, desired, symbols;
        bool relaxed = false;
      };
      auto o = std::make_shared<CtlOpts>();
      CLI::App* cmd = check->add_subcommand("controllable", "actuator-attack controllability");
      cmd->add_option("--plant", o->plant, "plant machine")->required();
      cmd->add_option("--attack-a", o->attack_a, "actuator attack machine")->required();
      cmd->add_option("--desired", o->desired, "desired language automaton")->required();
      cmd->add_flag("--relaxed", o->relaxed,
                    "allow L_out(attack) strictly inside L_in(plant)");
      cmd->add_option("--symbols", o->symbols, "fixed symbol table file");
      cmd->callback([&, o] {
        auto loaded = load_fsts({o->plant, o->attack_a, o->desired}, o->symbols);
        DesiredLanguage desired = make_desired(loaded.fsts[2]);
        if (o->relaxed) {
          Verdict verdict = check_controllable_relaxed(loaded.fsts[0], loaded.fsts[1], desired);
          exit_code =
              detail::report_verdict(verdict, "controllable", "not controllable", loaded.table, out);
          return;
        }
        SynthesisReport report = synth_actuator(loaded.fsts[0], loaded.fsts[1], desired);
        exit_code = detail::report_synthesis(report, loaded.table, out);
      });
    }
  }

  // oracle: bounded brute-force cross-checks
  {
    CLI::App* oracle = app.add_subcommand("oracle", "bounded brute-force oracles");
    oracle->require_subcommand(1);

    {
      struct EqOpts {
        std::string a, b, symbols;
        int max_len = 6;
      };
      auto o = std::make_shared<EqOpts>();
      CLI::App* cmd = oracle->add_subcommand("relation-equal", "bounded relation equality");
      cmd->add_option("a", o->a, "first machine")->required();
      cmd->add_option("b", o->b, "second machine")->required();
      cmd->add_option("--max-len", o->max_len, "word length bound");
      cmd->add_option("--symbols", o->symbols, "fixed symbol table file");
      cmd->callback([&, o] {
        auto loaded = load_fsts({o->a, o->b}, o->symbols);
        Verdict verdict = relation_equal_upto(loaded.fsts[0], loaded.fsts[1], o->max_len);
        exit_code = detail::report_verdict(verdict, "equal", "not equal", loaded.table, out);
      });
    }
    {
      struct IncOpts {
        std::string a, b, symbols;
      };
      auto o = std::make_shared<IncOpts>();
      CLI::App* cmd =
          oracle->add_subcommand("language-included", "exact automaton language inclusion");
      cmd->add_option("a", o->a, "candidate subset automaton")->required();
      cmd->add_option("b", o->b, "candidate superset automaton")->required();
      cmd->add_option("--symbols", o->symbols, "fixed symbol table file");
      cmd->callback([&, o] {
        auto loaded = load_fsts({o->a, o->b}, o->symbols);
        Verdict verdict = language_included(loaded.fsts[0], loaded.fsts[1]);
        exit_code =
            detail::report_verdict(verdict, "included", "not included", loaded.table, out);
      });
    }
    {
      struct ApplyOpts {
        std::string fst, input, symbols;
        int max_len = 6;
      };
      auto o = std::make_shared<ApplyOpts>();
      CLI::App* cmd = oracle->add_subcommand("apply", "enumerate outputs for one input word");
      cmd->add_option("--fst", o->fst, "machine")->required();
      cmd->add_option("--input", o->input, "input word");
      cmd->add_option("--max-len", o->max_len, "output length bound");
      cmd->add_option("--symbols", o->symbols, "fixed symbol table file");
      cmd->callback([&, o] {
        auto loaded = load_fsts({o->fst}, o->symbols);
        ApplyResult result = apply(loaded.fsts[0], parse_word(o->input, loaded.table), o->max_len);
        for (const Word& w : result.outputs) out << format_word(w, loaded.table) << "\n";
        if (result.truncated) out << "# truncated\n";
      });
    }

    struct LoopOracleOpts {
      std::string plant, supervisor, attack_s, attack_a, input, symbols;
      int max_len = 6;
    };
    auto add_loop_machines = [&](CLI::App* cmd, std::shared_ptr<LoopOracleOpts> o) {
      cmd->add_option("--plant", o->plant, "plant machine")->required();
      cmd->add_option("--supervisor", o->supervisor, "supervisor machine")->required();
      cmd->add_option("--attack-s", o->attack_s, "sensor attack (identity when omitted)");
      cmd->add_option("--attack-a", o->attack_a, "actuator attack (identity when omitted)");
      cmd->add_option("--symbols", o->symbols, "fixed symbol table file");
    };
    auto load_loop = [&](const std::shared_ptr<LoopOracleOpts>& o) {
      std::vector<std::string> paths = {o->plant, o->supervisor};
      if (!o->attack_s.empty()) paths.push_back(o->attack_s);
      if (!o->attack_a.empty()) paths.push_back(o->attack_a);
      auto loaded = load_fsts(paths, o->symbols);
      size_t next = 2;
      Fst attack_s = o->attack_s.empty() ? identity_fst(loaded.table) : loaded.fsts[next++];
      Fst attack_a = o->attack_a.empty() ? identity_fst(loaded.table) : loaded.fsts[next++];
      return std::tuple<LoadedFsts, Fst, Fst>(std::move(loaded), std::move(attack_s),
                                              std::move(attack_a));
    };

    {
      auto o = std::make_shared<LoopOracleOpts>();
      CLI::App* cmd =
          oracle->add_subcommand("loop-member", "is the word echoed by the closed loop?");
      add_loop_machines(cmd, o);
      cmd->add_option("--input", o->input, "input word");
      cmd->callback([&, o] {
        auto [loaded, attack_s, attack_a] = load_loop(o);
        bool member = closed_loop_member(loaded.fsts[0], attack_s, loaded.fsts[1], attack_a,
                                         parse_word(o->input, loaded.table));
        out << (member ? "member\n" : "not member\n");
        exit_code = member ? 0 : 1;
      });
    }
    {
      auto o = std::make_shared<LoopOracleOpts>();
      CLI::App* cmd =
          oracle->add_subcommand("loop-language", "closed-loop plant-input words up to a bound");
      add_loop_machines(cmd, o);
      cmd->add_option("--max-len", o->max_len, "word length bound");
      cmd->callback([&, o] {
        auto [loaded, attack_s, attack_a] = load_loop(o);
        auto words = closed_loop_language_upto(loaded.fsts[0], attack_s, loaded.fsts[1], attack_a,
                                               o->max_len);
        for (const Word& w : words) out << format_word(w, loaded.table) << "\n";
      });
    }
  }

  // casestudy: scheduling instance generators + one-shot synthesis
  {
    struct CaseOpts {
      int n = 2, m = 2;
      std::string emit;
    };
    auto o = std::make_shared<CaseOpts>();
    CLI::App* cmd = app.add_subcommand("casestudy", "multi-player scheduling instance");
    cmd->add_option("--n", o->n, "number of players");
    cmd->add_option("--m", o->m, "tasks per player");
    cmd->add_option("--emit-all", o->emit, "directory for generated machines");
    cmd->callback([&, o] {
      SchedulingInstance inst = make_instance(o->n, o->m);
      Fst plant = gen_plant(inst);
      Fst sensor = gen_sensor_attack(inst);
      Fst actuator = gen_actuator_attack(inst);
      DesiredLanguage desired = gen_desired(inst);
      SynthesisReport report = synth_both(plant, actuator, sensor, desired, nullptr, true);
      out << "desired states: " << desired.automaton.num_states << "\n";
      if (!o->emit.empty()) {
        std::filesystem::create_directories(o->emit);
        auto path = [&](const char* name) {
          return (std::filesystem::path(o->emit) / name).string();
        };
        emit_fst(plant, path("plant.fst"), out);
        emit_fst(desired.automaton, path("desired.fst"), out);
        emit_fst(sensor, path("sensor_attack.fst"), out);
        emit_fst(actuator, path("actuator_attack.fst"), out);
        emit_fst(report.supervisor, path("supervisor.fst"), out);
        std::ofstream symbols(path("symbols.tsv"), std::ios::binary);
        if (!symbols) throw FstError("cannot open '" + path("symbols.tsv") + "' for writing");
        write_symbols(symbols, inst.alphabet);
      }
      exit_code = detail::report_synthesis(report, inst.alphabet, out);
    });
  }

  // bench: scaling benchmark over (players, tasks) rows
  {
    struct BenchOpts {
      std::string rows = "9:2,9:3,99:2", out_path;
      int reps = 3;
      long long budget = 10000;
    };
    auto o = std::make_shared<BenchOpts>();
    CLI::App* cmd = app.add_subcommand("bench", "time synthesis over scheduling instances");
    cmd->add_option("--rows", o->rows, "comma-separated rows m:n (tasks:players)");
    cmd->add_option("--reps", o->reps, "repetitions per row");
    cmd->add_option("--budget", o->budget, "skip rows above this desired-state count");
    cmd->add_option("--out", o->out_path, "TSV output file (stdout when omitted)");
    cmd->callback([&, o] {
      std::vector<std::pair<int, int>> rows;
      for (const auto& entry : split_csv(o->rows)) {
        size_t colon = entry.find(':');
        if (colon == std::string::npos)
          throw FstError("malformed --rows entry '" + entry + "', expected m:n");
        try {
          int m = std::stoi(entry.substr(0, colon));
          int n = std::stoi(entry.substr(colon + 1));
          rows.emplace_back(n, m);
        } catch (const std::exception&) {
          throw FstError("malformed --rows entry '" + entry + "', expected m:n");
        }
      }
      auto records = run_benchmark(rows, o->reps, o->budget);
      if (o->out_path.empty()) {
        write_bench_tsv(out, records);
      } else {
        std::ofstream file(o->out_path, std::ios::binary);
        if (!file) throw FstError("cannot open '" + o->out_path + "' for writing");
        write_bench_tsv(file, records);
      }
    });
  }

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("fstsc");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const FstError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}

}  // namespace fstsc::cli
