#pragma once

#include <optional>
#include <set>
#include <utility>

#include "fstsc/algebra.hpp"
#include "fstsc/fst.hpp"
#include "fstsc/ops.hpp"

namespace fstsc {

// Prefix-closed regular language the closed loop must realize at the plant
// input, carried as an identity-labeled automaton.
struct DesiredLanguage {
  Fst automaton;
};

inline DesiredLanguage make_desired(Fst automaton) {
  automaton.check();
  if (!is_identity_labeled(automaton))
    throw FstError("desired language must be an identity-labeled automaton");
  if (!prefix_closed(automaton))
    throw FstError("desired language must be prefix-closed");
  Fst trimmed = trim(automaton);
  if (trimmed.final_states().empty())
    throw FstError("desired language must be nonempty");
  return {std::move(automaton)};
}

// Peak intermediate machine size, a portable proxy for synthesis memory use.
struct SynthStats {
  size_t peak_transitions = 0;

  void note(const Fst& fst) {
    peak_transitions = std::max(peak_transitions, fst.transitions.size());
  }
};

struct SynthesisReport {
  Fst supervisor;
  bool controllable = false;
  bool weakly_controllable = false;
  // Identity-labeled automaton for the minimal controllable superset K-tilde.
  Fst minimal_superset;
  // Shortest word in K-tilde \ K; present exactly when not controllable.
  std::optional<Word> witness;
};

namespace detail {

// Assumption 1: the sensor attack accepts exactly what the plant generates.
inline void check_assumption1(const Fst& plant, const Fst& sensor_attack) {
  Fst attack_in = project_input(sensor_attack);
  Fst plant_out = project_output(plant);
  if (!language_included(attack_in, plant_out).holds)
    throw FstError("Assumption 1 violation: L_in(sensor attack) is not contained in L_out(plant)");
  if (!language_included(plant_out, attack_in).holds)
    throw FstError("Assumption 1 violation: L_out(plant) is not contained in L_in(sensor attack)");
}

// Assumption 2: the actuator attack generates exactly what the plant accepts.
inline void check_assumption2(const Fst& plant, const Fst& actuator_attack) {
  Fst attack_out = project_output(actuator_attack);
  Fst plant_in = project_input(plant);
  if (!language_included(attack_out, plant_in).holds)
    throw FstError("Assumption 2 violation: L_out(actuator attack) is not contained in L_in(plant)");
  if (!language_included(plant_in, attack_out).holds)
    throw FstError("Assumption 2 violation: L_in(plant) is not contained in L_out(actuator attack)");
}

inline void check_desired_within_plant(const Fst& plant, const DesiredLanguage& desired) {
  if (!language_included(desired.automaton, project_input(plant)).holds)
    throw FstError("desired language is not contained in the plant input language");
}

// K-tilde machinery shared by the actuator and combined synthesizers: the
// minimal superset is the output language of M_K composed with the inverted
// attack and the attack again, and controllability is its inclusion in K.
struct ActuatorVerdict {
  Fst superset;
  Verdict inclusion;
};

inline ActuatorVerdict actuator_verdict(const Fst& actuator_attack, const DesiredLanguage& desired,
                                        SynthStats& stats) {
  Fst round_trip = compose(desired.automaton, invert(actuator_attack));
  stats.note(round_trip);
  round_trip = compose(round_trip, actuator_attack);
  stats.note(round_trip);
  Fst superset = trim(project_output(round_trip));
  stats.note(superset);
  Verdict inclusion = language_included(superset, desired.automaton);
  return {std::move(superset), std::move(inclusion)};
}

}  // namespace detail

// Longest-prefix filter: a deterministic transducer mapping every word over
// the alphabet to its longest prefix inside the desired language. Transitions
// staying inside the language copy their symbol; leaving it (and everything
// after) emits epsilon.
inline Fst filter(const DesiredLanguage& desired, const Fst& plant_input_language) {
  detail::require_automaton(plant_input_language, "filter");
  if (!language_included(desired.automaton, plant_input_language).holds)
    throw FstError("filter: desired language is not contained in the plant input language");

  Fst dfa = complete(determinize(trim(desired.automaton)));
  Fst out;
  out.input_alphabet = desired.automaton.input_alphabet;
  out.output_alphabet = desired.automaton.input_alphabet;
  out.initial = dfa.initial;
  for (State s = 0; s < dfa.num_states; ++s) out.add_state(true);
  for (const auto& t : dfa.transitions)
    out.add_transition(t.src, t.ilabel, dfa.is_final(t.dst) ? t.ilabel : kEpsilon, t.dst);
  return out;
}

// Supervisor resilient to a sensor attack: S = A_s^-1 . P^-1 . M_K. Always
// controllable; the closed loop realizes exactly K.
inline SynthesisReport synth_sensor(const Fst& plant, const Fst& sensor_attack,
                                    const DesiredLanguage& desired,
                                    SynthStats* stats = nullptr) {
  plant.check();
  sensor_attack.check();
  detail::check_assumption1(plant, sensor_attack);
  detail::check_desired_within_plant(plant, desired);

  SynthStats local;
  SynthStats& st = stats ? *stats : local;

  Fst chain = compose(invert(sensor_attack), invert(plant));
  st.note(chain);
  Fst supervisor = trim(compose(chain, desired.automaton));
  st.note(supervisor);

  SynthesisReport report;
  report.supervisor = std::move(supervisor);
  report.controllable = true;
  report.weakly_controllable = true;
  report.minimal_superset = desired.automaton;
  return report;
}

// Supervisor resilient to an actuator attack: S = P^-1 . M_K . A_a^-1. The
// closed loop realizes K-tilde = A_a(A_a^-1(K)), which equals K exactly when
// the verdict is controllable. drop_plant_inverse omits the P^-1 factor; for
// identity-shaped plants this leaves the relation unchanged.
inline SynthesisReport synth_actuator(const Fst& plant, const Fst& actuator_attack,
                                      const DesiredLanguage& desired,
                                      SynthStats* stats = nullptr,
                                      bool drop_plant_inverse = false) {
  plant.check();
  actuator_attack.check();
  detail::check_assumption2(plant, actuator_attack);
  detail::check_desired_within_plant(plant, desired);

  SynthStats local;
  SynthStats& st = stats ? *stats : local;

  Fst chain = desired.automaton;
  if (!drop_plant_inverse) {
    chain = compose(invert(plant), chain);
    st.note(chain);
  }
  Fst supervisor = trim(compose(chain, invert(actuator_attack)));
  st.note(supervisor);

  auto verdict = detail::actuator_verdict(actuator_attack, desired, st);

  SynthesisReport report;
  report.supervisor = std::move(supervisor);
  report.controllable = verdict.inclusion.holds;
  report.weakly_controllable = true;
  report.minimal_superset = std::move(verdict.superset);
  report.witness = std::move(verdict.inclusion.witness);
  return report;
}

// Supervisor resilient to both attacks: S = A_s^-1 . P^-1 . M_K . A_a^-1.
// The controllability verdict coincides with the actuator-only one; the
// sensor attack has no influence on it.
inline SynthesisReport synth_both(const Fst& plant, const Fst& actuator_attack,
                                  const Fst& sensor_attack, const DesiredLanguage& desired,
                                  SynthStats* stats = nullptr,
                                  bool drop_plant_inverse = false) {
  plant.check();
  actuator_attack.check();
  sensor_attack.check();
  detail::check_assumption1(plant, sensor_attack);
  detail::check_assumption2(plant, actuator_attack);
  detail::check_desired_within_plant(plant, desired);

  SynthStats local;
  SynthStats& st = stats ? *stats : local;

  Fst chain = invert(sensor_attack);
  if (!drop_plant_inverse) {
    chain = compose(chain, invert(plant));
    st.note(chain);
  }
  chain = compose(chain, desired.automaton);
  st.note(chain);
  Fst supervisor = trim(compose(chain, invert(actuator_attack)));
  st.note(supervisor);

  auto verdict = detail::actuator_verdict(actuator_attack, desired, st);

  SynthesisReport report;
  report.supervisor = std::move(supervisor);
  report.controllable = verdict.inclusion.holds;
  report.weakly_controllable = true;
  report.minimal_superset = std::move(verdict.superset);
  report.witness = std::move(verdict.inclusion.witness);
  return report;
}

// Relaxed controllability for attacks whose output language is a strict
// subset of the plant input language: K must additionally be reachable
// through the attack, i.e. K subset-of L_out(A_a).
inline Verdict check_controllable_relaxed(const Fst& plant, const Fst& actuator_attack,
                                          const DesiredLanguage& desired) {
  plant.check();
  actuator_attack.check();
  Fst attack_out = project_output(actuator_attack);
  if (!language_included(attack_out, project_input(plant)).holds)
    throw FstError("relaxed check: L_out(actuator attack) is not contained in L_in(plant)");
  detail::check_desired_within_plant(plant, desired);

  SynthStats stats;
  auto verdict = detail::actuator_verdict(actuator_attack, desired, stats);
  if (!verdict.inclusion.holds) return verdict.inclusion;
  return language_included(desired.automaton, attack_out);
}

// Closed-loop chain P . A_s . S . A_a as one machine; its output side is what
// actually reaches the plant input under supervision and attack.
inline Fst closed_loop_chain(const Fst& plant, const Fst& sensor_attack, const Fst& supervisor,
                             const Fst& actuator_attack) {
  return trim(compose(compose(compose(plant, sensor_attack), supervisor), actuator_attack));
}

// Does the closed loop echo `input`? Decided exactly by composing the chain
// with the single-word identity machine on both sides and testing for an
// accepting path.
inline bool closed_loop_member(const Fst& plant, const Fst& sensor_attack, const Fst& supervisor,
                               const Fst& actuator_attack, const Word& input) {
  Fst chain = closed_loop_chain(plant, sensor_attack, supervisor, actuator_attack);
  Fst left = word_fst(input, chain.input_alphabet);
  Fst right = word_fst(input, chain.output_alphabet);
  Fst diagonal = trim(compose(compose(left, chain), right));
  return !diagonal.final_states().empty();
}

// Words of length <= max_len that the closed loop can deliver to the plant
// input: the bounded output language of the chain.
inline std::set<Word> closed_loop_language_upto(const Fst& plant, const Fst& sensor_attack,
                                                const Fst& supervisor, const Fst& actuator_attack,
                                                int max_len) {
  Fst chain = closed_loop_chain(plant, sensor_attack, supervisor, actuator_attack);
  return language_upto(project_output(chain), max_len);
}

}  // namespace fstsc
