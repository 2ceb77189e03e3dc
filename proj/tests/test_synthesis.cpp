#include <catch2/catch_amalgamated.hpp>

#include "fstsc/algebra.hpp"
#include "fstsc/attacks.hpp"
#include "fstsc/ops.hpp"
#include "fstsc/synthesis.hpp"
#include "generators.hpp"
#include "instances.hpp"
#include "oracle.hpp"

using namespace fstsc;
using Catch::Matchers::ContainsSubstring;

namespace {

Word w(const SymbolTable& sigma, std::initializer_list<const char*> names) {
  Word out;
  for (const char* n : names) out.push_back(sigma.id(n));
  return out;
}

DesiredLanguage two_step() { return make_desired(golden::two_step_desired()); }

}  // namespace

TEST_CASE("make_desired validates its automaton") {
  REQUIRE_NOTHROW(make_desired(golden::two_step_desired()));
  REQUIRE_THROWS_WITH(make_desired(golden::compose_left()),
                      ContainsSubstring("identity-labeled"));

  SymbolTable sigma = golden::sigma2();
  Fst gap;
  gap.input_alphabet = sigma;
  gap.output_alphabet = sigma;
  for (int s = 0; s < 2; ++s) gap.add_state(s == 1);
  gap.add_transition(0, 1, 1, 1);
  REQUIRE_THROWS_WITH(make_desired(gap), ContainsSubstring("prefix-closed"));

  Fst hollow;
  hollow.input_alphabet = sigma;
  hollow.output_alphabet = sigma;
  hollow.add_state(false);
  REQUIRE_THROWS_WITH(make_desired(hollow), ContainsSubstring("nonempty"));
}

TEST_CASE("the filter maps every plant word to its longest desired prefix") {
  SymbolTable sigma = golden::sigma2();
  Fst plant_language = project_input(golden::actuator_plant());
  Fst shaped = filter(two_step(), plant_language);
  REQUIRE(relation_equal_upto(shaped, golden::two_step_filter(), 4).holds);

  auto desired_words = golden::two_step_words(sigma, 8);
  for (const Word& input : words_upto(sigma, 4)) {
    auto result = apply(shaped, input, 4);
    REQUIRE(result.outputs == std::set<Word>{oracle::longest_prefix_in(desired_words, input)});
  }

  SECTION("desired words pass through unchanged") {
    for (const Word& input : desired_words) {
      REQUIRE(apply(shaped, input, 4).outputs == std::set<Word>{input});
    }
  }

  SECTION("the desired language must sit inside the plant") {
    Fst small = word_fst(w(sigma, {"i1"}), sigma);
    for (State s = 0; s < small.num_states; ++s) small.set_final(s);
    REQUIRE_THROWS_WITH(filter(two_step(), small),
                        ContainsSubstring("not contained in the plant input language"));
  }
}

TEST_CASE("sensor synthesis reproduces the rewrite-instance supervisor") {
  Fst plant = golden::sensor_plant();
  Fst attack = golden::sensor_rewrite_attack();
  DesiredLanguage desired = make_desired(golden::alternating_desired());

  SynthStats stats;
  SynthesisReport report = synth_sensor(plant, attack, desired, &stats);
  REQUIRE(report.controllable);
  REQUIRE(report.weakly_controllable);
  REQUIRE_FALSE(report.witness.has_value());
  REQUIRE(stats.peak_transitions > 0);
  REQUIRE(relation_equal_upto(report.supervisor, golden::sensor_supervisor(), 6).holds);
  REQUIRE(language_equal(report.minimal_superset, desired.automaton));
}

TEST_CASE("sensor synthesis demands assumption one in both directions") {
  SymbolTable sigma = golden::sigma2();
  DesiredLanguage desired = make_desired(golden::alternating_desired());

  // The rewrite attack only understands i2 reports, but this plant also
  // reports i1.
  Fst chatty = identity_fst(sigma);
  REQUIRE_THROWS_WITH(synth_sensor(chatty, golden::sensor_rewrite_attack(), desired),
                      ContainsSubstring("L_out(plant) is not contained"));

  // The identity attack expects reports the muted plant never makes.
  Fst muted = golden::sensor_plant();
  REQUIRE_THROWS_WITH(synth_sensor(muted, identity_fst(sigma), desired),
                      ContainsSubstring("L_in(sensor attack) is not contained"));
}

TEST_CASE("an identity sensor attack leaves the desired language as supervisor") {
  SymbolTable sigma = golden::sigma2();
  Fst plant = golden::actuator_plant();
  DesiredLanguage desired = two_step();
  SynthesisReport report = synth_sensor(plant, identity_fst(sigma), desired);
  REQUIRE(report.controllable);
  REQUIRE(relation_equal_upto(report.supervisor, desired.automaton, 5).holds);
}

TEST_CASE("actuator synthesis accepts the rewrite-once attack") {
  Fst plant = golden::actuator_plant();
  DesiredLanguage desired = two_step();

  SynthesisReport report = synth_actuator(plant, golden::actuator_attack_one(), desired);
  REQUIRE(report.controllable);
  REQUIRE(report.weakly_controllable);
  REQUIRE_FALSE(report.witness.has_value());
  REQUIRE(relation_equal_upto(report.supervisor, golden::actuator_supervisor_one(), 6).holds);

  // What the plant actually executes under supervision is exactly the
  // desired language.
  Fst executed = project_output(compose(report.supervisor, golden::actuator_attack_one()));
  REQUIRE(language_upto(executed, 6) == golden::two_step_words(plant.input_alphabet, 6));
}

TEST_CASE("actuator synthesis rejects the arbitrary-rewrite attack") {
  SymbolTable sigma = golden::sigma2();
  Fst plant = golden::actuator_plant();
  DesiredLanguage desired = two_step();

  SynthesisReport report = synth_actuator(plant, golden::actuator_attack_two(), desired);
  REQUIRE_FALSE(report.controllable);
  REQUIRE(report.weakly_controllable);
  REQUIRE(relation_equal_upto(report.supervisor, golden::actuator_supervisor_two(), 5).holds);

  // The minimal controllable superset blows up to all words of length two.
  auto superset = golden::two_step_superset_words(sigma, 2);
  REQUIRE(language_upto(report.minimal_superset, 4) == superset);

  REQUIRE(report.witness.has_value());
  REQUIRE(report.witness->size() == 2);
  REQUIRE(superset.count(*report.witness) == 1);
  REQUIRE(golden::two_step_words(sigma, 4).count(*report.witness) == 0);
}

TEST_CASE("actuator synthesis demands assumption two in both directions") {
  SymbolTable sigma = golden::sigma2();
  DesiredLanguage desired = two_step();

  // This attack can emit i1 i1, which the two-step plant cannot execute.
  Fst wide = identity_fst(sigma);
  Fst narrow_plant = golden::two_step_desired();
  REQUIRE_THROWS_WITH(
      synth_actuator(narrow_plant, wide, make_desired(golden::two_step_desired())),
      ContainsSubstring("L_out(actuator attack) is not contained"));

  // This attack only ever emits i2s and cannot reach the rest of the plant.
  ReplacementRule rule;
  rule.mapping[sigma.id("i1")] = {sigma.id("i2")};
  rule.mapping[sigma.id("i2")] = {sigma.id("i2")};
  Fst narrow = replacement_removal_attack(sigma, rule);
  REQUIRE_THROWS_WITH(synth_actuator(golden::actuator_plant(), narrow, desired),
                      ContainsSubstring("L_in(plant) is not contained"));
}

TEST_CASE("the desired language must sit inside the plant input language") {
  // An attack that satisfies assumption two for the small plant, so the
  // desired-language containment check is the one that fires.
  Fst small_plant = golden::two_step_desired();
  Fst attack = compose(deletion_attack(golden::sigma2(), {}), small_plant);
  DesiredLanguage everything = make_desired(identity_fst(golden::sigma2()));
  REQUIRE_THROWS_WITH(synth_actuator(small_plant, attack, everything),
                      ContainsSubstring("desired language is not contained"));
}

TEST_CASE("combined synthesis handles both attack pairs") {
  Fst plant = golden::actuator_plant();
  DesiredLanguage desired = two_step();

  SECTION("rewrite-once actuator with hiding sensor") {
    SynthesisReport report = synth_both(plant, golden::actuator_attack_one(),
                                        golden::combined_sensor_attack_one(), desired);
    REQUIRE(report.controllable);
    REQUIRE(relation_equal_upto(report.supervisor, golden::combined_supervisor_one(), 5).holds);
  }

  SECTION("arbitrary actuator with constant sensor") {
    SynthesisReport report = synth_both(plant, golden::actuator_attack_two(),
                                        golden::combined_sensor_attack_two(), desired);
    REQUIRE_FALSE(report.controllable);
    REQUIRE(report.weakly_controllable);
    REQUIRE(relation_equal_upto(report.supervisor, golden::combined_supervisor_two(), 5).holds);
    REQUIRE(language_upto(report.minimal_superset, 4) ==
            golden::two_step_superset_words(plant.input_alphabet, 2));
  }
}

TEST_CASE("the sensor attack never influences controllability") {
  gen::Rng rng(1);
  int done = 0;
  while (done < 25) {
    gen::SupervisionInstance inst = gen::random_instance(rng, 4);
    SynthesisReport with_both =
        synth_both(inst.plant, inst.actuator_attack, inst.sensor_attack, inst.desired);
    SynthesisReport actuator_only =
        synth_actuator(inst.plant, inst.actuator_attack, inst.desired);
    REQUIRE(with_both.controllable == actuator_only.controllable);
    REQUIRE(with_both.witness.has_value() == actuator_only.witness.has_value());
    ++done;
  }
}

TEST_CASE("the desired language is always weakly achievable") {
  gen::Rng rng(7);
  for (int round = 0; round < 25; ++round) {
    gen::SupervisionInstance inst = gen::random_instance(rng, 4);
    SynthesisReport report = synth_actuator(inst.plant, inst.actuator_attack, inst.desired);
    REQUIRE(report.weakly_controllable);

    // K is always contained in the minimal controllable superset, and the
    // superset language is prefix-closed.
    REQUIRE(language_included(inst.desired.automaton, report.minimal_superset).holds);
    auto words = language_upto(report.minimal_superset, 4);
    REQUIRE(words == oracle::prefix_close(words));
  }
}

TEST_CASE("relaxed controllability only needs the attack output inside the plant") {
  SymbolTable sigma = golden::sigma2();
  Fst plant = golden::actuator_plant();
  DesiredLanguage desired = two_step();

  SECTION("agrees with the strict check when assumption two holds") {
    Verdict strict_one = check_controllable_relaxed(plant, golden::actuator_attack_one(), desired);
    REQUIRE(strict_one.holds);
    Verdict strict_two = check_controllable_relaxed(plant, golden::actuator_attack_two(), desired);
    REQUIRE_FALSE(strict_two.holds);
    REQUIRE(strict_two.witness.has_value());
  }

  SECTION("attacks with strictly smaller output are allowed") {
    ReplacementRule rule;
    rule.mapping[sigma.id("i1")] = {sigma.id("i2")};
    rule.mapping[sigma.id("i2")] = {sigma.id("i2")};
    Fst narrow = replacement_removal_attack(sigma, rule);

    // K must also stay within reach of the attack outputs.
    Fst pair_line;
    pair_line.input_alphabet = sigma;
    pair_line.output_alphabet = sigma;
    for (int s = 0; s < 3; ++s) pair_line.add_state(true);
    pair_line.add_transition(0, 2, 2, 1);
    pair_line.add_transition(1, 2, 2, 2);
    DesiredLanguage i2_only = make_desired(pair_line);
    REQUIRE(check_controllable_relaxed(plant, narrow, i2_only).holds);

    // The two-step language contains i1, which the attack can never emit.
    Verdict verdict = check_controllable_relaxed(plant, narrow, desired);
    REQUIRE_FALSE(verdict.holds);
    REQUIRE(verdict.witness.has_value());
    REQUIRE(verdict.witness.value() == w(sigma, {"i1"}));
  }

  SECTION("rejects attacks whose output leaves the plant") {
    Fst wide = identity_fst(sigma);
    Fst narrow_plant = golden::two_step_desired();
    REQUIRE_THROWS_WITH(
        check_controllable_relaxed(narrow_plant, wide, make_desired(golden::two_step_desired())),
        ContainsSubstring("relaxed check"));
  }
}

TEST_CASE("closed-loop membership and language agree with the chain") {
  SymbolTable sigma = golden::sigma2();
  Fst plant = golden::actuator_plant();
  Fst identity = identity_fst(sigma);

  SECTION("rewrite-once loop executes exactly the desired language") {
    SynthesisReport report = synth_actuator(plant, golden::actuator_attack_one(), two_step());
    auto words =
        closed_loop_language_upto(plant, identity, report.supervisor,
                                  golden::actuator_attack_one(), 5);
    REQUIRE(words == golden::two_step_words(sigma, 5));
    for (const Word& word : golden::two_step_words(sigma, 5)) {
      REQUIRE(closed_loop_member(plant, identity, report.supervisor,
                                 golden::actuator_attack_one(), word));
    }
    REQUIRE_FALSE(closed_loop_member(plant, identity, report.supervisor,
                                     golden::actuator_attack_one(), w(sigma, {"i1", "i1"})));
  }

  SECTION("sensor-rewrite loop alternates forever") {
    SynthesisReport report =
        synth_sensor(golden::sensor_plant(), golden::sensor_rewrite_attack(),
                     make_desired(golden::alternating_desired()));
    auto words = closed_loop_language_upto(golden::sensor_plant(),
                                           golden::sensor_rewrite_attack(), report.supervisor,
                                           identity, 6);
    REQUIRE(words == golden::alternating_words(sigma, 6));
  }
}

TEST_CASE("dropping the plant inverse changes nothing over identity plants") {
  Fst plant = golden::actuator_plant();
  DesiredLanguage desired = two_step();
  for (bool drop : {false, true}) {
    SynthesisReport report =
        synth_actuator(plant, golden::actuator_attack_one(), desired, nullptr, drop);
    REQUIRE(report.controllable);
    REQUIRE(relation_equal_upto(report.supervisor, golden::actuator_supervisor_one(), 5).holds);
  }
}
