#include <catch2/catch_amalgamated.hpp>
#include <sstream>

#include "fstsc/casestudy.hpp"
#include "instances.hpp"
#include "oracle.hpp"

using namespace fstsc;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("scheduling instances name tasks per player") {
  SchedulingInstance inst = make_instance(2, 2);
  REQUIRE(inst.alphabet == golden::schedule_alphabet());
  REQUIRE(inst.task(1, 1) == inst.alphabet.id("t1_1"));
  REQUIRE(inst.task(1, 2) == inst.alphabet.id("t1_2"));
  REQUIRE(inst.task(2, 1) == inst.alphabet.id("t2_1"));
  REQUIRE(inst.task(2, 2) == inst.alphabet.id("t2_2"));

  REQUIRE_THROWS_WITH(make_instance(0, 2), ContainsSubstring("at least one player"));
  REQUIRE_THROWS_WITH(make_instance(2, 0), ContainsSubstring("at least one player"));
}

TEST_CASE("the generated plant runs every task freely") {
  SchedulingInstance inst = make_instance(2, 2);
  REQUIRE(relation_equal_upto(gen_plant(inst), golden::schedule_plant(), 3).holds);
}

TEST_CASE("the generated desired language tracks per-player progress") {
  SchedulingInstance inst = make_instance(2, 2);
  DesiredLanguage desired = gen_desired(inst);
  REQUIRE(desired.automaton.num_states == 9);
  REQUIRE(language_equal(desired.automaton, golden::schedule_desired()));
  for (State s = 0; s < desired.automaton.num_states; ++s) {
    REQUIRE(desired.automaton.is_final(s));
  }
}

TEST_CASE("desired automaton sizes follow the digit encoding") {
  REQUIRE(desired_state_count(2, 2) == 9);
  REQUIRE(desired_state_count(2, 9) == 100);
  REQUIRE(desired_state_count(3, 9) == 1000);
  REQUIRE(gen_desired(make_instance(2, 9)).automaton.num_states == 100);
  REQUIRE(gen_desired(make_instance(3, 9)).automaton.num_states == 1000);

  // Oversized rows saturate just past the cap instead of overflowing.
  REQUIRE(desired_state_count(99, 9, 10000) == 10001);
}

TEST_CASE("the generated attacks match the hand-built two-by-two machines") {
  SchedulingInstance inst = make_instance(2, 2);
  REQUIRE(relation_equal_upto(gen_sensor_attack(inst), golden::schedule_sensor_attack(), 3).holds);
  REQUIRE(
      relation_equal_upto(gen_actuator_attack(inst), golden::schedule_actuator_attack(), 4).holds);
}

TEST_CASE("a single player leaves the actuator attack as the identity") {
  SchedulingInstance inst = make_instance(1, 2);
  REQUIRE(relation_equal_upto(gen_actuator_attack(inst), identity_fst(inst.alphabet), 4).holds);
}

TEST_CASE("the two-by-two instance synthesizes the known supervisor") {
  SchedulingInstance inst = make_instance(2, 2);
  SynthesisReport report = synth_both(gen_plant(inst), gen_actuator_attack(inst),
                                      gen_sensor_attack(inst), gen_desired(inst), nullptr, true);
  REQUIRE(report.controllable);
  REQUIRE(relation_equal_upto(report.supervisor, golden::schedule_supervisor(), 4).holds);

  // The loop executes exactly the desired schedule prefixes.
  for (const Word& word : language_upto(gen_desired(inst).automaton, 3)) {
    REQUIRE(closed_loop_member(gen_plant(inst), gen_sensor_attack(inst), report.supervisor,
                               gen_actuator_attack(inst), word));
  }
  Word out_of_order = {inst.task(1, 2)};
  REQUIRE_FALSE(closed_loop_member(gen_plant(inst), gen_sensor_attack(inst), report.supervisor,
                                   gen_actuator_attack(inst), out_of_order));
}

TEST_CASE("the benchmark reports timings and honors the state budget") {
  auto records = run_benchmark({{2, 2}}, 1);
  REQUIRE(records.size() == 1);
  REQUIRE(records[0].players == 2);
  REQUIRE(records[0].tasks == 2);
  REQUIRE(records[0].desired_states == 9);
  REQUIRE_FALSE(records[0].skipped);
  REQUIRE(records[0].time_ms_mean >= 0.0);
  REQUIRE(records[0].peak_transitions > 0);

  auto skipped = run_benchmark({{99, 9}}, 1, 10000);
  REQUIRE(skipped.size() == 1);
  REQUIRE(skipped[0].skipped);

  std::ostringstream out;
  write_bench_tsv(out, records);
  write_bench_tsv(out, skipped);
  std::string text = out.str();
  REQUIRE(text.find("n\tm\tstates\ttime_ms_mean\tpeak_transitions\n") == 0);
  REQUIRE(text.find("# skipped") != std::string::npos);
}
