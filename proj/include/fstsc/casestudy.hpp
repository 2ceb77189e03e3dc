#pragma once

#include <chrono>
#include <iomanip>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "fstsc/algebra.hpp"
#include "fstsc/fst.hpp"
#include "fstsc/ops.hpp"
#include "fstsc/synthesis.hpp"

namespace fstsc {

// Multi-player scheduling: n players each work through m tasks in order, and
// the event t{i}_{j} reports player i finishing task j.
struct SchedulingInstance {
  int players = 1;
  int tasks = 1;
  SymbolTable alphabet;

  Symbol task(int player, int index) const { return (player - 1) * tasks + index; }
};

inline SchedulingInstance make_instance(int players, int tasks) {
  if (players < 1 || tasks < 1)
    throw FstError("scheduling instance needs at least one player and one task");
  SchedulingInstance inst;
  inst.players = players;
  inst.tasks = tasks;
  for (int i = 1; i <= players; ++i)
    for (int j = 1; j <= tasks; ++j)
      inst.alphabet.add("t" + std::to_string(i) + "_" + std::to_string(j));
  return inst;
}

// The plant accepts and echoes any event sequence.
inline Fst gen_plant(const SchedulingInstance& inst) { return identity_fst(inst.alphabet); }

// Number of states of the desired language automaton, saturating at cap + 1.
inline long long desired_state_count(int players, int tasks, long long cap = (1LL << 62)) {
  long long count = 1;
  for (int i = 0; i < players; ++i) {
    if (count > cap / (tasks + 1)) return cap + 1;
    count *= tasks + 1;
  }
  return count;
}

// Interleavings of the per-player task chains: a state remembers how many
// tasks each player has finished, encoded in base tasks + 1.
inline DesiredLanguage gen_desired(const SchedulingInstance& inst) {
  long long count = desired_state_count(inst.players, inst.tasks);
  Fst fst;
  fst.input_alphabet = inst.alphabet;
  fst.output_alphabet = inst.alphabet;
  for (long long s = 0; s < count; ++s) fst.add_state(true);

  std::vector<long long> weight(static_cast<size_t>(inst.players), 1);
  for (int i = 1; i < inst.players; ++i)
    weight[static_cast<size_t>(i)] = weight[static_cast<size_t>(i - 1)] * (inst.tasks + 1);

  for (long long s = 0; s < count; ++s)
    for (int i = 1; i <= inst.players; ++i) {
      long long done = (s / weight[static_cast<size_t>(i - 1)]) % (inst.tasks + 1);
      if (done == inst.tasks) continue;
      Symbol event = inst.task(i, static_cast<int>(done) + 1);
      fst.add_transition(static_cast<State>(s), event, event,
                         static_cast<State>(s + weight[static_cast<size_t>(i - 1)]));
    }
  return make_desired(std::move(fst));
}

// The sensor attack erases player 1 from the observation channel and passes
// everyone else through.
inline Fst gen_sensor_attack(const SchedulingInstance& inst) {
  Fst fst;
  fst.input_alphabet = inst.alphabet;
  fst.output_alphabet = inst.alphabet;
  fst.add_state(true);
  for (Symbol s : inst.alphabet.symbols())
    fst.add_transition(0, s, s <= inst.tasks ? kEpsilon : s, 0);
  return fst;
}

// The actuator attack can pass any command through, or rotate a task across
// the players: commanding player 1 to finish task j may come out as player 2
// finishing it, and so on around the cycle back to player 1.
inline Fst gen_actuator_attack(const SchedulingInstance& inst) {
  Fst fst;
  fst.input_alphabet = inst.alphabet;
  fst.output_alphabet = inst.alphabet;
  State hub = fst.add_state(true);
  for (Symbol s : inst.alphabet.symbols()) fst.add_transition(hub, s, s, hub);
  for (int j = 1; j <= inst.tasks; ++j) {
    State prev = hub;
    for (int i = 1; i < inst.players; ++i) {
      State next = fst.add_state(false);
      fst.add_transition(prev, inst.task(i, j), inst.task(i + 1, j), next);
      prev = next;
    }
    if (prev != hub) fst.add_transition(prev, inst.task(inst.players, j), inst.task(1, j), hub);
  }
  return fst;
}

struct BenchRecord {
  int players = 0;
  int tasks = 0;
  long long desired_states = 0;
  double time_ms_mean = 0.0;
  size_t peak_transitions = 0;
  bool skipped = false;
};

// Times synth_both (with the plant inverse dropped, the plant being the
// identity) over the given (players, tasks) rows. Rows whose desired
// automaton would exceed the state budget are reported as skipped.
inline std::vector<BenchRecord> run_benchmark(const std::vector<std::pair<int, int>>& rows,
                                              int reps, long long state_budget = 10000) {
  std::vector<BenchRecord> records;
  for (const auto& [n, m] : rows) {
    BenchRecord rec;
    rec.players = n;
    rec.tasks = m;
    rec.desired_states = desired_state_count(n, m, state_budget);
    if (rec.desired_states > state_budget) {
      rec.skipped = true;
      records.push_back(rec);
      continue;
    }
    SchedulingInstance inst = make_instance(n, m);
    Fst plant = gen_plant(inst);
    Fst sensor = gen_sensor_attack(inst);
    Fst actuator = gen_actuator_attack(inst);
    DesiredLanguage desired = gen_desired(inst);

    double total_ms = 0.0;
    for (int rep = 0; rep < reps; ++rep) {
      SynthStats stats;
      auto start = std::chrono::steady_clock::now();
      SynthesisReport report = synth_both(plant, actuator, sensor, desired, &stats, true);
      auto stop = std::chrono::steady_clock::now();
      total_ms += std::chrono::duration<double, std::milli>(stop - start).count();
      rec.peak_transitions = std::max(rec.peak_transitions, stats.peak_transitions);
      if (!report.controllable)
        throw FstError("case study synthesis unexpectedly reported not controllable");
    }
    rec.time_ms_mean = reps > 0 ? total_ms / reps : 0.0;
    records.push_back(rec);
  }
  return records;
}

inline void write_bench_tsv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << "n\tm\tstates\ttime_ms_mean\tpeak_transitions\n";
  for (const auto& rec : records) {
    if (rec.skipped) {
      out << "# skipped n=" << rec.players << " m=" << rec.tasks
          << ": desired automaton exceeds the state budget\n";
      continue;
    }
    out << rec.players << '\t' << rec.tasks << '\t' << rec.desired_states << '\t' << std::fixed
        << std::setprecision(3) << rec.time_ms_mean << '\t' << rec.peak_transitions << '\n';
  }
}

}  // namespace fstsc
