#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rbo/receiver.hpp"

namespace rbo {

// The simulated broadcast uses the synthetic sorted sequence key(rank) =
// 10 * (rank + 1), so every multiple of 10 in [10, 10 * 2^k] is present and
// 10 * g + 5 falls in the gap between ranks g - 1 and g (absent for every
// g in [0, 2^k]).
[[nodiscard]] inline std::uint64_t synthetic_key_at(std::uint64_t rank) {
  return 10 * (rank + 1);
}
[[nodiscard]] inline std::uint64_t synthetic_gap_key(std::uint64_t gap) { return 10 * gap + 5; }

enum class TrialMode {
  kBareAlgorithm,  // the search loop alone; energy = slots listened to
  kFullFsm,        // event-driven receiver with radio, timers and margins
};

enum class RetryPolicy {
  kNextInInterval,  // after a lost reception, recompute the next useful slot
  kImmediateNext,   // after a lost reception, listen again at the very next slot
};

enum class TrialOutcome { kFound, kAbsent, kTimeout };

// One receiver searching an absent key in a random gap, from a random start
// slot, over a lossy channel. Unset gap_rank / start_slot are drawn from the
// seed; explicit values pin the scenario for directed tests.
struct TrialConfig {
  unsigned k = 10;
  std::uint64_t seed = 0;
  double p_success = 1.0;
  TrialMode mode = TrialMode::kBareAlgorithm;
  RetryPolicy retry = RetryPolicy::kNextInInterval;
  std::optional<std::uint64_t> gap_rank;    // in [0, 2^k]
  std::optional<std::uint64_t> start_slot;  // in [0, 2^k)

  // Full-FSM mode only.
  std::uint32_t slot_length_ms = 100;
  std::uint32_t radio_switch_latency_ms = 0;
  double clock_skew = 0.0;  // timer drift factor drawn from [1-skew, 1+skew]
  // Defaults to ProtocolConfig::for_slot_length(slot_length_ms) with the
  // listening timeout disabled, so lossy channels cannot abort a trial.
  std::optional<ProtocolConfig> protocol;
};

struct TrialMetrics {
  // Bare mode: slots listened to (one energy unit each, lost or not).
  // Full-FSM mode: messages actually heard.
  std::uint64_t receptions = 0;
  std::uint64_t elapsed_slots = 0;
  std::uint64_t radio_on_ms = 0;  // full-FSM mode only
  TrialOutcome outcome = TrialOutcome::kAbsent;
};

[[nodiscard]] TrialMetrics run_trial(const TrialConfig& cfg);

// Full-FSM run against an arbitrary searched key (present keys included),
// returning the reception history for comparison with the bare search.
struct FsmTraceConfig {
  unsigned k = 3;
  std::uint64_t searched_key = 0;
  std::uint64_t start_slot = 0;
  std::uint64_t seed = 0;
  double p_success = 1.0;
  std::uint32_t slot_length_ms = 100;
  std::uint32_t radio_switch_latency_ms = 0;
  double clock_skew = 0.0;
  ProtocolConfig protocol;
  std::uint64_t max_events = 10'000'000;  // guard against runaway runs
};

struct FsmTraceResult {
  std::vector<std::uint64_t> reception_slots;  // round slots, in order heard
  UserEvent final_event = UserEvent::kTimeout;
  std::uint64_t found_rank = 0;  // when final_event == kSuccess
  TrialMetrics metrics;
};

[[nodiscard]] FsmTraceResult run_fsm_trace(const FsmTraceConfig& cfg);

// A (k, p) sweep. Each cell runs `trials` independent trials; the per-trial
// seed depends only on (master_seed, cell index, trial index), so results
// are identical no matter how many threads execute them.
struct ExperimentConfig {
  unsigned k_min = 10;
  unsigned k_max = 16;
  std::vector<double> p_values = {0.5, 0.75, 1.0};
  std::uint64_t trials = 100000;
  std::uint64_t master_seed = 1;
  TrialMode mode = TrialMode::kBareAlgorithm;
  RetryPolicy retry = RetryPolicy::kNextInInterval;
  unsigned threads = 1;  // 0 means hardware concurrency
  std::uint32_t slot_length_ms = 100;
  std::uint32_t radio_switch_latency_ms = 0;
  double clock_skew = 0.0;
};

struct ExperimentRow {
  unsigned k = 0;
  double p = 1.0;
  std::uint64_t trials = 0;
  double mean_energy = 0.0;  // receptions (bare) or radio-on ms (full FSM)
  double std_energy = 0.0;   // population standard deviation
  double mean_slots = 0.0;
  double std_slots = 0.0;  // kept for analysis; not a CSV column
  std::uint64_t seed = 0;  // per-cell derived seed
};

// Rows ordered by ascending k, then ascending p.
[[nodiscard]] std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg);

inline constexpr const char* kExperimentCsvHeader =
    "k,p,trials,mean_energy,std_energy,mean_slots,seed";

[[nodiscard]] std::string experiment_csv(std::span<const ExperimentRow> rows);

}  // namespace rbo
