#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rbo/rbo.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

// Bad parameter values are usage errors; everything else that fails at run
// time is a runtime error.
int exit_code_for(rbo_status status) {
  return status == RBO_ERR_DOMAIN || status == RBO_ERR_ARGUMENT ? kExitUsage
                                                                : kExitRuntime;
}

int fail(rbo_status status) {
  std::cerr << "error: " << rbo_status_str(status) << "\n";
  return exit_code_for(status);
}

int run_next_slot(std::uint32_t k, std::uint64_t t, std::uint64_t r1, std::uint64_t r2,
                  const std::string& strategy) {
  rbo_strategy strat = RBO_STRATEGY_AUTO;
  if (strategy == "naive") {
    strat = RBO_STRATEGY_NAIVE;
  } else if (strategy == "reverse") {
    strat = RBO_STRATEGY_REVERSE;
  } else if (strategy == "polylog") {
    strat = RBO_STRATEGY_POLYLOG;
  } else if (strategy != "auto") {
    std::cerr << "error: unknown strategy '" << strategy << "'\n";
    return kExitUsage;
  }
  std::uint64_t slot = 0;
  std::uint64_t tau = 0;
  const rbo_status status = rbo_next_slot(k, t, r1, r2, strat, &slot, &tau);
  if (status != RBO_OK) {
    return fail(status);
  }
  std::cout << slot << "\n" << "tau " << tau << "\n";
  return kExitOk;
}

int run_verify(std::uint32_t max_k, std::uint64_t samples, std::uint64_t seed,
               bool inject_fault) {
  rbo_verify_options opts;
  rbo_verify_options_init(&opts);
  opts.max_k = max_k;
  opts.samples = samples;
  opts.seed = seed;
  opts.inject_fault = inject_fault ? 1 : 0;

  rbo_verify_result results[RBO_VERIFY_SUITES];
  size_t count = 0;
  const rbo_status status = rbo_verify_run(&opts, results, RBO_VERIFY_SUITES, &count);
  if (status != RBO_OK) {
    return fail(status);
  }
  bool all_passed = true;
  for (size_t i = 0; i < count; ++i) {
    if (results[i].passed) {
      std::printf("%-20s PASS  (%" PRIu64 " cases)\n", results[i].name,
                  results[i].cases);
    } else {
      all_passed = false;
      std::printf("%-20s FAIL  %s\n", results[i].name, results[i].detail);
    }
  }
  if (!all_passed) {
    std::cerr << "verification failed\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int run_simulate(std::uint32_t k_min, std::uint32_t k_max, std::vector<double> ps,
                 std::uint64_t trials, std::uint64_t seed, const std::string& mode,
                 const std::string& retry, std::uint32_t threads,
                 std::uint32_t slot_ms, std::uint32_t latency_ms, double skew,
                 const std::string& out_path) {
  rbo_experiment_config cfg;
  rbo_experiment_config_init(&cfg);
  cfg.k_min = k_min;
  cfg.k_max = k_max;
  if (ps.empty()) {
    ps = {0.5, 0.75, 1.0};
  }
  cfg.p_values = ps.data();
  cfg.p_count = ps.size();
  cfg.trials = trials;
  cfg.master_seed = seed;
  cfg.mode = mode == "full-fsm" ? RBO_MODE_FULL_FSM : RBO_MODE_BARE;
  cfg.retry =
      retry == "immediate-next" ? RBO_RETRY_IMMEDIATE_NEXT : RBO_RETRY_NEXT_IN_INTERVAL;
  cfg.threads = threads;
  cfg.slot_length_ms = slot_ms;
  cfg.radio_switch_latency_ms = latency_ms;
  cfg.clock_skew = skew;

  if (mode != "bare" && mode != "full-fsm") {
    std::cerr << "error: unknown mode '" << mode << "'\n";
    return kExitUsage;
  }
  if (retry != "in-interval" && retry != "immediate-next") {
    std::cerr << "error: unknown retry policy '" << retry << "'\n";
    return kExitUsage;
  }

  const size_t row_cap = static_cast<size_t>(k_max >= k_min ? k_max - k_min + 1 : 0) *
                         ps.size();
  if (row_cap == 0) {
    std::cerr << "error: empty (k, p) grid\n";
    return kExitUsage;
  }
  std::vector<rbo_experiment_row> rows(row_cap);
  size_t count = 0;
  rbo_status status = rbo_run_experiment(&cfg, rows.data(), rows.size(), &count);
  if (status != RBO_OK) {
    return fail(status);
  }

  std::vector<char> csv(count * 160 + 256);
  size_t len = 0;
  status = rbo_experiment_csv(rows.data(), count, csv.data(), csv.size(), &len);
  if (status != RBO_OK) {
    return fail(status);
  }

  if (out_path.empty()) {
    std::cout.write(csv.data(), static_cast<std::streamsize>(len));
    return kExitOk;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::cerr << "error: cannot open '" << out_path << "' for writing\n";
    return kExitRuntime;
  }
  out.write(csv.data(), static_cast<std::streamsize>(len));
  out.close();
  if (!out) {
    std::cerr << "error: writing '" << out_path << "' failed\n";
    return kExitRuntime;
  }
  std::cout << "wrote " << count << " rows to " << out_path << "\n";
  return kExitOk;
}

int run_schedule_dump(std::uint64_t count, const std::string& keys_path,
                      std::uint32_t sequence_id, std::uint32_t slot_ms,
                      const std::string& out_path) {
  std::vector<std::uint64_t> keys;
  if (!keys_path.empty()) {
    std::ifstream in(keys_path);
    if (!in) {
      std::cerr << "error: cannot read '" << keys_path << "'\n";
      return kExitRuntime;
    }
    std::uint64_t key = 0;
    while (in >> key) {
      keys.push_back(key);
    }
    if (!in.eof()) {
      std::cerr << "error: '" << keys_path << "' is not a list of integers\n";
      return kExitUsage;
    }
  } else {
    for (std::uint64_t i = 0; i < count; ++i) {
      keys.push_back(10 * (i + 1));
    }
  }
  if (keys.empty()) {
    std::cerr << "error: no keys to schedule\n";
    return kExitUsage;
  }

  std::vector<rbo_schedule_item> items(keys.size());
  for (size_t i = 0; i < keys.size(); ++i) {
    items[i] = {keys[i], nullptr, 0};
  }
  rbo_schedule* sched = nullptr;
  const rbo_status status =
      rbo_schedule_create(items.data(), items.size(), sequence_id, slot_ms, &sched);
  if (status != RBO_OK) {
    return fail(status);
  }

  std::ostringstream body;
  body << "slot,rank,key\n";
  const std::uint64_t n = rbo_schedule_length(sched);
  for (std::uint64_t slot = 0; slot < n; ++slot) {
    rbo_message m;
    const rbo_status mstatus = rbo_schedule_slot_message(sched, slot, &m);
    if (mstatus != RBO_OK) {
      rbo_schedule_destroy(sched);
      return fail(mstatus);
    }
    body << slot << "," << m.rank << "," << m.key << "\n";
  }
  rbo_schedule_destroy(sched);

  if (out_path.empty()) {
    std::cout << body.str();
    return kExitOk;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::cerr << "error: cannot open '" << out_path << "' for writing\n";
    return kExitRuntime;
  }
  out << body.str();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RBO broadcast protocol toolbox"};
  app.require_subcommand(1);

  // next-slot
  auto* next_slot_cmd =
      app.add_subcommand("next-slot", "Next useful slot for a rank interval");
  std::uint32_t ns_k = 0;
  std::uint64_t ns_t = 0;
  std::uint64_t ns_r1 = 0;
  std::uint64_t ns_r2 = 0;
  std::string ns_strategy = "auto";
  next_slot_cmd->add_option("--k", ns_k, "log2 of the round length")
      ->required()
      ->check(CLI::Range(1u, 63u));
  next_slot_cmd->add_option("--t", ns_t, "current slot")->required();
  next_slot_cmd->add_option("--r1", ns_r1, "lowest candidate rank")->required();
  next_slot_cmd->add_option("--r2", ns_r2, "highest candidate rank")->required();
  next_slot_cmd->add_option("--strategy", ns_strategy,
                            "auto | naive | reverse | polylog");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Self-check the schedule math");
  std::uint32_t vf_max_k = 8;
  std::uint64_t vf_samples = 100000;
  std::uint64_t vf_seed = 1;
  bool vf_inject = false;
  verify_cmd->add_option("--max-k", vf_max_k, "verification depth")
      ->check(CLI::Range(1u, 25u));
  verify_cmd->add_option("--samples", vf_samples, "randomized cases per suite");
  verify_cmd->add_option("--seed", vf_seed, "randomization seed");
  verify_cmd->add_flag("--inject-fault", vf_inject,
                       "verify a deliberately broken bit reversal (must fail)");

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Run the (k, p) trial grid");
  std::uint32_t sm_k_min = 10;
  std::uint32_t sm_k_max = 12;
  std::vector<double> sm_ps;
  std::uint64_t sm_trials = 10000;
  std::uint64_t sm_seed = 1;
  std::string sm_mode = "bare";
  std::string sm_retry = "in-interval";
  std::uint32_t sm_threads = 1;
  std::uint32_t sm_slot_ms = 100;
  std::uint32_t sm_latency = 0;
  double sm_skew = 0.0;
  std::string sm_out;
  sim_cmd->add_option("--k-min", sm_k_min, "smallest k")->check(CLI::Range(1u, 63u));
  sim_cmd->add_option("--k-max", sm_k_max, "largest k")->check(CLI::Range(1u, 63u));
  sim_cmd->add_option("--p", sm_ps, "reception probabilities (repeatable)")
      ->check(CLI::Range(0.000001, 1.0));
  sim_cmd->add_option("--trials", sm_trials, "trials per (k, p) cell")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", sm_seed, "master seed");
  sim_cmd->add_option("--mode", sm_mode, "bare | full-fsm");
  sim_cmd->add_option("--retry-policy", sm_retry, "in-interval | immediate-next");
  sim_cmd->add_option("--threads", sm_threads, "worker threads (0 = hardware)");
  sim_cmd->add_option("--slot-ms", sm_slot_ms, "slot length in ms (full-fsm)")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--latency-ms", sm_latency, "radio switch latency (full-fsm)");
  sim_cmd->add_option("--skew", sm_skew, "clock skew bound in [0, 1) (full-fsm)")
      ->check(CLI::Range(0.0, 0.999999));
  sim_cmd->add_option("--out", sm_out, "CSV output path (default: stdout)");

  // schedule-dump
  auto* dump_cmd =
      app.add_subcommand("schedule-dump", "Dump one round's slot/rank/key table");
  std::uint64_t sd_count = 12;
  std::string sd_keys;
  std::uint32_t sd_seq = 1;
  std::uint32_t sd_slot_ms = 100;
  std::string sd_out;
  dump_cmd->add_option("--count", sd_count, "generate this many synthetic keys");
  dump_cmd->add_option("--keys-file", sd_keys, "file with one key per line");
  dump_cmd->add_option("--sequence-id", sd_seq, "broadcast sequence id (nonzero)");
  dump_cmd->add_option("--slot-ms", sd_slot_ms, "slot length in ms");
  dump_cmd->add_option("--out", sd_out, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help and friends
    }
    app.exit(e);
    return kExitUsage;
  }

  if (next_slot_cmd->parsed()) {
    return run_next_slot(ns_k, ns_t, ns_r1, ns_r2, ns_strategy);
  }
  if (verify_cmd->parsed()) {
    return run_verify(vf_max_k, vf_samples, vf_seed, vf_inject);
  }
  if (sim_cmd->parsed()) {
    return run_simulate(sm_k_min, sm_k_max, sm_ps, sm_trials, sm_seed, sm_mode,
                        sm_retry, sm_threads, sm_slot_ms, sm_latency, sm_skew, sm_out);
  }
  if (dump_cmd->parsed()) {
    return run_schedule_dump(sd_count, sd_keys, sd_seq, sd_slot_ms, sd_out);
  }
  return kExitUsage;
}
