#include "rbo/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>
#include <stdexcept>
#include <thread>

#include "rbo/bitrev.hpp"
#include "rbo/next_slot.hpp"
#include "rbo/rng.hpp"
#include "rbo/search.hpp"

namespace rbo {
namespace {

void check_k(unsigned k) {
  if (k == 0 || k > kMaxBitWidth) {
    throw std::domain_error("bit width out of [1, 63]");
  }
}

TrialMetrics run_bare_trial(const TrialConfig& cfg, SplitMix64& g) {
  if (!(cfg.p_success > 0.0) || cfg.p_success > 1.0) {
    // A channel that never delivers would loop forever.
    throw std::domain_error("success probability out of (0, 1]");
  }
  const unsigned k = cfg.k;
  const std::uint64_t n = std::uint64_t{1} << k;
  const std::uint64_t mask = n - 1;
  const std::uint64_t gap = cfg.gap_rank ? *cfg.gap_rank : g.below(n + 1);
  const std::uint64_t t0 = cfg.start_slot ? *cfg.start_slot : g.below(n);
  if (gap > n) {
    throw std::domain_error("gap rank out of [0, 2^k]");
  }
  if (t0 >= n) {
    throw std::domain_error("start slot out of range");
  }

  auto st = new_search<std::uint64_t>(k, synthetic_gap_key(gap), t0);
  TrialMetrics m;
  std::uint64_t t = t0;
  bool forced = false;
  std::uint64_t forced_slot = 0;
  for (;;) {
    std::uint64_t next;
    if (forced) {
      next = forced_slot;
      forced = false;
    } else {
      next = next_slot({k, t, st.interval.min_rank, st.interval.max_rank()});
    }
    m.receptions += 1;
    m.elapsed_slots += slot_distance(k, t, next);
    t = next;
    if (!g.bernoulli(cfg.p_success)) {
      if (cfg.retry == RetryPolicy::kImmediateNext) {
        forced = true;
        forced_slot = (t + 1) & mask;
      }
      continue;
    }
    const std::uint64_t rank = rev_bits(k, t);
    const SearchOutcome out = observe(st, synthetic_key_at(rank), rank);
    if (out.progress == SearchProgress::kFound) {
      m.outcome = TrialOutcome::kFound;
      return m;
    }
    if (out.progress == SearchProgress::kAbsent) {
      m.outcome = TrialOutcome::kAbsent;
      return m;
    }
  }
}

// Discrete-event harness around ReceiverFsm. Time is real milliseconds as
// doubles; ties resolve timers first, then radio callbacks, then deliveries,
// each FIFO within its class.
class FsmHarness {
 public:
  FsmHarness(const FsmTraceConfig& cfg, SplitMix64& g)
      : cfg_(cfg),
        g_(g),
        drift_(1.0 + cfg.clock_skew * (2.0 * g.uniform01() - 1.0)),
        fsm_(cfg.protocol) {
    check_k(cfg.k);
    if (cfg.start_slot >> cfg.k) {
      throw std::domain_error("start slot out of range");
    }
    if (cfg.slot_length_ms == 0) {
      throw std::invalid_argument("slot length must be positive");
    }
    if (!(cfg.clock_skew >= 0.0) || cfg.clock_skew >= 1.0) {
      throw std::invalid_argument("clock skew must lie in [0, 1)");
    }
    if (!(cfg.p_success >= 0.0) || cfg.p_success > 1.0) {
      throw std::invalid_argument("success probability out of [0, 1]");
    }
    if (cfg.p_success == 0.0 && cfg.protocol.timeout_ms == 0) {
      throw std::invalid_argument("a dead channel needs a timeout to terminate");
    }
  }

  FsmTraceResult run() {
    const double slot_ms = cfg_.slot_length_ms;
    now_ = (static_cast<double>(cfg_.start_slot) + 0.5) * slot_ms;
    apply(fsm_.search(cfg_.searched_key));

    std::uint64_t events = 0;
    while (!done_ && !queue_.empty()) {
      if (++events > cfg_.max_events) {
        throw std::runtime_error("simulation exceeded its event budget");
      }
      const Ev ev = queue_.top();
      queue_.pop();
      now_ = ev.time;
      switch (ev.kind) {
        case EvKind::kTimer:
          if (ev.a < 2 && ev.b == timer_gen_[ev.a]) {
            apply(fsm_.timer_fired(static_cast<TimerKind>(ev.a)));
          }
          break;
        case EvKind::kRadioDone:
          if (ev.a != 0) {
            radio_on_ = true;
            radio_on_since_ = now_;
            schedule_delivery();
          } else {
            radio_on_ = false;
            radio_on_accum_ += now_ - radio_on_since_;
          }
          apply(fsm_.radio_switch_done(true));
          break;
        case EvKind::kDelivery:
          delivery_scheduled_ = false;
          if (radio_on_) {
            deliver(ev.a);
            if (radio_on_ && !done_) {
              push({now_ + slot_ms, 2, next_seq_++, EvKind::kDelivery, ev.a + 1, 0});
              delivery_scheduled_ = true;
            }
          }
          break;
      }
    }
    if (!done_) {
      throw std::runtime_error("simulation stalled without a user event");
    }

    FsmTraceResult res;
    res.reception_slots = std::move(reception_slots_);
    res.final_event = final_event_;
    res.found_rank = found_rank_;
    res.metrics.receptions = res.reception_slots.size();
    const double start_ms = static_cast<double>(cfg_.start_slot) * slot_ms;
    const double elapsed = (now_ - start_ms) / slot_ms;
    res.metrics.elapsed_slots =
        elapsed > 0 ? static_cast<std::uint64_t>(std::llround(elapsed)) : 0;
    double on_ms = radio_on_accum_;
    if (radio_on_) {
      on_ms += now_ - radio_on_since_;
    }
    res.metrics.radio_on_ms = static_cast<std::uint64_t>(std::llround(on_ms));
    switch (final_event_) {
      case UserEvent::kSuccess:
        res.metrics.outcome = TrialOutcome::kFound;
        break;
      case UserEvent::kKeyNotPresent:
        res.metrics.outcome = TrialOutcome::kAbsent;
        break;
      default:
        res.metrics.outcome = TrialOutcome::kTimeout;
        break;
    }
    return res;
  }

 private:
  enum class EvKind { kTimer, kRadioDone, kDelivery };

  struct Ev {
    double time;
    int prio;
    std::uint64_t seq;
    EvKind kind;
    std::uint64_t a;  // timer index / radio-on flag / global slot
    std::uint64_t b;  // timer generation

    bool operator>(const Ev& o) const {
      if (time != o.time) {
        return time > o.time;
      }
      if (prio != o.prio) {
        return prio > o.prio;
      }
      return seq > o.seq;
    }
  };

  void push(const Ev& ev) { queue_.push(ev); }

  void apply(const Effects& fx) {
    for (const Effect& e : fx) {
      switch (e.kind) {
        case Effect::Kind::kRadioOn:
          push({now_ + cfg_.radio_switch_latency_ms, 1, next_seq_++, EvKind::kRadioDone, 1, 0});
          break;
        case Effect::Kind::kRadioOff:
          push({now_ + cfg_.radio_switch_latency_ms, 1, next_seq_++, EvKind::kRadioDone, 0, 0});
          break;
        case Effect::Kind::kArmTimer: {
          const int idx = static_cast<int>(e.timer);
          const std::uint64_t gen = ++timer_gen_[idx];
          push({now_ + static_cast<double>(e.duration_ms) * drift_, 0, next_seq_++,
                EvKind::kTimer, static_cast<std::uint64_t>(idx), gen});
          break;
        }
        case Effect::Kind::kCancelTimer:
          ++timer_gen_[static_cast<int>(e.timer)];
          break;
        case Effect::Kind::kSignalUser:
          done_ = true;
          final_event_ = e.event;
          if (e.event == UserEvent::kSuccess && e.message) {
            found_rank_ = e.message->rank;
          }
          break;
      }
    }
  }

  // First slot boundary at or after now.
  void schedule_delivery() {
    if (delivery_scheduled_) {
      return;
    }
    const double slot_ms = cfg_.slot_length_ms;
    auto slot = static_cast<std::uint64_t>(now_ / slot_ms);
    if (static_cast<double>(slot) * slot_ms < now_) {
      ++slot;
    }
    push({static_cast<double>(slot) * slot_ms, 2, next_seq_++, EvKind::kDelivery, slot, 0});
    delivery_scheduled_ = true;
  }

  void deliver(std::uint64_t global_slot) {
    // The channel roll happens whether or not the receiver can use the
    // message, so the loss pattern is a property of the trial alone.
    const bool heard = g_.bernoulli(cfg_.p_success);
    if (!heard || fsm_.state() != FsmState::kListening) {
      // With a nonzero switch latency the radio can still be physically on
      // while the machine has already decided to sleep; those beacons are
      // paid for in radio-on time but do not count as receptions.
      return;
    }
    const std::uint64_t mask = (std::uint64_t{1} << cfg_.k) - 1;
    const std::uint64_t slot = global_slot & mask;
    const std::uint64_t rank = rev_bits(cfg_.k, slot);
    Message m;
    m.sequence_id = 1;
    m.log_sequence_length = static_cast<std::uint8_t>(cfg_.k);
    m.time_slot_length_ms = cfg_.slot_length_ms;
    m.key = synthetic_key_at(rank);
    m.rank = rank;
    reception_slots_.push_back(slot);
    const auto receiver_now = static_cast<std::uint64_t>(std::llround(now_ / drift_));
    apply(fsm_.received(m, receiver_now));
  }

  const FsmTraceConfig& cfg_;
  SplitMix64& g_;
  double drift_;
  ReceiverFsm fsm_;

  std::priority_queue<Ev, std::vector<Ev>, std::greater<>> queue_;
  double now_ = 0.0;
  std::uint64_t next_seq_ = 0;
  std::uint64_t timer_gen_[2] = {0, 0};
  bool radio_on_ = false;
  double radio_on_since_ = 0.0;
  double radio_on_accum_ = 0.0;
  bool delivery_scheduled_ = false;
  bool done_ = false;
  UserEvent final_event_ = UserEvent::kTimeout;
  std::uint64_t found_rank_ = 0;
  std::vector<std::uint64_t> reception_slots_;
};

ProtocolConfig experiment_protocol(const TrialConfig& cfg) {
  if (cfg.protocol) {
    return *cfg.protocol;
  }
  ProtocolConfig p = ProtocolConfig::for_slot_length(cfg.slot_length_ms);
  // A lossy channel would otherwise abort searches that merely hit an
  // unlucky listening stretch, skewing the statistics.
  p.timeout_ms = 0;
  return p;
}

TrialMetrics run_fsm_trial(const TrialConfig& cfg, SplitMix64& g) {
  const std::uint64_t n = std::uint64_t{1} << cfg.k;
  const std::uint64_t gap = cfg.gap_rank ? *cfg.gap_rank : g.below(n + 1);
  const std::uint64_t t0 = cfg.start_slot ? *cfg.start_slot : g.below(n);
  if (gap > n) {
    throw std::domain_error("gap rank out of [0, 2^k]");
  }

  FsmTraceConfig fc;
  fc.k = cfg.k;
  fc.searched_key = synthetic_gap_key(gap);
  fc.start_slot = t0;
  fc.seed = g.next();
  fc.p_success = cfg.p_success;
  fc.slot_length_ms = cfg.slot_length_ms;
  fc.radio_switch_latency_ms = cfg.radio_switch_latency_ms;
  fc.clock_skew = cfg.clock_skew;
  fc.protocol = experiment_protocol(cfg);
  return run_fsm_trace(fc).metrics;
}

}  // namespace

TrialMetrics run_trial(const TrialConfig& cfg) {
  check_k(cfg.k);
  SplitMix64 g(cfg.seed);
  if (cfg.mode == TrialMode::kBareAlgorithm) {
    return run_bare_trial(cfg, g);
  }
  return run_fsm_trial(cfg, g);
}

FsmTraceResult run_fsm_trace(const FsmTraceConfig& cfg) {
  SplitMix64 g(cfg.seed);
  FsmHarness harness(cfg, g);
  return harness.run();
}

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg) {
  check_k(cfg.k_min);
  check_k(cfg.k_max);
  if (cfg.k_min > cfg.k_max) {
    throw std::invalid_argument("k_min exceeds k_max");
  }
  if (cfg.p_values.empty()) {
    throw std::invalid_argument("no p values given");
  }
  if (cfg.trials == 0) {
    throw std::invalid_argument("trial count must be positive");
  }

  std::vector<double> ps = cfg.p_values;
  std::sort(ps.begin(), ps.end());
  for (double p : ps) {
    if (!(p > 0.0) || p > 1.0) {
      throw std::invalid_argument("p values must lie in (0, 1]");
    }
  }

  unsigned threads = cfg.threads;
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }

  std::vector<ExperimentRow> rows;
  std::uint64_t cell_index = 0;
  for (unsigned k = cfg.k_min; k <= cfg.k_max; ++k) {
    for (double p : ps) {
      const std::uint64_t cell_seed = derive_seed(cfg.master_seed, 0xce11, cell_index);
      ++cell_index;

      std::vector<std::uint64_t> energy(cfg.trials);
      std::vector<std::uint64_t> slots(cfg.trials);

      auto worker = [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i) {
          TrialConfig tc;
          tc.k = k;
          tc.seed = derive_seed(cell_seed, i, 0x7217);
          tc.p_success = p;
          tc.mode = cfg.mode;
          tc.retry = cfg.retry;
          tc.slot_length_ms = cfg.slot_length_ms;
          tc.radio_switch_latency_ms = cfg.radio_switch_latency_ms;
          tc.clock_skew = cfg.clock_skew;
          const TrialMetrics m = run_trial(tc);
          energy[i] =
              cfg.mode == TrialMode::kBareAlgorithm ? m.receptions : m.radio_on_ms;
          slots[i] = m.elapsed_slots;
        }
      };

      const unsigned nthreads =
          static_cast<unsigned>(std::min<std::uint64_t>(threads, cfg.trials));
      if (nthreads <= 1) {
        worker(0, cfg.trials);
      } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        const std::uint64_t chunk = (cfg.trials + nthreads - 1) / nthreads;
        for (unsigned tix = 0; tix < nthreads; ++tix) {
          const std::uint64_t lo = std::min<std::uint64_t>(tix * chunk, cfg.trials);
          const std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, cfg.trials);
          pool.emplace_back(worker, lo, hi);
        }
        for (auto& th : pool) {
          th.join();
        }
      }

      // Integer sums make the aggregate independent of both thread count and
      // summation order.
      std::uint64_t sum_e = 0;
      std::uint64_t sum_s = 0;
      unsigned __int128 sum_e2 = 0;
      unsigned __int128 sum_s2 = 0;
      for (std::uint64_t i = 0; i < cfg.trials; ++i) {
        sum_e += energy[i];
        sum_s += slots[i];
        sum_e2 += static_cast<unsigned __int128>(energy[i]) * energy[i];
        sum_s2 += static_cast<unsigned __int128>(slots[i]) * slots[i];
      }
      const auto nd = static_cast<long double>(cfg.trials);
      const long double mean_e = static_cast<long double>(sum_e) / nd;
      const long double mean_s = static_cast<long double>(sum_s) / nd;
      const long double var_e =
          std::max(0.0L, static_cast<long double>(sum_e2) / nd - mean_e * mean_e);
      const long double var_s =
          std::max(0.0L, static_cast<long double>(sum_s2) / nd - mean_s * mean_s);

      ExperimentRow row;
      row.k = k;
      row.p = p;
      row.trials = cfg.trials;
      row.mean_energy = static_cast<double>(mean_e);
      row.std_energy = static_cast<double>(std::sqrt(static_cast<double>(var_e)));
      row.mean_slots = static_cast<double>(mean_s);
      row.std_slots = static_cast<double>(std::sqrt(static_cast<double>(var_s)));
      row.seed = cell_seed;
      rows.push_back(row);
    }
  }
  return rows;
}

std::string experiment_csv(std::span<const ExperimentRow> rows) {
  std::string out = kExperimentCsvHeader;
  out.push_back('\n');
  char line[256];
  for (const ExperimentRow& r : rows) {
    std::snprintf(line, sizeof line, "%u,%g,%llu,%.6f,%.6f,%.6f,%llu\n", r.k, r.p,
                  static_cast<unsigned long long>(r.trials), r.mean_energy, r.std_energy,
                  r.mean_slots, static_cast<unsigned long long>(r.seed));
    out += line;
  }
  return out;
}

}  // namespace rbo
