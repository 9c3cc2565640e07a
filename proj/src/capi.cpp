#include "rbo/rbo.h"

#include <algorithm>
#include <cstring>
#include <new>
#include <stdexcept>
#include <vector>

#include "rbo/bitrev.hpp"
#include "rbo/message.hpp"
#include "rbo/next_slot.hpp"
#include "rbo/receiver.hpp"
#include "rbo/schedule.hpp"
#include "rbo/simulator.hpp"
#include "rbo/verify.hpp"

namespace {

// Every entry point funnels through this so C callers see status codes, not
// exceptions escaping across the ABI.
template <typename Fn>
rbo_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::domain_error&) {
    return RBO_ERR_DOMAIN;
  } catch (const std::length_error&) {
    return RBO_ERR_PAYLOAD_LENGTH;
  } catch (const std::out_of_range&) {
    return RBO_ERR_DOMAIN;
  } catch (const std::invalid_argument&) {
    return RBO_ERR_ARGUMENT;
  } catch (const std::runtime_error&) {
    return RBO_ERR_RUNTIME;
  } catch (...) {
    return RBO_ERR_INTERNAL;
  }
}

rbo::Message to_cpp(const rbo_message& m) {
  rbo::Message out;
  out.sequence_id = m.sequence_id;
  out.log_sequence_length = m.log_sequence_length;
  out.time_slot_length_ms = m.time_slot_length_ms;
  out.key = m.key;
  out.rank = m.rank;
  const std::size_t len = std::min<std::size_t>(m.payload_len, RBO_MAX_PAYLOAD);
  out.payload.assign(m.payload, m.payload + len);
  return out;
}

void to_c(const rbo::Message& m, rbo_message& out) {
  out.sequence_id = m.sequence_id;
  out.log_sequence_length = m.log_sequence_length;
  out.time_slot_length_ms = m.time_slot_length_ms;
  out.key = m.key;
  out.rank = m.rank;
  const std::size_t len = std::min<std::size_t>(m.payload.size(), RBO_MAX_PAYLOAD);
  out.payload_len = static_cast<uint16_t>(len);
  if (len > 0) {
    std::memcpy(out.payload, m.payload.data(), len);
  }
}

rbo::ProtocolConfig to_cpp(const rbo_protocol_config& c) {
  rbo::ProtocolConfig out;
  out.time_margin_ms = c.time_margin_ms;
  out.relative_margin_divisor = c.relative_margin_divisor;
  out.min_sleeping_time_ms = c.min_sleeping_time_ms;
  out.timeout_ms = c.timeout_ms;
  return out;
}

rbo_status write_effects(const rbo::Effects& fx, rbo_effect* effects, size_t cap,
                         size_t* count) {
  if (count == nullptr || (fx.size() > 0 && effects == nullptr)) {
    return RBO_ERR_ARGUMENT;
  }
  if (fx.size() > cap) {
    return RBO_ERR_BUFFER_TOO_SMALL;
  }
  for (std::size_t i = 0; i < fx.size(); ++i) {
    rbo_effect& e = effects[i];
    std::memset(&e, 0, sizeof e);
    switch (fx[i].kind) {
      case rbo::Effect::Kind::kRadioOn:
        e.kind = RBO_EFFECT_RADIO_ON;
        break;
      case rbo::Effect::Kind::kRadioOff:
        e.kind = RBO_EFFECT_RADIO_OFF;
        break;
      case rbo::Effect::Kind::kArmTimer:
        e.kind = RBO_EFFECT_ARM_TIMER;
        break;
      case rbo::Effect::Kind::kCancelTimer:
        e.kind = RBO_EFFECT_CANCEL_TIMER;
        break;
      case rbo::Effect::Kind::kSignalUser:
        e.kind = RBO_EFFECT_SIGNAL_USER;
        break;
    }
    e.timer = static_cast<rbo_timer_kind>(fx[i].timer);
    e.duration_ms = fx[i].duration_ms;
    e.event = static_cast<rbo_user_event>(fx[i].event);
    if (fx[i].message) {
      e.has_message = 1;
      to_c(*fx[i].message, e.message);
    }
  }
  *count = fx.size();
  return RBO_OK;
}

std::uint64_t broken_rev_bits(unsigned k, std::uint64_t x) {
  // Swaps the images of 1 and 2: still a bijection, but the involution,
  // recurrence and ordering properties all break, which is exactly what the
  // fault-injection self-check wants to see.
  if (k >= 2) {
    if (x == 1) {
      return rbo::rev_bits(k, 2);
    }
    if (x == 2) {
      return rbo::rev_bits(k, 1);
    }
  }
  return rbo::rev_bits(k, x);
}

void copy_str(char* dst, std::size_t cap, const std::string& src) {
  const std::size_t len = std::min(cap - 1, src.size());
  std::memcpy(dst, src.data(), len);
  dst[len] = '\0';
}

}  // namespace

struct rbo_schedule {
  rbo::BroadcastSchedule impl;
};

struct rbo_receiver {
  rbo::ReceiverFsm impl;
};

extern "C" {

const char* rbo_status_str(rbo_status status) {
  switch (status) {
    case RBO_OK:
      return "ok";
    case RBO_ERR_ARGUMENT:
      return "invalid argument";
    case RBO_ERR_DOMAIN:
      return "value out of domain";
    case RBO_ERR_TRUNCATED:
      return "truncated message";
    case RBO_ERR_RANK_OVERFLOW:
      return "rank overflow";
    case RBO_ERR_PAYLOAD_LENGTH:
      return "bad payload length";
    case RBO_ERR_BAD_BIT_WIDTH:
      return "bad bit width";
    case RBO_ERR_BUFFER_TOO_SMALL:
      return "buffer too small";
    case RBO_ERR_RUNTIME:
      return "runtime failure";
    case RBO_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* rbo_version(void) { return "1.0.0"; }

rbo_status rbo_rev_bits(uint32_t k, uint64_t x, uint64_t* out) {
  if (out == nullptr) {
    return RBO_ERR_ARGUMENT;
  }
  return guarded([&] {
    *out = rbo::rev_bits(k, x);
    return RBO_OK;
  });
}

rbo_status rbo_bs_order(uint32_t k, uint64_t x, uint64_t* out) {
  if (out == nullptr) {
    return RBO_ERR_ARGUMENT;
  }
  return guarded([&] {
    *out = rbo::bs_order(k, x);
    return RBO_OK;
  });
}

uint32_t rbo_level_of_slot(uint64_t t) { return rbo::level_of_slot(t); }

rbo_status rbo_level_of_rank(uint32_t k, uint64_t x, uint32_t* out) {
  if (out == nullptr) {
    return RBO_ERR_ARGUMENT;
  }
  return guarded([&] {
    *out = rbo::level_of_rank(k, x);
    return RBO_OK;
  });
}

rbo_status rbo_coordinate_in_level(uint32_t k, uint64_t x, uint64_t* out) {
  if (out == nullptr) {
    return RBO_ERR_ARGUMENT;
  }
  return guarded([&] {
    *out = rbo::coordinate_in_level(k, x);
    return RBO_OK;
  });
}

rbo_status rbo_min_rev_bits(uint32_t k, uint64_t r1, uint64_t r2, uint64_t* out) {
  if (out == nullptr) {
    return RBO_ERR_ARGUMENT;
  }
  return guarded([&] {
    *out = rbo::min_rev_bits(k, r1, r2);
    return RBO_OK;
  });
}

rbo_status rbo_max_rev_bits(uint32_t k, uint64_t r1, uint64_t r2, uint64_t* out) {
  if (out == nullptr) {
    return RBO_ERR_ARGUMENT;
  }
  return guarded([&] {
    *out = rbo::max_rev_bits(k, r1, r2);
    return RBO_OK;
  });
}

rbo_status rbo_next_slot(uint32_t k, uint64_t t, uint64_t r1, uint64_t r2,
                         rbo_strategy strategy, uint64_t* slot_out, uint64_t* tau_out) {
  if (slot_out == nullptr) {
    return RBO_ERR_ARGUMENT;
  }
  rbo::Strategy strat;
  switch (strategy) {
    case RBO_STRATEGY_AUTO:
      strat = rbo::Strategy::kAuto;
      break;
    case RBO_STRATEGY_NAIVE:
      strat = rbo::Strategy::kNaive;
      break;
    case RBO_STRATEGY_REVERSE:
      strat = rbo::Strategy::kReverse;
      break;
    case RBO_STRATEGY_POLYLOG:
      strat = rbo::Strategy::kPolylog;
      break;
    default:
      return RBO_ERR_ARGUMENT;
  }
  return guarded([&] {
    const std::uint64_t slot = rbo::next_slot({k, t, r1, r2}, strat);
    *slot_out = slot;
    if (tau_out != nullptr) {
      *tau_out = rbo::slot_distance(k, t, slot);
    }
    return RBO_OK;
  });
}

rbo_status rbo_message_encode(const rbo_message* m, uint8_t* buf, size_t cap,
                              size_t* written) {
  if (m == nullptr || buf == nullptr || written == nullptr) {
    return RBO_ERR_ARGUMENT;
  }
  if (m->payload_len > RBO_MAX_PAYLOAD) {
    return RBO_ERR_PAYLOAD_LENGTH;
  }
  return guarded([&] {
    const std::vector<std::uint8_t> bytes = rbo::encode_message(to_cpp(*m));
    if (bytes.size() > cap) {
      return RBO_ERR_BUFFER_TOO_SMALL;
    }
    std::memcpy(buf, bytes.data(), bytes.size());
    *written = bytes.size();
    return RBO_OK;
  });
}

rbo_status rbo_message_decode(const uint8_t* data, size_t len, rbo_message* out) {
  if (data == nullptr || out == nullptr) {
    return RBO_ERR_ARGUMENT;
  }
  return guarded([&] {
    rbo::Message m;
    switch (rbo::decode_message({data, len}, m)) {
      case rbo::DecodeStatus::kOk:
        break;
      case rbo::DecodeStatus::kTruncated:
        return RBO_ERR_TRUNCATED;
      case rbo::DecodeStatus::kBadBitWidth:
        return RBO_ERR_BAD_BIT_WIDTH;
      case rbo::DecodeStatus::kRankOverflow:
        return RBO_ERR_RANK_OVERFLOW;
      case rbo::DecodeStatus::kPayloadLengthMismatch:
        return RBO_ERR_PAYLOAD_LENGTH;
    }
    to_c(m, *out);
    return RBO_OK;
  });
}

int rbo_message_is_bad(const rbo_message* m) {
  return m != nullptr && m->sequence_id == 0 ? 1 : 0;
}

rbo_status rbo_schedule_create(const rbo_schedule_item* items, size_t count,
                               uint32_t sequence_id, uint32_t slot_length_ms,
                               rbo_schedule** out) {
  if (out == nullptr || (items == nullptr && count > 0)) {
    return RBO_ERR_ARGUMENT;
  }
  return guarded([&] {
    std::vector<rbo::KeyedItem> cpp_items;
    cpp_items.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      if (items[i].payload_len > RBO_MAX_PAYLOAD) {
        return RBO_ERR_PAYLOAD_LENGTH;
      }
      if (items[i].payload == nullptr && items[i].payload_len > 0) {
        return RBO_ERR_ARGUMENT;
      }
      rbo::KeyedItem item;
      item.key = items[i].key;
      if (items[i].payload_len > 0) {
        item.payload.assign(items[i].payload, items[i].payload + items[i].payload_len);
      }
      cpp_items.push_back(std::move(item));
    }
    auto* handle = new rbo_schedule{
        rbo::BroadcastSchedule::build(std::move(cpp_items), sequence_id, slot_length_ms)};
    *out = handle;
    return RBO_OK;
  });
}

void rbo_schedule_destroy(rbo_schedule* sched) { delete sched; }

uint32_t rbo_schedule_log_length(const rbo_schedule* sched) {
  return sched == nullptr ? 0 : sched->impl.log_length();
}

uint64_t rbo_schedule_length(const rbo_schedule* sched) {
  return sched == nullptr ? 0 : sched->impl.length();
}

rbo_status rbo_schedule_entry_key(const rbo_schedule* sched, uint64_t rank,
                                  uint64_t* key_out) {
  if (sched == nullptr || key_out == nullptr) {
    return RBO_ERR_ARGUMENT;
  }
  return guarded([&] {
    *key_out = sched->impl.entry(rank).key;
    return RBO_OK;
  });
}

rbo_status rbo_schedule_slot_message(const rbo_schedule* sched, uint64_t global_slot,
                                     rbo_message* out) {
  if (sched == nullptr || out == nullptr) {
    return RBO_ERR_ARGUMENT;
  }
  return guarded([&] {
    to_c(sched->impl.slot_message(global_slot), *out);
    return RBO_OK;
  });
}

void rbo_protocol_config_defaults(uint32_t slot_length_ms, rbo_protocol_config* out) {
  if (out == nullptr) {
    return;
  }
  const rbo::ProtocolConfig c = rbo::ProtocolConfig::for_slot_length(slot_length_ms);
  out->time_margin_ms = c.time_margin_ms;
  out->relative_margin_divisor = c.relative_margin_divisor;
  out->min_sleeping_time_ms = c.min_sleeping_time_ms;
  out->timeout_ms = c.timeout_ms;
}

rbo_status rbo_receiver_create(const rbo_protocol_config* config, rbo_receiver** out) {
  if (config == nullptr || out == nullptr) {
    return RBO_ERR_ARGUMENT;
  }
  return guarded([&] {
    *out = new rbo_receiver{rbo::ReceiverFsm(to_cpp(*config))};
    return RBO_OK;
  });
}

void rbo_receiver_destroy(rbo_receiver* recv) { delete recv; }

rbo_status rbo_receiver_search(rbo_receiver* recv, uint64_t key, rbo_effect* effects,
                               size_t cap, size_t* count) {
  if (recv == nullptr) {
    return RBO_ERR_ARGUMENT;
  }
  return guarded([&] { return write_effects(recv->impl.search(key), effects, cap, count); });
}

rbo_status rbo_receiver_stop(rbo_receiver* recv, rbo_effect* effects, size_t cap,
                             size_t* count) {
  if (recv == nullptr) {
    return RBO_ERR_ARGUMENT;
  }
  return guarded([&] { return write_effects(recv->impl.stop(), effects, cap, count); });
}

rbo_status rbo_receiver_reset(rbo_receiver* recv, rbo_effect* effects, size_t cap,
                              size_t* count) {
  if (recv == nullptr) {
    return RBO_ERR_ARGUMENT;
  }
  return guarded([&] { return write_effects(recv->impl.reset(), effects, cap, count); });
}

rbo_status rbo_receiver_received(rbo_receiver* recv, const rbo_message* m,
                                 uint64_t now_ms, rbo_effect* effects, size_t cap,
                                 size_t* count) {
  if (recv == nullptr || m == nullptr) {
    return RBO_ERR_ARGUMENT;
  }
  if (m->payload_len > RBO_MAX_PAYLOAD) {
    return RBO_ERR_PAYLOAD_LENGTH;
  }
  return guarded([&] {
    return write_effects(recv->impl.received(to_cpp(*m), now_ms), effects, cap, count);
  });
}

rbo_status rbo_receiver_timer_fired(rbo_receiver* recv, rbo_timer_kind which,
                                    rbo_effect* effects, size_t cap, size_t* count) {
  if (recv == nullptr || (which != RBO_TIMER_TIMEOUT && which != RBO_TIMER_SLEEPING)) {
    return RBO_ERR_ARGUMENT;
  }
  return guarded([&] {
    return write_effects(recv->impl.timer_fired(static_cast<rbo::TimerKind>(which)),
                         effects, cap, count);
  });
}

rbo_status rbo_receiver_radio_switch_done(rbo_receiver* recv, int ok,
                                          rbo_effect* effects, size_t cap,
                                          size_t* count) {
  if (recv == nullptr) {
    return RBO_ERR_ARGUMENT;
  }
  return guarded([&] {
    return write_effects(recv->impl.radio_switch_done(ok != 0), effects, cap, count);
  });
}

rbo_fsm_state rbo_receiver_state(const rbo_receiver* recv) {
  return recv == nullptr ? RBO_FSM_IDLE
                         : static_cast<rbo_fsm_state>(recv->impl.state());
}

rbo_radio_state rbo_receiver_radio(const rbo_receiver* recv) {
  return recv == nullptr ? RBO_RADIO_OFF
                         : static_cast<rbo_radio_state>(recv->impl.radio());
}

uint32_t rbo_receiver_sequence_id(const rbo_receiver* recv) {
  return recv == nullptr ? 0 : recv->impl.sequence_id();
}

uint32_t rbo_receiver_log_sequence_length(const rbo_receiver* recv) {
  return recv == nullptr ? 0 : recv->impl.log_sequence_length();
}

uint64_t rbo_receiver_searched_key(const rbo_receiver* recv) {
  return recv == nullptr ? 0 : recv->impl.searched_key();
}

void rbo_receiver_interval(const rbo_receiver* recv, uint64_t* min_rank,
                           uint64_t* sup_rank) {
  if (recv == nullptr) {
    return;
  }
  if (min_rank != nullptr) {
    *min_rank = recv->impl.interval().min_rank;
  }
  if (sup_rank != nullptr) {
    *sup_rank = recv->impl.interval().sup_rank;
  }
}

int rbo_receiver_timer_armed(const rbo_receiver* recv, rbo_timer_kind which) {
  if (recv == nullptr || (which != RBO_TIMER_TIMEOUT && which != RBO_TIMER_SLEEPING)) {
    return 0;
  }
  return recv->impl.timer_armed(static_cast<rbo::TimerKind>(which)) ? 1 : 0;
}

void rbo_trial_config_init(rbo_trial_config* cfg) {
  if (cfg == nullptr) {
    return;
  }
  std::memset(cfg, 0, sizeof *cfg);
  cfg->k = 10;
  cfg->p_success = 1.0;
  cfg->mode = RBO_MODE_BARE;
  cfg->retry = RBO_RETRY_NEXT_IN_INTERVAL;
  cfg->slot_length_ms = 100;
}

rbo_status rbo_run_trial(const rbo_trial_config* cfg, rbo_trial_metrics* out) {
  if (cfg == nullptr || out == nullptr) {
    return RBO_ERR_ARGUMENT;
  }
  return guarded([&] {
    rbo::TrialConfig tc;
    tc.k = cfg->k;
    tc.seed = cfg->seed;
    tc.p_success = cfg->p_success;
    tc.mode = cfg->mode == RBO_MODE_BARE ? rbo::TrialMode::kBareAlgorithm
                                         : rbo::TrialMode::kFullFsm;
    tc.retry = cfg->retry == RBO_RETRY_IMMEDIATE_NEXT ? rbo::RetryPolicy::kImmediateNext
                                                      : rbo::RetryPolicy::kNextInInterval;
    if (cfg->has_gap_rank) {
      tc.gap_rank = cfg->gap_rank;
    }
    if (cfg->has_start_slot) {
      tc.start_slot = cfg->start_slot;
    }
    tc.slot_length_ms = cfg->slot_length_ms;
    tc.radio_switch_latency_ms = cfg->radio_switch_latency_ms;
    tc.clock_skew = cfg->clock_skew;
    if (cfg->protocol != nullptr) {
      tc.protocol = to_cpp(*cfg->protocol);
    }
    const rbo::TrialMetrics m = rbo::run_trial(tc);
    out->receptions = m.receptions;
    out->elapsed_slots = m.elapsed_slots;
    out->radio_on_ms = m.radio_on_ms;
    out->outcome = static_cast<rbo_trial_outcome>(m.outcome);
    return RBO_OK;
  });
}

void rbo_experiment_config_init(rbo_experiment_config* cfg) {
  if (cfg == nullptr) {
    return;
  }
  std::memset(cfg, 0, sizeof *cfg);
  cfg->k_min = 10;
  cfg->k_max = 16;
  cfg->p_values = nullptr;
  cfg->p_count = 0;
  cfg->trials = 100000;
  cfg->master_seed = 1;
  cfg->mode = RBO_MODE_BARE;
  cfg->retry = RBO_RETRY_NEXT_IN_INTERVAL;
  cfg->threads = 1;
  cfg->slot_length_ms = 100;
}

rbo_status rbo_run_experiment(const rbo_experiment_config* cfg, rbo_experiment_row* rows,
                              size_t cap, size_t* count) {
  if (cfg == nullptr || rows == nullptr || count == nullptr ||
      (cfg->p_values == nullptr && cfg->p_count > 0)) {
    return RBO_ERR_ARGUMENT;
  }
  return guarded([&] {
    rbo::ExperimentConfig ec;
    ec.k_min = cfg->k_min;
    ec.k_max = cfg->k_max;
    ec.p_values.assign(cfg->p_values, cfg->p_values + cfg->p_count);
    ec.trials = cfg->trials;
    ec.master_seed = cfg->master_seed;
    ec.mode = cfg->mode == RBO_MODE_BARE ? rbo::TrialMode::kBareAlgorithm
                                         : rbo::TrialMode::kFullFsm;
    ec.retry = cfg->retry == RBO_RETRY_IMMEDIATE_NEXT
                   ? rbo::RetryPolicy::kImmediateNext
                   : rbo::RetryPolicy::kNextInInterval;
    ec.threads = cfg->threads;
    ec.slot_length_ms = cfg->slot_length_ms;
    ec.radio_switch_latency_ms = cfg->radio_switch_latency_ms;
    ec.clock_skew = cfg->clock_skew;
    const std::vector<rbo::ExperimentRow> out_rows = rbo::run_experiment(ec);
    if (out_rows.size() > cap) {
      return RBO_ERR_BUFFER_TOO_SMALL;
    }
    for (std::size_t i = 0; i < out_rows.size(); ++i) {
      rows[i].k = out_rows[i].k;
      rows[i].p = out_rows[i].p;
      rows[i].trials = out_rows[i].trials;
      rows[i].mean_energy = out_rows[i].mean_energy;
      rows[i].std_energy = out_rows[i].std_energy;
      rows[i].mean_slots = out_rows[i].mean_slots;
      rows[i].std_slots = out_rows[i].std_slots;
      rows[i].seed = out_rows[i].seed;
    }
    *count = out_rows.size();
    return RBO_OK;
  });
}

rbo_status rbo_experiment_csv(const rbo_experiment_row* rows, size_t count, char* buf,
                              size_t cap, size_t* len) {
  if ((rows == nullptr && count > 0) || buf == nullptr || len == nullptr) {
    return RBO_ERR_ARGUMENT;
  }
  return guarded([&] {
    std::vector<rbo::ExperimentRow> cpp_rows(count);
    for (std::size_t i = 0; i < count; ++i) {
      cpp_rows[i].k = rows[i].k;
      cpp_rows[i].p = rows[i].p;
      cpp_rows[i].trials = rows[i].trials;
      cpp_rows[i].mean_energy = rows[i].mean_energy;
      cpp_rows[i].std_energy = rows[i].std_energy;
      cpp_rows[i].mean_slots = rows[i].mean_slots;
      cpp_rows[i].std_slots = rows[i].std_slots;
      cpp_rows[i].seed = rows[i].seed;
    }
    const std::string csv = rbo::experiment_csv(cpp_rows);
    if (csv.size() + 1 > cap) {
      return RBO_ERR_BUFFER_TOO_SMALL;
    }
    std::memcpy(buf, csv.data(), csv.size());
    buf[csv.size()] = '\0';
    *len = csv.size();
    return RBO_OK;
  });
}

void rbo_verify_options_init(rbo_verify_options* opts) {
  if (opts == nullptr) {
    return;
  }
  opts->max_k = 8;
  opts->samples = 100000;
  opts->seed = 1;
  opts->inject_fault = 0;
}

rbo_status rbo_verify_run(const rbo_verify_options* opts, rbo_verify_result* results,
                          size_t cap, size_t* count) {
  if (opts == nullptr || results == nullptr || count == nullptr) {
    return RBO_ERR_ARGUMENT;
  }
  return guarded([&] {
    rbo::verify::Options vo;
    vo.exhaustive_max_k = opts->max_k;
    vo.samples = opts->samples;
    vo.seed = opts->seed;
    if (opts->inject_fault != 0) {
      vo.rev_bits_fn = &broken_rev_bits;
    }
    std::erase_if(vo.random_ks, [&](unsigned k) { return k > opts->max_k; });
    const std::vector<rbo::verify::SuiteResult> suites = rbo::verify::run_all(vo);
    if (suites.size() > cap) {
      return RBO_ERR_BUFFER_TOO_SMALL;
    }
    for (std::size_t i = 0; i < suites.size(); ++i) {
      copy_str(results[i].name, sizeof results[i].name, suites[i].name);
      results[i].passed = suites[i].passed ? 1 : 0;
      results[i].cases = suites[i].cases;
      copy_str(results[i].detail, sizeof results[i].detail, suites[i].detail);
    }
    *count = suites.size();
    return RBO_OK;
  });
}

}  // extern "C"
