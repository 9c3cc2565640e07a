#include "rbo/receiver.hpp"

#include <bit>
#include <stdexcept>

#include "rbo/bitrev.hpp"
#include "rbo/next_slot.hpp"

namespace rbo {

ProtocolConfig ProtocolConfig::for_slot_length(std::uint32_t slot_length_ms) {
  ProtocolConfig c;
  c.time_margin_ms = 5;
  c.relative_margin_divisor = 64;
  c.min_sleeping_time_ms = 2 * std::uint64_t{slot_length_ms};
  c.timeout_ms = 8 * std::uint64_t{slot_length_ms};
  return c;
}

void ProtocolConfig::validate() const {
  if (relative_margin_divisor == 0 || !std::has_single_bit(relative_margin_divisor)) {
    throw std::invalid_argument("relative margin divisor must be a power of two");
  }
}

ReceiverFsm::ReceiverFsm(const ProtocolConfig& config) : config_(config) {
  config_.validate();
}

bool ReceiverFsm::timer_armed(TimerKind which) const {
  return timer_armed_[static_cast<int>(which)];
}

void ReceiverFsm::reconcile_radio(Effects& fx) {
  if (radio_ == RadioState::kOff && radio_wanted_on_) {
    radio_ = RadioState::kTurningOn;
    fx.push_back({Effect::Kind::kRadioOn, {}, 0, {}, std::nullopt});
  } else if (radio_ == RadioState::kOn && !radio_wanted_on_) {
    radio_ = RadioState::kTurningOff;
    fx.push_back({Effect::Kind::kRadioOff, {}, 0, {}, std::nullopt});
  }
  // Mid-switch: wait for radio_switch_done, which reconciles again.
}

void ReceiverFsm::want_radio(bool on, Effects& fx) {
  radio_wanted_on_ = on;
  reconcile_radio(fx);
}

void ReceiverFsm::arm(TimerKind which, std::uint64_t duration_ms, Effects& fx) {
  timer_armed_[static_cast<int>(which)] = true;
  fx.push_back({Effect::Kind::kArmTimer, which, duration_ms, {}, std::nullopt});
}

void ReceiverFsm::cancel(TimerKind which, Effects& fx) {
  if (!timer_armed_[static_cast<int>(which)]) {
    return;
  }
  timer_armed_[static_cast<int>(which)] = false;
  fx.push_back({Effect::Kind::kCancelTimer, which, 0, {}, std::nullopt});
}

void ReceiverFsm::arm_timeout(Effects& fx) {
  if (config_.timeout_ms > 0) {
    arm(TimerKind::kTimeout, config_.timeout_ms, fx);
  }
}

void ReceiverFsm::finish(UserEvent event, std::optional<Message> message, Effects& fx) {
  cancel(TimerKind::kTimeout, fx);
  cancel(TimerKind::kSleeping, fx);
  state_ = FsmState::kIdle;
  want_radio(false, fx);
  fx.push_back({Effect::Kind::kSignalUser, {}, 0, event, std::move(message)});
}

Effects ReceiverFsm::search(std::uint64_t key) {
  Effects fx;
  if (have_search_ && log_sequence_length_ > 0) {
    // Bounds proven against the old key transfer to the new one on the side
    // where the comparison still holds; the other side reopens fully.
    if (key > searched_key_) {
      interval_.sup_rank = std::uint64_t{1} << log_sequence_length_;
    } else if (key < searched_key_) {
      interval_.min_rank = 0;
    }
  }
  searched_key_ = key;
  have_search_ = true;
  cancel(TimerKind::kSleeping, fx);
  state_ = FsmState::kListening;
  arm_timeout(fx);
  want_radio(true, fx);
  return fx;
}

Effects ReceiverFsm::stop() {
  Effects fx;
  cancel(TimerKind::kTimeout, fx);
  cancel(TimerKind::kSleeping, fx);
  state_ = FsmState::kIdle;
  want_radio(false, fx);
  return fx;
}

Effects ReceiverFsm::reset() {
  Effects fx = stop();
  have_search_ = false;
  searched_key_ = 0;
  sequence_id_ = 0;
  log_sequence_length_ = 0;
  interval_ = RankInterval{0, 0};
  sleep_deadline_ms_ = 0;
  return fx;
}

Effects ReceiverFsm::received(const Message& m, std::uint64_t now_ms) {
  Effects fx;
  if (state_ != FsmState::kListening) {
    return fx;
  }
  if (is_bad_message(m)) {
    finish(UserEvent::kBadMessage, m, fx);
    return fx;
  }
  if (m.log_sequence_length == 0 || m.log_sequence_length > kMaxBitWidth ||
      (m.rank >> m.log_sequence_length) != 0) {
    // Malformed beyond what the codec admits; treat like a bad message.
    finish(UserEvent::kBadMessage, m, fx);
    return fx;
  }

  if (m.sequence_id != sequence_id_ || m.log_sequence_length != log_sequence_length_) {
    // New broadcast round parameters: adopt them and restart the interval.
    sequence_id_ = m.sequence_id;
    log_sequence_length_ = m.log_sequence_length;
    interval_ = RankInterval::full(log_sequence_length_);
  }

  const unsigned k = log_sequence_length_;
  if (m.key == searched_key_) {
    finish(UserEvent::kSuccess, m, fx);
    return fx;
  }
  if (m.key < searched_key_) {
    if (interval_.min_rank <= m.rank) {
      interval_.raise_past(m.rank);
    }
  } else {
    if (interval_.sup_rank > m.rank) {
      interval_.lower_past(m.rank);
    }
  }
  if (interval_.empty()) {
    finish(UserEvent::kKeyNotPresent, std::nullopt, fx);
    return fx;
  }

  const std::uint64_t slot = rev_bits(k, m.rank);
  const std::uint64_t next =
      next_slot({k, slot, interval_.min_rank, interval_.max_rank()});
  const std::uint64_t slots_to_next = slot_distance(k, slot, next);
  const std::uint64_t slot_ms = m.time_slot_length_ms;
  const std::uint64_t remaining_ms =
      (slot_ms != 0 && slots_to_next > UINT64_MAX / slot_ms) ? UINT64_MAX
                                                             : slots_to_next * slot_ms;

  if (remaining_ms >= config_.min_sleeping_time_ms) {
    const std::uint64_t shrink =
        remaining_ms / config_.relative_margin_divisor + config_.time_margin_ms;
    const std::uint64_t sleep_ms = remaining_ms > shrink ? remaining_ms - shrink : 0;
    cancel(TimerKind::kTimeout, fx);
    state_ = FsmState::kSleeping;
    want_radio(false, fx);
    arm(TimerKind::kSleeping, sleep_ms, fx);
    sleep_deadline_ms_ = now_ms + sleep_ms;
  } else {
    // Close enough to stay awake; a fresh reception restarts the timeout.
    arm_timeout(fx);
  }
  return fx;
}

Effects ReceiverFsm::timer_fired(TimerKind which) {
  Effects fx;
  timer_armed_[static_cast<int>(which)] = false;
  switch (which) {
    case TimerKind::kSleeping:
      if (state_ != FsmState::kSleeping) {
        return fx;  // stale
      }
      state_ = FsmState::kListening;
      arm_timeout(fx);
      want_radio(true, fx);
      return fx;
    case TimerKind::kTimeout:
      if (state_ != FsmState::kListening) {
        return fx;  // stale
      }
      finish(UserEvent::kTimeout, std::nullopt, fx);
      return fx;
  }
  return fx;
}

Effects ReceiverFsm::radio_switch_done(bool ok) {
  Effects fx;
  if (radio_ != RadioState::kTurningOn && radio_ != RadioState::kTurningOff) {
    return fx;  // stale callback
  }
  if (!ok) {
    radio_ = RadioState::kOff;
    radio_wanted_on_ = false;
    cancel(TimerKind::kTimeout, fx);
    cancel(TimerKind::kSleeping, fx);
    state_ = FsmState::kIdle;
    fx.push_back({Effect::Kind::kSignalUser, {}, 0, UserEvent::kFailedRadio, std::nullopt});
    return fx;
  }
  radio_ = radio_ == RadioState::kTurningOn ? RadioState::kOn : RadioState::kOff;
  reconcile_radio(fx);
  return fx;
}

}  // namespace rbo
