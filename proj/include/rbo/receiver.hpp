#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rbo/message.hpp"
#include "rbo/search.hpp"

namespace rbo {

// Tuning knobs for the receiver state machine. All durations in ms.
struct ProtocolConfig {
  // Fixed safety margin subtracted from every sleep so the radio is awake
  // before the target slot starts.
  std::uint64_t time_margin_ms = 5;
  // Relative margin: sleeps are shortened by remaining / divisor to absorb
  // clock drift proportional to the sleep length. Must be a power of two.
  std::uint64_t relative_margin_divisor = 64;
  // Below this remaining time it is cheaper to stay listening than to cycle
  // the radio.
  std::uint64_t min_sleeping_time_ms = 0;
  // Listening continuously for this long without a reception aborts the
  // search (0 disables the timeout).
  std::uint64_t timeout_ms = 0;

  // Defaults scaled to a slot length: margin 5 ms, divisor 64, minimum sleep
  // two slots, timeout eight slots.
  static ProtocolConfig for_slot_length(std::uint32_t slot_length_ms);

  // Throws std::invalid_argument when relative_margin_divisor is not a
  // positive power of two.
  void validate() const;
};

enum class FsmState { kIdle, kListening, kSleeping };
enum class RadioState { kOff, kTurningOn, kOn, kTurningOff };
enum class TimerKind { kTimeout, kSleeping };

enum class UserEvent {
  kSuccess,        // searched key received; message attached
  kKeyNotPresent,  // candidate interval emptied
  kTimeout,        // listened too long without any reception
  kBadMessage,     // reserved sequence id 0 received; message attached
  kFailedRadio,    // radio switch reported failure
};

// Commands the state machine asks its environment to perform. The machine
// never touches hardware or clocks itself; it only emits these.
struct Effect {
  enum class Kind {
    kRadioOn,     // begin switching the radio on; reply via radio_switch_done
    kRadioOff,    // begin switching the radio off; reply via radio_switch_done
    kArmTimer,    // (re)arm `timer` to fire after duration_ms; replaces any pending one
    kCancelTimer, // disarm `timer`
    kSignalUser,  // deliver `event` (and message, when attached) to the application
  };

  Kind kind{};
  TimerKind timer = TimerKind::kTimeout;
  std::uint64_t duration_ms = 0;
  UserEvent event = UserEvent::kSuccess;
  std::optional<Message> message;
};

using Effects = std::vector<Effect>;

// Event-driven receiver: searches one key at a time in a periodic broadcast,
// sleeping through slots that cannot shrink the candidate interval. Pure
// transition logic: every input returns the effects to perform, so the same
// machine runs under the simulator and under tests without modification.
class ReceiverFsm {
 public:
  explicit ReceiverFsm(const ProtocolConfig& config);

  // Starts or retargets a search. Bounds learned for the current sequence
  // are kept where they remain valid: raising the key keeps the lower bound,
  // lowering it keeps the upper bound.
  Effects search(std::uint64_t key);

  // Cancels the search, keeping learned sequence parameters and bounds.
  Effects stop();

  // Cancels the search and forgets the sequence entirely.
  Effects reset();

  // Feeds one decoded message heard at now_ms (receiver clock).
  Effects received(const Message& m, std::uint64_t now_ms);

  Effects timer_fired(TimerKind which);

  Effects radio_switch_done(bool ok);

  [[nodiscard]] FsmState state() const { return state_; }
  [[nodiscard]] RadioState radio() const { return radio_; }
  [[nodiscard]] std::uint32_t sequence_id() const { return sequence_id_; }
  [[nodiscard]] unsigned log_sequence_length() const { return log_sequence_length_; }
  [[nodiscard]] std::uint64_t searched_key() const { return searched_key_; }
  [[nodiscard]] const RankInterval& interval() const { return interval_; }
  [[nodiscard]] bool timer_armed(TimerKind which) const;
  // Wake-up instant of the pending sleep (receiver clock); meaningful while
  // the sleeping timer is armed.
  [[nodiscard]] std::uint64_t sleep_deadline_ms() const { return sleep_deadline_ms_; }

 private:
  void want_radio(bool on, Effects& fx);
  void reconcile_radio(Effects& fx);
  void arm(TimerKind which, std::uint64_t duration_ms, Effects& fx);
  void cancel(TimerKind which, Effects& fx);
  void arm_timeout(Effects& fx);
  void finish(UserEvent event, std::optional<Message> message, Effects& fx);

  ProtocolConfig config_;
  FsmState state_ = FsmState::kIdle;
  RadioState radio_ = RadioState::kOff;
  bool radio_wanted_on_ = false;

  std::uint64_t searched_key_ = 0;
  bool have_search_ = false;
  std::uint32_t sequence_id_ = 0;
  unsigned log_sequence_length_ = 0;
  RankInterval interval_{0, 0};

  bool timer_armed_[2] = {false, false};
  std::uint64_t sleep_deadline_ms_ = 0;
};

}  // namespace rbo
