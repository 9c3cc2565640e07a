#include "rbo/schedule.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "rbo/bitrev.hpp"

namespace rbo {

std::vector<std::uint64_t> padding_positions(std::uint64_t n) {
  if (n == 0) {
    throw std::invalid_argument("cannot pad an empty sequence");
  }
  // Pad to the next power of two; a single item still needs a length-2 round
  // because the protocol requires k >= 1.
  std::uint64_t target = std::bit_ceil(n);
  if (target < 2) {
    target = 2;
  }
  const std::uint64_t missing = target - n;
  std::vector<std::uint64_t> positions;
  positions.reserve(missing);
  for (std::uint64_t j = 0; j < missing; ++j) {
    positions.push_back(j * n / missing);
  }
  return positions;
}

BroadcastSchedule BroadcastSchedule::build(std::vector<KeyedItem> items,
                                           std::uint32_t sequence_id,
                                           std::uint32_t slot_length_ms) {
  if (items.empty()) {
    throw std::invalid_argument("schedule needs at least one item");
  }
  if (sequence_id == 0) {
    throw std::invalid_argument("sequence id 0 is reserved for bad messages");
  }
  if (items.size() > (std::uint64_t{1} << kMaxBitWidth)) {
    throw std::length_error("too many items for a 63-bit round");
  }
  std::stable_sort(items.begin(), items.end(),
                   [](const KeyedItem& a, const KeyedItem& b) { return a.key < b.key; });

  const std::uint64_t n = items.size();
  const std::vector<std::uint64_t> dup_positions = padding_positions(n);

  BroadcastSchedule sched;
  sched.entries_.reserve(n + dup_positions.size());
  // dup_positions is non-decreasing, so one merge pass places each duplicate
  // right next to its original, keeping the padded sequence sorted.
  std::size_t next_dup = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    while (next_dup < dup_positions.size() && dup_positions[next_dup] == i) {
      sched.entries_.push_back(items[i]);
      ++next_dup;
    }
    sched.entries_.push_back(std::move(items[i]));
  }

  sched.k_ = static_cast<unsigned>(std::bit_width(sched.entries_.size() - 1));
  sched.sequence_id_ = sequence_id;
  sched.slot_length_ms_ = slot_length_ms;
  return sched;
}

const KeyedItem& BroadcastSchedule::entry(std::uint64_t rank) const {
  if (rank >= entries_.size()) {
    throw std::out_of_range("rank " + std::to_string(rank) + " out of range");
  }
  return entries_[rank];
}

std::uint64_t BroadcastSchedule::rank_of_slot(std::uint64_t global_slot) const {
  const std::uint64_t mask = (std::uint64_t{1} << k_) - 1;
  return rev_bits(k_, global_slot & mask);
}

Message BroadcastSchedule::slot_message(std::uint64_t global_slot) const {
  const std::uint64_t rank = rank_of_slot(global_slot);
  const KeyedItem& item = entries_[rank];
  Message m;
  m.sequence_id = sequence_id_;
  m.log_sequence_length = static_cast<std::uint8_t>(k_);
  m.time_slot_length_ms = slot_length_ms_;
  m.key = item.key;
  m.rank = rank;
  m.payload = item.payload;
  return m;
}

}  // namespace rbo
