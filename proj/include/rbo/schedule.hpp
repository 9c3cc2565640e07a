#pragma once

#include <cstdint>
#include <vector>

#include "rbo/message.hpp"

namespace rbo {

struct KeyedItem {
  std::uint64_t key = 0;
  std::vector<std::uint8_t> payload;

  bool operator==(const KeyedItem&) const = default;
};

// The sender's view of one broadcast round: items sorted by key and padded
// with duplicates up to a power-of-two length n = 2^k, transmitted in
// bit-reversed rank order (slot t carries rank rev_bits(k, t)).
class BroadcastSchedule {
 public:
  // Sorts items by key (stable, so equal keys keep their payload order) and
  // pads by duplicating evenly spaced entries. Throws std::invalid_argument
  // for an empty item list or a zero sequence id, std::length_error when the
  // padded length would exceed 2^63.
  static BroadcastSchedule build(std::vector<KeyedItem> items, std::uint32_t sequence_id,
                                 std::uint32_t slot_length_ms);

  [[nodiscard]] unsigned log_length() const { return k_; }
  [[nodiscard]] std::uint64_t length() const { return std::uint64_t{1} << k_; }
  [[nodiscard]] std::uint32_t sequence_id() const { return sequence_id_; }
  [[nodiscard]] std::uint32_t slot_length_ms() const { return slot_length_ms_; }

  // Padded, sorted entry at a rank. Throws std::out_of_range.
  [[nodiscard]] const KeyedItem& entry(std::uint64_t rank) const;

  // Rank transmitted at a global slot (slots wrap modulo the round length).
  [[nodiscard]] std::uint64_t rank_of_slot(std::uint64_t global_slot) const;

  // Fully formed message for a global slot.
  [[nodiscard]] Message slot_message(std::uint64_t global_slot) const;

 private:
  BroadcastSchedule() = default;

  unsigned k_ = 0;
  std::uint32_t sequence_id_ = 0;
  std::uint32_t slot_length_ms_ = 0;
  std::vector<KeyedItem> entries_;
};

// Indices (into the sorted originals) of the entries duplicated when padding
// n items up to next_pow2(n): the j-th inserted duplicate copies sorted
// position floor(j * n / (next_pow2(n) - n)). Exposed for inspection; build()
// applies it internally.
[[nodiscard]] std::vector<std::uint64_t> padding_positions(std::uint64_t n);

}  // namespace rbo
