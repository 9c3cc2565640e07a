#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rbo {

// Wire layout, little-endian, fixed 27-byte header followed by the payload:
//
//   offset  size  field
//        0     4  sequence_id
//        4     1  log_sequence_length
//        5     4  time_slot_length_ms
//        9     8  key
//       17     8  rank
//       25     2  payload_len
//       27     -  payload (payload_len bytes, at most 1024)
inline constexpr std::size_t kHeaderBytes = 27;
inline constexpr std::size_t kMaxPayload = 1024;

struct Message {
  std::uint32_t sequence_id = 0;
  std::uint8_t log_sequence_length = 0;
  std::uint32_t time_slot_length_ms = 0;
  std::uint64_t key = 0;
  std::uint64_t rank = 0;
  std::vector<std::uint8_t> payload;

  bool operator==(const Message&) const = default;
};

// sequence_id 0 is reserved: it round-trips through the codec but marks a
// message receivers must not act on.
[[nodiscard]] inline bool is_bad_message(const Message& m) { return m.sequence_id == 0; }

enum class DecodeStatus {
  kOk,
  kTruncated,              // fewer bytes than the header + declared payload
  kBadBitWidth,            // log_sequence_length outside [1, 63]
  kRankOverflow,           // rank >= 2^log_sequence_length
  kPayloadLengthMismatch,  // declared length over the cap, or trailing bytes
};

[[nodiscard]] const char* to_string(DecodeStatus s);

// Serializes m. Throws std::domain_error for an invalid bit width or an
// out-of-range rank and std::length_error for an oversized payload.
[[nodiscard]] std::vector<std::uint8_t> encode_message(const Message& m);

// Parses exactly one message from data; out is unchanged on failure.
[[nodiscard]] DecodeStatus decode_message(std::span<const std::uint8_t> data, Message& out);

}  // namespace rbo
