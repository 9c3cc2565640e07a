#include "rbo/message.hpp"

#include <stdexcept>
#include <string>

#include "rbo/bitrev.hpp"

namespace rbo {
namespace {

void put_u16(std::vector<std::uint8_t>& buf, std::uint16_t v) {
  buf.push_back(static_cast<std::uint8_t>(v));
  buf.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& buf, std::uint32_t v) {
  for (unsigned i = 0; i < 4; ++i) {
    buf.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
}

void put_u64(std::vector<std::uint8_t>& buf, std::uint64_t v) {
  for (unsigned i = 0; i < 8; ++i) {
    buf.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
}

std::uint16_t get_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (std::uint16_t{p[1]} << 8));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  std::uint32_t v = 0;
  for (unsigned i = 0; i < 4; ++i) {
    v |= std::uint32_t{p[i]} << (8 * i);
  }
  return v;
}

std::uint64_t get_u64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (unsigned i = 0; i < 8; ++i) {
    v |= std::uint64_t{p[i]} << (8 * i);
  }
  return v;
}

}  // namespace

const char* to_string(DecodeStatus s) {
  switch (s) {
    case DecodeStatus::kOk:
      return "ok";
    case DecodeStatus::kTruncated:
      return "truncated";
    case DecodeStatus::kBadBitWidth:
      return "bad bit width";
    case DecodeStatus::kRankOverflow:
      return "rank overflow";
    case DecodeStatus::kPayloadLengthMismatch:
      return "payload length mismatch";
  }
  return "unknown";
}

std::vector<std::uint8_t> encode_message(const Message& m) {
  if (m.log_sequence_length == 0 || m.log_sequence_length > kMaxBitWidth) {
    throw std::domain_error("log sequence length " +
                            std::to_string(unsigned{m.log_sequence_length}) + " out of [1, 63]");
  }
  if (m.rank >> m.log_sequence_length) {
    throw std::domain_error("rank " + std::to_string(m.rank) +
                            " out of range for sequence length");
  }
  if (m.payload.size() > kMaxPayload) {
    throw std::length_error("payload of " + std::to_string(m.payload.size()) +
                            " bytes exceeds " + std::to_string(kMaxPayload));
  }
  std::vector<std::uint8_t> buf;
  buf.reserve(kHeaderBytes + m.payload.size());
  put_u32(buf, m.sequence_id);
  buf.push_back(m.log_sequence_length);
  put_u32(buf, m.time_slot_length_ms);
  put_u64(buf, m.key);
  put_u64(buf, m.rank);
  put_u16(buf, static_cast<std::uint16_t>(m.payload.size()));
  buf.insert(buf.end(), m.payload.begin(), m.payload.end());
  return buf;
}

DecodeStatus decode_message(std::span<const std::uint8_t> data, Message& out) {
  if (data.size() < kHeaderBytes) {
    return DecodeStatus::kTruncated;
  }
  const std::uint8_t* p = data.data();
  Message m;
  m.sequence_id = get_u32(p);
  m.log_sequence_length = p[4];
  m.time_slot_length_ms = get_u32(p + 5);
  m.key = get_u64(p + 9);
  m.rank = get_u64(p + 17);
  const std::uint16_t payload_len = get_u16(p + 25);
  if (m.log_sequence_length == 0 || m.log_sequence_length > kMaxBitWidth) {
    return DecodeStatus::kBadBitWidth;
  }
  if (m.rank >> m.log_sequence_length) {
    return DecodeStatus::kRankOverflow;
  }
  if (payload_len > kMaxPayload) {
    return DecodeStatus::kPayloadLengthMismatch;
  }
  if (data.size() < kHeaderBytes + payload_len) {
    return DecodeStatus::kTruncated;
  }
  if (data.size() > kHeaderBytes + payload_len) {
    return DecodeStatus::kPayloadLengthMismatch;
  }
  m.payload.assign(p + kHeaderBytes, p + kHeaderBytes + payload_len);
  out = std::move(m);
  return DecodeStatus::kOk;
}

}  // namespace rbo
