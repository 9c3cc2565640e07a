#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rbo/message.hpp"
#include "rbo/rng.hpp"
#include "rbo/schedule.hpp"

using rbo::decode_message;
using rbo::DecodeStatus;
using rbo::encode_message;
using rbo::Message;

TEST_CASE("golden minimal header") {
  Message m;
  m.sequence_id = 1;
  m.log_sequence_length = 1;
  const auto bytes = encode_message(m);
  REQUIRE(bytes.size() == rbo::kHeaderBytes);
  const std::uint8_t expect[27] = {0x01, 0x00, 0x00, 0x00, 0x01};
  for (std::size_t i = 0; i < 27; ++i) {
    CHECK(bytes[i] == expect[i]);
  }
}

TEST_CASE("golden full message, little-endian layout") {
  Message m;
  m.sequence_id = 0x04030201;
  m.log_sequence_length = 5;
  m.time_slot_length_ms = 0x08070605;
  m.key = 0x1122334455667788ull;
  m.rank = 0x1f;
  m.payload = {0xaa, 0xbb};
  const auto bytes = encode_message(m);
  const std::vector<std::uint8_t> expect = {
      0x01, 0x02, 0x03, 0x04,                          // sequence_id
      0x05,                                            // log_sequence_length
      0x05, 0x06, 0x07, 0x08,                          // time_slot_length_ms
      0x88, 0x77, 0x66, 0x55, 0x44, 0x33, 0x22, 0x11,  // key
      0x1f, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00,  // rank
      0x02, 0x00,                                      // payload_len
      0xaa, 0xbb,
  };
  CHECK(bytes == expect);

  Message back;
  REQUIRE(decode_message(bytes, back) == DecodeStatus::kOk);
  CHECK(back == m);
}

TEST_CASE("random roundtrips") {
  rbo::SplitMix64 rng(21);
  for (int i = 0; i < 2000; ++i) {
    Message m;
    m.sequence_id = static_cast<std::uint32_t>(rng.next());
    if (m.sequence_id == 0) {
      m.sequence_id = 1;
    }
    m.log_sequence_length = static_cast<std::uint8_t>(1 + rng.below(63));
    m.time_slot_length_ms = static_cast<std::uint32_t>(rng.next());
    m.key = rng.next();
    m.rank = rng.below(std::uint64_t{1} << m.log_sequence_length);
    m.payload.resize(rng.below(rbo::kMaxPayload + 1));
    for (auto& b : m.payload) {
      b = static_cast<std::uint8_t>(rng.next());
    }
    const auto bytes = encode_message(m);
    REQUIRE(bytes.size() == rbo::kHeaderBytes + m.payload.size());
    Message back;
    REQUIRE(decode_message(bytes, back) == DecodeStatus::kOk);
    REQUIRE(back == m);
  }
}

TEST_CASE("sequence id zero roundtrips but is flagged") {
  Message m;
  m.sequence_id = 0;
  m.log_sequence_length = 3;
  const auto bytes = encode_message(m);
  Message back;
  REQUIRE(decode_message(bytes, back) == DecodeStatus::kOk);
  CHECK(rbo::is_bad_message(back));
  back.sequence_id = 7;
  CHECK(!rbo::is_bad_message(back));
}

TEST_CASE("decode failures leave the output untouched") {
  Message m;
  m.sequence_id = 9;
  m.log_sequence_length = 4;
  m.rank = 11;
  m.payload = {1, 2, 3, 4, 5};
  auto bytes = encode_message(m);

  Message out;
  out.key = 0xdead;
  SUBCASE("empty") {
    CHECK(decode_message({bytes.data(), std::size_t{0}}, out) == DecodeStatus::kTruncated);
  }
  SUBCASE("short header") {
    CHECK(decode_message({bytes.data(), rbo::kHeaderBytes - 1}, out) ==
          DecodeStatus::kTruncated);
  }
  SUBCASE("payload shorter than declared") {
    CHECK(decode_message({bytes.data(), bytes.size() - 2}, out) == DecodeStatus::kTruncated);
  }
  SUBCASE("trailing bytes") {
    bytes.push_back(0);
    CHECK(decode_message(bytes, out) == DecodeStatus::kPayloadLengthMismatch);
  }
  SUBCASE("declared payload length over the cap") {
    bytes[25] = 0x01;  // payload_len = 1025
    bytes[26] = 0x04;
    bytes.resize(rbo::kHeaderBytes + 1025);
    CHECK(decode_message(bytes, out) == DecodeStatus::kPayloadLengthMismatch);
  }
  SUBCASE("bit width zero") {
    bytes[4] = 0;
    CHECK(decode_message(bytes, out) == DecodeStatus::kBadBitWidth);
  }
  SUBCASE("bit width 64") {
    bytes[4] = 64;
    CHECK(decode_message(bytes, out) == DecodeStatus::kBadBitWidth);
  }
  SUBCASE("rank overflow") {
    bytes[17] = 0x10;  // rank = 16 for k = 4
    CHECK(decode_message(bytes, out) == DecodeStatus::kRankOverflow);
  }
  CHECK(out.key == 0xdead);
}

TEST_CASE("encode rejects invalid messages") {
  Message m;
  m.sequence_id = 1;
  m.log_sequence_length = 0;
  CHECK_THROWS_AS((void)encode_message(m), std::domain_error);
  m.log_sequence_length = 64;
  CHECK_THROWS_AS((void)encode_message(m), std::domain_error);
  m.log_sequence_length = 3;
  m.rank = 8;
  CHECK_THROWS_AS((void)encode_message(m), std::domain_error);
  m.rank = 7;
  m.payload.resize(rbo::kMaxPayload + 1);
  CHECK_THROWS_AS((void)encode_message(m), std::length_error);
}

TEST_CASE("decode status strings") {
  CHECK(std::string(rbo::to_string(DecodeStatus::kOk)) == "ok");
  CHECK(std::string(rbo::to_string(DecodeStatus::kTruncated)) == "truncated");
}

TEST_CASE("padding positions") {
  using V = std::vector<std::uint64_t>;
  CHECK(rbo::padding_positions(1) == V{0});
  CHECK(rbo::padding_positions(2) == V{});
  CHECK(rbo::padding_positions(3) == V{0});
  CHECK(rbo::padding_positions(4) == V{});
  CHECK(rbo::padding_positions(5) == V{0, 1, 3});
  CHECK(rbo::padding_positions(9) == V{0, 1, 2, 3, 5, 6, 7});
}

TEST_CASE("schedule sorts, pads and exposes slot messages") {
  std::vector<rbo::KeyedItem> items = {
      {30, {3}},
      {10, {1}},
      {20, {2}},
  };
  const auto sched = rbo::BroadcastSchedule::build(items, 7, 100);
  CHECK(sched.log_length() == 2);
  CHECK(sched.length() == 4);
  CHECK(sched.sequence_id() == 7);
  CHECK(sched.slot_length_ms() == 100);

  // Padding duplicates sorted position 0, so the ranks read 10, 10, 20, 30.
  CHECK(sched.entry(0).key == 10);
  CHECK(sched.entry(1).key == 10);
  CHECK(sched.entry(2).key == 20);
  CHECK(sched.entry(3).key == 30);

  CHECK(sched.rank_of_slot(0) == 0);
  CHECK(sched.rank_of_slot(1) == 2);
  CHECK(sched.rank_of_slot(2) == 1);
  CHECK(sched.rank_of_slot(3) == 3);
  CHECK(sched.rank_of_slot(4) == 0);  // wraps
  CHECK(sched.rank_of_slot(5) == 2);

  const auto m = sched.slot_message(1);
  CHECK(m.sequence_id == 7);
  CHECK(m.log_sequence_length == 2);
  CHECK(m.time_slot_length_ms == 100);
  CHECK(m.key == 20);
  CHECK(m.rank == 2);
  CHECK(m.payload == std::vector<std::uint8_t>{2});
}

TEST_CASE("single item pads to a pair") {
  const auto sched = rbo::BroadcastSchedule::build({{42, {}}}, 1, 50);
  CHECK(sched.log_length() == 1);
  CHECK(sched.length() == 2);
  CHECK(sched.entry(0).key == 42);
  CHECK(sched.entry(1).key == 42);
}

TEST_CASE("equal keys keep their payload order") {
  std::vector<rbo::KeyedItem> items = {
      {10, {'a'}},
      {10, {'b'}},
      {5, {'c'}},
  };
  const auto sched = rbo::BroadcastSchedule::build(items, 3, 100);
  CHECK(sched.entry(0).key == 5);
  CHECK(sched.entry(1).key == 5);  // duplicate of sorted position 0
  CHECK(sched.entry(2).payload == std::vector<std::uint8_t>{'a'});
  CHECK(sched.entry(3).payload == std::vector<std::uint8_t>{'b'});
}

TEST_CASE("padded schedules stay sorted and keep every item") {
  rbo::SplitMix64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint64_t n = 1 + rng.below(520);
    std::vector<rbo::KeyedItem> items(n);
    std::vector<std::uint64_t> keys(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      keys[i] = rng.below(1000);
      items[i].key = keys[i];
    }
    const auto sched = rbo::BroadcastSchedule::build(items, 1, 100);
    REQUIRE(sched.length() == std::bit_ceil(n));
    std::vector<std::uint64_t> got;
    for (std::uint64_t r = 0; r < sched.length(); ++r) {
      got.push_back(sched.entry(r).key);
    }
    REQUIRE(std::is_sorted(got.begin(), got.end()));
    std::sort(keys.begin(), keys.end());
    // The padded sequence is the sorted originals plus one extra copy per
    // padding position.
    std::vector<std::uint64_t> expect = keys;
    for (const auto p : rbo::padding_positions(n)) {
      expect.push_back(keys[p]);
    }
    std::sort(expect.begin(), expect.end());
    REQUIRE(got == expect);
  }
}

TEST_CASE("schedule build validation") {
  CHECK_THROWS_AS((void)rbo::BroadcastSchedule::build({}, 1, 100), std::invalid_argument);
  CHECK_THROWS_AS((void)rbo::BroadcastSchedule::build({{1, {}}}, 0, 100),
                  std::invalid_argument);
  const auto sched = rbo::BroadcastSchedule::build({{1, {}}, {2, {}}}, 1, 100);
  CHECK_THROWS_AS((void)sched.entry(2), std::out_of_range);
}
