#pragma once

#include <cstdint>

namespace rbo {

// A wake-up query: the receiver last listened at slot t of a 2^k-slot round
// and still considers the ranks [r1, r2] candidates. The answer is the global
// slot (in the infinite periodic schedule, taken modulo 2^k here) of the
// next transmission after t whose rank lies in the interval; if no such slot
// remains in the current round, the earliest matching slot overall, i.e. the
// one reached first in the following round.
struct SlotQuery {
  unsigned k = 0;
  std::uint64_t t = 0;
  std::uint64_t r1 = 0;
  std::uint64_t r2 = 0;

  // Throws std::domain_error unless 1 <= k <= 63, t < 2^k, r1 <= r2 < 2^k.
  void validate() const;
};

enum class Strategy {
  kAuto,
  kNaive,    // scan slots t+1, t+2, ... until one lands in the interval
  kReverse,  // scan ranks r1..r2, minimize cyclic slot distance
  kPolylog,  // interval descent, O(k) per level touched
};

[[nodiscard]] std::uint64_t next_slot_naive(const SlotQuery& q);
[[nodiscard]] std::uint64_t next_slot_reverse(const SlotQuery& q);
[[nodiscard]] std::uint64_t next_slot_polylog(const SlotQuery& q);

struct PolylogStats {
  unsigned iterations = 0;  // outer descent steps; bounded by k
};
[[nodiscard]] std::uint64_t next_slot_polylog(const SlotQuery& q, PolylogStats& stats);

// Dispatches on query shape: the naive scan when the interval is dense
// enough that the expected scan is short (2^k / width <= 128), otherwise the
// reverse scan for narrow intervals (width <= 64), otherwise the descent.
[[nodiscard]] std::uint64_t next_slot(const SlotQuery& q);
[[nodiscard]] std::uint64_t next_slot(const SlotQuery& q, Strategy strategy);

// Cyclic slot distance: how many slots elapse waiting from slot `from` to the
// next occurrence of slot `to`. Always in [1, 2^k]; a full round when equal.
[[nodiscard]] std::uint64_t slot_distance(unsigned k, std::uint64_t from, std::uint64_t to);

}  // namespace rbo
