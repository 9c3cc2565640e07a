#pragma once

#include <cstdint>

namespace rbo {

// Ranks, slots and bit widths live in [0, 2^k) for a width k <= 63; the
// excluded 64th bit keeps cyclic distances (up to 2^k itself) representable.
inline constexpr unsigned kMaxBitWidth = 63;

// Reverses the k lowest-order bits of x. Involution: rev_bits(k, rev_bits(k, x)) == x.
// Throws std::domain_error unless k <= 63 and x < 2^k.
[[nodiscard]] std::uint64_t rev_bits(unsigned k, std::uint64_t x);

// Reference implementation of rev_bits built from the per-bit recurrence.
// Kept as an oracle for the table-driven fast path.
[[nodiscard]] std::uint64_t rev_bits_loop(unsigned k, std::uint64_t x);

// Classic binary-search visit order over 2^k sorted ranks, for contrast with
// the bit-reversal schedule: bs(k, 0..2^k-1) enumerates the root first, then
// each level left to right.
[[nodiscard]] std::uint64_t bs_order(unsigned k, std::uint64_t x);

// Depth of slot t in the broadcast tree: 0 for t == 0, otherwise the l with
// 2^(l-1) <= t < 2^l. Equals ceil(log2(t + 1)).
[[nodiscard]] unsigned level_of_slot(std::uint64_t t) noexcept;

// Depth of rank x (the level on which slot rev_bits(k, x) sits).
[[nodiscard]] unsigned level_of_rank(unsigned k, std::uint64_t x);

// Index of rank x among the ranks of its level, left to right. Level l >= 1
// holds the ranks 2^(k-l) + i * 2^(k-l+1); the coordinate is that i. Level 0
// holds only rank 0 with coordinate 0.
[[nodiscard]] std::uint64_t coordinate_in_level(unsigned k, std::uint64_t x);

// Smallest slot whose rank lies in [r1, r2]. Runs the O(k) interval descent.
// Requires r1 <= r2 < 2^k.
[[nodiscard]] std::uint64_t min_rev_bits(unsigned k, std::uint64_t r1, std::uint64_t r2);

// Largest slot whose rank lies in [r1, r2], via the reflection
// 2^k - 1 - min_rev_bits(k, 2^k - 1 - r2, 2^k - 1 - r1).
[[nodiscard]] std::uint64_t max_rev_bits(unsigned k, std::uint64_t r1, std::uint64_t r2);

}  // namespace rbo
