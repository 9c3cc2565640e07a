#include "rbo/next_slot.hpp"

#include <stdexcept>
#include <string>

#include "rbo/bitrev.hpp"

namespace rbo {
namespace {

// Coordinate range of the ranks of level l (1 <= l <= k) that fall inside
// [r1, r2]. The level holds the ranks 2^(k-l) + i * 2^(k-l+1) for
// 0 <= i < 2^(l-1). Returns false when the level misses the interval.
bool level_coordinates(unsigned k, unsigned l, std::uint64_t r1, std::uint64_t r2,
                       std::uint64_t& min_coord, std::uint64_t& max_coord) {
  const std::uint64_t half = std::uint64_t{1} << (k - l);
  const std::uint64_t step = half << 1;
  if (r2 < half) {
    return false;
  }
  max_coord = (r2 - half) / step;
  min_coord = (r1 <= half) ? 0 : (r1 - half + step - 1) / step;
  return min_coord <= max_coord;
}

}  // namespace

void SlotQuery::validate() const {
  if (k == 0 || k > kMaxBitWidth) {
    throw std::domain_error("bit width " + std::to_string(k) + " out of [1, 63]");
  }
  const std::uint64_t n = std::uint64_t{1} << k;
  if (t >= n) {
    throw std::domain_error("slot " + std::to_string(t) + " out of range");
  }
  if (r2 >= n) {
    throw std::domain_error("rank " + std::to_string(r2) + " out of range");
  }
  if (r1 > r2) {
    throw std::domain_error("empty rank interval [" + std::to_string(r1) + ", " +
                            std::to_string(r2) + "]");
  }
}

std::uint64_t slot_distance(unsigned k, std::uint64_t from, std::uint64_t to) {
  if (k == 0 || k > kMaxBitWidth) {
    throw std::domain_error("bit width out of [1, 63]");
  }
  const std::uint64_t mask = (std::uint64_t{1} << k) - 1;
  const std::uint64_t d = (to - from) & mask;
  return d == 0 ? mask + 1 : d;
}

std::uint64_t next_slot_naive(const SlotQuery& q) {
  q.validate();
  const std::uint64_t mask = (std::uint64_t{1} << q.k) - 1;
  std::uint64_t t = q.t;
  do {
    t = (t + 1) & mask;
    const std::uint64_t r = rev_bits(q.k, t);
    if (r >= q.r1 && r <= q.r2) {
      return t;
    }
  } while (t != q.t);
  // Unreachable: every rank interval is nonempty after validate(), so some
  // slot in the round matches.
  throw std::logic_error("no slot found in a full round");
}

std::uint64_t next_slot_reverse(const SlotQuery& q) {
  q.validate();
  std::uint64_t best_slot = 0;
  std::uint64_t best_dist = 0;
  bool have = false;
  for (std::uint64_t r = q.r1;; ++r) {
    const std::uint64_t slot = rev_bits(q.k, r);
    const std::uint64_t dist = slot_distance(q.k, q.t, slot);
    if (!have || dist < best_dist) {
      best_slot = slot;
      best_dist = dist;
      have = true;
    }
    if (r == q.r2) {
      break;
    }
  }
  return best_slot;
}

std::uint64_t next_slot_polylog(const SlotQuery& q) {
  PolylogStats stats;
  return next_slot_polylog(q, stats);
}

std::uint64_t next_slot_polylog(const SlotQuery& q, PolylogStats& stats) {
  q.validate();
  stats.iterations = 0;

  // The loop descends into subtrees: `base` accumulates the slot offset of
  // the current subtree within the full round, while (k, t, r1, r2) are
  // re-expressed relative to that subtree.
  unsigned k = q.k;
  std::uint64_t t = q.t;
  std::uint64_t r1 = q.r1;
  std::uint64_t r2 = q.r2;
  std::uint64_t base = 0;

  for (;;) {
    ++stats.iterations;

    // Trim interval endpoints already covered by the current slot.
    if (r1 < r2) {
      const std::uint64_t rt = rev_bits(k, t);
      if (rt == r1) {
        ++r1;
      } else if (rt == r2) {
        --r2;
      }
    }
    if (r1 == r2) {
      return base + rev_bits(k, r1);
    }

    const std::uint64_t t_first = min_rev_bits(k, r1, r2);
    if (t < t_first) {
      return base + t_first;
    }
    const std::uint64_t t_last = max_rev_bits(k, r1, r2);
    if (t_last <= t) {
      // Nothing after t this round; wrap to the earliest slot.
      return base + t_first;
    }

    // Some interval slot follows t on a deeper level. Find the first level
    // at or below t's level that intersects the interval.
    unsigned l = level_of_slot(t);
    std::uint64_t min_coord = 0;
    std::uint64_t max_coord = 0;
    while (!level_coordinates(k, l, r1, r2, min_coord, max_coord)) {
      ++l;
    }

    const std::uint64_t level_base = std::uint64_t{1} << (l - 1);
    // Within level l the slots are a (l-1)-bit reversal of the coordinates,
    // so the level is itself a smaller instance of the problem.
    const std::uint64_t t_first_l = min_rev_bits(l - 1, min_coord, max_coord);
    if (t < level_base + t_first_l) {
      return base + level_base + t_first_l;
    }
    const std::uint64_t t_last_l = max_rev_bits(l - 1, min_coord, max_coord);
    if (t >= level_base + t_last_l) {
      // Level l is exhausted after t; the answer is the first interval slot
      // on the next intersecting level below.
      do {
        ++l;
      } while (!level_coordinates(k, l, r1, r2, min_coord, max_coord));
      return base + (std::uint64_t{1} << (l - 1)) + min_rev_bits(l - 1, min_coord, max_coord);
    }

    // t sits strictly inside level l's interval slots: recurse into the level.
    base += level_base;
    t -= level_base;
    k = l - 1;
    r1 = min_coord;
    r2 = max_coord;
  }
}

std::uint64_t next_slot(const SlotQuery& q, Strategy strategy) {
  switch (strategy) {
    case Strategy::kNaive:
      return next_slot_naive(q);
    case Strategy::kReverse:
      return next_slot_reverse(q);
    case Strategy::kPolylog:
      return next_slot_polylog(q);
    case Strategy::kAuto:
      break;
  }
  q.validate();
  const std::uint64_t n = std::uint64_t{1} << q.k;
  const std::uint64_t width = q.r2 - q.r1 + 1;
  if (n / width <= 128) {
    return next_slot_naive(q);
  }
  if (width <= 64) {
    return next_slot_reverse(q);
  }
  return next_slot_polylog(q);
}

std::uint64_t next_slot(const SlotQuery& q) {
  return next_slot(q, Strategy::kAuto);
}

}  // namespace rbo
