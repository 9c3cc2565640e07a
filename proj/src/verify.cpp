#include "rbo/verify.hpp"

#include <algorithm>
#include <bit>
#include <vector>

#include "rbo/bitrev.hpp"
#include "rbo/next_slot.hpp"
#include "rbo/rng.hpp"
#include "rbo/search.hpp"

namespace rbo::verify {
namespace {

RevBitsFn pick_fn(const Options& opts) {
  return opts.rev_bits_fn != nullptr ? opts.rev_bits_fn : &rbo::rev_bits;
}

std::string case_str(unsigned k, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return "k=" + std::to_string(k) + " (" + std::to_string(a) + ", " + std::to_string(b) +
         ", " + std::to_string(c) + ")";
}

// Log-uniform interval width in [1, cap]: uniform bit length, then uniform
// within that bit length. Keeps scan-based oracles affordable at large k.
std::uint64_t draw_width(SplitMix64& g, std::uint64_t cap) {
  const auto bits = static_cast<unsigned>(std::bit_width(cap));
  const unsigned b = static_cast<unsigned>(g.below(bits));
  const std::uint64_t lo = std::uint64_t{1} << b;
  return std::min(cap, lo + g.below(lo));
}

}  // namespace

SuiteResult involution_suite(const Options& opts) {
  const RevBitsFn fn = pick_fn(opts);
  SuiteResult res{"involution", true, 0, ""};
  const unsigned kmax = std::min(opts.exhaustive_max_k, 16u);
  for (unsigned k = 0; k <= kmax; ++k) {
    const std::uint64_t n = std::uint64_t{1} << k;
    for (std::uint64_t x = 0; x < n; ++x) {
      ++res.cases;
      const std::uint64_t y = fn(k, x);
      if (y >= n || fn(k, y) != x) {
        res.passed = false;
        res.detail = "involution broken at " + case_str(k, x, y, fn(k, y % n));
        return res;
      }
    }
  }
  SplitMix64 g(derive_seed(opts.seed, 1, 0));
  for (std::uint64_t i = 0; i < opts.samples; ++i) {
    ++res.cases;
    const unsigned k = 1 + static_cast<unsigned>(g.below(kMaxBitWidth));
    const std::uint64_t x = g.below(std::uint64_t{1} << k);
    const std::uint64_t y = fn(k, x);
    if ((y >> k) != 0 || fn(k, y) != x) {
      res.passed = false;
      res.detail = "involution broken at " + case_str(k, x, y, 0);
      return res;
    }
  }
  return res;
}

SuiteResult recurrence_suite(const Options& opts) {
  const RevBitsFn fn = pick_fn(opts);
  SuiteResult res{"recurrence", true, 0, ""};
  const unsigned kmax = std::min(opts.exhaustive_max_k, 12u);
  for (unsigned k = 0; k < kmax; ++k) {
    const std::uint64_t n2 = std::uint64_t{1} << (k + 1);
    for (std::uint64_t x = 0; x < n2; ++x) {
      ++res.cases;
      const std::uint64_t want = fn(k, x >> 1) + ((x & 1u) << k);
      if (fn(k + 1, x) != want) {
        res.passed = false;
        res.detail = "recurrence broken at " + case_str(k + 1, x, fn(k + 1, x), want);
        return res;
      }
    }
  }
  SplitMix64 g(derive_seed(opts.seed, 2, 0));
  for (std::uint64_t i = 0; i < opts.samples; ++i) {
    ++res.cases;
    const unsigned k = 1 + static_cast<unsigned>(g.below(kMaxBitWidth - 1));
    const std::uint64_t x = g.below(std::uint64_t{1} << (k + 1));
    const std::uint64_t want = fn(k, x >> 1) + ((x & 1u) << k);
    if (fn(k + 1, x) != want) {
      res.passed = false;
      res.detail = "recurrence broken at " + case_str(k + 1, x, fn(k + 1, x), want);
      return res;
    }
  }
  return res;
}

SuiteResult level_structure_suite(const Options& opts) {
  const RevBitsFn fn = pick_fn(opts);
  SuiteResult res{"level-structure", true, 0, ""};
  const unsigned kmax = std::min(opts.exhaustive_max_k, 12u);
  for (unsigned k = 1; k <= kmax; ++k) {
    // Rank 0 is the sole level-0 node and must map to slot 0.
    ++res.cases;
    if (fn(k, 0) != 0 || level_of_rank(k, 0) != 0) {
      res.passed = false;
      res.detail = "level 0 broken at k=" + std::to_string(k);
      return res;
    }
    for (unsigned l = 1; l <= k; ++l) {
      const std::uint64_t first = std::uint64_t{1} << (k - l);
      const std::uint64_t step = first << 1;
      const std::uint64_t count = std::uint64_t{1} << (l - 1);
      for (std::uint64_t i = 0; i < count; ++i) {
        ++res.cases;
        const std::uint64_t x = first + i * step;
        const std::uint64_t slot = fn(k, x);
        const std::uint64_t want = count + rbo::rev_bits(l - 1, i);
        if (slot != want || level_of_rank(k, x) != l || coordinate_in_level(k, x) != i) {
          res.passed = false;
          res.detail = "level structure broken at " + case_str(k, x, slot, want);
          return res;
        }
      }
    }
  }
  return res;
}

SuiteResult min_max_oracle_suite(const Options& opts) {
  const RevBitsFn fn = pick_fn(opts);
  SuiteResult res{"min-max-oracle", true, 0, ""};
  const auto check = [&](unsigned k, std::uint64_t r1, std::uint64_t r2) {
    ++res.cases;
    std::uint64_t lo = UINT64_MAX;
    std::uint64_t hi = 0;
    for (std::uint64_t x = r1; x <= r2; ++x) {
      const std::uint64_t slot = fn(k, x);
      lo = std::min(lo, slot);
      hi = std::max(hi, slot);
    }
    if (min_rev_bits(k, r1, r2) != lo || max_rev_bits(k, r1, r2) != hi) {
      res.passed = false;
      res.detail = "min/max mismatch at " + case_str(k, r1, r2, lo);
      return false;
    }
    return true;
  };

  const unsigned kmax = std::min(opts.exhaustive_max_k, 10u);
  for (unsigned k = 1; k <= kmax; ++k) {
    const std::uint64_t n = std::uint64_t{1} << k;
    for (std::uint64_t r1 = 0; r1 < n; ++r1) {
      for (std::uint64_t r2 = r1; r2 < n; ++r2) {
        if (!check(k, r1, r2)) {
          return res;
        }
      }
    }
  }

  if (opts.samples > 0) {
    for (unsigned k : opts.random_ks) {
      if (k == 0 || k > kMaxBitWidth) {
        continue;
      }
      SplitMix64 g(derive_seed(opts.seed, 3, k));
      const std::uint64_t n = std::uint64_t{1} << k;
      const std::uint64_t cap = std::min(n, std::uint64_t{1} << 16);
      for (std::uint64_t i = 0; i < opts.samples; ++i) {
        const std::uint64_t w = draw_width(g, cap);
        const std::uint64_t r1 = g.below(n - w + 1);
        if (!check(k, r1, r1 + w - 1)) {
          return res;
        }
      }
    }
  }
  return res;
}

SuiteResult next_slot_agreement_suite(const Options& opts) {
  const RevBitsFn fn = pick_fn(opts);
  SuiteResult res{"next-slot-agreement", true, 0, ""};

  // Polylog is the implementation under scrutiny; the two scans are the
  // oracles, each applied where its cost stays linear-ish.
  const auto check = [&](const SlotQuery& q, bool use_naive, bool use_reverse) {
    ++res.cases;
    const std::uint64_t got = next_slot_polylog(q);
    const std::uint64_t rank = fn(q.k, got);
    if (rank < q.r1 || rank > q.r2) {
      res.passed = false;
      res.detail = "answer rank outside interval at " + case_str(q.k, q.t, q.r1, q.r2);
      return false;
    }
    if (use_naive && next_slot_naive(q) != got) {
      res.passed = false;
      res.detail = "naive disagrees at " + case_str(q.k, q.t, q.r1, q.r2);
      return false;
    }
    if (use_reverse && next_slot_reverse(q) != got) {
      res.passed = false;
      res.detail = "reverse disagrees at " + case_str(q.k, q.t, q.r1, q.r2);
      return false;
    }
    if (next_slot(q) != got) {
      res.passed = false;
      res.detail = "dispatcher disagrees at " + case_str(q.k, q.t, q.r1, q.r2);
      return false;
    }
    return true;
  };

  const unsigned kmax = std::min(opts.exhaustive_max_k, 8u);
  for (unsigned k = 1; k <= kmax; ++k) {
    const std::uint64_t n = std::uint64_t{1} << k;
    for (std::uint64_t t = 0; t < n; ++t) {
      for (std::uint64_t r1 = 0; r1 < n; ++r1) {
        for (std::uint64_t r2 = r1; r2 < n; ++r2) {
          if (!check({k, t, r1, r2}, true, true)) {
            return res;
          }
        }
      }
    }
  }

  if (opts.samples > 0) {
    for (unsigned k : opts.random_ks) {
      if (k == 0 || k > kMaxBitWidth) {
        continue;
      }
      SplitMix64 g(derive_seed(opts.seed, 4, k));
      const std::uint64_t n = std::uint64_t{1} << k;
      // Bands: the reverse scan is O(width), the naive scan is O(2^k/width)
      // in expectation; together they cover every width, overlapping at 2^13.
      const std::uint64_t reverse_cap = std::uint64_t{1} << 13;
      const std::uint64_t naive_floor = n >> 12;
      for (std::uint64_t i = 0; i < opts.samples; ++i) {
        const std::uint64_t w = draw_width(g, n);
        const std::uint64_t r1 = g.below(n - w + 1);
        const std::uint64_t t = g.below(n);
        const bool use_reverse = w <= reverse_cap;
        const bool use_naive = w >= naive_floor;
        if (!check({k, t, r1, r1 + w - 1}, use_naive, use_reverse)) {
          return res;
        }
      }
    }
  }
  return res;
}

SuiteResult search_bounds_suite(const Options& opts) {
  SuiteResult res{"search-bounds", true, 0, ""};
  const unsigned kmax = std::min(opts.exhaustive_max_k, 8u);
  for (unsigned k = 1; k <= kmax; ++k) {
    const std::uint64_t n = std::uint64_t{1} << k;
    std::vector<std::uint64_t> keys(n);
    for (std::uint64_t r = 0; r < n; ++r) {
      keys[r] = 10 * (r + 1);
    }
    const std::uint64_t bound = 2 * std::uint64_t{k} + 2;
    for (std::uint64_t t0 = 0; t0 < n; ++t0) {
      for (std::uint64_t gap = 0; gap <= n; ++gap) {
        ++res.cases;
        const auto trace = run_reliable_trace<std::uint64_t>(k, keys, 10 * gap + 5, t0);
        std::uint64_t elapsed = 0;
        std::uint64_t prev = t0;
        for (std::uint64_t s : trace.slots) {
          elapsed += slot_distance(k, prev, s);
          prev = s;
        }
        if (trace.found || trace.slots.size() > bound || elapsed > n) {
          res.passed = false;
          res.detail = "absent-key search misbehaved at " + case_str(k, t0, gap, 0);
          return res;
        }
      }
      if (t0 > 3 && t0 != n - 1) {
        continue;  // present keys: sample a few start slots, ranks stay exhaustive
      }
      for (std::uint64_t r = 0; r < n; ++r) {
        ++res.cases;
        const auto trace = run_reliable_trace<std::uint64_t>(k, keys, keys[r], t0);
        if (!trace.found || trace.rank != r || trace.slots.size() > bound) {
          res.passed = false;
          res.detail = "present-key search misbehaved at " + case_str(k, t0, r, 0);
          return res;
        }
      }
    }
  }
  return res;
}

std::vector<SuiteResult> run_all(const Options& opts) {
  return {
      involution_suite(opts),     recurrence_suite(opts),
      level_structure_suite(opts), min_max_oracle_suite(opts),
      next_slot_agreement_suite(opts), search_bounds_suite(opts),
  };
}

}  // namespace rbo::verify
