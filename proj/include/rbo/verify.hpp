#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rbo::verify {

using RevBitsFn = std::uint64_t (*)(unsigned, std::uint64_t);

// Knobs shared by all suites. Exhaustive sweeps run for every k up to
// exhaustive_max_k (each suite additionally clamps to what stays fast);
// randomized sweeps draw `samples` cases per suite, 0 to skip them.
struct Options {
  unsigned exhaustive_max_k = 8;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  // Bit-reversal implementation under test; nullptr selects rbo::rev_bits.
  // Swapping in a deliberately broken function must trip the suites, which
  // is how the self-check of the checker itself works.
  RevBitsFn rev_bits_fn = nullptr;
  // Bit widths for randomized interval/next-slot sweeps.
  std::vector<unsigned> random_ks = {10, 15, 20, 25};
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::uint64_t cases = 0;   // checks executed
  std::string detail;        // first failure, or empty
};

// Involution, range and bijection of the bit reversal.
SuiteResult involution_suite(const Options& opts);

// The doubling recurrence rev(k+1, x) = rev(k, floor(x/2)) + (x mod 2) * 2^k.
SuiteResult recurrence_suite(const Options& opts);

// Slots of level l are exactly [2^(l-1), 2^l), reached from the level's
// rank progression in (l-1)-bit reversed coordinate order.
SuiteResult level_structure_suite(const Options& opts);

// min_rev_bits / max_rev_bits against a linear scan of the interval.
SuiteResult min_max_oracle_suite(const Options& opts);

// All next-slot strategies agree, and every answer's rank lies in the
// queried interval.
SuiteResult next_slot_agreement_suite(const Options& opts);

// Reliable searches terminate within 2k+2 receptions and 2^k slots, find
// every present key, and report absent keys as absent.
SuiteResult search_bounds_suite(const Options& opts);

std::vector<SuiteResult> run_all(const Options& opts);

}  // namespace rbo::verify
