#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "rbo/bitrev.hpp"
#include "rbo/next_slot.hpp"

namespace rbo {

// Half-open interval [min_rank, sup_rank) of candidate ranks. Half-open
// bounds survive shrinking past either end without signed arithmetic or an
// emptiness flag, and they keep their values once empty, which the receiver
// state machine relies on when retargeting a search.
struct RankInterval {
  std::uint64_t min_rank = 0;  // inclusive
  std::uint64_t sup_rank = 0;  // exclusive

  static RankInterval full(unsigned k) {
    if (k == 0 || k > kMaxBitWidth) {
      throw std::domain_error("bit width out of [1, 63]");
    }
    return {0, std::uint64_t{1} << k};
  }

  [[nodiscard]] bool empty() const { return min_rank >= sup_rank; }

  // Largest contained rank; only meaningful when non-empty.
  [[nodiscard]] std::uint64_t max_rank() const { return sup_rank - 1; }

  [[nodiscard]] std::uint64_t width() const { return empty() ? 0 : sup_rank - min_rank; }

  [[nodiscard]] bool contains(std::uint64_t r) const { return r >= min_rank && r < sup_rank; }

  // Excludes rank and everything below it.
  void raise_past(std::uint64_t rank) { min_rank = std::max(min_rank, rank + 1); }

  // Excludes rank and everything above it.
  void lower_past(std::uint64_t rank) { sup_rank = std::min(sup_rank, rank); }

  bool operator==(const RankInterval&) const = default;
};

// One receiver search in progress against a 2^k-long sorted broadcast.
template <std::totally_ordered Key>
struct SearchState {
  unsigned k = 0;
  Key key{};
  RankInterval interval;
  std::uint64_t last_slot = 0;
  std::uint64_t receptions = 0;
};

template <std::totally_ordered Key>
SearchState<Key> new_search(unsigned k, const Key& key, std::uint64_t start_slot) {
  if (k == 0 || k > kMaxBitWidth) {
    throw std::domain_error("bit width out of [1, 63]");
  }
  if (start_slot >> k) {
    throw std::domain_error("start slot out of range");
  }
  return SearchState<Key>{k, key, RankInterval::full(k), start_slot, 0};
}

enum class SearchProgress {
  kFound,     // the observed key is the searched key
  kAbsent,    // the interval emptied: the key is not in the sequence
  kContinue,  // keep listening; next_slot says when
};

struct SearchOutcome {
  SearchProgress progress = SearchProgress::kContinue;
  std::uint64_t rank = 0;       // matching rank when found
  std::uint64_t next_slot = 0;  // next wake-up slot when continuing
};

// Folds one received (key, rank) pair into the search. The comparisons are
// guarded so that stale or out-of-interval receptions never widen the
// interval; this is what makes the search loss-tolerant.
template <std::totally_ordered Key>
SearchOutcome observe(SearchState<Key>& st, const Key& m_key, std::uint64_t m_rank) {
  if (m_rank >> st.k) {
    throw std::domain_error("observed rank out of range");
  }
  st.last_slot = rev_bits(st.k, m_rank);
  st.receptions += 1;
  if (m_key == st.key) {
    return {SearchProgress::kFound, m_rank, 0};
  }
  if (m_key < st.key) {
    if (st.interval.min_rank <= m_rank) {
      st.interval.raise_past(m_rank);
    }
  } else {
    if (st.interval.sup_rank > m_rank) {
      st.interval.lower_past(m_rank);
    }
  }
  if (st.interval.empty()) {
    return {SearchProgress::kAbsent, 0, 0};
  }
  const std::uint64_t next =
      next_slot({st.k, st.last_slot, st.interval.min_rank, st.interval.max_rank()});
  return {SearchProgress::kContinue, 0, next};
}

struct TraceResult {
  std::vector<std::uint64_t> slots;  // every slot listened to, in order
  bool found = false;
  std::uint64_t rank = 0;  // rank of the key when found
};

// Runs a whole search against a lossless channel: wake, receive, fold,
// repeat until the key turns up or the interval empties.
template <std::totally_ordered Key>
TraceResult run_reliable_trace(unsigned k, std::span<const Key> sorted_keys, const Key& key,
                               std::uint64_t start_slot) {
  if (k == 0 || k > kMaxBitWidth) {
    throw std::domain_error("bit width out of [1, 63]");
  }
  if (sorted_keys.size() != (std::uint64_t{1} << k)) {
    throw std::invalid_argument("key sequence length is not 2^k");
  }
  if (!std::is_sorted(sorted_keys.begin(), sorted_keys.end())) {
    throw std::invalid_argument("key sequence is not sorted");
  }
  auto st = new_search(k, key, start_slot);
  TraceResult result;
  std::uint64_t t =
      next_slot({st.k, st.last_slot, st.interval.min_rank, st.interval.max_rank()});
  for (;;) {
    result.slots.push_back(t);
    const std::uint64_t rank = rev_bits(k, t);
    const SearchOutcome out = observe(st, sorted_keys[rank], rank);
    if (out.progress == SearchProgress::kFound) {
      result.found = true;
      result.rank = out.rank;
      return result;
    }
    if (out.progress == SearchProgress::kAbsent) {
      return result;
    }
    t = out.next_slot;
  }
}

}  // namespace rbo
