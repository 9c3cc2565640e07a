// Acceptance gate: one line per criterion, [PASS] or [FAIL], nonzero exit
// when anything fails. Each criterion is self-contained and deterministic.

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "rbo/bitrev.hpp"
#include "rbo/message.hpp"
#include "rbo/next_slot.hpp"
#include "rbo/rng.hpp"
#include "rbo/search.hpp"
#include "rbo/simulator.hpp"

namespace {

struct Criterion {
  bool passed = true;
  std::uint64_t cases = 0;
  std::string detail;

  void fail(const std::string& why) {
    if (passed) {
      passed = false;
      detail = why;
    }
  }
};

void report(int index, const char* name, const Criterion& c) {
  if (c.passed) {
    std::printf("[PASS] %d %-28s (%" PRIu64 " cases)\n", index, name, c.cases);
  } else {
    std::printf("[FAIL] %d %-28s %s\n", index, name, c.detail.c_str());
  }
}

std::string fmt(const char* f, ...) {
  char buf[256];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// 1. Every lossless search for an absent key terminates as absent within
//    2k + 2 receptions and one full round of elapsed slots, exhaustively
//    over every start slot and every gap for k = 1..8. The elapsed bound is
//    tight: some scenario reaches exactly 2^k.
Criterion termination_bounds() {
  Criterion c;
  for (unsigned k = 1; k <= 8 && c.passed; ++k) {
    const std::uint64_t n = std::uint64_t{1} << k;
    std::uint64_t max_receptions = 0;
    std::uint64_t max_elapsed = 0;
    for (std::uint64_t gap = 0; gap <= n && c.passed; ++gap) {
      for (std::uint64_t t0 = 0; t0 < n; ++t0) {
        rbo::TrialConfig cfg;
        cfg.k = k;
        cfg.seed = 1;
        cfg.gap_rank = gap;
        cfg.start_slot = t0;
        const auto m = rbo::run_trial(cfg);
        ++c.cases;
        if (m.outcome != rbo::TrialOutcome::kAbsent) {
          c.fail(fmt("k=%u gap=%" PRIu64 " t0=%" PRIu64 ": not absent", k, gap, t0));
          break;
        }
        if (m.receptions > 2 * k + 2) {
          c.fail(fmt("k=%u gap=%" PRIu64 " t0=%" PRIu64 ": %" PRIu64 " receptions > 2k+2",
                     k, gap, t0, m.receptions));
          break;
        }
        if (m.elapsed_slots > n) {
          c.fail(fmt("k=%u gap=%" PRIu64 " t0=%" PRIu64 ": elapsed %" PRIu64 " > 2^k", k,
                     gap, t0, m.elapsed_slots));
          break;
        }
        max_receptions = std::max(max_receptions, m.receptions);
        max_elapsed = std::max(max_elapsed, m.elapsed_slots);
      }
    }
    if (c.passed && max_elapsed != n) {
      c.fail(fmt("k=%u: worst elapsed %" PRIu64 " never reaches 2^k", k, max_elapsed));
    }
    if (c.passed && max_receptions > 2 * k + 2) {
      c.fail(fmt("k=%u: worst receptions %" PRIu64 " over 2k+2", k, max_receptions));
    }
  }
  return c;
}

// 2. The midpoint-gap scenario started one slot into the round needs exactly
//    2k - 1 receptions for k = 5..12: the worst case is sharp, not just
//    bounded.
Criterion worst_case_sharpness() {
  Criterion c;
  for (unsigned k = 5; k <= 12; ++k) {
    rbo::TrialConfig cfg;
    cfg.k = k;
    cfg.seed = 1;
    cfg.gap_rank = (std::uint64_t{1} << (k - 1)) + 1;
    cfg.start_slot = 1;
    const auto m = rbo::run_trial(cfg);
    ++c.cases;
    if (m.outcome != rbo::TrialOutcome::kAbsent || m.receptions != 2 * k - 1) {
      c.fail(fmt("k=%u: %" PRIu64 " receptions, want %u", k, m.receptions, 2 * k - 1));
    }
  }
  return c;
}

// 3. The three next-slot strategies agree: exhaustively for k <= 8 over every
//    (t, r1, r2), and on 10^5 randomized queries per k in {10, 15, 20, 25}
//    where each answer is cross-checked within the bands the slower oracles
//    can afford; every answer's rank lies in the queried interval and the
//    descent never exceeds k iterations.
Criterion next_slot_agreement() {
  Criterion c;
  for (unsigned k = 1; k <= 8 && c.passed; ++k) {
    const std::uint64_t n = std::uint64_t{1} << k;
    for (std::uint64_t t = 0; t < n && c.passed; ++t) {
      for (std::uint64_t r1 = 0; r1 < n && c.passed; ++r1) {
        for (std::uint64_t r2 = r1; r2 < n; ++r2) {
          const rbo::SlotQuery q{k, t, r1, r2};
          const std::uint64_t naive = rbo::next_slot_naive(q);
          const std::uint64_t reverse = rbo::next_slot_reverse(q);
          const std::uint64_t polylog = rbo::next_slot_polylog(q);
          ++c.cases;
          if (naive != reverse || naive != polylog) {
            c.fail(fmt("k=%u t=%" PRIu64 " [%" PRIu64 ",%" PRIu64
                       "]: naive=%" PRIu64 " reverse=%" PRIu64 " polylog=%" PRIu64,
                       k, t, r1, r2, naive, reverse, polylog));
            break;
          }
        }
      }
    }
  }

  rbo::SplitMix64 rng(0x5107);
  for (const unsigned k : {10u, 15u, 20u, 25u}) {
    if (!c.passed) {
      break;
    }
    const std::uint64_t n = std::uint64_t{1} << k;
    for (int i = 0; i < 100000; ++i) {
      // Log-uniform widths visit every scale, not just the huge intervals
      // uniform sampling would produce.
      const unsigned wbits = static_cast<unsigned>(rng.below(k + 1));
      const std::uint64_t width =
          1 + rng.below(std::max<std::uint64_t>(1, std::uint64_t{1} << wbits));
      const std::uint64_t r1 = rng.below(n - width + 1);
      const rbo::SlotQuery q{k, rng.below(n), r1, r1 + width - 1};
      rbo::PolylogStats stats;
      const std::uint64_t got = rbo::next_slot_polylog(q, stats);
      ++c.cases;
      const std::uint64_t rank = rbo::rev_bits(k, got);
      if (rank < q.r1 || rank > q.r2) {
        c.fail(fmt("k=%u: polylog slot %" PRIu64 " rank outside interval", k, got));
        break;
      }
      if (stats.iterations > k) {
        c.fail(fmt("k=%u: descent took %u iterations", k, stats.iterations));
        break;
      }
      if (width <= (std::uint64_t{1} << 13) && rbo::next_slot_reverse(q) != got) {
        c.fail(fmt("k=%u: reverse disagrees on width %" PRIu64, k, width));
        break;
      }
      if (n / width <= 4096 && rbo::next_slot_naive(q) != got) {
        c.fail(fmt("k=%u: naive disagrees on width %" PRIu64, k, width));
        break;
      }
      if (rbo::next_slot(q) != got) {
        c.fail(fmt("k=%u: auto dispatch disagrees on width %" PRIu64, k, width));
        break;
      }
    }
  }
  return c;
}

// 4. min_rev_bits / max_rev_bits match a linear scan: exhaustively for every
//    interval at k <= 10, and on 10^5 random width-capped intervals at k = 30.
Criterion min_max_oracle() {
  Criterion c;
  std::vector<std::uint64_t> rev;
  for (unsigned k = 1; k <= 10 && c.passed; ++k) {
    const std::uint64_t n = std::uint64_t{1} << k;
    rev.assign(n, 0);
    for (std::uint64_t x = 0; x < n; ++x) {
      rev[x] = rbo::rev_bits(k, x);
    }
    for (std::uint64_t r1 = 0; r1 < n && c.passed; ++r1) {
      std::uint64_t lo = rev[r1];
      std::uint64_t hi = rev[r1];
      for (std::uint64_t r2 = r1; r2 < n; ++r2) {
        lo = std::min(lo, rev[r2]);
        hi = std::max(hi, rev[r2]);
        ++c.cases;
        if (rbo::min_rev_bits(k, r1, r2) != lo || rbo::max_rev_bits(k, r1, r2) != hi) {
          c.fail(fmt("k=%u [%" PRIu64 ",%" PRIu64 "]: min/max disagree with scan", k, r1,
                     r2));
          break;
        }
      }
    }
  }

  const unsigned k = 30;
  const std::uint64_t n = std::uint64_t{1} << k;
  rbo::SplitMix64 rng(0x030a);
  for (int i = 0; i < 100000 && c.passed; ++i) {
    const unsigned wbits = static_cast<unsigned>(rng.below(17));
    const std::uint64_t width =
        1 + rng.below(std::max<std::uint64_t>(1, std::uint64_t{1} << wbits));
    const std::uint64_t r1 = rng.below(n - width + 1);
    const std::uint64_t r2 = r1 + width - 1;
    std::uint64_t lo = rbo::rev_bits(k, r1);
    std::uint64_t hi = lo;
    for (std::uint64_t r = r1 + 1; r <= r2; ++r) {
      const std::uint64_t s = rbo::rev_bits(k, r);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    ++c.cases;
    if (rbo::min_rev_bits(k, r1, r2) != lo || rbo::max_rev_bits(k, r1, r2) != hi) {
      c.fail(fmt("k=30 [%" PRIu64 ",%" PRIu64 "]: min/max disagree with scan", r1, r2));
    }
  }
  return c;
}

// 5. The simulated (k, p) grid reproduces the expected regime for k = 10..16,
//    p in {0.5, 0.75, 1.0}, 10^4 trials per cell: lossless mean energy lands
//    in [k+1, 2k+2], energy decreases as p rises (by at least three combined
//    standard errors), and lossy mean search time stays under
//    (1/p^2 - 1/2) * 2^k plus three standard errors.
Criterion experiment_regime() {
  Criterion c;
  rbo::ExperimentConfig cfg;
  cfg.k_min = 10;
  cfg.k_max = 16;
  cfg.p_values = {0.5, 0.75, 1.0};
  cfg.trials = 10000;
  cfg.master_seed = 20250817;
  const auto rows = rbo::run_experiment(cfg);
  const double nd = static_cast<double>(cfg.trials);

  for (std::size_t i = 0; i < rows.size(); i += 3) {
    const auto& half = rows[i];
    const auto& three_quarters = rows[i + 1];
    const auto& lossless = rows[i + 2];
    const unsigned k = lossless.k;
    const double n = std::pow(2.0, k);
    c.cases += 3;

    if (!(lossless.mean_energy >= k + 1 && lossless.mean_energy <= 2 * k + 2)) {
      c.fail(fmt("k=%u p=1: mean energy %.3f outside [k+1, 2k+2]", k,
                 lossless.mean_energy));
      break;
    }
    const auto separated = [&](const rbo::ExperimentRow& lossy,
                               const rbo::ExperimentRow& better) {
      const double se = std::sqrt((lossy.std_energy * lossy.std_energy +
                                   better.std_energy * better.std_energy) /
                                  nd);
      return lossy.mean_energy - better.mean_energy >= 3.0 * se;
    };
    if (!separated(half, three_quarters) || !separated(three_quarters, lossless)) {
      c.fail(fmt("k=%u: mean energy not decreasing in p", k));
      break;
    }
    for (const auto* lossy : {&half, &three_quarters}) {
      const double bound = (1.0 / (lossy->p * lossy->p) - 0.5) * n;
      const double se = lossy->std_slots / std::sqrt(nd);
      if (lossy->mean_slots > bound + 3.0 * se) {
        c.fail(fmt("k=%u p=%.2f: mean slots %.1f over bound %.1f", k, lossy->p,
                   lossy->mean_slots, bound));
        break;
      }
    }
    if (!c.passed) {
      break;
    }
  }
  return c;
}

// 6. The event-driven receiver, run with margins collapsed to zero over a
//    lossless channel, hears exactly the same slots as the bare search loop
//    and reaches the same conclusion: exhaustively for k = 1..6 over every
//    start slot, every gap, and every present key.
Criterion fsm_equivalence() {
  Criterion c;
  rbo::ProtocolConfig exact;
  exact.time_margin_ms = 0;
  exact.relative_margin_divisor = std::uint64_t{1} << 30;
  exact.min_sleeping_time_ms = 0;
  exact.timeout_ms = 0;

  for (unsigned k = 1; k <= 6 && c.passed; ++k) {
    const std::uint64_t n = std::uint64_t{1} << k;
    std::vector<std::uint64_t> keys(n);
    for (std::uint64_t r = 0; r < n; ++r) {
      keys[r] = rbo::synthetic_key_at(r);
    }
    for (std::uint64_t t0 = 0; t0 < n && c.passed; ++t0) {
      for (std::uint64_t target = 0; target <= 2 * n; ++target) {
        // target <= n: the gap keys; target > n: the present key of rank
        // target - n - 1.
        const bool present = target > n;
        const std::uint64_t key = present ? rbo::synthetic_key_at(target - n - 1)
                                          : rbo::synthetic_gap_key(target);
        const auto trace = rbo::run_reliable_trace<std::uint64_t>(k, keys, key, t0);

        rbo::FsmTraceConfig fc;
        fc.k = k;
        fc.searched_key = key;
        fc.start_slot = t0;
        fc.protocol = exact;
        const auto r = rbo::run_fsm_trace(fc);
        ++c.cases;

        const auto want_event =
            present ? rbo::UserEvent::kSuccess : rbo::UserEvent::kKeyNotPresent;
        if (r.final_event != want_event) {
          c.fail(fmt("k=%u t0=%" PRIu64 " key=%" PRIu64 ": wrong conclusion", k, t0, key));
          break;
        }
        if (present && r.found_rank != target - n - 1) {
          c.fail(fmt("k=%u t0=%" PRIu64 " key=%" PRIu64 ": wrong rank", k, t0, key));
          break;
        }
        if (r.reception_slots != trace.slots) {
          c.fail(fmt("k=%u t0=%" PRIu64 " key=%" PRIu64 ": reception slots diverge", k, t0,
                     key));
          break;
        }
      }
    }
  }
  return c;
}

// 7. The wire codec: the golden header layout, 10^4 random roundtrips, and
//    the full error taxonomy.
Criterion codec() {
  Criterion c;

  rbo::Message golden;
  golden.sequence_id = 1;
  golden.log_sequence_length = 1;
  const auto bytes = rbo::encode_message(golden);
  std::uint8_t expect[27] = {0x01, 0x00, 0x00, 0x00, 0x01};
  ++c.cases;
  if (bytes.size() != 27 || !std::equal(bytes.begin(), bytes.end(), expect)) {
    c.fail("golden 27-byte header mismatch");
    return c;
  }

  rbo::SplitMix64 rng(0xc0dec);
  for (int i = 0; i < 10000; ++i) {
    rbo::Message m;
    m.sequence_id = static_cast<std::uint32_t>(rng.next()) | 1;
    m.log_sequence_length = static_cast<std::uint8_t>(1 + rng.below(63));
    m.time_slot_length_ms = static_cast<std::uint32_t>(rng.next());
    m.key = rng.next();
    m.rank = rng.below(std::uint64_t{1} << m.log_sequence_length);
    m.payload.resize(rng.below(rbo::kMaxPayload + 1));
    for (auto& b : m.payload) {
      b = static_cast<std::uint8_t>(rng.next());
    }
    const auto wire = rbo::encode_message(m);
    rbo::Message back;
    ++c.cases;
    if (rbo::decode_message(wire, back) != rbo::DecodeStatus::kOk || !(back == m)) {
      c.fail(fmt("roundtrip %d failed", i));
      return c;
    }
  }

  const auto expect_status = [&](std::vector<std::uint8_t> wire, rbo::DecodeStatus want,
                                 const char* what) {
    rbo::Message out;
    ++c.cases;
    if (rbo::decode_message(wire, out) != want) {
      c.fail(fmt("expected %s", what));
    }
  };
  rbo::Message m;
  m.sequence_id = 3;
  m.log_sequence_length = 4;
  m.rank = 9;
  m.payload = {1, 2, 3};
  auto wire = rbo::encode_message(m);

  expect_status({wire.begin(), wire.begin() + 10}, rbo::DecodeStatus::kTruncated,
                "truncated header");
  expect_status({wire.begin(), wire.end() - 1}, rbo::DecodeStatus::kTruncated,
                "truncated payload");
  auto junk = wire;
  junk.push_back(0);
  expect_status(junk, rbo::DecodeStatus::kPayloadLengthMismatch, "trailing bytes");
  auto badk = wire;
  badk[4] = 0;
  expect_status(badk, rbo::DecodeStatus::kBadBitWidth, "bit width 0");
  badk[4] = 64;
  expect_status(badk, rbo::DecodeStatus::kBadBitWidth, "bit width 64");
  auto badrank = wire;
  badrank[17] = 0x10;
  expect_status(badrank, rbo::DecodeStatus::kRankOverflow, "rank overflow");

  rbo::Message reserved;
  reserved.sequence_id = 0;
  reserved.log_sequence_length = 2;
  rbo::Message back;
  ++c.cases;
  if (rbo::decode_message(rbo::encode_message(reserved), back) != rbo::DecodeStatus::kOk ||
      !rbo::is_bad_message(back)) {
    c.fail("reserved sequence id must decode and be flagged");
  }
  return c;
}

// 8. The command-line simulator is bit-for-bit reproducible: the same flags
//    produce identical CSV bytes across runs and across thread counts, and
//    the library itself returns identical rows when rerun in process.
Criterion cli_determinism() {
  Criterion c;

  const auto slurp = [](const char* path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  const auto run = [&](const std::string& args) {
    const std::string cmd = std::string(RBO_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    return raw != -1 && WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };

  const std::string flags =
      "simulate --k-min 10 --k-max 12 --p 0.5 --p 0.75 --p 1.0 --trials 2000 --seed 77";
  ++c.cases;
  if (run(flags + " --out acceptance_a.csv") != 0 ||
      run(flags + " --out acceptance_b.csv") != 0 ||
      run(flags + " --threads 4 --out acceptance_c.csv") != 0) {
    c.fail("simulate invocation failed");
    return c;
  }
  const std::string a = slurp("acceptance_a.csv");
  const std::string b = slurp("acceptance_b.csv");
  const std::string t = slurp("acceptance_c.csv");
  std::remove("acceptance_a.csv");
  std::remove("acceptance_b.csv");
  std::remove("acceptance_c.csv");
  ++c.cases;
  if (a.empty() || a != b) {
    c.fail("rerun with identical flags changed the CSV bytes");
    return c;
  }
  ++c.cases;
  if (a != t) {
    c.fail("thread count changed the CSV bytes");
    return c;
  }
  ++c.cases;
  if (a.substr(0, a.find('\n')) != "k,p,trials,mean_energy,std_energy,mean_slots,seed") {
    c.fail("unexpected CSV header");
    return c;
  }

  rbo::ExperimentConfig cfg;
  cfg.k_min = 10;
  cfg.k_max = 11;
  cfg.p_values = {0.5, 1.0};
  cfg.trials = 500;
  cfg.master_seed = 77;
  const auto r1 = rbo::run_experiment(cfg);
  const auto r2 = rbo::run_experiment(cfg);
  ++c.cases;
  for (std::size_t i = 0; i < r1.size(); ++i) {
    if (r1[i].mean_energy != r2[i].mean_energy || r1[i].std_slots != r2[i].std_slots ||
        r1[i].seed != r2[i].seed) {
      c.fail("in-process rerun diverged");
      break;
    }
  }
  return c;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    Criterion (*fn)();
  };
  const Entry entries[] = {
      {"termination-bounds", termination_bounds},
      {"worst-case-sharpness", worst_case_sharpness},
      {"next-slot-agreement", next_slot_agreement},
      {"min-max-oracle", min_max_oracle},
      {"experiment-regime", experiment_regime},
      {"fsm-equivalence", fsm_equivalence},
      {"codec", codec},
      {"cli-determinism", cli_determinism},
  };

  int failures = 0;
  int index = 1;
  for (const Entry& e : entries) {
    const Criterion c = e.fn();
    report(index++, e.name, c);
    if (!c.passed) {
      ++failures;
    }
  }
  if (failures == 0) {
    std::printf("all %d criteria passed\n", index - 1);
  } else {
    std::printf("%d of %d criteria failed\n", failures, index - 1);
  }
  return failures == 0 ? 0 : 1;
}
