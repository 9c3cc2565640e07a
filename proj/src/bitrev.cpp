#include "rbo/bitrev.hpp"

#include <array>
#include <bit>
#include <stdexcept>
#include <string>

namespace rbo {
namespace {

void check_width(unsigned k) {
  if (k > kMaxBitWidth) {
    throw std::domain_error("bit width " + std::to_string(k) + " exceeds 63");
  }
}

void check_value(unsigned k, std::uint64_t x, const char* what) {
  if (k < 64 && (x >> k) != 0) {
    throw std::domain_error(std::string(what) + " " + std::to_string(x) +
                            " out of range for bit width " + std::to_string(k));
  }
}

constexpr std::array<std::uint8_t, 256> make_rev8_table() {
  std::array<std::uint8_t, 256> table{};
  for (unsigned v = 0; v < 256; ++v) {
    std::uint8_t r = 0;
    for (unsigned b = 0; b < 8; ++b) {
      r = static_cast<std::uint8_t>((r << 1) | ((v >> b) & 1u));
    }
    table[v] = r;
  }
  return table;
}

constexpr std::array<std::uint8_t, 256> kRev8 = make_rev8_table();

std::uint64_t rev64(std::uint64_t x) noexcept {
  std::uint64_t r = 0;
  for (unsigned i = 0; i < 8; ++i) {
    r = (r << 8) | kRev8[(x >> (8 * i)) & 0xffu];
  }
  return r;
}

}  // namespace

std::uint64_t rev_bits(unsigned k, std::uint64_t x) {
  check_width(k);
  check_value(k, x, "value");
  if (k == 0) {
    return 0;
  }
  return rev64(x) >> (64 - k);
}

std::uint64_t rev_bits_loop(unsigned k, std::uint64_t x) {
  check_width(k);
  check_value(k, x, "value");
  std::uint64_t r = 0;
  for (unsigned b = 0; b < k; ++b) {
    r = (r << 1) | ((x >> b) & 1u);
  }
  return r;
}

std::uint64_t bs_order(unsigned k, std::uint64_t x) {
  check_width(k);
  check_value(k, x, "value");
  // bs(0, 0) = 0; bs(k+1, x) = bs(k, x/2) on even x, 2^k + x/2 on odd x.
  while (k > 0) {
    if (x & 1u) {
      return (std::uint64_t{1} << (k - 1)) + (x >> 1);
    }
    x >>= 1;
    --k;
  }
  return 0;
}

unsigned level_of_slot(std::uint64_t t) noexcept {
  return static_cast<unsigned>(std::bit_width(t));
}

unsigned level_of_rank(unsigned k, std::uint64_t x) {
  return level_of_slot(rev_bits(k, x));
}

std::uint64_t coordinate_in_level(unsigned k, std::uint64_t x) {
  check_width(k);
  check_value(k, x, "rank");
  const unsigned l = level_of_rank(k, x);
  if (l == 0) {
    return 0;
  }
  return x >> (k - l + 1);
}

std::uint64_t min_rev_bits(unsigned k, std::uint64_t r1, std::uint64_t r2) {
  check_width(k);
  check_value(k, r1, "lower rank");
  check_value(k, r2, "upper rank");
  if (r1 > r2) {
    throw std::domain_error("empty rank interval");
  }
  if (k == 0) {
    return 0;
  }
  // Walk down the tree: x is the candidate rank, s the half-width of the
  // subtree below it. The first x falling inside [r1, r2] has the minimal
  // slot because ancestors precede descendants and, within a level, moving
  // toward the interval only decreases the reversed index.
  std::uint64_t x = 0;
  std::uint64_t s = std::uint64_t{1} << (k - 1);
  while (x < r1 || x > r2) {
    if (x < r1) {
      x += s;
    } else {
      x -= s;
    }
    s >>= 1;
  }
  return rev_bits(k, x);
}

std::uint64_t max_rev_bits(unsigned k, std::uint64_t r1, std::uint64_t r2) {
  check_width(k);
  check_value(k, r1, "lower rank");
  check_value(k, r2, "upper rank");
  if (r1 > r2) {
    throw std::domain_error("empty rank interval");
  }
  if (k == 0) {
    return 0;
  }
  // rev_bits(k, 2^k - 1 - x) == 2^k - 1 - rev_bits(k, x), so the latest slot
  // for [r1, r2] is the mirrored earliest slot of the mirrored interval.
  const std::uint64_t top = (std::uint64_t{1} << k) - 1;
  return top - min_rev_bits(k, top - r2, top - r1);
}

}  // namespace rbo
