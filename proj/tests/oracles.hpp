#pragma once

// Reference counts used by the unit tests. Deliberately naive: plain
// recursion over parts and direct lattice-point loops, sharing no code with
// the library.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <tuple>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Partitions of n with parts satisfying `allowed`, each part used fewer than
/// `bound` times (bound 0 = unbounded). `length_parity` = -1 counts all,
/// 0 / 1 counts only partitions with an even / odd number of parts.
inline u64 count_partitions(u64 n, const std::function<bool(u64)>& allowed, unsigned bound = 0,
                            int length_parity = -1) {
  std::map<std::tuple<u64, u64, int>, u64> memo;
  std::function<u64(u64, u64, int)> go = [&](u64 rest, u64 max_part, int parity) -> u64 {
    if (rest == 0) return length_parity < 0 || parity == length_parity ? 1 : 0;
    if (max_part == 0) return 0;
    const auto key = std::make_tuple(rest, max_part, parity);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    u64 total = go(rest, max_part - 1, parity);
    if (allowed(max_part)) {
      for (u64 mult = 1; mult * max_part <= rest; ++mult) {
        if (bound && mult >= bound) break;
        total += go(rest - mult * max_part, max_part - 1, (parity + static_cast<int>(mult)) & 1);
      }
    }
    memo[key] = total;
    return total;
  };
  return go(n, n, 0);
}

/// Literal backtracking: every partition of n into allowed parts, non-increasing.
inline void each_partition(u64 n, const std::function<bool(u64)>& allowed,
                           const std::function<void(const std::vector<u64>&)>& visit) {
  std::vector<u64> cur;
  std::function<void(u64, u64)> go = [&](u64 rest, u64 max_part) {
    if (rest == 0) {
      visit(cur);
      return;
    }
    for (u64 part = std::min(rest, max_part); part >= 1; --part) {
      if (!allowed(part)) continue;
      cur.push_back(part);
      go(rest - part, part);
      cur.pop_back();
    }
  };
  go(n, n);
}

struct Reps {
  u64 total = 0;
  u64 primitive = 0;
};

/// All (x, y) in Z^2 with a x^2 + b x y + c y^2 = w, by a square box search.
inline Reps brute_reps(i64 a, i64 b, i64 c, i64 w) {
  Reps r;
  const i64 box = 2 * static_cast<i64>(std::sqrt(static_cast<double>(w))) + 4;
  for (i64 x = -box; x <= box; ++x)
    for (i64 y = -box; y <= box; ++y)
      if (a * x * x + b * x * y + c * y * y == w) {
        ++r.total;
        if (std::gcd(x, y) == 1) ++r.primitive;
      }
  return r;
}

/// Legendre symbol by Euler's criterion, p an odd prime.
inline int legendre(i64 a, u64 p) {
  const u64 base = static_cast<u64>(((a % static_cast<i64>(p)) + static_cast<i64>(p)) % static_cast<i64>(p));
  if (base == 0) return 0;
  unsigned __int128 r = 1, b = base;
  for (u64 e = (p - 1) / 2; e; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return r == 1 ? 1 : -1;
}

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace oracle
