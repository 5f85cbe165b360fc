#pragma once

// Integer helpers shared by every module: exact square roots, modular
// arithmetic, deterministic primality, factorization, Jacobi symbols.

#include <cstdint>
#include <utility>
#include <vector>

namespace regpart {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u32 = std::uint32_t;
using i128 = __int128;
using u128 = unsigned __int128;

struct PrimePower {
  u64 prime;
  unsigned exponent;
  bool operator==(const PrimePower&) const = default;
};

/// Prime factorization sorted by increasing prime.
using Factorization = std::vector<PrimePower>;

u64 isqrt(u64 n);

/// True iff n is a perfect square; the root is stored in *root when given.
bool is_square(u64 n, u64* root = nullptr);

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 base, u64 exp, u64 m);

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime(u64 n);

/// Trial division by primes below 10^6, then Pollard rho (Brent) on the rest.
Factorization factorize(u64 n);

/// All positive divisors of n in increasing order.
std::vector<u64> divisors(u64 n);
std::vector<u64> divisors(const Factorization& f);

bool is_squarefree(u64 n);

/// Sieve of Eratosthenes.
std::vector<u32> primes_up_to(u32 limit);

/// Inverse of a modulo m in [0, m). Throws std::domain_error when gcd(a, m) != 1.
u64 mod_inverse(i64 a, u64 m);

/// Non-negative residue of a modulo m.
u64 mod_floor(i64 a, u64 m);

/// Jacobi symbol (a/n) for odd n >= 1. Throws std::invalid_argument otherwise.
int jacobi_symbol(i64 a, i64 n);

/// 2-adic valuation; n must be non-zero.
unsigned valuation2(u64 n);

i64 gcd_i64(i64 a, i64 b);

}  // namespace regpart
