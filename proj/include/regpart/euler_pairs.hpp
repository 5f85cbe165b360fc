#pragma once

// Euler pairs (S1, S2) of order k: q_k(S1; n) = p(S2; n), equivalently
// k S1 inside S1 and S2 = S1 \ k S1. Glaisher-style bijection, the
// parity-reversing involution on partitions with a repeated part or a part
// in 2 S1, and the signed and mod 2 identities that follow.

#include <optional>
#include <string>
#include <vector>

#include "regpart/residue_set.hpp"
#include "regpart/series.hpp"

namespace regpart {

struct Partition {
  std::vector<u64> parts;  ///< non-increasing

  Partition() = default;
  /// Sorts the parts into non-increasing order; throws on a zero part.
  explicit Partition(std::vector<u64> parts);

  u64 sum() const;
  std::size_t length() const { return parts.size(); }
  /// Number of parts lying in 2 S1.
  std::size_t ell2(const ResidueSet& s1) const;
  bool has_repeated_part() const;
  std::string to_string() const;

  auto operator<=>(const Partition&) const = default;
};

constexpr u64 kMaxEnumeratedN = 60;

/// Partitions of n with parts in `parts`, each part used fewer than
/// `bound` times (0 for no bound). Throws std::invalid_argument for n > kMaxEnumeratedN.
std::vector<Partition> enumerate_partitions(u64 n, const ResidueSet& parts, unsigned bound = 0);

struct EulerPairVerdict {
  bool structural = false;  ///< k S1 in S1 and S2 = S1 \ k S1 up to the limit
  bool numeric = false;     ///< q_k(S1; n) = p(S2; n) for n <= limit
  std::optional<u64> structural_failure;
  std::optional<u64> numeric_failure;

  bool is_pair() const { return structural && numeric; }
  bool consistent() const { return structural == numeric; }
};

EulerPairVerdict euler_pair_check(const ResidueSet& s1, const ResidueSet& s2, unsigned k, u64 limit);

/// Merge and split between S2-partitions and S1-partitions with every
/// multiplicity below k, for an Euler pair (S1, S1 \ k S1).
class GlaisherMap {
 public:
  /// Throws std::invalid_argument for k < 2.
  GlaisherMap(ResidueSet s1, unsigned k);

  /// Each part v of multiplicity c = sum d_i k^i becomes d_i parts v k^i.
  /// Throws std::invalid_argument if a part is not in S2.
  Partition forward(const Partition& s2_partition) const;
  /// Each part v k^i with v in S2 becomes k^i parts v. Throws
  /// std::invalid_argument if a part is outside S1 or occurs k or more times.
  Partition inverse(const Partition& bounded_partition) const;

  const ResidueSet& s2() const { return s2_; }

 private:
  ResidueSet s1_;
  ResidueSet s2_;
  unsigned k_;
};

struct IdentityCheck {
  u64 checked = 0;
  std::optional<u64> first_failure;
  bool holds() const { return !first_failure; }
};

/// q_e(S2; n) - q_o(S2; n) = p_e(S1; n) - p_o(S1; n) as integers, n <= limit.
IdentityCheck check_reversal(const ResidueSet& s1, const ResidueSet& s2, u64 limit);
/// (-1)^n q(S2; n) = p_e(S1; n) - p_o(S1; n). Throws std::invalid_argument if S2 has an even element.
IdentityCheck check_odd_reversal(const ResidueSet& s1, const ResidueSet& s2, u64 limit);

struct WeightedIdentities {
  IdentityCheck reversal;
  std::optional<IdentityCheck> odd_reversal;  ///< empty when rejected
  std::string rejection;
};

WeightedIdentities weighted_identities(const ResidueSet& s1, const ResidueSet& s2, u64 limit);

/// Whether lambda has all parts in S1 and a repeated part or a part in 2 S1.
bool in_involution_domain(const Partition& lambda, const ResidueSet& s1);

/// Merges two copies of the largest repeated part r into 2r when 2r > e
/// (e the largest part in 2 S1), otherwise splits e into two copies of e/2.
/// Throws std::domain_error outside the domain.
Partition gupta_involution(const Partition& lambda, const ResidueSet& s1);

/// q_r(N; n) = q(M - r M; n) mod 2 with M the odd numbers. Throws std::invalid_argument for even r.
IdentityCheck check_bounded_vs_odd_distinct(unsigned r, u64 limit);

/// q_r(S1; n) = overpartitions of n with parts in S1, overlines on r S1, mod 2.
/// Throws std::invalid_argument unless r S1 lies in S1 (checked over one period).
IdentityCheck check_overpartition_congruence(const ResidueSet& s1, unsigned r, u64 limit);

/// Overpartition count by enumeration: sum over partitions with parts in
/// S1 of 2^(distinct part values lying in `overlinable`).
u64 count_overpartitions(u64 n, const ResidueSet& s1, const ResidueSet& overlinable);

}  // namespace regpart
