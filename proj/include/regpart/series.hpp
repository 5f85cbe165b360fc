#pragma once

// Truncated power series over GF(2), Z/2^k and Z, eta-quotient expansion
// through the pentagonal number theorem, and the partition-counting
// sequences built on top of them.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "regpart/arith.hpp"
#include "regpart/residue_set.hpp"

namespace regpart {

using BigInt = boost::multiprecision::cpp_int;

class CoefficientRing {
 public:
  enum class Kind : std::uint8_t { GF2, ModPow2, Exact };

  static CoefficientRing gf2() { return CoefficientRing(Kind::GF2, 1); }
  /// Z/2^k for 1 <= k <= 64 (k = 1 is GF2); throws std::invalid_argument otherwise.
  static CoefficientRing mod_pow2(unsigned k);
  static CoefficientRing exact() { return CoefficientRing(Kind::Exact, 0); }

  Kind kind() const { return kind_; }
  /// Coefficient width in bits: 1 for GF2, k for ModPow2, 0 for Exact.
  unsigned bits() const { return bits_; }
  bool is_modular() const { return kind_ != Kind::Exact; }
  std::string name() const;

  bool operator==(const CoefficientRing&) const = default;

 private:
  CoefficientRing(Kind kind, unsigned bits) : kind_(kind), bits_(bits) {}
  Kind kind_;
  unsigned bits_;
};

/// Exponents r_delta of prod_{delta | level} (q^delta; q^delta)_inf^{r_delta}.
class EtaExponents {
 public:
  explicit EtaExponents(u64 level = 1);
  EtaExponents(u64 level, const std::map<u64, int>& exponents);
  /// Level taken as the lcm of the keys (1 for an empty map).
  static EtaExponents from_map(const std::map<u64, int>& exponents);

  /// Throws std::invalid_argument if divisor does not divide the level.
  void set(u64 divisor, int exponent);
  int at(u64 divisor) const;
  u64 level() const { return level_; }
  const std::map<u64, int>& entries() const { return exponents_; }

  /// sum of r_delta
  i64 exponent_sum() const;
  /// sum of delta * r_delta
  i64 weighted_sum() const;

 private:
  u64 level_;
  std::map<u64, int> exponents_;
};

/// 1 + sum coeff * q^offset with strictly increasing positive offsets.
struct SparseTerm {
  u64 offset;
  int coeff;
};
using SparsePoly = std::vector<SparseTerm>;

/// (q^step; q^step)_inf truncated below q^length, from the pentagonal number theorem.
SparsePoly pentagonal_factor(u64 step, std::size_t length);

namespace detail {

struct BitStore {
  std::vector<u64> words;
  bool operator==(const BitStore&) const = default;
};

template <class T>
struct DenseStore {
  std::vector<T> c;
  bool operator==(const DenseStore&) const = default;
};

using Storage = std::variant<BitStore, DenseStore<std::uint8_t>, DenseStore<u64>, DenseStore<BigInt>>;

class SeriesBuffer;

}  // namespace detail

/// A truncated power series sum_{i < size()} c[i] q^i. Immutable once built.
///
/// GF2 coefficients are stored one bit each. ModPow2(k) coefficients live in
/// the narrowest unsigned type holding k bits (8 or 64). Exact coefficients
/// are arbitrary precision.
class CoefficientSeries {
 public:
  const CoefficientRing& ring() const { return ring_; }
  std::size_t size() const { return length_; }

  /// Coefficient parity; throws std::out_of_range for n >= size().
  bool parity(std::size_t n) const;
  /// Representative in [0, 2^k) for modular rings; throws for Exact.
  u64 residue(std::size_t n) const;
  /// Ring representative as an integer (exact value for the Exact ring).
  BigInt value(std::size_t n) const;
  std::vector<BigInt> values() const;

  /// Coefficientwise image in a coarser ring (Exact -> ModPow2(k) -> ModPow2(j<k) -> GF2).
  CoefficientSeries reduced(const CoefficientRing& target) const;
  /// First `length` coefficients.
  CoefficientSeries truncated(std::size_t length) const;

  /// Packed GF2 words (bit i of word w is coefficient 64w+i); throws unless GF2.
  std::span<const u64> gf2_words() const;

  static CoefficientSeries from_gf2_words(std::size_t length, std::vector<u64> words);
  static CoefficientSeries from_residues(const CoefficientRing& ring, std::span<const u64> residues);
  static CoefficientSeries from_values(const CoefficientRing& ring, const std::vector<BigInt>& values);

  bool operator==(const CoefficientSeries& other) const;

 private:
  friend class detail::SeriesBuffer;
  CoefficientSeries(CoefficientRing ring, std::size_t length, detail::Storage storage)
      : ring_(ring), length_(length), storage_(std::move(storage)) {}

  CoefficientRing ring_;
  std::size_t length_;
  detail::Storage storage_;
};

/// prod_delta (q^delta; q^delta)_inf^{r_delta} truncated at `length` coefficients.
/// Throws std::invalid_argument when length == 0.
CoefficientSeries eta_quotient_series(const EtaExponents& r, std::size_t length, const CoefficientRing& ring);

/// Which partitions of n with parts in S are counted.
struct PartitionMode {
  /// 0: unbounded multiplicities; k >= 2: every part occurs fewer than k times.
  unsigned bound = 0;
  /// Count each partition with sign (-1)^{number of parts}.
  bool signed_by_length = false;

  static PartitionMode unbounded() { return {}; }
  static PartitionMode bounded(unsigned k) { return {k, false}; }
  static PartitionMode distinct() { return {2, false}; }
  PartitionMode with_sign() const { return {bound, true}; }
};

/// Throws std::invalid_argument for a bound of 1 or length 0.
CoefficientSeries partition_series(const ResidueSet& parts, PartitionMode mode, std::size_t length,
                                   const CoefficientRing& ring);

/// prod_{i in overlinable} (1 + q^i) * prod_{i in parts} 1/(1 - q^i): overpartitions
/// with parts in `parts` where only values in `overlinable` may be overlined.
CoefficientSeries overpartition_series(const ResidueSet& parts, const ResidueSet& overlinable, std::size_t length,
                                       const CoefficientRing& ring);

struct LengthParityPair {
  CoefficientSeries even;
  CoefficientSeries odd;
};

/// Partitions of n with parts in S split by parity of the number of parts.
/// Computed one ring above the requested one and halved, so the result is
/// exact in `ring`. Sum and difference identities are checked internally.
LengthParityPair length_parity_pair(const ResidueSet& parts, unsigned bound, std::size_t length,
                                    const CoefficientRing& ring);

struct S3CheckResult {
  std::size_t checked = 0;
  std::optional<std::size_t> first_mismatch;
  bool passed() const { return !first_mismatch; }
};

struct B3Family {
  CoefficientSeries b3;        ///< 3-regular partitions
  CoefficientSeries b_keith;   ///< (q;q)^4 / (q^3;q^3) over GF2; b_keith(n) = b3(2n) mod 2
  CoefficientSeries b3_even;   ///< even number of parts, mod 4
  CoefficientSeries b3_odd;    ///< odd number of parts, mod 4
  std::vector<u32> a_series;   ///< x^2 + 24 y^2 = 24 r + 1 with y = 0 or 3 not dividing y
  S3CheckResult s3_check;      ///< b3_even against partitions into S3 parts
};

struct B3FamilyOptions {
  CoefficientRing b3_ring = CoefficientRing::mod_pow2(3);
  std::size_t s3_check_limit = 20000;
};

B3Family b3_family(std::size_t length, const B3FamilyOptions& options = {});

/// {n : n mod 24 not in {0, 1, 10, 11, 12, 13, 14, 23}}
ResidueSet s3_parts();
/// {n : 3 does not divide n}
ResidueSet three_regular_parts();

/// Exponents of the individual series in the b3 family.
EtaExponents b3_exponents();           // (q^3;q^3) / (q;q)
EtaExponents b_keith_exponents();      // (q;q)^4 / (q^3;q^3)
EtaExponents b3_signed_exponents();    // prod_{3 not | j} 1/(1+q^j)

/// b3_even and b3_odd modulo 4 via sum and signed difference halved from Z/8.
LengthParityPair b3_length_parity(std::size_t length);

/// Counts of (x, y) in N^2 with x^2 + 24 y^2 = 24 r + 1 and (y = 0 or 3 does not divide y), r < length.
std::vector<u32> pentagonal_square_series(std::size_t length);

/// Parities at the given indices; throws std::out_of_range if any index >= size().
std::vector<std::uint8_t> series_parity_at(const CoefficientSeries& series, std::span<const u64> indices);

}  // namespace regpart
