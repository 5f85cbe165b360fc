#pragma once

// Finite verification of congruences c_r(m n + t') = 0 (mod u) for an eta
// quotient sum c_r(n) q^n = prod_{delta | M} (q^delta; q^delta)^{r_delta},
// following Radu's criterion: six admissibility conditions on
// (m, M, N, r, t), a bound nu from the coset slopes, and a check of the
// first floor(nu) + 1 terms of every progression in the P-set.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "regpart/arith.hpp"
#include "regpart/series.hpp"

namespace regpart {

using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const Rational& q);

struct RaduInstance {
  u64 m = 1;
  u64 M = 1;
  u64 N = 1;
  u64 t = 0;
  EtaExponents r{1};
  u64 u = 2;
  EtaExponents aux{1};  ///< auxiliary exponents over the divisors of N

  /// gcd(1 - m^2, 24)
  u64 kappa() const;
  /// prod_delta delta^{|r_delta|} = 2^s * ell with ell odd
  u64 s() const;
  BigInt ell() const;

  /// Throws std::invalid_argument unless 0 <= t < m, r has level M, aux has level N, u >= 2.
  void validate() const;
};

/// The instance for (q;q)^4 / (q^3;q^3) with m = p^2, N = 3p, u = 2, aux = 0.
RaduInstance b_instance(u64 p, u64 t);

enum class ConditionState { Satisfied, Failed, Vacuous, Undetermined };
std::string to_string(ConditionState s);

struct DeltaStarReport {
  std::array<ConditionState, 6> conditions{};
  std::array<std::string, 6> notes;
  /// True when every condition is Satisfied or Vacuous.
  bool member() const;
  nlohmann::json to_json() const;
};

DeltaStarReport delta_star_check(const RaduInstance& inst);

/// Squares of the units modulo n, sorted.
std::vector<u64> unit_squares_mod(u64 n);

/// {t s + (s - 1)/24 * sum delta r_delta mod m : s a unit square mod 24m}, sorted.
std::vector<u64> p_set(u64 m, const EtaExponents& r, u64 t);

struct CosetRep {
  u64 delta;
  i64 a, b, c, d;  ///< (1 0; delta 1)
};

struct CosetData {
  std::vector<CosetRep> reps;
  u64 index;  ///< [SL2(Z) : Gamma_0(N)]
};

/// Throws std::invalid_argument unless N is squarefree.
CosetData coset_data(u64 N);

struct Slopes {
  Rational p_mr;
  Rational p_star;
  u64 argmin_d = 0;
};

Slopes slopes(const RaduInstance& inst, const CosetRep& gamma);

struct NuBound {
  Rational nu;
  i64 floor_nu = 0;
  u64 t_min = 0;
};

NuBound nu_bound(const RaduInstance& inst);

enum class Verdict { Certified, Violated, Inapplicable };
std::string to_string(Verdict v);

struct RaduWitness {
  u64 t_prime;
  u64 n;
  BigInt value;
};

struct RaduVerification {
  Verdict verdict = Verdict::Inapplicable;
  std::string reason;
  DeltaStarReport delta_star;
  std::vector<Slopes> slopes;
  std::vector<u64> p_set;
  std::optional<NuBound> nu;
  std::size_t series_length = 0;
  u64 checked = 0;
  std::optional<RaduWitness> witness;

  nlohmann::json to_json() const;
};

/// Builds c_r to m (floor(nu) + 1) coefficients (GF2 for u = 2, Z/2^k for
/// u = 2^k, exact otherwise) unless a long enough `series` is supplied.
RaduVerification verify_instance(const RaduInstance& inst, const CoefficientSeries* series = nullptr);

struct TableRow {
  u64 p = 0;
  u64 neg_inv24 = 0;   ///< -24^{-1} mod p in [1, p - 1]
  u64 floor_p24 = 0;
  u64 A = 0;
  i64 floor_nu = 0;

  bool operator==(const TableRow&) const = default;
  nlohmann::json to_json() const;
};

/// The fourteen rows shipped with the library (p = 29 with A = 3).
std::vector<TableRow> radu_table_fixture();

struct TableRowResult {
  TableRow computed;
  std::optional<TableRow> expected;
  bool delta_star_ok = true;
  bool slopes_nonnegative = true;
  bool covers_residues = true;   ///< P(t0) u P(A p + t0) equals the admissible residues
  bool nu_consistent = true;     ///< both t values give the same floor(nu)
  std::optional<Verdict> series_verdict;
  std::vector<std::string> mismatches;

  bool ok() const;
  nlohmann::json to_json() const;
};

struct TableOptions {
  bool series_checks = true;
  /// Rows with p >= 223 need series past 10^7 coefficients; skipped unless set.
  bool long_rows = false;
};

TableRowResult compute_table_row(u64 p, const TableOptions& options = {},
                                 const CoefficientSeries* b_series = nullptr);
std::vector<TableRowResult> reproduce_table(const TableOptions& options = {});

}  // namespace regpart
