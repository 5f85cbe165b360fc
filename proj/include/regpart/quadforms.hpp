#pragma once

// Positive definite binary quadratic forms a x^2 + b x y + c y^2: reduced
// forms and class numbers, representation counts by direct enumeration,
// and the prime set cut out by x^2 + 216 y^2 = j p with j in {1, 4, 8}.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "regpart/arith.hpp"

namespace regpart {

using Point = std::pair<i64, i64>;

struct QuadForm {
  i64 a = 1, b = 0, c = 1;

  i64 discriminant() const { return b * b - 4 * a * c; }
  bool is_positive_definite() const { return a > 0 && discriminant() < 0; }
  bool is_primitive() const;
  bool is_reduced() const;
  i64 evaluate(i64 x, i64 y) const { return a * x * x + b * x * y + c * y * y; }
  std::string to_string() const;

  auto operator<=>(const QuadForm&) const = default;
};

struct RepCount {
  u64 target = 0;
  u64 total = 0;      ///< all (x, y) in Z^2, every sign combination
  u64 primitive = 0;  ///< those with gcd(x, y) = 1
};

/// Every (x, y) in Z^2 with form(x, y) = w, sorted.
/// Throws std::invalid_argument for w == 0 or a form that is not positive definite.
std::vector<Point> representations(const QuadForm& form, u64 w);
RepCount rep_count(const QuadForm& form, u64 w);

struct ReducedForms {
  i64 discriminant;
  std::vector<QuadForm> forms;  ///< lexicographic in (a, b, c)
  std::size_t class_number() const { return forms.size(); }
};

/// Primitive reduced positive forms of discriminant D.
/// Throws std::invalid_argument unless D < 0 and D = 0, 1 mod 4.
ReducedForms reduced_forms(i64 D);

inline const QuadForm kFormX2_24Y2{1, 0, 24};
inline const QuadForm kFormX2_216Y2{1, 0, 216};
inline const QuadForm kFormX2_6Y2{1, 0, 6};
inline const QuadForm kForm2X2_3Y2{2, 0, 3};

/// total = M_1(w), primitive = N_1(w)
inline RepCount count_x2_plus_24y2(u64 w) { return rep_count(kFormX2_24Y2, w); }
/// total = M_2(w), primitive = N_2(w)
inline RepCount count_x2_plus_216y2(u64 w) { return rep_count(kFormX2_216Y2, w); }
inline RepCount count_x2_plus_6y2(u64 w) { return rep_count(kFormX2_6Y2, w); }
inline RepCount count_2x2_plus_3y2(u64 w) { return rep_count(kForm2X2_3Y2, w); }

struct MassFormulas {
  i64 divisor_sum_M1;  ///< 2 sum_{d | w} (-6/d)
  i64 product_N96;     ///< 2 prod_{p | w} (1 + (-6/p))
};

/// Throws std::invalid_argument unless w = 1 mod 24.
MassFormulas mass_formulas(u64 w);

struct ImprimitiveDecomposition {
  u64 u = 0, g = 0, h = 0;
  int which = 1;                          ///< 1: x^2 + 24 y^2, 2: x^2 + 216 y^2
  std::vector<std::pair<u64, u64>> terms; ///< (d, N_i(g d^2)) for d | h
  u64 sum = 0;
  u64 total = 0;                          ///< M_i(u)
  bool holds() const { return sum == total; }
};

/// u = g h^2 with g squarefree; M_i(u) = sum_{d | h} N_i(g d^2).
ImprimitiveDecomposition imprimitive_decomposition(u64 u, int which);

struct PrimeClassRecord {
  u64 p = 0;
  bool in_P = false;
  int j = 0;              ///< 1, 4 or 8 when in_P
  i64 x1 = 0, y1 = 0;     ///< primitive x1^2 + 216 y1^2 = j p, x1, y1 > 0
  u64 residue = 0;        ///< p mod 24
};

/// Throws std::invalid_argument for p composite or p < 5. Residue classes
/// 13, 17, 19, 23 mod 24 are decided without search. The residue and 2-adic
/// constraints on the witness are checked and a violation throws std::logic_error.
PrimeClassRecord classify_prime(u64 p);

struct FiberReport {
  u64 p = 0, m = 0;
  int j = 0;
  std::size_t x_size = 0;   ///< |X_{p,m}|
  std::size_t a_size = 0;   ///< |A_m|
  bool well_defined = true; ///< every image is integral, primitive and in A_m
  bool surjective = true;
  bool two_to_one = true;
  std::map<Point, std::vector<Point>> fibers;
  std::vector<std::string> problems;

  bool holds() const { return well_defined && surjective && two_to_one && x_size == 2 * a_size; }
};

/// Primitive solutions of x^2 + 216 y^2 = p m mapped onto those of
/// a^2 + 216 b^2 = j m. Throws std::invalid_argument unless record.in_P,
/// gcd(m, p) = 1 and p m = 1 mod 24.
FiberReport two_to_one_map(const PrimeClassRecord& record, u64 m);

/// ((x1^2 - 216 y1^2) / j, 2 x1 y1 / j), a primitive solution of x^2 + 216 y^2 = p^2.
/// Throws std::invalid_argument unless record.in_P.
Point p_squared_witness(const PrimeClassRecord& record);

/// Whether x^2 + 216 y^2 = p^2 has a primitive solution, by search.
bool has_primitive_p_squared_solution(u64 p);

enum class BInterpretation {
  ExponentMod3,  ///< count of exponents b_i = 0 mod 3
  ExponentMod2,  ///< count of exponents b_i = 0 mod 2
};

std::string to_string(BInterpretation interp);

struct N2Prediction {
  u64 m = 0;
  bool zero_rule = false;  ///< some prime divisor is 13, 17, 19 or 23 mod 24
  unsigned k = 0;          ///< distinct prime divisors in P
  unsigned n = 0;          ///< distinct prime divisors outside P
  unsigned B = 0;
  i64 value = 0;
};

/// Throws std::invalid_argument unless m = 1 mod 24.
N2Prediction conjecture_n2_formula(u64 m, BInterpretation interp = BInterpretation::ExponentMod3);

/// #{(x, y) in N^2 : x^2 + 24 y^2 = 24 r + 1, y = 0 or 3 does not divide y}.
u64 pentagonal_square_count(u64 r);

}  // namespace regpart
