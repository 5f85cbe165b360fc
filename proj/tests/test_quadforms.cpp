#include <doctest.h>

#include <stdexcept>

#include <random>

#include "oracles.hpp"
#include "regpart/quadforms.hpp"

using namespace regpart;

TEST_CASE("reduced forms and class numbers") {
  const auto d96 = reduced_forms(-96);
  CHECK(d96.forms == std::vector<QuadForm>{{1, 0, 24}, {3, 0, 8}, {4, 4, 7}, {5, 2, 5}});
  const auto d24 = reduced_forms(-24);
  CHECK(d24.forms == std::vector<QuadForm>{{1, 0, 6}, {2, 0, 3}});
  CHECK(reduced_forms(-216).class_number() == 6);
  CHECK(reduced_forms(-864).class_number() == 12);
  CHECK(reduced_forms(-3).class_number() == 1);
  CHECK(reduced_forms(-4).class_number() == 1);
  CHECK(reduced_forms(-23).class_number() == 3);
  CHECK_THROWS_AS(reduced_forms(0), std::invalid_argument);
  CHECK_THROWS_AS(reduced_forms(5), std::invalid_argument);
  CHECK_THROWS_AS(reduced_forms(-6), std::invalid_argument);
  for (i64 D = -3; D >= -600; --D) {
    if (((D % 4) + 4) % 4 > 1) continue;
    for (const auto& f : reduced_forms(D).forms) {
      CHECK(f.discriminant() == D);
      CHECK(f.is_reduced());
      CHECK(f.is_primitive());
    }
  }
}

TEST_CASE("representation counts against a box search") {
  std::mt19937 rng(5);
  const std::vector<QuadForm> forms = {kFormX2_24Y2, kFormX2_216Y2, kFormX2_6Y2, kForm2X2_3Y2, {4, 4, 7}, {5, 2, 5},
                                       {3, 0, 8}, {2, 1, 3}};
  for (const auto& f : forms)
    for (int i = 0; i < 40; ++i) {
      const u64 w = 1 + rng() % 3000;
      const RepCount rc = rep_count(f, w);
      const auto ref = oracle::brute_reps(f.a, f.b, f.c, static_cast<i64>(w));
      CHECK(rc.total == ref.total);
      CHECK(rc.primitive == ref.primitive);
      CHECK(rc.primitive <= rc.total);
    }
  CHECK(count_x2_plus_216y2(25).primitive == 0);
  CHECK(count_x2_plus_216y2(25).total == 2);
}

TEST_CASE("mass formulas on w = 1 mod 24") {
  for (u64 w = 1; w <= 20000; w += 24) {
    const MassFormulas mf = mass_formulas(w);
    CHECK(static_cast<i64>(count_x2_plus_24y2(w).total) == mf.divisor_sum_M1);
    CHECK(static_cast<i64>(count_x2_plus_24y2(w).primitive) == mf.product_N96);
    CHECK(rep_count({3, 0, 8}, w).total == 0);
    CHECK(rep_count({4, 4, 7}, w).total == 0);
    CHECK(rep_count({5, 2, 5}, w).total == 0);
  }
  CHECK_THROWS_AS(mass_formulas(24), std::invalid_argument);
}

TEST_CASE("imprimitive decomposition") {
  for (u64 u : {1ull, 25ull, 49ull, 121ull, 289ull, 625ull, 1225ull, 2401ull, 5929ull})
    for (int which : {1, 2}) CHECK(imprimitive_decomposition(u, which).holds());
}

TEST_CASE("prime classification fixtures") {
  struct Expect {
    u64 p;
    int j;
    i64 x, y;
  };
  for (const auto& e : {Expect{29, 8, 4, 1}, Expect{59, 8, 16, 1}, Expect{79, 4, 10, 1}, Expect{103, 4, 14, 1},
                        Expect{241, 1, 5, 1}}) {
    const auto r = classify_prime(e.p);
    CHECK(r.in_P);
    CHECK(r.j == e.j);
    CHECK(r.x1 == e.x);
    CHECK(r.y1 == e.y);
  }
  for (u64 p : {5, 7, 11, 13, 17, 19, 23, 31, 37}) CHECK_FALSE(classify_prime(p).in_P);
}

TEST_CASE("prime classification invariants") {
  for (u64 p = 5; p < 20000; ++p) {
    if (!oracle::is_prime(p)) continue;
    const auto r = classify_prime(p);
    CHECK(r.residue == p % 24);
    if (!r.in_P) continue;
    CHECK(r.x1 * r.x1 + 216 * r.y1 * r.y1 == static_cast<i64>(r.j) * static_cast<i64>(p));
    CHECK(std::gcd(r.x1, r.y1) == 1);
    if (r.j == 1) CHECK(r.residue == 1);
    if (r.j == 4) CHECK(r.residue == 7);
    if (r.j == 8) CHECK((r.residue == 5 || r.residue == 11));
    CHECK(has_primitive_p_squared_solution(p));
  }
}

TEST_CASE("two-to-one map") {
  for (u64 p : {29, 59, 79, 103, 241}) {
    const auto rec = classify_prime(p);
    for (u64 m = 1; m <= 120; ++m) {
      if (m % p == 0 || (p * m) % 24 != 1) continue;
      const FiberReport fr = two_to_one_map(rec, m);
      CHECK(fr.holds());
      CHECK(fr.problems.empty());
      if (m > 1) CHECK(count_x2_plus_216y2(p * m).primitive % 8 == 0);
    }
  }
}

TEST_CASE("N2 formula fixtures") {
  CHECK(conjecture_n2_formula(2233).value == 8);
  CHECK(count_x2_plus_216y2(2233).primitive == 8);
  CHECK(conjecture_n2_formula(241).value == 4);
  CHECK(count_x2_plus_216y2(241).primitive == 4);
  const auto p25 = conjecture_n2_formula(25);
  CHECK(p25.value == 0);
  CHECK(p25.k == 0);
  CHECK(p25.n == 1);
  CHECK(p25.B == 0);
  CHECK(conjecture_n2_formula(29 * 29).zero_rule == false);
  CHECK(conjecture_n2_formula(13 * 37).zero_rule);
}

TEST_CASE("pentagonal square counts") {
  CHECK(pentagonal_square_count(0) == 1);
  CHECK(pentagonal_square_count(1) == 2);
  CHECK(pentagonal_square_count(2) == 2);
  for (u64 r = 0; r < 500; ++r) {
    u64 count = 0;
    for (i64 x = 0; x * x <= static_cast<i64>(24 * r + 1); ++x)
      for (i64 y = 0; x * x + 24 * y * y <= static_cast<i64>(24 * r + 1); ++y)
        if (x * x + 24 * y * y == static_cast<i64>(24 * r + 1) && (y == 0 || y % 3 != 0)) ++count;
    CHECK(pentagonal_square_count(r) == count);
  }
}
