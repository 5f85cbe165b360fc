#include <doctest.h>

#include <stdexcept>

#include <set>

#include "regpart/campaign.hpp"
#include "regpart/radu.hpp"

using namespace regpart;

TEST_CASE("inverse data") {
  CHECK(inverse_data(29).neg_inv24_mod_p == 6);
  CHECK(inverse_data(59).neg_inv24_mod_p == 27);
  CHECK(inverse_data(487).neg_inv24_mod_p == 142);
  CHECK(inverse_data(13).neg_inv24_mod_p2 == 7);
  for (u64 p : {5, 7, 11, 13, 29, 31, 487, 1009}) {
    const InverseData d = inverse_data(p);
    CHECK(d.neg_inv24_mod_p >= 1);
    CHECK(d.neg_inv24_mod_p <= p - 1);
    CHECK((24 * (p - d.neg_inv24_mod_p)) % p == 1);
    CHECK((24 * d.inv24_mod_p2) % (p * p) == 1);
  }
  CHECK_THROWS_AS(inverse_data(2), std::invalid_argument);
  CHECK_THROWS_AS(inverse_data(3), std::invalid_argument);
  CHECK_THROWS_AS(inverse_data(91), std::invalid_argument);
}

TEST_CASE("instance for p = 29") {
  const RaduInstance inst = b_instance(29, 6);
  CHECK(inst.kappa() == 24);
  CHECK(inst.m == 841);
  CHECK(delta_star_check(inst).member());
  const auto p6 = p_set(841, inst.r, 6);
  CHECK(p6 == std::vector<u64>{6, 64, 151, 180, 209, 238, 296, 412, 499, 615, 673, 702, 731, 760});
  const auto p93 = p_set(841, inst.r, 93);
  CHECK(p93 == std::vector<u64>{93, 122, 267, 325, 354, 383, 441, 470, 528, 557, 586, 644, 789, 818});

  const CosetData cd = coset_data(inst.N);
  REQUIRE(cd.reps.size() == 4);
  std::vector<std::string> got;
  for (const auto& g : cd.reps) got.push_back(to_string(slopes(inst, g).p_mr));
  CHECK(got == std::vector<std::string>{"11/60552", "1/20184", "11/60552", "1/20184"});
  CHECK(nu_bound(inst).floor_nu == 14);
  CHECK(nu_bound(b_instance(29, 93)).floor_nu == 14);
  CHECK_THROWS_AS(coset_data(841), std::invalid_argument);
}

TEST_CASE("P-sets partition the residues into classes of the relation") {
  // every element of P(t) shares the class of t: 24 t' + 11 = s (24 t + 11) mod 24 m for a unit square s
  for (u64 p : {29, 59, 79}) {
    const RaduInstance inst = b_instance(p, inverse_data(p).neg_inv24_mod_p);
    const auto pt = p_set(inst.m, inst.r, inst.t);
    CHECK(std::find(pt.begin(), pt.end(), inst.t) != pt.end());
    for (u64 t2 : pt) {
      const auto again = p_set(inst.m, inst.r, t2);
      CHECK(again == pt);
    }
  }
}

TEST_CASE("table rows without series checks") {
  const auto fixture = radu_table_fixture();
  REQUIRE(fixture.size() == 14);
  TableOptions opts;
  opts.series_checks = false;
  opts.long_rows = true;
  for (const auto& row : fixture) {
    const TableRowResult res = compute_table_row(row.p, opts);
    CHECK_MESSAGE(res.ok(), "p = " << row.p);
    CHECK(res.computed.neg_inv24 == row.neg_inv24);
    CHECK(res.computed.floor_p24 == row.floor_p24);
    CHECK(res.computed.floor_nu == row.floor_nu);
    CHECK(res.computed.A == row.A);
  }
}

TEST_CASE("series verdicts") {
  RaduInstance ram;
  ram.m = 5;
  ram.M = 1;
  ram.N = 5;
  ram.t = 4;
  ram.r = EtaExponents(1, {{1, -1}});
  ram.u = 5;
  ram.aux = EtaExponents(5, {{1, 5}});
  const RaduVerification v = verify_instance(ram);
  CHECK(v.verdict == Verdict::Certified);

  RaduInstance wrong = ram;
  wrong.t = 3;
  const RaduVerification w = verify_instance(wrong);
  CHECK(w.verdict != Verdict::Certified);

  const RaduVerification b29 = verify_instance(b_instance(29, 6));
  CHECK(b29.verdict == Verdict::Certified);
  CHECK(b29.nu->floor_nu == 14);
}

TEST_CASE("validation") {
  RaduInstance bad = b_instance(29, 6);
  bad.t = 841;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = b_instance(29, 6);
  bad.u = 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
