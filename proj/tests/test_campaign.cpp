#include <doctest.h>

#include <stdexcept>

#include "regpart/campaign.hpp"
#include "regpart/series.hpp"

using namespace regpart;

TEST_CASE("report schema and exit codes") {
  const CampaignReport rep = cmd_verify(Theorem::KZ, 13, {u64{100}, false});
  const auto j = rep.to_json();
  for (const char* key : {"campaign", "params", "checked", "violations", "status", "elapsed_ms"})
    CHECK(j.contains(key));
  CHECK(j["status"] == "VERIFIED_TO_BOUND");
  CHECK(rep.checked == 12 * 101);
  CHECK(rep.exit_code() == 0);
  CHECK(rep.to_csv().find("campaign") != std::string::npos);

  CampaignReport bad = rep;
  bad.violations.push_back({{{"s", 1}}, {{"parity", 1}}});
  bad.finalize();
  CHECK(bad.status == CampaignStatus::Violation);
  CHECK(bad.exit_code() == 1);
}

TEST_CASE("admissibility") {
  CHECK(cmd_verify(Theorem::KZ, 29).status == CampaignStatus::Inapplicable);
  CHECK(cmd_verify(Theorem::Main, 13).status == CampaignStatus::Inapplicable);
  CHECK(cmd_verify(Theorem::Conj44, 11).status == CampaignStatus::Inapplicable);
  CHECK(cmd_verify(Theorem::Conj43, 29).status == CampaignStatus::Inapplicable);
  CHECK(cmd_verify(Theorem::Yao, 91).status == CampaignStatus::Inapplicable);
  const auto inap = cmd_verify(Theorem::Main, 13);
  CHECK(inap.exit_code() == 2);
  CHECK(inap.params.contains("reason"));
  CHECK(cmd_pclass(10).status == CampaignStatus::Inapplicable);
  CHECK(parse_theorem("Conj4.3") == Theorem::Conj43);
  CHECK_FALSE(parse_theorem("Conj9"));
}

TEST_CASE("Yao dispatch") {
  const auto five = cmd_verify(Theorem::Yao, 5, {u64{300}, false});
  CHECK(five.status == CampaignStatus::VerifiedToBound);
  CHECK(five.summary["case"] == 2);
  const auto b3 = eta_quotient_series(b3_exponents(), 3, CoefficientRing::exact());
  CHECK(b3.value(2) == 2);
  CHECK(b3.value(0) == 1);
}

TEST_CASE("Main campaign is deterministic and cross-checked") {
  const auto a = cmd_verify(Theorem::Main, 29, {u64{200}, false});
  const auto b = cmd_verify(Theorem::Main, 29, {u64{200}, false});
  CHECK(a.status == CampaignStatus::VerifiedToBound);
  CHECK(a.to_json(false) == b.to_json(false));
  CHECK(a.checked >= 28 * 201);
}

TEST_CASE("cofactor assertion") {
  const InverseData d = inverse_data(29);
  const u64 s = 29 * 29 * 3 + 29 * 2 + d.neg_inv24_mod_p;  // n = 3, alpha = 2
  CHECK((24 * s + 1) % 29 == 0);
  CHECK(d.cofactor(s) == (24 * s + 1) / 29);
  CHECK_THROWS_AS(d.cofactor(s + 1), std::logic_error);
}

TEST_CASE("replay rejects fabricated witnesses") {
  const auto rep = cmd_verify(Theorem::KZ, 13, {u64{20}, false});
  Violation fake;
  fake.inputs = {{"theorem", "KZ"}, {"p", 13}, {"series", "b3"}, {"s", 20}, {"index", 40}};
  fake.observed = {{"parity", 1}};
  CHECK_FALSE(replay_violation(rep, fake));
}

TEST_CASE("conjecture N2 scanner") {
  const auto rep = cmd_conjecture_n2(20000, {BInterpretation::ExponentMod3, BInterpretation::ExponentMod2});
  CHECK(rep.summary["interpretations"]["a"]["mismatches"] == 0);
  CHECK(rep.summary["interpretations"]["c"]["mismatches"].get<u64>() > 0);
  CHECK(rep.summary["interpretations"]["c"]["first_counterexamples"][0]["m"] == 25);
  CHECK(rep.status == CampaignStatus::Violation);
  for (const auto& v : rep.violations) {
    CHECK(v.inputs["interpretation"] == "c");
    CHECK(replay_violation(rep, v));
  }
}

TEST_CASE("prime census") {
  const auto rep = cmd_pclass(20000, {true});
  CHECK(rep.status == CampaignStatus::VerifiedToBound);
  const double f = rep.summary["fraction"].get<double>();
  CHECK(f > 1.0 / 6 - 0.05);
  CHECK(f < 1.0 / 6 + 0.05);
  bool saw_241 = false;
  for (const auto& r : rep.summary["records"])
    if (r["p"] == 241) {
      saw_241 = true;
      CHECK(r["j"] == 1);
    }
  CHECK(saw_241);
}
