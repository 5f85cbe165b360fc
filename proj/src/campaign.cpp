#include "regpart/campaign.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>
#include <stdexcept>

#include "regpart/series.hpp"
#include "regpart/series_cache.hpp"

namespace regpart {

std::string to_string(CampaignStatus s) {
  switch (s) {
    case CampaignStatus::VerifiedToBound: return "VERIFIED_TO_BOUND";
    case CampaignStatus::Violation: return "VIOLATION";
    case CampaignStatus::Inapplicable: return "INAPPLICABLE";
  }
  return "?";
}

void CampaignReport::finalize() {
  if (status == CampaignStatus::Inapplicable) return;
  status = violations.empty() ? CampaignStatus::VerifiedToBound : CampaignStatus::Violation;
}

nlohmann::json CampaignReport::to_json(bool with_timing) const {
  nlohmann::json j;
  j["campaign"] = campaign;
  j["params"] = params;
  j["checked"] = checked;
  nlohmann::json v = nlohmann::json::array();
  for (const auto& w : violations) v.push_back({{"inputs", w.inputs}, {"observed", w.observed}});
  j["violations"] = v;
  j["status"] = to_string(status);
  if (!summary.empty()) j["summary"] = summary;
  if (with_timing) j["elapsed_ms"] = elapsed_ms;
  return j;
}

std::string CampaignReport::to_csv() const {
  std::ostringstream os;
  os << "campaign,status,checked,violation,inputs,observed\n";
  const auto quoted = [](const nlohmann::json& j) {
    std::string s = j.dump();
    std::string out = "\"";
    for (char c : s) out += (c == '"') ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
  };
  if (violations.empty()) os << campaign << "," << to_string(status) << "," << checked << ",,,\n";
  for (std::size_t i = 0; i < violations.size(); ++i)
    os << campaign << "," << to_string(status) << "," << checked << "," << i << "," << quoted(violations[i].inputs)
       << "," << quoted(violations[i].observed) << "\n";
  return os.str();
}

int CampaignReport::exit_code() const {
  switch (status) {
    case CampaignStatus::VerifiedToBound: return 0;
    case CampaignStatus::Violation: return 1;
    case CampaignStatus::Inapplicable: return 2;
  }
  return 2;
}

u64 InverseData::cofactor(u64 s) const {
  const u128 w = static_cast<u128>(24) * s + 1;
  if (w % p != 0) throw std::logic_error("cofactor: p does not divide 24 s + 1");
  const u64 m = static_cast<u64>(w / p);
  if (m % p == 0) throw std::logic_error("cofactor: p divides (24 s + 1)/p");
  return m;
}

InverseData inverse_data(u64 p) {
  if (p < 5 || !is_prime(p)) throw std::invalid_argument("inverse_data: p must be a prime >= 5");
  InverseData d;
  d.p = p;
  d.neg_inv24_mod_p = p - mod_inverse(24, p);
  d.inv24_mod_p2 = mod_inverse(24, p * p);
  d.neg_inv24_mod_p2 = p * p - d.inv24_mod_p2;
  return d;
}

namespace {

using Clock = std::chrono::steady_clock;

void stamp(CampaignReport& rep, Clock::time_point start) {
  rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

CampaignReport inapplicable(CampaignReport rep, const std::string& reason) {
  rep.status = CampaignStatus::Inapplicable;
  rep.params["reason"] = reason;
  return rep;
}

}  // namespace

CampaignReport cmd_pclass(u64 limit, const PclassOptions& options) {
  const auto start = Clock::now();
  CampaignReport rep;
  rep.campaign = "pclass";
  rep.params = {{"limit", limit}};
  if (limit < 1000) return inapplicable(rep, "limit must be at least 1000");
  if (limit > 0xFFFFFFFFull) return inapplicable(rep, "limit must fit in 32 bits");

  const auto primes = primes_up_to(static_cast<u32>(limit));
  std::map<u64, u64> per_class{{1, 0}, {5, 0}, {7, 0}, {11, 0}};
  u64 in_p = 0;
  nlohmann::json records = nlohmann::json::array();
  for (u32 p : primes) {
    ++rep.checked;
    if (p < 5) continue;
    try {
      const PrimeClassRecord r = classify_prime(p);
      if (r.in_P) {
        ++in_p;
        ++per_class[r.residue];
      }
      if (options.list)
        records.push_back({{"p", p}, {"in_P", r.in_P}, {"j", r.j}, {"witness", {r.x1, r.y1}}, {"residue", r.residue}});
    } catch (const std::logic_error& e) {
      rep.violations.push_back({{{"p", p}}, {{"error", e.what()}}});
    }
  }
  const double pi = static_cast<double>(primes.size());
  rep.summary["prime_count"] = primes.size();
  rep.summary["in_P"] = in_p;
  rep.summary["fraction"] = static_cast<double>(in_p) / pi;
  nlohmann::json classes = nlohmann::json::object();
  for (const auto& [cls, count] : per_class)
    classes[std::to_string(cls)] = {{"count", count}, {"fraction", static_cast<double>(count) / pi}};
  rep.summary["per_class"] = classes;
  if (options.list) rep.summary["records"] = records;
  rep.finalize();
  stamp(rep, start);
  return rep;
}

std::optional<Theorem> parse_theorem(const std::string& name) {
  static const std::map<std::string, Theorem> names{{"KZ", Theorem::KZ},         {"Yao", Theorem::Yao},
                                                    {"Main", Theorem::Main},     {"Conj4.2", Theorem::Conj42},
                                                    {"Conj4.3", Theorem::Conj43}, {"Conj4.4", Theorem::Conj44}};
  auto it = names.find(name);
  if (it == names.end()) return std::nullopt;
  return it->second;
}

std::string to_string(Theorem t) {
  switch (t) {
    case Theorem::KZ: return "KZ";
    case Theorem::Yao: return "Yao";
    case Theorem::Main: return "Main";
    case Theorem::Conj42: return "Conj4.2";
    case Theorem::Conj43: return "Conj4.3";
    case Theorem::Conj44: return "Conj4.4";
  }
  return "?";
}

namespace {

// Progressions s = step * n + offset; the checked coefficient is b3(2 s)
// (or its even/odd-length parts).
struct Family {
  std::string param;  ///< name of the residue parameter ("k", "alpha", "j")
  u64 value;
  u64 offset;
};

struct OddClaim {
  u64 half_index;  ///< b3(2 half_index) must be odd
  std::string label;
};

struct Plan {
  u64 step = 0;
  std::vector<Family> families;
  std::optional<u64> excluded_n_divisor;  ///< skip n with this prime dividing 24 n + 1
  std::vector<OddClaim> odd_claims;
  std::vector<Family> diagnostic_families;  ///< excluded residues, reported but not judged
  bool length_parts = false;                ///< check b3_even and b3_odd instead of b3
};

bool is_forbidden_class(u64 p) {
  const u64 r = p % 24;
  return r == 13 || r == 17 || r == 19 || r == 23;
}

const CoefficientSeries& b_series(std::size_t length, std::optional<CoefficientSeries>& slot) {
  if (!slot || slot->size() < length) {
    if (auto cached = cache_lookup("b", CoefficientRing::gf2(), length)) {
      slot = std::move(*cached);
    } else {
      slot = eta_quotient_series(b_keith_exponents(), length, CoefficientRing::gf2());
      cache_store("b", *slot);
    }
  }
  return *slot;
}

u64 max_offset(const Plan& plan) {
  u64 m = 0;
  for (const auto& f : plan.families) m = std::max(m, f.offset);
  for (const auto& f : plan.diagnostic_families) m = std::max(m, f.offset);
  return m;
}

/// Series length needed for n <= n_max (in coefficients of the series actually built).
u64 required_length(const Plan& plan, u64 n_max) {
  const u128 s = static_cast<u128>(plan.step) * n_max + max_offset(plan);
  const u128 len = plan.length_parts ? 2 * s + 1 : s + 1;
  return len > ~0ull ? ~0ull : static_cast<u64>(len);
}

std::optional<std::string> admissibility(Theorem th, u64 p) {
  if (p < 5 || !is_prime(p)) return "p must be a prime >= 5";
  switch (th) {
    case Theorem::KZ:
    case Theorem::Conj42:
      if (!is_forbidden_class(p)) return "p must be 13, 17, 19 or 23 mod 24";
      break;
    case Theorem::Yao: break;
    case Theorem::Main:
      if (!classify_prime(p).in_P) return "p is not in the prime set P";
      break;
    case Theorem::Conj43:
      if (!classify_prime(p).in_P) return "p is not in the prime set P";
      if (p % 24 != 1 && p % 24 != 7) return "p must be 1 or 7 mod 24";
      break;
    case Theorem::Conj44:
      if (p != 7 && p != 31) return "p must be 7 or 31";
      break;
  }
  return std::nullopt;
}

}  // namespace

CampaignReport cmd_verify(Theorem theorem, u64 p, const VerifyOptions& options) {
  const auto start = Clock::now();
  CampaignReport rep;
  rep.campaign = "verify";
  rep.params = {{"theorem", to_string(theorem)}, {"p", p}, {"long", options.long_run}};
  if (auto why = admissibility(theorem, p)) {
    stamp(rep, start);
    return inapplicable(rep, *why);
  }
  const InverseData inv = inverse_data(p);
  const u64 p2 = p * p;
  std::optional<CoefficientSeries> b_slot;

  Plan plan;
  switch (theorem) {
    case Theorem::KZ:
    case Theorem::Conj42:
      plan.step = p2;
      for (u64 k = 1; k < p; ++k) plan.families.push_back({"k", k, p * k + inv.neg_inv24_mod_p2});
      plan.length_parts = theorem == Theorem::Conj42;
      break;
    case Theorem::Main:
    case Theorem::Conj43:
      plan.step = p2;
      for (u64 alpha = 0; alpha < p; ++alpha)
        if (alpha != p / 24) plan.families.push_back({"alpha", alpha, p * alpha + inv.neg_inv24_mod_p});
      plan.length_parts = theorem == Theorem::Conj43;
      break;
    case Theorem::Conj44: {
      plan.step = p2 * p;
      const u64 c = inv.neg_inv24_mod_p2;
      for (u64 alpha = 0; alpha < p; ++alpha) {
        const Family f{"alpha", alpha, p2 * alpha + c};
        (alpha == c % p ? plan.diagnostic_families : plan.families).push_back(f);
      }
      plan.length_parts = true;
      break;
    }
    case Theorem::Yao: {
      const u64 pivot = (p2 - 1) / 24;
      const bool odd = b_series(pivot + 1, b_slot).parity(pivot);
      rep.summary["case"] = odd ? 1 : 2;
      rep.summary["pivot_parity"] = odd ? 1 : 0;
      const u128 p4 = static_cast<u128>(p2) * p2;
      if (odd) {
        plan.step = static_cast<u64>(p4);
        for (u64 j = 1; j < p; ++j)
          plan.families.push_back({"j", j, static_cast<u64>(p4 / p * j + (p4 - 1) / 24)});
        plan.odd_claims.push_back({0, "k=0"});
        plan.odd_claims.push_back({static_cast<u64>((p4 - 1) / 24), "k=1"});
      } else {
        plan.step = p2;
        plan.families.push_back({"k", 0, pivot});
        plan.excluded_n_divisor = p;
        plan.odd_claims.push_back({0, "k=0"});
        const u128 p6 = p4 * p2;
        if (p6 / 24 < kLongIndexLimit) plan.odd_claims.push_back({static_cast<u64>((p6 - 1) / 24), "k=1"});
        else rep.summary["skipped_claims"] = {"k=1"};
      }
      break;
    }
  }

  u64 n_max;
  const u64 limit = options.long_run ? kLongIndexLimit : kShortIndexLimit;
  if (options.n_max) {
    n_max = *options.n_max;
    const u64 len = required_length(plan, n_max);
    if (len > limit) {
      stamp(rep, start);
      return inapplicable(rep, options.long_run ? "series length " + std::to_string(len) + " exceeds the budget"
                                                : "series length " + std::to_string(len) + " requires --long");
    }
  } else {
    const u64 factor = plan.length_parts ? 2 : 1;
    const u64 base = required_length(plan, 0);
    if (base > kDefaultIndexBudget) {
      stamp(rep, start);
      return inapplicable(rep, "even n = 0 exceeds the default series budget");
    }
    n_max = std::min<u64>(1000, (kDefaultIndexBudget - base) / (factor * plan.step));
  }
  rep.params["n_max"] = n_max;

  u64 length = required_length(plan, n_max);
  for (const auto& c : plan.odd_claims)
    length = std::max<u64>(length, (plan.length_parts ? 2 * c.half_index : c.half_index) + 1);
  rep.summary["series_length"] = length;
  if (length > limit) {
    stamp(rep, start);
    return inapplicable(rep, "series length " + std::to_string(length) + " exceeds the budget");
  }

  std::optional<LengthParityPair> parts;
  const CoefficientSeries* b = nullptr;
  if (plan.length_parts)
    parts = b3_length_parity(length);
  else
    b = &b_series(length, b_slot);

  const auto check_instance = [&](const Family& f, u64 n, bool judged, u64& odd_count) {
    const u64 s = plan.step * n + f.offset;
    nlohmann::json inputs = {{"theorem", to_string(theorem)}, {"p", p}, {f.param, f.value}, {"n", n}, {"s", s}};
    if (plan.length_parts) {
      for (const auto& [name, series] : {std::pair<const char*, const CoefficientSeries*>{"b3_even", &parts->even},
                                         {"b3_odd", &parts->odd}}) {
        if (judged) ++rep.checked;
        if (series->parity(2 * s)) {
          ++odd_count;
          if (judged) {
            nlohmann::json in = inputs;
            in["check"] = "even";
            in["series"] = name;
            in["index"] = 2 * s;
            rep.violations.push_back({in, {{"parity", 1}}});
          }
        }
      }
      return;
    }
    ++rep.checked;
    const bool bit = b->parity(s);
    if (bit) {
      nlohmann::json in = inputs;
      in["check"] = "even";
      in["series"] = "b3";
      in["index"] = 2 * s;
      rep.violations.push_back({in, {{"parity", 1}}});
    }
    if (theorem == Theorem::Main) {
      const bool a_bit = pentagonal_square_count(s) & 1;
      if (a_bit != bit) {
        nlohmann::json in = inputs;
        in["check"] = "cross_check";
        rep.violations.push_back({in, {{"b3_parity", bit ? 1 : 0}, {"a_parity", a_bit ? 1 : 0}}});
      }
      try {
        inv.cofactor(s);
      } catch (const std::logic_error& e) {
        nlohmann::json in = inputs;
        in["check"] = "cofactor";
        rep.violations.push_back({in, {{"error", e.what()}}});
      }
    }
  };

  u64 unused = 0;
  for (const auto& f : plan.families)
    for (u64 n = 0; n <= n_max; ++n) {
      if (plan.excluded_n_divisor && (24 * n + 1) % *plan.excluded_n_divisor == 0) continue;
      check_instance(f, n, true, unused);
    }
  for (const auto& c : plan.odd_claims) {
    ++rep.checked;
    if (!b->parity(c.half_index))
      rep.violations.push_back({{{"theorem", to_string(theorem)},
                                 {"p", p},
                                 {"claim", c.label},
                                 {"check", "odd"},
                                 {"series", "b3"},
                                 {"s", c.half_index},
                                 {"index", 2 * c.half_index}},
                                {{"parity", 0}}});
  }
  if (!plan.diagnostic_families.empty()) {
    nlohmann::json diag = nlohmann::json::array();
    for (const auto& f : plan.diagnostic_families) {
      u64 odd_count = 0;
      for (u64 n = 0; n <= n_max; ++n) check_instance(f, n, false, odd_count);
      diag.push_back({{f.param, f.value}, {"instances", 2 * (n_max + 1)}, {"odd", odd_count}});
    }
    rep.summary["excluded_residues"] = diag;
  }
  // every Main instance is also checked against a(s) and the cofactor
  if (theorem == Theorem::Main) rep.summary["cross_checked"] = rep.checked;
  rep.finalize();
  stamp(rep, start);
  return rep;
}

CampaignReport cmd_conjecture_n2(u64 limit, const std::vector<BInterpretation>& interpretations) {
  const auto start = Clock::now();
  CampaignReport rep;
  rep.campaign = "conjecture-n2";
  nlohmann::json names = nlohmann::json::array();
  for (auto i : interpretations) names.push_back(to_string(i));
  rep.params = {{"limit", limit}, {"interpretations", names}};
  if (limit > 10'000'000) return inapplicable(rep, "limit must not exceed 10^7");
  if (interpretations.empty()) return inapplicable(rep, "no interpretation selected");

  struct Tally {
    u64 matches = 0, mismatches = 0;
    nlohmann::json first = nlohmann::json::array();
  };
  std::vector<Tally> tallies(interpretations.size());
  u64 eligible = 0, zero_rule = 0;
  for (u64 m = 1; m <= limit; m += 24) {
    const u64 oracle = count_x2_plus_216y2(m).primitive;
    ++rep.checked;
    for (std::size_t i = 0; i < interpretations.size(); ++i) {
      const N2Prediction pred = conjecture_n2_formula(m, interpretations[i]);
      if (pred.zero_rule) {
        if (i == 0) ++zero_rule;
        if (oracle != 0 && i == 0)
          rep.violations.push_back({{{"m", m}, {"check", "zero_rule"}}, {{"oracle", oracle}}});
        continue;
      }
      if (i == 0) ++eligible;
      if (static_cast<i64>(oracle) == pred.value) {
        ++tallies[i].matches;
        continue;
      }
      ++tallies[i].mismatches;
      if (tallies[i].first.size() < 20) tallies[i].first.push_back({{"m", m}, {"oracle", oracle}, {"formula", pred.value}});
      rep.violations.push_back({{{"m", m}, {"check", "formula"}, {"interpretation", to_string(interpretations[i])}},
                                {{"oracle", oracle},
                                 {"formula", pred.value},
                                 {"k", pred.k},
                                 {"n", pred.n},
                                 {"B", pred.B}}});
    }
  }
  rep.summary["eligible"] = eligible;
  rep.summary["zero_rule_instances"] = zero_rule;
  nlohmann::json per = nlohmann::json::object();
  for (std::size_t i = 0; i < interpretations.size(); ++i)
    per[to_string(interpretations[i])] = {{"matches", tallies[i].matches},
                                          {"mismatches", tallies[i].mismatches},
                                          {"verdict", tallies[i].mismatches == 0 ? "match" : "counterexamples"},
                                          {"first_counterexamples", tallies[i].first}};
  rep.summary["interpretations"] = per;
  rep.finalize();
  stamp(rep, start);
  return rep;
}

bool replay_violation(const CampaignReport& report, const Violation& violation) {
  const nlohmann::json& in = violation.inputs;
  const std::string check = in.value("check", "");
  if (report.campaign == "conjecture-n2") {
    const u64 m = in.at("m").get<u64>();
    const u64 oracle = count_x2_plus_216y2(m).primitive;
    if (check == "zero_rule") return oracle != 0;
    const auto interp = in.at("interpretation").get<std::string>() == "a" ? BInterpretation::ExponentMod3
                                                                           : BInterpretation::ExponentMod2;
    return static_cast<i64>(oracle) != conjecture_n2_formula(m, interp).value;
  }
  if (report.campaign == "pclass") {
    try {
      classify_prime(in.at("p").get<u64>());
      return false;
    } catch (const std::logic_error&) {
      return true;
    }
  }
  if (report.campaign != "verify") return false;
  const u64 p = in.at("p").get<u64>();
  const u64 s = in.at("s").get<u64>();
  if (check == "cofactor") {
    try {
      inverse_data(p).cofactor(s);
      return false;
    } catch (const std::logic_error&) {
      return true;
    }
  }
  const std::string series = in.value("series", "b3");
  bool bit;
  if (series == "b3") {
    bit = eta_quotient_series(b3_exponents(), 2 * s + 1, CoefficientRing::gf2()).parity(2 * s);
  } else {
    const LengthParityPair parts = b3_length_parity(2 * s + 1);
    bit = (series == "b3_even" ? parts.even : parts.odd).parity(2 * s);
  }
  if (check == "odd") return !bit;
  if (check == "cross_check") return bit != static_cast<bool>(pentagonal_square_count(s) & 1);
  return bit;
}

}  // namespace regpart
