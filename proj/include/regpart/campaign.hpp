#pragma once

// Verification campaigns over the b3 parity series and the x^2 + 216 y^2
// census, with JSON/CSV reports and replayable violation witnesses.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "regpart/arith.hpp"
#include "regpart/quadforms.hpp"

namespace regpart {

enum class CampaignStatus { VerifiedToBound, Violation, Inapplicable };
std::string to_string(CampaignStatus s);

struct Violation {
  nlohmann::json inputs;
  nlohmann::json observed;
};

struct CampaignReport {
  std::string campaign;
  nlohmann::json params = nlohmann::json::object();
  u64 checked = 0;
  std::vector<Violation> violations;
  CampaignStatus status = CampaignStatus::VerifiedToBound;
  nlohmann::json summary = nlohmann::json::object();
  i64 elapsed_ms = 0;

  /// Sets status from the violation list unless already Inapplicable.
  void finalize();
  nlohmann::json to_json(bool with_timing = true) const;
  std::string to_csv() const;
  /// 0 no violations, 1 violation found, 2 inapplicable.
  int exit_code() const;
};

struct InverseData {
  u64 p = 0;
  u64 neg_inv24_mod_p = 0;   ///< -24^{-1} mod p taken in [1, p - 1]
  u64 inv24_mod_p2 = 0;      ///< 24^{-1} mod p^2 in [0, p^2)
  u64 neg_inv24_mod_p2 = 0;  ///< -24^{-1} mod p^2 = (p^2 - 1)/24

  /// (24 s + 1)/p for a progression member s; throws std::logic_error unless
  /// p divides 24 s + 1 and p does not divide the quotient.
  u64 cofactor(u64 s) const;
};

/// Throws std::invalid_argument unless p is a prime >= 5.
InverseData inverse_data(u64 p);

struct PclassOptions {
  bool list = false;  ///< include every record in the summary
};

CampaignReport cmd_pclass(u64 limit, const PclassOptions& options = {});

enum class Theorem { KZ, Yao, Main, Conj42, Conj43, Conj44 };
std::optional<Theorem> parse_theorem(const std::string& name);
std::string to_string(Theorem t);

struct VerifyOptions {
  std::optional<u64> n_max;
  bool long_run = false;
};

/// Series coefficient budgets for verify campaigns.
constexpr u64 kDefaultIndexBudget = 10'000'000;
constexpr u64 kShortIndexLimit = 20'000'000;
constexpr u64 kLongIndexLimit = 120'000'000;

CampaignReport cmd_verify(Theorem theorem, u64 p, const VerifyOptions& options = {});

CampaignReport cmd_conjecture_n2(u64 limit, const std::vector<BInterpretation>& interpretations);

/// Recomputes a witness from its inputs with fresh series; true when the
/// violation is reproduced.
bool replay_violation(const CampaignReport& report, const Violation& violation);

}  // namespace regpart
