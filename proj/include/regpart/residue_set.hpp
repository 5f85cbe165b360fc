#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "regpart/arith.hpp"

namespace regpart {

/// A set of positive integers described by residue classes modulo a fixed
/// modulus, optionally with the multiples of some t removed and with a
/// second ResidueSet subtracted.
///
/// Membership is periodic with period `period()`, so every set built by the
/// combinators below (scaling, subtraction) stays finitely described.
class ResidueSet {
 public:
  /// Residues are reduced modulo `modulus`; throws if modulus == 0.
  ResidueSet(u64 modulus, std::vector<u64> residues);

  static ResidueSet all();
  static ResidueSet odd();
  /// {n : n mod modulus not in `excluded`}
  static ResidueSet excluding_classes(u64 modulus, const std::vector<u64>& excluded);

  ResidueSet without_multiples_of(u64 t) const;
  ResidueSet minus(const ResidueSet& other) const;
  /// kS = {k s : s in S}.
  ResidueSet scaled(u64 k) const;

  /// False for n == 0.
  bool contains(u64 n) const;

  u64 modulus() const { return modulus_; }
  const std::vector<u64>& residues() const { return residues_; }
  std::optional<u64> excluded_multiples() const { return excluded_multiples_; }
  const ResidueSet* explicit_removals() const { return removals_.get(); }

  u64 period() const;
  /// Same set as plain residue classes modulo period().
  ResidueSet flattened() const;
  std::vector<u64> elements_up_to(u64 limit) const;

  nlohmann::json to_json() const;
  static ResidueSet from_json(const nlohmann::json& j);
  std::string describe() const;

  /// Equality as sets (compared through the flattened form).
  bool same_set(const ResidueSet& other) const;

 private:
  u64 modulus_;
  std::vector<u64> residues_;
  std::vector<bool> member_;
  std::optional<u64> excluded_multiples_;
  std::shared_ptr<const ResidueSet> removals_;
};

}  // namespace regpart
