#include "regpart/residue_set.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace regpart {

ResidueSet::ResidueSet(u64 modulus, std::vector<u64> residues) : modulus_(modulus) {
  if (modulus == 0) throw std::invalid_argument("ResidueSet: modulus must be positive");
  member_.assign(modulus, false);
  for (u64 r : residues) member_[r % modulus] = true;
  for (u64 r = 0; r < modulus; ++r)
    if (member_[r]) residues_.push_back(r);
}

ResidueSet ResidueSet::all() { return ResidueSet(1, {0}); }

ResidueSet ResidueSet::odd() { return ResidueSet(2, {1}); }

ResidueSet ResidueSet::excluding_classes(u64 modulus, const std::vector<u64>& excluded) {
  std::vector<bool> drop(modulus, false);
  for (u64 e : excluded) drop[e % modulus] = true;
  std::vector<u64> keep;
  for (u64 r = 0; r < modulus; ++r)
    if (!drop[r]) keep.push_back(r);
  return ResidueSet(modulus, std::move(keep));
}

ResidueSet ResidueSet::without_multiples_of(u64 t) const {
  if (t == 0) throw std::invalid_argument("ResidueSet: excluded multiple must be positive");
  if (excluded_multiples_) {
    ResidueSet flat = flattened();
    flat.excluded_multiples_ = t;
    return flat;
  }
  ResidueSet out = *this;
  out.excluded_multiples_ = t;
  return out;
}

ResidueSet ResidueSet::minus(const ResidueSet& other) const {
  ResidueSet base = removals_ ? flattened() : *this;
  base.removals_ = std::make_shared<const ResidueSet>(other);
  return base;
}

ResidueSet ResidueSet::scaled(u64 k) const {
  if (k == 0) throw std::invalid_argument("ResidueSet: scale factor must be positive");
  std::vector<u64> scaled_residues;
  scaled_residues.reserve(residues_.size());
  for (u64 r : residues_) scaled_residues.push_back(k * r);
  ResidueSet out(k * modulus_, std::move(scaled_residues));
  if (excluded_multiples_) out.excluded_multiples_ = k * *excluded_multiples_;
  if (removals_) out.removals_ = std::make_shared<const ResidueSet>(removals_->scaled(k));
  return out;
}

bool ResidueSet::contains(u64 n) const {
  if (n == 0) return false;
  if (!member_[n % modulus_]) return false;
  if (excluded_multiples_ && n % *excluded_multiples_ == 0) return false;
  if (removals_ && removals_->contains(n)) return false;
  return true;
}

u64 ResidueSet::period() const {
  u64 p = modulus_;
  if (excluded_multiples_) p = std::lcm(p, *excluded_multiples_);
  if (removals_) p = std::lcm(p, removals_->period());
  return p;
}

ResidueSet ResidueSet::flattened() const {
  const u64 p = period();
  std::vector<u64> rs;
  // residue 0 stands for the positive multiples of p
  for (u64 r = 1; r <= p; ++r)
    if (contains(r)) rs.push_back(r % p);
  return ResidueSet(p, std::move(rs));
}

std::vector<u64> ResidueSet::elements_up_to(u64 limit) const {
  std::vector<u64> out;
  for (u64 n = 1; n <= limit; ++n)
    if (contains(n)) out.push_back(n);
  return out;
}

nlohmann::json ResidueSet::to_json() const {
  nlohmann::json j;
  j["modulus"] = modulus_;
  j["residues"] = residues_;
  if (excluded_multiples_) j["excluded_multiples"] = *excluded_multiples_;
  if (removals_) j["explicit_removals"] = removals_->to_json();
  return j;
}

ResidueSet ResidueSet::from_json(const nlohmann::json& j) {
  ResidueSet out(j.at("modulus").get<u64>(), j.at("residues").get<std::vector<u64>>());
  if (j.contains("excluded_multiples")) out = out.without_multiples_of(j["excluded_multiples"].get<u64>());
  if (j.contains("explicit_removals")) out = out.minus(from_json(j["explicit_removals"]));
  return out;
}

std::string ResidueSet::describe() const {
  std::ostringstream os;
  os << "{n = ";
  for (std::size_t i = 0; i < residues_.size(); ++i) os << (i ? "," : "") << residues_[i];
  os << " mod " << modulus_;
  if (excluded_multiples_) os << ", " << *excluded_multiples_ << " does not divide n";
  if (removals_) os << "} \\ " << removals_->describe();
  else os << "}";
  return os.str();
}

bool ResidueSet::same_set(const ResidueSet& other) const {
  const u64 p = std::lcm(period(), other.period());
  for (u64 n = 1; n <= p; ++n)
    if (contains(n) != other.contains(n)) return false;
  return true;
}

}  // namespace regpart
