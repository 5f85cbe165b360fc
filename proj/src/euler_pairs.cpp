#include "regpart/euler_pairs.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace regpart {

namespace {

bool in_scaled(const ResidueSet& s, u64 k, u64 n) { return n % k == 0 && s.contains(n / k); }

std::map<u64, u64> multiplicities(const Partition& p) {
  std::map<u64, u64> out;
  for (u64 v : p.parts) ++out[v];
  return out;
}

Partition from_multiplicities(const std::map<u64, u64>& mult) {
  std::vector<u64> parts;
  for (const auto& [v, c] : mult) parts.insert(parts.end(), c, v);
  return Partition(std::move(parts));
}

}  // namespace

Partition::Partition(std::vector<u64> p) : parts(std::move(p)) {
  if (std::find(parts.begin(), parts.end(), 0) != parts.end())
    throw std::invalid_argument("Partition: parts must be positive");
  std::sort(parts.begin(), parts.end(), std::greater<>());
}

u64 Partition::sum() const {
  u64 s = 0;
  for (u64 v : parts) s += v;
  return s;
}

std::size_t Partition::ell2(const ResidueSet& s1) const {
  return static_cast<std::size_t>(
      std::count_if(parts.begin(), parts.end(), [&](u64 v) { return in_scaled(s1, 2, v); }));
}

bool Partition::has_repeated_part() const { return std::adjacent_find(parts.begin(), parts.end()) != parts.end(); }

std::string Partition::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << parts[i];
  os << ")";
  return os.str();
}

std::vector<Partition> enumerate_partitions(u64 n, const ResidueSet& parts, unsigned bound) {
  if (n > kMaxEnumeratedN) throw std::invalid_argument("enumerate_partitions: n is capped at 60");
  std::vector<u64> allowed = parts.elements_up_to(n);
  std::reverse(allowed.begin(), allowed.end());
  std::vector<Partition> out;
  std::vector<u64> current;
  // parts chosen in non-increasing order; idx is the position of the largest value still usable
  std::function<void(u64, std::size_t)> rec = [&](u64 remaining, std::size_t idx) {
    if (remaining == 0) {
      Partition p;
      p.parts = current;
      out.push_back(std::move(p));
      return;
    }
    for (std::size_t i = idx; i < allowed.size(); ++i) {
      const u64 v = allowed[i];
      if (v > remaining) continue;
      const u64 cap = bound ? bound - 1 : remaining / v;
      for (u64 c = 1; c <= cap && c * v <= remaining; ++c) {
        current.insert(current.end(), c, v);
        rec(remaining - c * v, i + 1);
        current.resize(current.size() - c);
      }
    }
  };
  rec(n, 0);
  return out;
}

EulerPairVerdict euler_pair_check(const ResidueSet& s1, const ResidueSet& s2, unsigned k, u64 limit) {
  if (k < 2) throw std::invalid_argument("euler_pair_check: k must be at least 2");
  EulerPairVerdict v;
  v.structural = true;
  for (u64 n = 1; n <= limit && v.structural; ++n) {
    if (s1.contains(n) && k * n <= limit && !s1.contains(k * n)) {
      v.structural = false;
      v.structural_failure = n;
    }
    const bool expected = s1.contains(n) && !in_scaled(s1, k, n);
    if (s2.contains(n) != expected) {
      v.structural = false;
      v.structural_failure = n;
    }
  }
  const std::size_t length = limit + 1;
  const CoefficientSeries lhs = partition_series(s1, PartitionMode::bounded(k), length, CoefficientRing::exact());
  const CoefficientSeries rhs = partition_series(s2, PartitionMode::unbounded(), length, CoefficientRing::exact());
  v.numeric = true;
  for (std::size_t n = 0; n < length; ++n)
    if (lhs.value(n) != rhs.value(n)) {
      v.numeric = false;
      v.numeric_failure = n;
      break;
    }
  return v;
}

GlaisherMap::GlaisherMap(ResidueSet s1, unsigned k) : s1_(std::move(s1)), s2_(s1_), k_(k) {
  if (k < 2) throw std::invalid_argument("GlaisherMap: k must be at least 2");
  s2_ = s1_.minus(s1_.scaled(k));
}

Partition GlaisherMap::forward(const Partition& lambda) const {
  std::map<u64, u64> out;
  for (const auto& [v, c] : multiplicities(lambda)) {
    if (!s2_.contains(v)) throw std::invalid_argument("GlaisherMap::forward: part " + std::to_string(v) + " not in S2");
    u64 rest = c, scale = v;
    while (rest) {
      if (rest % k_) out[scale] += rest % k_;
      rest /= k_;
      scale *= k_;
    }
  }
  return from_multiplicities(out);
}

Partition GlaisherMap::inverse(const Partition& mu) const {
  std::map<u64, u64> out;
  for (const auto& [w, c] : multiplicities(mu)) {
    if (!s1_.contains(w)) throw std::invalid_argument("GlaisherMap::inverse: part " + std::to_string(w) + " not in S1");
    if (c >= k_)
      throw std::invalid_argument("GlaisherMap::inverse: part " + std::to_string(w) + " occurs " + std::to_string(c) +
                                  " times, bound is " + std::to_string(k_ - 1));
    u64 v = w, copies = 1;
    while (in_scaled(s1_, k_, v)) {
      v /= k_;
      copies *= k_;
    }
    out[v] += c * copies;
  }
  return from_multiplicities(out);
}

namespace {

IdentityCheck compare(const std::function<BigInt(std::size_t)>& lhs, const std::function<BigInt(std::size_t)>& rhs,
                      std::size_t length) {
  IdentityCheck out;
  for (std::size_t n = 0; n < length; ++n) {
    ++out.checked;
    if (lhs(n) != rhs(n)) {
      out.first_failure = n;
      break;
    }
  }
  return out;
}

bool has_even_element(const ResidueSet& s) {
  const u64 period = s.period();
  for (u64 n = 2; n <= 2 * period; n += 2)
    if (s.contains(n)) return true;
  return false;
}

}  // namespace

IdentityCheck check_reversal(const ResidueSet& s1, const ResidueSet& s2, u64 limit) {
  const std::size_t length = limit + 1;
  const auto lhs = partition_series(s2, PartitionMode::distinct().with_sign(), length, CoefficientRing::exact());
  const auto rhs = partition_series(s1, PartitionMode::unbounded().with_sign(), length, CoefficientRing::exact());
  return compare([&](std::size_t n) { return lhs.value(n); }, [&](std::size_t n) { return rhs.value(n); }, length);
}

IdentityCheck check_odd_reversal(const ResidueSet& s1, const ResidueSet& s2, u64 limit) {
  if (has_even_element(s2)) throw std::invalid_argument("check_odd_reversal: S2 contains an even element");
  const std::size_t length = limit + 1;
  const auto q = partition_series(s2, PartitionMode::distinct(), length, CoefficientRing::exact());
  const auto rhs = partition_series(s1, PartitionMode::unbounded().with_sign(), length, CoefficientRing::exact());
  return compare([&](std::size_t n) { return n % 2 ? BigInt(-q.value(n)) : q.value(n); },
                 [&](std::size_t n) { return rhs.value(n); }, length);
}

WeightedIdentities weighted_identities(const ResidueSet& s1, const ResidueSet& s2, u64 limit) {
  WeightedIdentities out;
  out.reversal = check_reversal(s1, s2, limit);
  try {
    out.odd_reversal = check_odd_reversal(s1, s2, limit);
  } catch (const std::invalid_argument& e) {
    out.rejection = e.what();
  }
  return out;
}

bool in_involution_domain(const Partition& lambda, const ResidueSet& s1) {
  for (u64 v : lambda.parts)
    if (!s1.contains(v)) return false;
  return lambda.has_repeated_part() || lambda.ell2(s1) > 0;
}

Partition gupta_involution(const Partition& lambda, const ResidueSet& s1) {
  if (!in_involution_domain(lambda, s1))
    throw std::domain_error("gupta_involution: fixed-point domain violation for " + lambda.to_string());
  u64 r = 0, e = 0;
  for (std::size_t i = 0; i + 1 < lambda.parts.size(); ++i)
    if (lambda.parts[i] == lambda.parts[i + 1]) {
      r = lambda.parts[i];
      break;
    }
  for (u64 v : lambda.parts)
    if (in_scaled(s1, 2, v)) {
      e = v;
      break;
    }
  std::vector<u64> parts = lambda.parts;
  if (2 * r > e) {
    auto it = std::find(parts.begin(), parts.end(), r);
    parts.erase(it, it + 2);
    parts.push_back(2 * r);
  } else {
    if (e % 2 != 0) throw std::logic_error("gupta_involution: part from 2 S1 is odd");
    parts.erase(std::find(parts.begin(), parts.end(), e));
    parts.push_back(e / 2);
    parts.push_back(e / 2);
  }
  return Partition(std::move(parts));
}

IdentityCheck check_bounded_vs_odd_distinct(unsigned r, u64 limit) {
  if (r % 2 == 0) throw std::invalid_argument("check_bounded_vs_odd_distinct: r must be odd");
  if (r < 3) throw std::invalid_argument("check_bounded_vs_odd_distinct: r must be at least 3");
  const std::size_t length = limit + 1;
  const auto lhs = partition_series(ResidueSet::all(), PartitionMode::bounded(r), length, CoefficientRing::gf2());
  const auto rhs = partition_series(ResidueSet::odd().without_multiples_of(r), PartitionMode::distinct(), length,
                                    CoefficientRing::gf2());
  return compare([&](std::size_t n) { return BigInt(lhs.parity(n)); },
                 [&](std::size_t n) { return BigInt(rhs.parity(n)); }, length);
}

IdentityCheck check_overpartition_congruence(const ResidueSet& s1, unsigned r, u64 limit) {
  if (r < 2) throw std::invalid_argument("check_overpartition_congruence: r must be at least 2");
  const u64 period = s1.period();
  for (u64 x = 1; x <= period; ++x)
    if (s1.contains(x) && !s1.contains(r * x))
      throw std::invalid_argument("check_overpartition_congruence: r S1 is not contained in S1");
  const std::size_t length = limit + 1;
  const auto lhs = partition_series(s1, PartitionMode::bounded(r), length, CoefficientRing::gf2());
  const auto rhs = overpartition_series(s1, s1.scaled(r), length, CoefficientRing::gf2());
  return compare([&](std::size_t n) { return BigInt(lhs.parity(n)); },
                 [&](std::size_t n) { return BigInt(rhs.parity(n)); }, length);
}

u64 count_overpartitions(u64 n, const ResidueSet& s1, const ResidueSet& overlinable) {
  u64 total = 0;
  for (const Partition& p : enumerate_partitions(n, s1)) {
    u64 weight = 1;
    for (std::size_t i = 0; i < p.parts.size(); ++i)
      if ((i == 0 || p.parts[i] != p.parts[i - 1]) && overlinable.contains(p.parts[i])) weight *= 2;
    total += weight;
  }
  return total;
}

}  // namespace regpart
