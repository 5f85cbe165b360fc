#include "regpart/series.hpp"

#include <numeric>
#include <stdexcept>

#include "series_buffer.hpp"

namespace regpart {

using detail::BitStore;
using detail::DenseStore;
using detail::SeriesBuffer;

// ---------------------------------------------------------------- rings

CoefficientRing CoefficientRing::mod_pow2(unsigned k) {
  if (k < 1 || k > 64) throw std::invalid_argument("ModPow2 exponent must lie in 1..64");
  if (k == 1) return gf2();
  return CoefficientRing(Kind::ModPow2, k);
}

std::string CoefficientRing::name() const {
  switch (kind_) {
    case Kind::GF2: return "GF2";
    case Kind::ModPow2: return "Z/2^" + std::to_string(bits_);
    case Kind::Exact: return "Z";
  }
  return "?";
}

// ---------------------------------------------------------------- eta exponents

EtaExponents::EtaExponents(u64 level) : level_(level) {
  if (level == 0) throw std::invalid_argument("EtaExponents: level must be positive");
}

EtaExponents::EtaExponents(u64 level, const std::map<u64, int>& exponents) : EtaExponents(level) {
  for (const auto& [d, e] : exponents) set(d, e);
}

EtaExponents EtaExponents::from_map(const std::map<u64, int>& exponents) {
  u64 level = 1;
  for (const auto& [d, e] : exponents) {
    if (d == 0) throw std::invalid_argument("EtaExponents: divisor must be positive");
    level = std::lcm(level, d);
  }
  return EtaExponents(level, exponents);
}

void EtaExponents::set(u64 divisor, int exponent) {
  if (divisor == 0 || level_ % divisor != 0)
    throw std::invalid_argument("EtaExponents: " + std::to_string(divisor) + " does not divide level " +
                                std::to_string(level_));
  exponents_[divisor] = exponent;
}

int EtaExponents::at(u64 divisor) const {
  auto it = exponents_.find(divisor);
  return it == exponents_.end() ? 0 : it->second;
}

i64 EtaExponents::exponent_sum() const {
  i64 s = 0;
  for (const auto& [d, e] : exponents_) s += e;
  return s;
}

i64 EtaExponents::weighted_sum() const {
  i64 s = 0;
  for (const auto& [d, e] : exponents_) s += static_cast<i64>(d) * e;
  return s;
}

SparsePoly pentagonal_factor(u64 step, std::size_t length) {
  SparsePoly poly;
  for (u64 k = 1;; ++k) {
    const u64 g1 = k * (3 * k - 1) / 2;
    const u64 g2 = k * (3 * k + 1) / 2;
    const int sign = (k & 1) ? -1 : 1;
    if (g1 * step >= length) break;
    poly.push_back({g1 * step, sign});
    if (g2 * step < length) poly.push_back({g2 * step, sign});
  }
  return poly;
}

// ---------------------------------------------------------------- series

namespace {

template <class F>
decltype(auto) visit_store(const detail::Storage& s, F&& f) {
  return std::visit(std::forward<F>(f), s);
}

void check_index(std::size_t n, std::size_t length) {
  if (n >= length)
    throw std::out_of_range("series index " + std::to_string(n) + " beyond truncation " + std::to_string(length));
}

}  // namespace

bool CoefficientSeries::parity(std::size_t n) const {
  check_index(n, length_);
  return visit_store(storage_, [&](const auto& s) -> bool {
    using S = std::decay_t<decltype(s)>;
    if constexpr (std::is_same_v<S, BitStore>)
      return (s.words[n >> 6] >> (n & 63)) & 1;
    else if constexpr (std::is_same_v<S, DenseStore<BigInt>>)
      return boost::multiprecision::bit_test(boost::multiprecision::abs(s.c[n]), 0);
    else
      return s.c[n] & 1;
  });
}

u64 CoefficientSeries::residue(std::size_t n) const {
  check_index(n, length_);
  if (!ring_.is_modular()) throw std::logic_error("residue: Exact series has no fixed modulus");
  return visit_store(storage_, [&](const auto& s) -> u64 {
    using S = std::decay_t<decltype(s)>;
    if constexpr (std::is_same_v<S, BitStore>)
      return (s.words[n >> 6] >> (n & 63)) & 1;
    else if constexpr (std::is_same_v<S, DenseStore<BigInt>>)
      return detail::low64(s.c[n]);
    else
      return static_cast<u64>(s.c[n]);
  });
}

BigInt CoefficientSeries::value(std::size_t n) const {
  check_index(n, length_);
  return visit_store(storage_, [&](const auto& s) -> BigInt {
    using S = std::decay_t<decltype(s)>;
    if constexpr (std::is_same_v<S, BitStore>)
      return BigInt((s.words[n >> 6] >> (n & 63)) & 1);
    else
      return BigInt(s.c[n]);
  });
}

std::vector<BigInt> CoefficientSeries::values() const {
  std::vector<BigInt> out;
  out.reserve(length_);
  for (std::size_t i = 0; i < length_; ++i) out.push_back(value(i));
  return out;
}

CoefficientSeries CoefficientSeries::reduced(const CoefficientRing& target) const {
  if (target == ring_) return *this;
  const bool coarser = target.kind() == CoefficientRing::Kind::GF2 ||
                       (target.kind() == CoefficientRing::Kind::ModPow2 &&
                        (ring_.kind() == CoefficientRing::Kind::Exact ||
                         (ring_.kind() == CoefficientRing::Kind::ModPow2 && target.bits() <= ring_.bits())));
  if (!coarser) throw std::invalid_argument("reduced: " + target.name() + " is not a quotient of " + ring_.name());
  if (target.kind() == CoefficientRing::Kind::GF2) {
    std::vector<u64> words((length_ + 63) / 64, 0);
    for (std::size_t i = 0; i < length_; ++i)
      if (parity(i)) words[i >> 6] |= 1ull << (i & 63);
    return from_gf2_words(length_, std::move(words));
  }
  SeriesBuffer src(*this);
  std::vector<u64> residues(length_);
  for (std::size_t i = 0; i < length_; ++i) residues[i] = src.residue_at(i);
  return from_residues(target, residues);
}

CoefficientSeries CoefficientSeries::truncated(std::size_t length) const {
  if (length == 0 || length > length_) throw std::invalid_argument("truncated: invalid length");
  return visit_store(storage_, [&](const auto& s) -> CoefficientSeries {
    using S = std::decay_t<decltype(s)>;
    if constexpr (std::is_same_v<S, BitStore>) {
      std::vector<u64> words(s.words.begin(), s.words.begin() + (length + 63) / 64);
      return from_gf2_words(length, std::move(words));
    } else {
      S cut;
      cut.c.assign(s.c.begin(), s.c.begin() + length);
      return CoefficientSeries(ring_, length, std::move(cut));
    }
  });
}

std::span<const u64> CoefficientSeries::gf2_words() const {
  const auto* s = std::get_if<BitStore>(&storage_);
  if (!s) throw std::logic_error("gf2_words: series is not over GF2");
  return s->words;
}

CoefficientSeries CoefficientSeries::from_gf2_words(std::size_t length, std::vector<u64> words) {
  if (length == 0 || words.size() != (length + 63) / 64) throw std::invalid_argument("from_gf2_words: size mismatch");
  words.back() &= detail::tail_mask(length);
  return CoefficientSeries(CoefficientRing::gf2(), length, BitStore{std::move(words)});
}

CoefficientSeries CoefficientSeries::from_residues(const CoefficientRing& ring, std::span<const u64> residues) {
  const std::size_t length = residues.size();
  if (length == 0) throw std::invalid_argument("from_residues: empty series");
  if (ring.kind() == CoefficientRing::Kind::GF2) {
    std::vector<u64> words((length + 63) / 64, 0);
    for (std::size_t i = 0; i < length; ++i)
      if (residues[i] & 1) words[i >> 6] |= 1ull << (i & 63);
    return from_gf2_words(length, std::move(words));
  }
  if (ring.kind() == CoefficientRing::Kind::Exact) {
    DenseStore<BigInt> s;
    s.c.assign(residues.begin(), residues.end());
    return CoefficientSeries(ring, length, std::move(s));
  }
  const u64 mask = ring.bits() >= 64 ? ~0ull : (1ull << ring.bits()) - 1;
  if (ring.bits() <= 8) {
    DenseStore<std::uint8_t> s;
    s.c.resize(length);
    for (std::size_t i = 0; i < length; ++i) s.c[i] = static_cast<std::uint8_t>(residues[i] & mask);
    return CoefficientSeries(ring, length, std::move(s));
  }
  DenseStore<u64> s;
  s.c.resize(length);
  for (std::size_t i = 0; i < length; ++i) s.c[i] = residues[i] & mask;
  return CoefficientSeries(ring, length, std::move(s));
}

CoefficientSeries CoefficientSeries::from_values(const CoefficientRing& ring, const std::vector<BigInt>& values) {
  if (values.empty()) throw std::invalid_argument("from_values: empty series");
  if (ring.kind() == CoefficientRing::Kind::Exact) {
    DenseStore<BigInt> s;
    s.c = values;
    return CoefficientSeries(ring, values.size(), std::move(s));
  }
  std::vector<u64> residues(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) residues[i] = detail::low64(values[i]);
  return from_residues(ring, residues);
}

bool CoefficientSeries::operator==(const CoefficientSeries& other) const {
  return ring_ == other.ring_ && length_ == other.length_ && storage_ == other.storage_;
}

// ---------------------------------------------------------------- builders

namespace {

void apply_eta(SeriesBuffer& buf, const EtaExponents& r) {
  const std::size_t length = buf.length();
  const bool gf2 = buf.ring().kind() == CoefficientRing::Kind::GF2;
  for (const auto& [delta, e] : r.entries()) {
    if (e == 0) continue;
    const unsigned count = static_cast<unsigned>(e < 0 ? -e : e);
    if (gf2) {
      // (q^d;q^d)^2 = (q^2d;q^2d) over GF(2)
      for (unsigned bit = 0; (count >> bit) != 0; ++bit) {
        if (!((count >> bit) & 1)) continue;
        const u64 step = delta << bit;
        if (step >= length) continue;
        const SparsePoly f = pentagonal_factor(step, length);
        if (e > 0)
          buf.multiply(f);
        else
          buf.divide(f);
      }
    } else {
      if (delta >= length) continue;
      const SparsePoly f = pentagonal_factor(delta, length);
      for (unsigned i = 0; i < count; ++i) {
        if (e > 0)
          buf.multiply(f);
        else
          buf.divide(f);
      }
    }
  }
}

SeriesBuffer build_partition_buffer(const ResidueSet& parts, PartitionMode mode, std::size_t length,
                                    const CoefficientRing& ring) {
  if (mode.bound == 1) throw std::invalid_argument("partition bound k must be at least 2");
  SeriesBuffer buf(ring, length);
  // generating function prod_{j in S} (1 - (z q^j)^k) / (1 - z q^j) with z = +-1
  const int z = mode.signed_by_length ? -1 : 1;
  const int zk = (mode.bound % 2 == 1 && z == -1) ? -1 : 1;
  for (u64 j = 1; j < length; ++j) {
    if (!parts.contains(j)) continue;
    if (mode.bound >= 2 && static_cast<u64>(mode.bound) * j < length)
      buf.multiply({{static_cast<u64>(mode.bound) * j, -zk}});
    buf.divide({{j, -z}});
  }
  return buf;
}

CoefficientRing lifted(const CoefficientRing& ring) {
  switch (ring.kind()) {
    case CoefficientRing::Kind::GF2: return CoefficientRing::mod_pow2(2);
    case CoefficientRing::Kind::ModPow2:
      return ring.bits() < 64 ? CoefficientRing::mod_pow2(ring.bits() + 1) : CoefficientRing::exact();
    case CoefficientRing::Kind::Exact: return ring;
  }
  return ring;
}

LengthParityPair split_by_parity(const SeriesBuffer& total, const SeriesBuffer& signed_series,
                                 const CoefficientRing& ring) {
  SeriesBuffer sum = total;
  sum.accumulate(signed_series, +1);
  SeriesBuffer diff = total;
  diff.accumulate(signed_series, -1);
  CoefficientSeries even = std::move(sum).halved().finish();
  CoefficientSeries odd = std::move(diff).halved().finish();
  if (even.ring() != ring) {
    even = even.reduced(ring);
    odd = odd.reduced(ring);
  }

  // even + odd = total and even - odd = signed, in the requested ring
  SeriesBuffer check_sum(even);
  check_sum.accumulate(SeriesBuffer(odd), +1);
  SeriesBuffer check_diff(even);
  check_diff.accumulate(SeriesBuffer(odd), -1);
  const CoefficientSeries total_r = SeriesBuffer(total).finish().reduced(ring);
  const CoefficientSeries signed_r = SeriesBuffer(signed_series).finish().reduced(ring);
  if (!(std::move(check_sum).finish() == total_r) || !(std::move(check_diff).finish() == signed_r))
    throw std::logic_error("length_parity_pair: sum/difference identity failed");
  return {std::move(even), std::move(odd)};
}

}  // namespace

CoefficientSeries eta_quotient_series(const EtaExponents& r, std::size_t length, const CoefficientRing& ring) {
  SeriesBuffer buf(ring, length);
  apply_eta(buf, r);
  return std::move(buf).finish();
}

CoefficientSeries partition_series(const ResidueSet& parts, PartitionMode mode, std::size_t length,
                                   const CoefficientRing& ring) {
  return build_partition_buffer(parts, mode, length, ring).finish();
}

CoefficientSeries overpartition_series(const ResidueSet& parts, const ResidueSet& overlinable, std::size_t length,
                                       const CoefficientRing& ring) {
  SeriesBuffer buf = build_partition_buffer(parts, PartitionMode::unbounded(), length, ring);
  for (u64 i = 1; i < length; ++i)
    if (overlinable.contains(i)) buf.multiply({{i, 1}});
  return std::move(buf).finish();
}

LengthParityPair length_parity_pair(const ResidueSet& parts, unsigned bound, std::size_t length,
                                    const CoefficientRing& ring) {
  const CoefficientRing work = lifted(ring);
  const SeriesBuffer total = build_partition_buffer(parts, {bound, false}, length, work);
  const SeriesBuffer signed_series = build_partition_buffer(parts, {bound, true}, length, work);
  return split_by_parity(total, signed_series, ring);
}

ResidueSet s3_parts() { return ResidueSet::excluding_classes(24, {0, 1, 23, 10, 14, 11, 13, 12}); }

ResidueSet three_regular_parts() { return ResidueSet::all().without_multiples_of(3); }

EtaExponents b3_exponents() { return EtaExponents(3, {{1, -1}, {3, 1}}); }

EtaExponents b_keith_exponents() { return EtaExponents(3, {{1, 4}, {3, -1}}); }

EtaExponents b3_signed_exponents() {
  // prod_{3 not | j} (1 - q^j) / (1 - q^{2j})
  return EtaExponents(6, {{1, 1}, {2, -1}, {3, -1}, {6, 1}});
}

LengthParityPair b3_length_parity(std::size_t length) {
  const CoefficientRing work = CoefficientRing::mod_pow2(3);
  SeriesBuffer total(work, length);
  apply_eta(total, b3_exponents());
  SeriesBuffer signed_series(work, length);
  apply_eta(signed_series, b3_signed_exponents());
  return split_by_parity(total, signed_series, CoefficientRing::mod_pow2(2));
}

std::vector<u32> pentagonal_square_series(std::size_t length) {
  if (length == 0) throw std::invalid_argument("pentagonal_square_series: empty");
  std::vector<u32> counts(length, 0);
  const u64 top = 24 * static_cast<u64>(length - 1) + 1;
  for (u64 y = 0; 24 * y * y <= top; ++y) {
    if (y != 0 && y % 3 == 0) continue;
    const u64 base = 24 * y * y;
    // x^2 = 1 (mod 24) exactly when gcd(x, 6) = 1
    for (u64 x = 1; base + x * x <= top; x += (x % 6 == 1) ? 4 : 2) {
      counts[(base + x * x - 1) / 24] += 1;
    }
  }
  return counts;
}

B3Family b3_family(std::size_t length, const B3FamilyOptions& options) {
  if (length == 0) throw std::invalid_argument("b3_family: truncation must be at least 1");
  CoefficientSeries b3 = eta_quotient_series(b3_exponents(), length, options.b3_ring);
  CoefficientSeries bk = eta_quotient_series(b_keith_exponents(), length, CoefficientRing::gf2());
  LengthParityPair parity = b3_length_parity(length);

  S3CheckResult s3;
  const std::size_t n_check = std::min(length, options.s3_check_limit);
  if (n_check > 0) {
    const CoefficientSeries ps3 =
        partition_series(s3_parts(), PartitionMode::unbounded(), n_check, CoefficientRing::mod_pow2(2));
    s3.checked = n_check;
    for (std::size_t i = 0; i < n_check; ++i) {
      if (ps3.residue(i) != parity.even.residue(i)) {
        s3.first_mismatch = i;
        break;
      }
    }
  }
  return B3Family{std::move(b3), std::move(bk), std::move(parity.even), std::move(parity.odd),
                  pentagonal_square_series(length), s3};
}

std::vector<std::uint8_t> series_parity_at(const CoefficientSeries& series, std::span<const u64> indices) {
  std::vector<std::uint8_t> out;
  out.reserve(indices.size());
  for (u64 i : indices) out.push_back(series.parity(i) ? 1 : 0);
  return out;
}

}  // namespace regpart
