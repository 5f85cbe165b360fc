#pragma once

// Mutable working storage used while a CoefficientSeries is being built.
// Not installed; only series.cpp and series_cache.cpp include it.

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <type_traits>

#include "regpart/series.hpp"

namespace regpart::detail {

inline u64 bit_window(const u64* words, i64 pos) {
  if (pos >= 0) {
    const u64 q = static_cast<u64>(pos) >> 6;
    const unsigned r = static_cast<unsigned>(pos & 63);
    if (r == 0) return words[q];
    return (words[q] >> r) | (words[q + 1] << (64 - r));
  }
  if (pos <= -64) return 0;
  return words[0] << static_cast<unsigned>(-pos);
}

/// Low 64 bits of a * b as polynomials over GF(2).
inline u64 clmul_low(u64 a, u64 b) {
  u64 r = 0;
  while (b) {
    r ^= a << std::countr_zero(b);
    b &= b - 1;
  }
  return r;
}

inline u64 tail_mask(std::size_t length) {
  const unsigned used = static_cast<unsigned>(length & 63);
  return used == 0 ? ~0ull : (1ull << used) - 1;
}

inline void gf2_multiply(std::vector<u64>& words, const SparsePoly& poly) {
  for (std::size_t w = words.size(); w-- > 0;) {
    const i64 n0 = static_cast<i64>(w) * 64;
    u64 acc = words[w];
    for (const auto& t : poly) {
      if (static_cast<i64>(t.offset) > n0 + 63) break;
      if (t.coeff & 1) acc ^= bit_window(words.data(), n0 - static_cast<i64>(t.offset));
    }
    words[w] = acc;
  }
}

inline void gf2_divide(std::vector<u64>& words, const SparsePoly& poly) {
  std::vector<u64> small, large;
  for (const auto& t : poly) {
    if (!(t.coeff & 1)) continue;
    (t.offset < 64 ? small : large).push_back(t.offset);
  }
  // inverse of 1 + sum_{small} x^off modulo x^64
  u64 inverse = 1;
  for (unsigned i = 1; i < 64; ++i) {
    u64 bit = 0;
    for (u64 off : small)
      if (off <= i) bit ^= (inverse >> (i - off)) & 1;
    inverse |= bit << i;
  }
  for (std::size_t w = 0; w < words.size(); ++w) {
    const i64 n0 = static_cast<i64>(w) * 64;
    u64 acc = words[w];
    for (u64 off : large) {
      if (static_cast<i64>(off) > n0 + 63) break;
      acc ^= bit_window(words.data(), n0 - static_cast<i64>(off));
    }
    if (w > 0) {
      const u64 prev = words[w - 1];
      for (u64 off : small) acc ^= prev >> (64 - off);
    }
    words[w] = clmul_low(acc, inverse);
  }
}

template <class T>
void dense_multiply(std::vector<T>& c, const SparsePoly& poly) {
  const std::size_t length = c.size();
  if constexpr (std::is_arithmetic_v<T>) {
    const std::vector<T> old = c;
    for (const auto& t : poly) {
      if (t.offset >= length) break;
      const std::size_t off = t.offset;
      T* __restrict dst = c.data();
      const T* __restrict src = old.data();
      if (t.coeff == 1) {
        for (std::size_t n = off; n < length; ++n) dst[n] += src[n - off];
      } else if (t.coeff == -1) {
        for (std::size_t n = off; n < length; ++n) dst[n] -= src[n - off];
      } else {
        const T k = static_cast<T>(t.coeff);
        for (std::size_t n = off; n < length; ++n) dst[n] += k * src[n - off];
      }
    }
  } else {
    for (std::size_t n = length; n-- > 1;) {
      for (const auto& t : poly) {
        if (t.offset > n) break;
        c[n] += t.coeff * c[n - t.offset];
      }
    }
  }
}

template <class T>
void dense_divide(std::vector<T>& c, const SparsePoly& poly) {
  constexpr std::size_t kBlock = 2048;
  const std::size_t length = c.size();
  auto first_large = std::find_if(poly.begin(), poly.end(), [](const SparseTerm& t) { return t.offset >= kBlock; });
  for (std::size_t b = 0; b < length; b += kBlock) {
    const std::size_t e = std::min(b + kBlock, length);
    // sources of offsets >= kBlock lie strictly before this block
    for (auto it = first_large; it != poly.end() && it->offset < e; ++it) {
      const std::size_t off = it->offset;
      const std::size_t start = std::max(b, off);
      T* dst = c.data();
      if (it->coeff == 1) {
        for (std::size_t n = start; n < e; ++n) dst[n] -= dst[n - off];
      } else if (it->coeff == -1) {
        for (std::size_t n = start; n < e; ++n) dst[n] += dst[n - off];
      } else {
        for (std::size_t n = start; n < e; ++n) dst[n] -= static_cast<T>(it->coeff) * dst[n - off];
      }
    }
    for (std::size_t n = std::max<std::size_t>(b, 1); n < e; ++n) {
      for (auto it = poly.begin(); it != first_large && it->offset <= n; ++it) {
        if (it->coeff == 1)
          c[n] -= c[n - it->offset];
        else if (it->coeff == -1)
          c[n] += c[n - it->offset];
        else
          c[n] -= static_cast<T>(it->coeff) * c[n - it->offset];
      }
    }
  }
}

inline u64 low64(const BigInt& x) {
  static const BigInt modulus = BigInt(1) << 64;
  BigInt r = x % modulus;
  if (r < 0) r += modulus;
  return r.convert_to<u64>();
}

class SeriesBuffer {
 public:
  /// The constant series 1.
  SeriesBuffer(const CoefficientRing& ring, std::size_t length) : ring_(ring), length_(length) {
    if (length == 0) throw std::invalid_argument("series truncation must be at least 1");
    switch (ring.kind()) {
      case CoefficientRing::Kind::GF2: {
        BitStore s;
        s.words.assign((length + 63) / 64, 0);
        s.words[0] = 1;
        storage_ = std::move(s);
        break;
      }
      case CoefficientRing::Kind::ModPow2:
        if (ring.bits() <= 8)
          storage_ = unit<std::uint8_t>();
        else
          storage_ = unit<u64>();
        break;
      case CoefficientRing::Kind::Exact:
        storage_ = unit<BigInt>();
        break;
    }
  }

  explicit SeriesBuffer(const CoefficientSeries& s) : ring_(s.ring_), length_(s.length_), storage_(s.storage_) {}

  const CoefficientRing& ring() const { return ring_; }
  std::size_t length() const { return length_; }
  Storage& storage() { return storage_; }

  void multiply(const SparsePoly& poly) {
    std::visit(
        [&](auto& s) {
          if constexpr (std::is_same_v<std::decay_t<decltype(s)>, BitStore>)
            gf2_multiply(s.words, poly);
          else
            dense_multiply(s.c, poly);
        },
        storage_);
  }

  void divide(const SparsePoly& poly) {
    std::visit(
        [&](auto& s) {
          if constexpr (std::is_same_v<std::decay_t<decltype(s)>, BitStore>)
            gf2_divide(s.words, poly);
          else
            dense_divide(s.c, poly);
        },
        storage_);
  }

  /// this += sign * other (same ring and length, dense storage only).
  void accumulate(const SeriesBuffer& other, int sign) {
    if (other.ring_ != ring_ || other.length_ != length_) throw std::logic_error("accumulate: mismatched series");
    std::visit(
        [&](auto& s) {
          using S = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<S, BitStore>) {
            const auto& o = std::get<BitStore>(other.storage_);
            for (std::size_t i = 0; i < s.words.size(); ++i) s.words[i] ^= o.words[i];
          } else {
            const auto& o = std::get<S>(other.storage_);
            for (std::size_t i = 0; i < s.c.size(); ++i) {
              if (sign > 0)
                s.c[i] += o.c[i];
              else
                s.c[i] -= o.c[i];
            }
          }
        },
        storage_);
  }

  /// Exact halving: every coefficient must be even in the current ring. The
  /// result lives one bit lower (ModPow2(k) -> ModPow2(k-1), ModPow2(2) -> GF2).
  SeriesBuffer halved() const {
    if (ring_.kind() == CoefficientRing::Kind::Exact) {
      SeriesBuffer out(ring_, length_);
      auto& dst = std::get<DenseStore<BigInt>>(out.storage_).c;
      const auto& src = std::get<DenseStore<BigInt>>(storage_).c;
      for (std::size_t i = 0; i < length_; ++i) {
        if (src[i] % 2 != 0) throw std::logic_error("halved: odd coefficient");
        dst[i] = src[i] / 2;
      }
      return out;
    }
    if (ring_.kind() != CoefficientRing::Kind::ModPow2 || ring_.bits() < 2)
      throw std::logic_error("halved: needs Exact or ModPow2(k >= 2)");
    const unsigned k = ring_.bits() - 1;
    const CoefficientRing target = k == 1 ? CoefficientRing::gf2() : CoefficientRing::mod_pow2(k);
    std::vector<u64> residues(length_);
    for (std::size_t i = 0; i < length_; ++i) {
      const u64 v = residue_at(i);
      if (v & 1) throw std::logic_error("halved: odd coefficient");
      residues[i] = v >> 1;
    }
    return SeriesBuffer(CoefficientSeries::from_residues(target, residues));
  }

  /// Reduce into the ring representation and freeze.
  CoefficientSeries finish() && {
    mask();
    return CoefficientSeries(ring_, length_, std::move(storage_));
  }

  u64 residue_at(std::size_t i) const {
    return std::visit(
        [&](const auto& s) -> u64 {
          using S = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<S, BitStore>)
            return (s.words[i >> 6] >> (i & 63)) & 1;
          else if constexpr (std::is_same_v<S, DenseStore<BigInt>>)
            return low64(s.c[i]);
          else
            return static_cast<u64>(s.c[i]) & ring_mask();
        },
        storage_);
  }

 private:
  template <class T>
  DenseStore<T> unit() const {
    DenseStore<T> s;
    s.c.assign(length_, T(0));
    s.c[0] = T(1);
    return s;
  }

  u64 ring_mask() const {
    if (ring_.kind() == CoefficientRing::Kind::GF2) return 1;
    return ring_.bits() >= 64 ? ~0ull : (1ull << ring_.bits()) - 1;
  }

  void mask() {
    std::visit(
        [&](auto& s) {
          using S = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<S, BitStore>) {
            s.words.back() &= tail_mask(length_);
          } else if constexpr (!std::is_same_v<S, DenseStore<BigInt>>) {
            using T = typename decltype(s.c)::value_type;
            const T m = static_cast<T>(ring_mask());
            for (auto& v : s.c) v &= m;
          }
        },
        storage_);
  }

  CoefficientRing ring_;
  std::size_t length_;
  Storage storage_;
};

}  // namespace regpart::detail
