#include "regpart/series_cache.hpp"

#include <array>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <regex>
#include <vector>

#include <boost/crc.hpp>

namespace regpart {

namespace {

constexpr std::array<char, 4> kMagic{'B', '3', 'P', '1'};
constexpr std::uint8_t kVersion = 0x01;
constexpr std::uint8_t kTagGF2 = 0;
constexpr std::uint8_t kTagModPow2 = 1;
constexpr std::uint8_t kTagExact = 2;

void put_u64(std::vector<std::uint8_t>& out, u64 v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

u64 get_u64(const std::uint8_t* p) {
  u64 v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<u64>(p[i]) << (8 * i);
  return v;
}

std::vector<std::uint8_t> pack(const CoefficientSeries& s, unsigned bits) {
  const std::size_t length = s.size();
  std::vector<std::uint8_t> out((length * bits + 7) / 8, 0);
  if (bits == 1 && s.ring().kind() == CoefficientRing::Kind::GF2) {
    const auto words = s.gf2_words();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<std::uint8_t>(words[i / 8] >> (8 * (i % 8)));
    return out;
  }
  std::size_t bitpos = 0;
  for (std::size_t n = 0; n < length; ++n) {
    const u64 v = s.residue(n);
    for (unsigned b = 0; b < bits; ++b, ++bitpos)
      if ((v >> b) & 1) out[bitpos >> 3] |= static_cast<std::uint8_t>(1u << (bitpos & 7));
  }
  return out;
}

CoefficientSeries unpack(const CoefficientRing& ring, std::size_t length, const std::uint8_t* data) {
  if (ring.kind() == CoefficientRing::Kind::GF2) {
    std::vector<u64> words((length + 63) / 64, 0);
    const std::size_t nbytes = (length + 7) / 8;
    for (std::size_t i = 0; i < nbytes; ++i) words[i / 8] |= static_cast<u64>(data[i]) << (8 * (i % 8));
    return CoefficientSeries::from_gf2_words(length, std::move(words));
  }
  const unsigned bits = ring.bits();
  std::vector<u64> residues(length, 0);
  std::size_t bitpos = 0;
  for (std::size_t n = 0; n < length; ++n)
    for (unsigned b = 0; b < bits; ++b, ++bitpos)
      if ((data[bitpos >> 3] >> (bitpos & 7)) & 1) residues[n] |= 1ull << b;
  return CoefficientSeries::from_residues(ring, residues);
}

std::string ring_label(const CoefficientRing& ring) {
  return ring.kind() == CoefficientRing::Kind::GF2 ? "gf2" : "z2e" + std::to_string(ring.bits());
}

}  // namespace

u64 crc64(const void* data, std::size_t size) {
  boost::crc_optimal<64, 0x42F0E1EBA9EA3693ull, ~0ull, ~0ull, true, true> crc;
  crc.process_bytes(data, size);
  return crc.checksum();
}

void save_series(const std::filesystem::path& path, const CoefficientSeries& series) {
  const CoefficientRing& ring = series.ring();
  if (ring.kind() == CoefficientRing::Kind::Exact) throw CacheError("Exact series are not cacheable");
  std::vector<std::uint8_t> header(kMagic.begin(), kMagic.end());
  header.push_back(kVersion);
  unsigned bits = 1;
  if (ring.kind() == CoefficientRing::Kind::GF2) {
    header.push_back(kTagGF2);
  } else {
    header.push_back(kTagModPow2);
    header.push_back(static_cast<std::uint8_t>(ring.bits()));
    bits = ring.bits();
  }
  put_u64(header, series.size());
  const std::vector<std::uint8_t> payload = pack(series, bits);
  std::vector<std::uint8_t> trailer;
  put_u64(trailer, crc64(payload.data(), payload.size()));

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CacheError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(header.data()), static_cast<std::streamsize>(header.size()));
  out.write(reinterpret_cast<const char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
  out.write(reinterpret_cast<const char*>(trailer.data()), static_cast<std::streamsize>(trailer.size()));
  if (!out) throw CacheError("write failed for " + path.string());
}

CoefficientSeries load_series(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CacheError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  if (bytes.size() < 6 || std::memcmp(bytes.data(), kMagic.data(), 4) != 0) throw CacheError("corrupt header: bad magic");
  if (bytes[4] != kVersion) throw CacheError("version mismatch: file has " + std::to_string(bytes[4]));
  std::size_t pos = 5;
  const std::uint8_t tag = bytes[pos++];
  CoefficientRing ring = CoefficientRing::gf2();
  unsigned bits = 1;
  if (tag == kTagModPow2) {
    if (pos >= bytes.size()) throw CacheError("corrupt header: missing coefficient width");
    bits = bytes[pos++];
    if (bits < 1 || bits > 64) throw CacheError("corrupt header: coefficient width " + std::to_string(bits));
    ring = CoefficientRing::mod_pow2(bits);
  } else if (tag == kTagExact) {
    throw CacheError("Exact series are not cacheable");
  } else if (tag != kTagGF2) {
    throw CacheError("corrupt header: unknown ring tag " + std::to_string(tag));
  }
  if (bytes.size() < pos + 8) throw CacheError("corrupt header: missing length");
  const u64 length = get_u64(bytes.data() + pos);
  pos += 8;
  if (length == 0) throw CacheError("corrupt header: zero length");
  const u64 payload_size = (length * bits + 7) / 8;
  if (bytes.size() != pos + payload_size + 8) throw CacheError("CRC failure: file size does not match header");
  const u64 stored = get_u64(bytes.data() + pos + payload_size);
  if (crc64(bytes.data() + pos, payload_size) != stored) throw CacheError("CRC failure: payload checksum mismatch");
  return unpack(ring, length, bytes.data() + pos);
}

std::optional<std::filesystem::path> cache_directory() {
  const char* dir = std::getenv("PARTITION_CACHE_DIR");
  if (!dir || !*dir) return std::nullopt;
  return std::filesystem::path(dir);
}

std::optional<CoefficientSeries> cache_lookup(const std::string& kind, const CoefficientRing& ring,
                                              std::size_t length) {
  const auto dir = cache_directory();
  if (!dir || !std::filesystem::is_directory(*dir)) return std::nullopt;
  const std::regex name(kind + "-" + ring_label(ring) + "-([0-9]+)\\.b3p");
  std::optional<std::pair<u64, std::filesystem::path>> best;
  for (const auto& entry : std::filesystem::directory_iterator(*dir)) {
    std::smatch m;
    const std::string file = entry.path().filename().string();
    if (!std::regex_match(file, m, name)) continue;
    const u64 stored = std::stoull(m[1]);
    if (stored < length) continue;
    if (!best || stored < best->first) best = {stored, entry.path()};
  }
  if (!best) return std::nullopt;
  try {
    CoefficientSeries s = load_series(best->second);
    if (s.ring() != ring || s.size() < length) return std::nullopt;
    return s.size() == length ? s : s.truncated(length);
  } catch (const CacheError&) {
    return std::nullopt;
  }
}

void cache_store(const std::string& kind, const CoefficientSeries& series) {
  const auto dir = cache_directory();
  if (!dir) return;
  std::filesystem::create_directories(*dir);
  save_series(*dir / (kind + "-" + ring_label(series.ring()) + "-" + std::to_string(series.size()) + ".b3p"), series);
}

}  // namespace regpart
