#pragma once

// On-disk format for GF2 and Z/2^k series:
//   "B3P1" | version 0x01 | ring tag (0 GF2, 1 ModPow2 followed by k) |
//   length L (u64 LE) | payload | CRC-64/XZ of payload (u64 LE)
// Payload is the coefficient stream packed LSB first, k bits per coefficient.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "regpart/series.hpp"

namespace regpart {

class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// CRC-64/XZ (ECMA-182 polynomial, reflected, init and xorout all ones).
u64 crc64(const void* data, std::size_t size);

/// Throws CacheError("not cacheable") for Exact series or on I/O failure.
void save_series(const std::filesystem::path& path, const CoefficientSeries& series);
/// Throws CacheError on bad magic, version mismatch, truncation or CRC failure.
CoefficientSeries load_series(const std::filesystem::path& path);

/// Directory named by PARTITION_CACHE_DIR, if set and non-empty.
std::optional<std::filesystem::path> cache_directory();

/// Looks for "<kind>-<ring>-<L>.b3p" files in the cache directory with
/// L >= length and returns the series truncated to `length`. Unreadable
/// files are skipped.
std::optional<CoefficientSeries> cache_lookup(const std::string& kind, const CoefficientRing& ring, std::size_t length);
/// Writes the series into the cache directory; no-op if the directory is unset.
void cache_store(const std::string& kind, const CoefficientSeries& series);

}  // namespace regpart
