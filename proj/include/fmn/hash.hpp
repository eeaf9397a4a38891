#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace fmn {

/// FNV-1a 64-bit content hash. Used for manifest bookkeeping and run logs,
/// where we only need a stable, dependency-free fingerprint.
inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Hash rendered as fixed-width lowercase hex.
std::string fnv1a64_hex(std::string_view data);

/// Hash of a whole file's bytes; throws ParseError if unreadable.
std::string hash_file_hex(const std::string& path);

}  // namespace fmn
