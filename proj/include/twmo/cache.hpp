#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>

#include "twmo/arith.hpp"
#include "twmo/forms.hpp"

namespace twmo::cache {

inline constexpr std::uint32_t kVersion = 1;
inline constexpr std::size_t kHeaderSize = 32;

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::span<const unsigned char> bytes,
                    std::uint64_t seed = 0xcbf29ce484222325ull);

/// Identity of a form: label, weight, level and curve model.
std::uint64_t form_hash(const forms::Newform& form);

struct Header {
  std::uint32_t version = kVersion;
  std::uint64_t label_hash = 0;
  std::uint64_t length = 0;
  std::uint32_t weight = 0;
  std::uint32_t level = 0;
};

/// "TWMO", version, label hash, M, weight, level; then M little-endian doubles λ(1..M);
/// then the FNV-1a checksum of everything before it.
void write_table(const std::filesystem::path& path, const forms::CoefficientTable& table);

/// Reads and verifies a whole cache file. Throws ResourceError on a missing, truncated or
/// corrupted file; nothing is returned unless the checksum matches.
forms::CoefficientTable read_table(const std::filesystem::path& path, const forms::Newform& form,
                                   bool check_identity = true);

/// Header only (still verifies the checksum).
Header read_header(const std::filesystem::path& path);

/// --cache flag, else TWMO_CACHE_DIR, else ".twmo-cache".
std::filesystem::path resolve_dir(const std::optional<std::string>& flag);

std::filesystem::path table_path(const std::filesystem::path& dir, const forms::Newform& form);

struct Loaded {
  forms::CoefficientTable table;
  bool cache_hit = false;
};

/// λ(1..M) from the cache when a file with at least M entries exists, else built and stored.
/// An unreadable file is rebuilt. Imported forms must already be in the cache.
Loaded load_or_build(const forms::Newform& form, std::size_t M, const std::filesystem::path& dir,
                     const arith::SieveTables& sieve);

}  // namespace twmo::cache
