#include "twmo/cache.hpp"

#include <bit>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

#include "twmo/error.hpp"

namespace twmo::cache {

namespace {

constexpr unsigned char kMagic[4] = {'T', 'W', 'M', 'O'};

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

void put_u64(std::vector<unsigned char>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

std::uint32_t get_u32(const unsigned char* p) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

std::vector<unsigned char> read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot open cache file " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Header parse_verified(const std::vector<unsigned char>& bytes, const std::filesystem::path& path) {
  if (bytes.size() < kHeaderSize + 8 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw ResourceError("not a coefficient cache file: " + path.string());
  }
  Header h;
  h.version = get_u32(bytes.data() + 4);
  h.label_hash = get_u64(bytes.data() + 8);
  h.length = get_u64(bytes.data() + 16);
  h.weight = get_u32(bytes.data() + 24);
  h.level = get_u32(bytes.data() + 28);
  if (h.version != kVersion) {
    throw ResourceError("unsupported cache version " + std::to_string(h.version) + " in " +
                        path.string());
  }
  if (h.length > (bytes.size() - kHeaderSize - 8) / 8 ||
      bytes.size() != kHeaderSize + 8 * h.length + 8) {
    throw ResourceError("truncated cache file " + path.string());
  }
  const std::size_t body = bytes.size() - 8;
  if (fnv1a({bytes.data(), body}) != get_u64(bytes.data() + body)) {
    throw ResourceError("checksum mismatch in cache file " + path.string());
  }
  return h;
}

}  // namespace

std::uint64_t fnv1a(std::span<const unsigned char> bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t form_hash(const forms::Newform& form) {
  std::string key = form.label + "|" + std::to_string(form.weight) + "|" +
                    std::to_string(form.level);
  if (form.curve) {
    const auto& c = *form.curve;
    for (auto a : {c.a1, c.a2, c.a3, c.a4, c.a6}) key += "|" + std::to_string(a);
  }
  return fnv1a({reinterpret_cast<const unsigned char*>(key.data()), key.size()});
}

void write_table(const std::filesystem::path& path, const forms::CoefficientTable& table) {
  const auto& form = table.form();
  std::vector<unsigned char> bytes(kMagic, kMagic + 4);
  put_u32(bytes, kVersion);
  put_u64(bytes, form_hash(form));
  put_u64(bytes, table.length());
  put_u32(bytes, static_cast<std::uint32_t>(form.weight));
  put_u32(bytes, static_cast<std::uint32_t>(form.level));
  for (std::size_t n = 1; n <= table.length(); ++n) put_u64(bytes, std::bit_cast<std::uint64_t>(table[n]));
  put_u64(bytes, fnv1a(bytes));

  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ResourceError("cannot write cache file " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw ResourceError("short write to cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

Header read_header(const std::filesystem::path& path) { return parse_verified(read_all(path), path); }

forms::CoefficientTable read_table(const std::filesystem::path& path, const forms::Newform& form,
                                   bool check_identity) {
  const auto bytes = read_all(path);
  const Header h = parse_verified(bytes, path);
  if (check_identity && (h.label_hash != form_hash(form) ||
                         h.weight != static_cast<std::uint32_t>(form.weight) ||
                         h.level != static_cast<std::uint32_t>(form.level))) {
    throw ResourceError("cache file " + path.string() + " belongs to a different form");
  }
  std::vector<double> values(h.length + 1, 0.0);
  for (std::size_t n = 1; n <= h.length; ++n) {
    values[n] = std::bit_cast<double>(get_u64(bytes.data() + kHeaderSize + 8 * (n - 1)));
  }
  return forms::CoefficientTable(form, std::move(values));
}

std::filesystem::path resolve_dir(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return *flag;
  if (const char* env = std::getenv("TWMO_CACHE_DIR"); env && *env) return env;
  return ".twmo-cache";
}

std::filesystem::path table_path(const std::filesystem::path& dir, const forms::Newform& form) {
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(form_hash(form)));
  return dir / (form.label + "-" + hex + ".twmo");
}

Loaded load_or_build(const forms::Newform& form, std::size_t M, const std::filesystem::path& dir,
                     const arith::SieveTables& sieve) {
  const auto path = table_path(dir, form);
  if (std::filesystem::exists(path)) {
    try {
      auto table = read_table(path, form);
      if (table.length() >= M) return {table.prefix(M), true};
    } catch (const ResourceError&) {
      if (form.kind == forms::FormKind::Imported) throw;
    }
  }
  forms::CoefficientTable table;
  switch (form.kind) {
    case forms::FormKind::Eta24Delta:
      table = forms::delta_coefficients(M);
      break;
    case forms::FormKind::EllipticCurve:
      table = forms::elliptic_coefficients(form, M, sieve);
      break;
    case forms::FormKind::Imported:
      throw ResourceError("imported form " + form.label + " has no cached table of length " +
                          std::to_string(M) + " in " + dir.string());
  }
  write_table(path, table);
  return {std::move(table), false};
}

}  // namespace twmo::cache
