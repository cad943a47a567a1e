#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "m0n/combinatorics.hpp"
#include "m0n/intersect.hpp"
#include "m0n/rational.hpp"

namespace m0n {

/// Persisted top products for one n:
/// {"version":1, "n":6, "top_products":[{"key":["1,2","1,2","3,4"],"value":"-1"}]}
struct CacheFile {
  static constexpr int kVersion = 1;
  int version = kVersion;
  int n = 0;
  /// Keys are sorted canonical partitions; entries are sorted by key.
  std::vector<std::pair<std::vector<BoundaryPartition>, Rational>> top_products;
};

std::string serialize_cache(const CacheFile& cache);
/// Throws CacheFormat on any schema violation (wrong version, non-canonical
/// or unsorted keys, wrong arity, malformed values).
CacheFile parse_cache(const std::string& text);

CacheFile read_cache_file(const std::filesystem::path& path);
void write_cache_file(const std::filesystem::path& path, const CacheFile& cache);

CacheFile export_memo(const MemoStore& memo, int n);
void import_into_memo(MemoStore& memo, const CacheFile& cache);

/// Value of M0N_CACHE_DIR, if set and non-empty.
std::optional<std::filesystem::path> default_cache_dir();
/// <dir>/m0n-n<N>.json
std::filesystem::path cache_path(const std::filesystem::path& dir, int n);

/// Loads <dir>/m0n-n<N>.json into the memo when it exists; returns whether it did.
bool load_cache_dir(MemoStore& memo, const std::filesystem::path& dir, int n);
/// Writes the memo's top products for n to <dir>/m0n-n<N>.json.
void save_cache_dir(const MemoStore& memo, const std::filesystem::path& dir, int n);

}  // namespace m0n
