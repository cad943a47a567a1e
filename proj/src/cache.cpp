#include "m0n/cache.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "m0n/error.hpp"

namespace m0n {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void bad_cache(const std::string& what) { throw Error(ErrorCode::CacheFormat, what); }

}  // namespace

std::string serialize_cache(const CacheFile& cache) {
  ordered_json products = ordered_json::array();
  for (const auto& [key, value] : cache.top_products) {
    ordered_json literals = ordered_json::array();
    for (const auto& s : key) literals.push_back(to_literal(s));
    products.push_back(ordered_json{{"key", literals}, {"value", to_string(value)}});
  }
  const ordered_json doc{{"version", cache.version}, {"n", cache.n}, {"top_products", products}};
  return doc.dump(2) + "\n";
}

CacheFile parse_cache(const std::string& text) {
  CacheFile cache;
  try {
    const auto doc = ordered_json::parse(text);
    cache.version = doc.at("version").get<int>();
    if (cache.version != CacheFile::kVersion) bad_cache("unsupported cache version " + std::to_string(cache.version));
    cache.n = doc.at("n").get<int>();
    require_supported_n(cache.n);
    for (const auto& entry : doc.at("top_products")) {
      std::vector<BoundaryPartition> key;
      for (const auto& literal : entry.at("key")) {
        const std::string text_literal = literal.get<std::string>();
        BoundaryPartition s = parse_partition(cache.n, text_literal);
        if (to_literal(s) != text_literal) bad_cache("key literal '" + text_literal + "' is not canonical");
        key.push_back(s);
      }
      if (static_cast<int>(key.size()) != cache.n - 3) bad_cache("key has the wrong number of divisors");
      if (!std::is_sorted(key.begin(), key.end())) bad_cache("key is not sorted");
      const std::string value_text = entry.at("value").get<std::string>();
      Rational value = parse_rational(value_text);
      if (to_string(value) != value_text) bad_cache("value '" + value_text + "' is not in lowest terms");
      if (!cache.top_products.empty() && !(cache.top_products.back().first < key)) {
        bad_cache("entries are not sorted by key");
      }
      cache.top_products.emplace_back(std::move(key), std::move(value));
    }
  } catch (const nlohmann::json::exception& ex) {
    bad_cache(std::string("malformed cache JSON: ") + ex.what());
  } catch (const Error& ex) {
    if (ex.code() == ErrorCode::CacheFormat) throw;
    bad_cache(ex.what());
  }
  return cache;
}

CacheFile read_cache_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad_cache("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_cache(buffer.str());
}

void write_cache_file(const std::filesystem::path& path, const CacheFile& cache) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) bad_cache("cannot write " + tmp.string());
    out << serialize_cache(cache);
  }
  std::filesystem::rename(tmp, path);
}

CacheFile export_memo(const MemoStore& memo, int n) {
  CacheFile cache;
  cache.n = n;
  cache.top_products = memo.products(n);
  return cache;
}

void import_into_memo(MemoStore& memo, const CacheFile& cache) {
  for (const auto& [key, value] : cache.top_products) memo.insert_product(key, value);
}

std::optional<std::filesystem::path> default_cache_dir() {
  const char* dir = std::getenv("M0N_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  return std::filesystem::path(dir);
}

std::filesystem::path cache_path(const std::filesystem::path& dir, int n) {
  return dir / ("m0n-n" + std::to_string(n) + ".json");
}

bool load_cache_dir(MemoStore& memo, const std::filesystem::path& dir, int n) {
  const auto path = cache_path(dir, n);
  if (!std::filesystem::exists(path)) return false;
  import_into_memo(memo, read_cache_file(path));
  return true;
}

void save_cache_dir(const MemoStore& memo, const std::filesystem::path& dir, int n) {
  write_cache_file(cache_path(dir, n), export_memo(memo, n));
}

}  // namespace m0n
