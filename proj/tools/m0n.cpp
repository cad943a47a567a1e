// Command-line front end. Exit codes: 0 success, 1 usage or input error,
// 2 volume formulas disagree.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "m0n/cache.hpp"
#include "m0n/divisors.hpp"
#include "m0n/error.hpp"
#include "m0n/selfcheck.hpp"
#include "m0n/volume.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace m0n;

namespace {

constexpr int kUsage = 1;
constexpr int kDisagree = 2;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

std::vector<Rational> parse_weights(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_rational(item));
  return out;
}

std::string join_rationals(const std::vector<Rational>& values) {
  std::string out;
  for (const auto& v : values) out += (out.empty() ? "" : ",") + to_string(v);
  return out;
}

std::string wall_literal(MarkedSet side, int n) { return to_literal(side) + "|" + to_literal(side.complement(n)); }

// Memo shared by one invocation, backed by the cache directory when one is set.
class CachedEngine {
 public:
  explicit CachedEngine(std::optional<fs::path> dir, bool use_memo = true) : dir_(std::move(dir)) {
    EngineOptions options;
    options.use_memo = use_memo;
    engine_ = std::make_unique<IntersectionEngine>(options);
    if (!use_memo) dir_.reset();
  }
  const IntersectionEngine& engine() const { return *engine_; }
  void load(int n) {
    if (dir_) load_cache_dir(engine_->memo(), *dir_, n);
  }
  void save(int n) const {
    if (dir_ && !engine_->memo().products(n).empty()) save_cache_dir(engine_->memo(), *dir_, n);
  }

 private:
  std::optional<fs::path> dir_;
  std::unique_ptr<IntersectionEngine> engine_;
};

std::optional<fs::path> pick_cache_dir(const std::string& flag) {
  if (!flag.empty()) return fs::path(flag);
  return default_cache_dir();
}

void print_divisor(const QDivisor& d, bool as_json) {
  if (as_json) {
    json out = json::object();
    for (const auto& [s, c] : d.coefficients()) out[to_literal(s)] = to_string(c);
    std::cout << out.dump(2) << "\n";
    return;
  }
  std::size_t width = 1;
  for (const auto& [s, c] : d.coefficients()) width = std::max(width, to_literal(s).size() + 4);
  for (const auto& [s, c] : d.coefficients()) {
    std::cout << std::left << std::setw(static_cast<int>(width)) << ("D_{" + to_literal(s) + "}") << "  "
              << to_string(c) << "\n";
  }
}

struct VolumeArgs {
  std::string weights;
  std::string formula = "all";
  bool json = false;
  bool strict = false;
  std::string cache_dir;
};

int cmd_volume(const VolumeArgs& a) {
  const auto mu = make_weight_vector(parse_weights(a.weights), a.strict);
  const int n = mu.n();
  for (MarkedSet w : mu.walls()) {
    std::cerr << "warning: wall " << wall_literal(w, n) << " (weights sum to 1 on both sides)\n";
  }
  std::vector<std::string> formulas;
  if (a.formula != "all") formulas.push_back(a.formula);
  CachedEngine cached(pick_cache_dir(a.cache_dir));
  cached.load(n);
  const auto report = cross_check(mu, cached.engine(), formulas);
  cached.save(n);

  if (a.json) {
    json out;
    out["n"] = n;
    json weights = json::array();
    for (const auto& w : mu.weights()) weights.push_back(to_string(w));
    out["weights"] = weights;
    json results = json::object();
    for (const auto& [name, value] : report.results) results[name] = to_string(value);
    out["results"] = results;
    out["agree"] = report.agree;
    json walls = json::array();
    for (MarkedSet w : report.walls) walls.push_back(wall_literal(w, n));
    out["walls"] = walls;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "n = " << n << "  weights = " << join_rationals(mu.weights()) << "\n";
    for (const auto& [name, value] : report.results) {
      std::ostringstream ms;
      ms << std::fixed << std::setprecision(2) << report.milliseconds.at(name);
      std::cout << std::left << std::setw(12) << name << std::setw(24) << to_string(value) << ms.str() << " ms\n";
    }
    std::cout << (report.agree ? "all formulas agree" : "FORMULAS DISAGREE") << "\n";
  }
  return report.agree ? 0 : kDisagree;
}

std::vector<BoundaryPartition> parse_divisor_list(int n, const std::string& text) {
  std::vector<BoundaryPartition> out;
  for (const auto& item : split(text, ';')) out.push_back(parse_partition(n, item));
  return out;
}

int cmd_intersect(int n, const std::string& divisors, const std::string& cache_dir) {
  require_supported_n(n);
  const auto list = parse_divisor_list(n, divisors);
  CachedEngine cached(pick_cache_dir(cache_dir));
  cached.load(n);
  std::cout << to_string(cached.engine().product_number(list, n)) << "\n";
  cached.save(n);
  return 0;
}

std::pair<int, int> parse_pair(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw Error(ErrorCode::ParseError, "expected two indices 'j,k', got '" + text + "'");
  try {
    return {std::stoi(parts[0]), std::stoi(parts[1])};
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "expected two indices 'j,k', got '" + text + "'");
  }
}

int cmd_psi(int n, int index, const std::string& ref, bool as_json) {
  require_supported_n(n);
  auto [j, k] = ref.empty() ? default_psi_reference(index) : parse_pair(ref);
  const auto psi = psi_class(index, j, k, n);
  if (!as_json) std::cout << "psi_" << index << " with reference (" << j << "," << k << "):\n";
  print_divisor(psi, as_json);
  return 0;
}

struct DivisorArgs {
  int n = 0;
  std::string weights;
  std::string kind;
  bool json = false;
};

int cmd_divisor(const DivisorArgs& a) {
  if (a.kind == "canonical") {
    if (a.n == 0 && a.weights.empty()) throw Error(ErrorCode::WrongArity, "--kind canonical needs --n or --weights");
    const int n = a.n != 0 ? a.n : static_cast<int>(parse_weights(a.weights).size());
    require_supported_n(n);
    print_divisor(canonical_divisor(n), a.json);
    return 0;
  }
  if (a.weights.empty()) throw Error(ErrorCode::WrongArity, "--kind " + a.kind + " needs --weights");
  auto w = parse_weights(a.weights);
  const auto mu = a.n != 0 ? make_weight_vector(a.n, std::move(w)) : make_weight_vector(std::move(w));
  for (MarkedSet wall : mu.walls()) std::cerr << "warning: wall " << wall_literal(wall, mu.n()) << "\n";
  if (a.kind == "dmu") {
    print_divisor(d_mu(mu), a.json);
  } else if (a.kind == "weighted") {
    print_divisor(weighted_divisor(mu), a.json);
  } else if (a.kind == "chern") {
    print_divisor(chern_divisor(mu), a.json);
  } else {
    print_divisor(kawamata_divisor(mu), a.json);
  }
  return 0;
}

struct TensorArgs {
  int n = 0;
  std::string out;
  bool force = false;
  unsigned jobs = 1;
  std::string cache_dir;
};

int cmd_tensor(const TensorArgs& a) {
  require_supported_n(a.n);
  if (a.n > 7 && !a.force) {
    throw Error(ErrorCode::UnsupportedN, "tensor is limited to n <= 7 without --force");
  }
  if (a.n > kMaxEngineN) {
    throw Error(ErrorCode::UnsupportedN, "intersection engine is capped at n = " + std::to_string(kMaxEngineN));
  }
  const auto parts = enumerate_boundary_partitions(a.n);
  const int m = static_cast<int>(parts.size());
  const int k = a.n - 3;

  // Enumerate multisets as non-decreasing index vectors.
  std::vector<std::vector<int>> multisets;
  std::vector<int> idx(k, 0);
  for (;;) {
    multisets.push_back(idx);
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == m - 1) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int q = pos + 1; q < k; ++q) idx[q] = idx[pos];
  }

  CachedEngine cached(pick_cache_dir(a.cache_dir));
  cached.load(a.n);
  const auto& engine = cached.engine();
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= multisets.size() || failed) return;
      std::vector<BoundaryPartition> list;
      for (int q : multisets[i]) list.push_back(parts[q]);
      try {
        engine.product_number(list, a.n);
      } catch (const std::exception& ex) {
        std::lock_guard lock(failure_mutex);
        failed = true;
        failure = ex.what();
      }
    }
  };
  const unsigned jobs = std::max(1u, a.jobs);
  std::vector<std::thread> threads;
  for (unsigned t = 1; t < jobs; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (failed) throw std::runtime_error(failure);

  const CacheFile file = export_memo(engine.memo(), a.n);
  write_cache_file(a.out, file);
  cached.save(a.n);
  std::cout << "wrote " << file.top_products.size() << " products for n = " << a.n << " to " << a.out << "\n";
  return 0;
}

int cmd_selfcheck(bool no_memo, const std::string& cache_dir) {
  CachedEngine cached(pick_cache_dir(cache_dir), !no_memo);
  for (int n : {5, 6}) cached.load(n);
  const auto checks = run_selfcheck(cached.engine());
  for (int n : {5, 6}) cached.save(n);
  std::cout << format_checks(checks);
  const auto failed = std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.pass; });
  std::cout << (checks.size() - failed) << "/" << checks.size() << " checks pass\n";
  return failed == 0 ? 0 : kUsage;
}

fs::path require_cache_dir(const std::string& flag) {
  auto dir = pick_cache_dir(flag);
  if (!dir) throw Error(ErrorCode::CacheFormat, "no cache directory: pass --cache-dir or set M0N_CACHE_DIR");
  return *dir;
}

int cmd_cache_export(int n, const std::string& out, const std::string& cache_dir) {
  require_supported_n(n);
  const auto dir = require_cache_dir(cache_dir);
  const auto path = cache_path(dir, n);
  const CacheFile file = fs::exists(path) ? read_cache_file(path) : CacheFile{CacheFile::kVersion, n, {}};
  write_cache_file(out, file);
  std::cout << "exported " << file.top_products.size() << " products for n = " << n << "\n";
  return 0;
}

int cmd_cache_import(const std::string& in, const std::string& cache_dir) {
  const auto dir = require_cache_dir(cache_dir);
  const CacheFile incoming = read_cache_file(in);
  MemoStore memo;
  load_cache_dir(memo, dir, incoming.n);
  import_into_memo(memo, incoming);
  save_cache_dir(memo, dir, incoming.n);
  std::cout << "cache for n = " << incoming.n << " now holds " << memo.products(incoming.n).size() << " products\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact intersection numbers and volumes on genus-zero moduli spaces", "m0n"};
  app.require_subcommand(1);
  std::string cache_dir;
  app.add_option("--cache-dir", cache_dir, "directory for persisted top products (default: $M0N_CACHE_DIR)");

  VolumeArgs va;
  auto* volume = app.add_subcommand("volume", "volume by every formula, checked for agreement");
  volume->add_option("--weights", va.weights, "comma-separated rationals summing to 2")->required();
  volume->add_option("--formula", va.formula, "all|ke|weighted|psi|kawamata|mcmullen")
      ->check(CLI::IsMember({"all", "ke", "weighted", "psi", "kawamata", "mcmullen"}));
  volume->add_flag("--json", va.json, "print JSON");
  volume->add_flag("--strict", va.strict, "refuse weights on a wall");

  int in_n = 0;
  std::string in_divisors;
  auto* intersect = app.add_subcommand("intersect", "top intersection number of boundary divisors");
  intersect->add_option("--n", in_n, "number of marked points")->required();
  intersect->add_option("--divisors", in_divisors, "n-3 partition literals separated by ';'")->required();

  int psi_n = 0, psi_index = 0;
  std::string psi_ref;
  bool psi_json = false;
  auto* psi = app.add_subcommand("psi", "boundary expansion of a psi class");
  psi->add_option("--n", psi_n)->required();
  psi->add_option("--index", psi_index)->required();
  psi->add_option("--ref", psi_ref, "reference pair 'j,k'");
  psi->add_flag("--json", psi_json);

  DivisorArgs da;
  auto* divisor = app.add_subcommand("divisor", "boundary coefficients of a named divisor");
  divisor->add_option("--n", da.n);
  divisor->add_option("--weights", da.weights);
  divisor->add_option("--kind", da.kind)
      ->required()
      ->check(CLI::IsMember({"dmu", "weighted", "chern", "kawamata", "canonical"}));
  divisor->add_flag("--json", da.json);

  TensorArgs ta;
  auto* tensor = app.add_subcommand("tensor", "all top products of boundary divisors, written as a cache file");
  tensor->add_option("--n", ta.n)->required();
  tensor->add_option("--out", ta.out)->required();
  tensor->add_flag("--force", ta.force, "allow n > 7");
  tensor->add_option("--jobs", ta.jobs, "worker threads")->check(CLI::PositiveNumber);

  bool no_memo = false;
  auto* selfcheck = app.add_subcommand("selfcheck", "recompute the reference intersection tables and closed forms");
  selfcheck->add_flag("--no-memo", no_memo);

  auto* cache = app.add_subcommand("cache", "move cache files in and out of the cache directory");
  cache->require_subcommand(1);
  int ex_n = 0;
  std::string ex_out, im_in;
  auto* cache_export = cache->add_subcommand("export", "copy the cached products for one n to a file");
  cache_export->add_option("--n", ex_n)->required();
  cache_export->add_option("--out", ex_out)->required();
  auto* cache_import = cache->add_subcommand("import", "merge a cache file into the cache directory");
  cache_import->add_option("--in", im_in)->required()->check(CLI::ExistingFile);

  for (auto* sub : {volume, intersect, tensor, selfcheck, cache_export, cache_import}) {
    sub->add_option("--cache-dir", cache_dir, "directory for persisted top products");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    va.cache_dir = ta.cache_dir = cache_dir;
    if (*volume) return cmd_volume(va);
    if (*intersect) return cmd_intersect(in_n, in_divisors, cache_dir);
    if (*psi) return cmd_psi(psi_n, psi_index, psi_ref, psi_json);
    if (*divisor) return cmd_divisor(da);
    if (*tensor) return cmd_tensor(ta);
    if (*selfcheck) return cmd_selfcheck(no_memo, cache_dir);
    if (*cache_export) return cmd_cache_export(ex_n, ex_out, cache_dir);
    if (*cache_import) return cmd_cache_import(im_in, cache_dir);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
