// One line per acceptance criterion: PASS/FAIL, wall time and a short detail.
// Exit status is non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>

#include "m0n/cache.hpp"
#include "m0n/divisors.hpp"
#include "m0n/error.hpp"
#include "m0n/selfcheck.hpp"
#include "m0n/volume.hpp"
#include "test_support.hpp"

using namespace m0n;
using m0n::testing::random_weights;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void criterion(int number, const std::string& title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& ex) {
    out = {false, std::string("exception: ") + ex.what()};
  }
  const double elapsed = seconds_since(t0);
  if (elapsed > limit_seconds) {
    out.pass = false;
    out.detail += " [over time limit]";
  }
  if (!out.pass) ++failures;
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.3fs/%.0fs", elapsed, limit_seconds);
  std::cout << (out.pass ? "PASS" : "FAIL") << "  [" << number << "] " << title << "  (" << timing << ")  "
            << out.detail << std::endl;
}

Outcome from_checks(const std::vector<CheckResult>& checks) {
  Outcome out;
  int bad = 0;
  for (const auto& c : checks) {
    if (!c.pass) {
      if (bad == 0) out.detail = "first failure: " + c.name + " expected " + c.expected + " got " + c.actual + "; ";
      ++bad;
    }
  }
  out.pass = bad == 0 && !checks.empty();
  out.detail += std::to_string(checks.size() - bad) + "/" + std::to_string(checks.size()) + " checks";
  return out;
}

// Case count recorded in a tally name such as "M06 D_ijk^3 (10 cases)".
int case_count(const std::string& name) {
  const auto open = name.rfind('(');
  return open == std::string::npos ? 0 : std::stoi(name.substr(open + 1));
}

bool five_agree(const WeightVector& mu, const IntersectionEngine& engine, Rational* value = nullptr) {
  const Rational ke = volume_ke(mu, engine);
  if (value) *value = ke;
  return volume_weighted(mu, engine) == ke && volume_psi(mu, engine) == ke && volume_kawamata(mu, engine) == ke &&
         volume_mcmullen(mu) == ke;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main() {
  criterion(1, "M05 table: all 55 unordered pairs", 1, [] {
    const IntersectionEngine engine;
    auto checks = check_m05_table(engine);
    auto out = from_checks(checks);
    int cases = 0;
    for (const auto& c : checks) cases += case_count(c.name);
    if (cases != 55) out = {false, "covered " + std::to_string(cases) + " pairs"};
    return out;
  });

  criterion(2, "M06 table: exhaustive 2925 triples with classification", 5, [] {
    const IntersectionEngine engine;
    auto checks = check_m06_table(engine);
    auto out = from_checks(checks);
    int cases = 0;
    std::set<std::string> rules;
    for (const auto& c : checks) {
      cases += case_count(c.name);
      rules.insert(c.name.substr(4, c.name.rfind(" (") - 4));
    }
    for (const char* shape : {"D_ij^3", "D_ij^2.D_ijk", "D_ij^2.D_kl", "D_ij.D_ijk^2", "D_ij.D_ijk.D_j'k'", "D_ijk^3",
                              "D_ij.D_kl.D_k'l'", "vanishing (non-nested pair)"}) {
      if (!rules.count(shape)) out = {false, std::string("shape never seen: ") + shape};
    }
    if (rules.count("unclassified")) out = {false, "unclassified triples present"};
    if (cases != 2925) out = {false, "covered " + std::to_string(cases) + " triples"};
    return out;
  });

  criterion(3, "symmetric n=6 intersection block", 5, [] {
    const IntersectionEngine engine;
    return from_checks(check_symmetric_block(engine));
  });

  criterion(4, "n=6 symmetric closed form equals all five formulas", 30, [] {
    const IntersectionEngine engine;
    Outcome out;
    for (const auto& beta : symmetric_betas()) {
      Rational v;
      const auto mu = symmetric_weights(beta);
      if (!five_agree(mu, engine, &v) || v != symmetric_closed_form(beta)) {
        out = {false, "beta=" + to_string(beta) + " disagrees"};
        return out;
      }
    }
    if (symmetric_closed_form(Rational(1, 8)) != Rational(3, 256) ||
        symmetric_closed_form(Rational(1, 4)) != Rational(23, 288)) {
      return Outcome{false, "reference values not reproduced"};
    }
    out.detail = std::to_string(symmetric_betas().size()) + " betas";
    return out;
  });

  criterion(5, "n=5 closed forms in all six regimes", 10, [] {
    const IntersectionEngine engine;
    auto checks = check_five_point_volumes(engine);
    auto out = from_checks(checks);
    std::set<int> regimes;
    for (const auto& w : five_point_samples()) regimes.insert(five_point_regime(make_weight_vector(w)));
    if (regimes.size() != 6) out = {false, "only " + std::to_string(regimes.size()) + " regimes sampled"};
    const auto a = make_weight_vector({Rational(9, 10), Rational(3, 10), Rational(3, 10), Rational(3, 10), Rational(1, 5)});
    const auto b = make_weight_vector(
        {Rational(4, 5), Rational(9, 20), Rational(3, 10), Rational(13, 50), Rational(19, 100)});
    if (five_point_closed_form(a) != Rational(1, 100) || volume_ke(a, engine) != Rational(1, 100) ||
        five_point_closed_form(b) != Rational(399, 10000) || volume_ke(b, engine) != Rational(399, 10000)) {
      out = {false, "reference values not reproduced"};
    }
    return out;
  });

  criterion(6, "five-way cross-check: 25 random weights at each n=4,5,6 and 3 at n=7", 240, [] {
    const IntersectionEngine engine;
    std::mt19937 rng(2024);
    const auto t0 = Clock::now();
    for (int n = 4; n <= 6; ++n) {
      for (int trial = 0; trial < 25; ++trial) {
        const auto mu = random_weights(n, 7 + trial, rng);
        if (!five_agree(mu, engine)) return Outcome{false, "disagreement at n=" + std::to_string(n)};
      }
    }
    const double small = seconds_since(t0);
    if (small > 60) return Outcome{false, "n <= 6 sweep took over 60 s"};
    std::string detail = "75 vectors at n<=6 in " + std::to_string(small).substr(0, 5) + "s; n=7:";
    for (int trial = 0; trial < 3; ++trial) {
      const auto t1 = Clock::now();
      const auto mu = random_weights(7, 11 + 2 * trial, rng);
      Rational v;
      if (!five_agree(mu, engine, &v)) return Outcome{false, "disagreement at n=7"};
      const double took = seconds_since(t1);
      if (took > 60) return Outcome{false, "an n=7 case took over 60 s"};
      detail += " " + to_string(v) + " (" + std::to_string(took).substr(0, 5) + "s)";
    }
    return Outcome{true, detail};
  });

  criterion(7, "invariance: list order, pair choice, psi references, weight order", 120, [] {
    std::mt19937 rng(77);
    const IntersectionEngine engine;
    EngineOptions random_opts;
    auto chooser_rng = std::make_shared<std::mt19937>(5);
    random_opts.pair_chooser = [chooser_rng](const StableTree&, int, int, const std::vector<Flag>& candidates) {
      std::vector<Flag> c = candidates;
      std::shuffle(c.begin(), c.end(), *chooser_rng);
      return std::pair{c[0], c[1]};
    };
    random_opts.use_memo = false;
    const IntersectionEngine random_pairs(random_opts);

    int lists = 0;
    for (int n = 5; n <= 7; ++n) {
      const auto parts = enumerate_boundary_partitions(n);
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<BoundaryPartition> list;
        for (int i = 0; i < n - 3; ++i) list.push_back(parts[rng() % parts.size()]);
        const Rational value = engine.product_number(list, n);
        for (int shuffle = 0; shuffle < 20; ++shuffle) {
          std::shuffle(list.begin(), list.end(), rng);
          FormalCycle c = FormalCycle::of(trivial_tree(n));
          for (const auto& s : list) c = engine.intersect_divisor_cycle(s, c);
          if (c.total() != value) return Outcome{false, "(a) list order changed a product"};
        }
        if (random_pairs.product_number(list, n) != value) return Outcome{false, "(b) pair choice changed a product"};
        ++lists;
      }
    }
    if (!from_checks(run_selfcheck(random_pairs)).pass) return Outcome{false, "(b) selfcheck with random pairs"};

    int weights = 0;
    for (int n = 4; n <= 6; ++n) {
      for (int trial = 0; trial < 5; ++trial) {
        const auto mu = random_weights(n, 7 + trial, rng);
        const Rational v = volume_psi(mu, engine);
        PsiReferences refs;
        for (int s = 1; s <= n; ++s) {
          std::vector<int> others;
          for (int j = 1; j <= n; ++j) {
            if (j != s) others.push_back(j);
          }
          std::shuffle(others.begin(), others.end(), rng);
          refs.emplace_back(std::min(others[0], others[1]), std::max(others[0], others[1]));
        }
        if (volume_psi(mu, engine, refs) != v) return Outcome{false, "(c) psi references changed the volume"};
        auto w = mu.weights();
        std::shuffle(w.begin(), w.end(), rng);
        Rational pv;
        if (!five_agree(make_weight_vector(w), engine, &pv) || pv != v) {
          return Outcome{false, "(d) weight permutation changed a volume"};
        }
        ++weights;
      }
    }
    return Outcome{true, std::to_string(lists) + " lists x 20 shuffles, " + std::to_string(weights) + " weight vectors"};
  });

  criterion(8, "weighted = K + D_mu; psi - 2 delta ~ K on all boundary products", 30, [] {
    std::mt19937 rng(88);
    const IntersectionEngine engine;
    for (int n : {5, 6}) {
      for (int trial = 0; trial < 10; ++trial) {
        const auto mu = random_weights(n, 9 + trial, rng);
        if (weighted_divisor(mu) != canonical_divisor(n) + d_mu(mu)) return Outcome{false, "coefficient identity"};
      }
      const auto k = canonical_divisor(n);
      const auto p = psi_minus_2delta(n);
      const auto parts = enumerate_boundary_partitions(n);
      int products = 0;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        for (std::size_t j = (n == 5 ? parts.size() - 1 : i); j < parts.size(); ++j) {
          std::vector<QDivisor> a{k, boundary_divisor(parts[i])};
          std::vector<QDivisor> b{p, boundary_divisor(parts[i])};
          if (n == 6) {
            a.push_back(boundary_divisor(parts[j]));
            b.push_back(boundary_divisor(parts[j]));
          }
          if (engine.qdivisor_product(a, n) != engine.qdivisor_product(b, n)) {
            return Outcome{false, "linear equivalence broken at n=" + std::to_string(n)};
          }
          ++products;
        }
      }
      if (products != (n == 5 ? 10 : 325)) return Outcome{false, "wrong number of boundary products"};
    }
    return Outcome{true, "20 weight vectors, 10 + 325 boundary products"};
  });

  criterion(9, "lambda count oracle; psi power normalisation", 10, [] {
    std::mt19937 rng(99);
    for (int n = 4; n <= 6; ++n) {
      for (int trial = 0; trial < 10; ++trial) {
        const auto mu = random_weights(n, 7 + trial, rng);
        if (kawamata_lambda_via_counts(mu, minimal_scaling(mu)) != kawamata_lambda_table(mu)) {
          return Outcome{false, "lambda table mismatch at n=" + std::to_string(n)};
        }
      }
      for (int i = 1; i <= n; ++i) {
        if (qdivisor_power(psi_class(i, n), n) != 1) return Outcome{false, "psi power != 1"};
      }
    }
    return Outcome{true, "30 weight vectors, 15 psi classes"};
  });

  criterion(10, "memo and cache soundness", 60, [] {
    EngineOptions no_memo;
    no_memo.use_memo = false;
    const std::string plain = format_checks(run_selfcheck(IntersectionEngine(no_memo)));

    const IntersectionEngine cold;
    const std::string cold_out = format_checks(run_selfcheck(cold));

    const auto dir = std::filesystem::temp_directory_path() / ("m0n-acceptance-" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    for (int n : {5, 6}) save_cache_dir(cold.memo(), dir, n);
    auto warm_memo = std::make_shared<MemoStore>();
    for (int n : {5, 6}) {
      if (!load_cache_dir(*warm_memo, dir, n)) return Outcome{false, "cache file missing"};
    }
    const std::size_t loaded = warm_memo->product_entries();
    const std::string warm_out = format_checks(run_selfcheck(IntersectionEngine(EngineOptions{}, warm_memo)));

    bool round_trip = true;
    for (int n : {5, 6}) {
      const auto path = cache_path(dir, n);
      const std::string bytes = slurp(path);
      if (serialize_cache(read_cache_file(path)) != bytes) round_trip = false;
      if (serialize_cache(export_memo(*warm_memo, n)) != bytes) round_trip = false;
    }
    std::filesystem::remove_all(dir);

    if (plain != cold_out) return Outcome{false, "memo-disabled selfcheck differs"};
    if (warm_out != cold_out) return Outcome{false, "warm-cache selfcheck differs"};
    if (!round_trip) return Outcome{false, "cache round trip not bit-exact"};
    if (cold_out.find("FAIL") != std::string::npos) return Outcome{false, "selfcheck has failures"};
    return Outcome{true, "selfcheck identical three ways; " + std::to_string(loaded) + " cached products reloaded"};
  });

  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAIL") << std::endl;
  return failures == 0 ? 0 : 1;
}
