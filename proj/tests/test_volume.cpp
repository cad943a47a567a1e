#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "m0n/divisors.hpp"
#include "m0n/error.hpp"
#include "m0n/selfcheck.hpp"
#include "m0n/volume.hpp"
#include "test_support.hpp"

using namespace m0n;
using m0n::testing::random_weights;

namespace {

WeightVector w4() { return make_weight_vector({Rational(9, 10), Rational(3, 5), Rational(3, 10), Rational(1, 5)}); }
WeightVector w5() {
  return make_weight_vector({Rational(9, 10), Rational(3, 10), Rational(3, 10), Rational(3, 10), Rational(1, 5)});
}

// Direct enumeration of set partitions, independent of the library's subset DP.
void each_partition(int n, int next, std::vector<std::vector<int>>& blocks,
                    const std::function<void(const std::vector<std::vector<int>>&)>& visit) {
  if (next > n) {
    visit(blocks);
    return;
  }
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    blocks[i].push_back(next);
    each_partition(n, next + 1, blocks, visit);
    blocks[i].pop_back();
  }
  blocks.push_back({next});
  each_partition(n, next + 1, blocks, visit);
  blocks.pop_back();
}

Rational mcmullen_brute_force(const WeightVector& mu) {
  const int n = mu.n();
  const int big_n = n - 3;
  Rational sum = 0;
  std::vector<std::vector<int>> blocks;
  each_partition(n, 1, blocks, [&](const std::vector<std::vector<int>>& q) {
    const int k = static_cast<int>(q.size());
    if (k < 3) return;
    Rational term = 1;
    for (int f = 2; f <= k - 3; ++f) term *= f;
    if (k % 2 == 0) term = -term;
    for (const auto& b : q) {
      Rational s = 0;
      for (int i : b) s += mu.weight(i);
      const Rational base = std::max(Rational(0), Rational(1 - s));
      term *= pow(base, static_cast<unsigned>(b.size() - 1));
    }
    sum += term;
  });
  Rational v = sum / (big_n + 1);
  return big_n % 2 == 0 ? v : Rational(-v);
}

}  // namespace

TEST_CASE("small reference volumes") {
  const auto mu = w4();
  CHECK(volume_ke(mu) == Rational(1, 10));
  CHECK(volume_weighted(mu) == Rational(1, 10));
  CHECK(volume_psi(mu) == Rational(1, 10));
  CHECK(volume_kawamata(mu) == Rational(1, 10));
  CHECK(volume_mcmullen(mu) == Rational(1, 10));
  for (const auto& name : general_formulas()) CHECK(volume_by_name(name, w5()) == Rational(1, 100));
  CHECK(volume_ke(symmetric_weights(Rational(1, 4))) == Rational(23, 288));
  CHECK_THROWS_AS(volume_by_name("simpson", mu), Error);
}

TEST_CASE("McMullen sum against direct set-partition enumeration") {
  std::mt19937 rng(31);
  for (int n = 4; n <= 8; ++n) {
    for (int trial = 0; trial < 8; ++trial) {
      const auto mu = random_weights(n, 31 + trial, rng);
      CHECK(volume_mcmullen(mu) == mcmullen_brute_force(mu));
    }
  }
  CHECK(mcmullen_brute_force(w4()) == Rational(1, 10));
}

TEST_CASE("engine caps") {
  std::mt19937 rng(1);
  const auto mu10 = random_weights(10, 101, rng);
  try {
    volume_ke(mu10);
    FAIL("expected UnsupportedN");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedN);
  }
  CHECK(volume_mcmullen(mu10) > 0);
  try {
    volume_mcmullen(random_weights(13, 101, rng));
    FAIL("expected UnsupportedN");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedN);
  }
}

TEST_CASE("n = 5 closed forms") {
  const auto samples = five_point_samples();
  REQUIRE(samples.size() == 6);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto mu = make_weight_vector(samples[i]);
    CHECK(mu.admissible());
    CHECK(five_point_regime(mu) == static_cast<int>(i) + 1);
    CHECK(five_point_closed_form(mu) == volume_ke(mu));
    CHECK(five_point_closed_form(mu) == volume_mcmullen(mu));
  }
  CHECK(five_point_closed_form(w5()) == Rational(1, 100));
  const auto mu2 = make_weight_vector(
      {Rational(4, 5), Rational(9, 20), Rational(3, 10), Rational(13, 50), Rational(19, 100)});
  CHECK(five_point_closed_form(mu2) == Rational(399, 10000));

  // unsorted input is sorted internally
  auto shuffled = samples[3];
  std::reverse(shuffled.begin(), shuffled.end());
  CHECK(five_point_closed_form(make_weight_vector(shuffled)) == five_point_closed_form(make_weight_vector(samples[3])));

  try {
    five_point_closed_form(w4());
    FAIL("expected WrongN");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WrongN);
  }

  std::mt19937 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    const auto mu = random_weights(5, 10 + trial % 17, rng);
    CHECK(five_point_closed_form(mu) == volume_mcmullen(mu));
  }
}

TEST_CASE("symmetric n = 6 closed form") {
  CHECK(symmetric_closed_form(Rational(1, 8)) == Rational(3, 256));
  CHECK(symmetric_closed_form(Rational(1, 4)) == Rational(23, 288));
  CHECK(symmetric_closed_form(Rational(1, 6)) == Rational(1, 36));
  CHECK(symmetric_closed_form(Rational(1, 3)) == Rational(1, 9));
  for (auto bad : {Rational(0), Rational(-1, 8), Rational(1, 2)}) {
    try {
      symmetric_closed_form(bad);
      FAIL("expected BetaOutOfRange");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BetaOutOfRange);
    }
  }
  for (const auto& beta : symmetric_betas()) {
    const auto mu = symmetric_weights(beta);
    CHECK(symmetric_beta(mu) == beta);
    CHECK(volume_ke(mu) == symmetric_closed_form(beta));
  }
  CHECK_FALSE(symmetric_beta(w4()).has_value());
}

TEST_CASE("cross_check reports") {
  const auto r4 = cross_check(w4());
  CHECK(r4.agree);
  CHECK(r4.results.size() == 5);
  for (const auto& [name, v] : r4.results) CHECK(v == Rational(1, 10));

  const auto r5 = cross_check(w5());
  CHECK(r5.agree);
  CHECK(r5.results.count("five_point") == 1);

  const auto r6 = cross_check(symmetric_weights(Rational(1, 4)));
  CHECK(r6.agree);
  CHECK(r6.results.at("symmetric") == Rational(23, 288));

  const auto wall = cross_check(make_weight_vector({Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)}));
  CHECK(wall.walls.size() == 3);
  CHECK(wall.agree);

  const auto only = cross_check(w4(), default_engine(), {"ke", "mcmullen"});
  CHECK(only.results.size() == 2);
}

TEST_CASE("volumes are positive and permutation invariant") {
  std::mt19937 rng(41);
  for (int n = 4; n <= 6; ++n) {
    for (int trial = 0; trial < 6; ++trial) {
      const auto mu = random_weights(n, 8 + trial, rng);
      const Rational v = volume_ke(mu);
      CHECK(v > 0);
      auto w = mu.weights();
      std::shuffle(w.begin(), w.end(), rng);
      const auto permuted = make_weight_vector(w);
      CHECK(volume_kawamata(permuted) == v);
      CHECK(volume_psi(permuted) == v);
    }
  }
}

TEST_CASE("psi powers are normalised") {
  for (int n = 4; n <= 6; ++n) {
    for (int i = 1; i <= n; ++i) {
      CHECK(qdivisor_power(psi_class(i, n), n) == 1);
      const int j = i == n ? 1 : n;
      const int k = i == n - 1 ? 1 : (j == n - 1 ? n - 2 : n - 1);
      CHECK(qdivisor_power(psi_class(i, j, k, n), n) == 1);
    }
  }
}
