#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "m0n/combinatorics.hpp"
#include "m0n/error.hpp"

using namespace m0n;

namespace {

Rational q(long p, long d = 1) { return Rational(p, d); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an m0n::Error");
  return ErrorCode::InternalInvariant;
}

// Oracle: every subset of {1..n}, summed from scratch.
std::vector<MarkedSet> brute_force_walls(const std::vector<Rational>& w) {
  const int n = static_cast<int>(w.size());
  std::vector<MarkedSet> out;
  for (std::uint32_t bits = 1; bits + 1 < (1u << n); ++bits) {
    if (bits & (1u << (n - 1))) continue;
    Rational sum(0);
    for (int i = 0; i < n; ++i) {
      if (bits & (1u << i)) sum += w[i];
    }
    if (sum == 1) out.emplace_back(bits);
  }
  return out;
}

}  // namespace

TEST_CASE("make_weight_vector validates range, sum and size") {
  CHECK_NOTHROW(make_weight_vector(5, {q(9, 10), q(3, 10), q(3, 10), q(3, 10), q(1, 5)}));
  CHECK_NOTHROW(make_weight_vector(4, {q(9, 10), q(3, 5), q(3, 10), q(1, 5)}));
  CHECK(code_of([] { make_weight_vector(5, {q(1), q(1, 4), q(1, 4), q(1, 4), q(1, 4)}); }) ==
        ErrorCode::WeightOutOfRange);
  CHECK(code_of([] { make_weight_vector(4, {q(1, 2), q(1, 2), q(1, 2), q(1, 3)}); }) == ErrorCode::WeightSumNotTwo);
  CHECK(code_of([] { make_weight_vector(3, {q(2, 3), q(2, 3), q(2, 3)}); }) == ErrorCode::TooFewPoints);
  CHECK(code_of([] { make_weight_vector(17, std::vector<Rational>(17, q(2, 17))); }) == ErrorCode::UnsupportedN);
  CHECK(code_of([] { make_weight_vector(5, {q(1, 2), q(1, 2), q(1, 2), q(1, 2)}); }) == ErrorCode::WrongArity);
}

TEST_CASE("walls are warnings unless strict") {
  const auto mu = make_weight_vector(4, {q(1, 2), q(1, 2), q(1, 2), q(1, 2)});
  CHECK_FALSE(mu.admissible());
  CHECK(std::find(mu.walls().begin(), mu.walls().end(), MarkedSet::of({1, 2})) != mu.walls().end());
  CHECK(code_of([] { make_weight_vector(4, {q(1, 2), q(1, 2), q(1, 2), q(1, 2)}, true); }) ==
        ErrorCode::AdmissibilityWall);
}

TEST_CASE("enumerate_boundary_partitions counts and uniqueness") {
  CHECK(enumerate_boundary_partitions(4).size() == 3);
  CHECK(enumerate_boundary_partitions(5).size() == 10);
  CHECK(enumerate_boundary_partitions(6).size() == 25);
  for (int n = 4; n <= 12; ++n) {
    const auto parts = enumerate_boundary_partitions(n);
    CHECK(parts.size() == (std::size_t{1} << (n - 1)) - n - 1);
    std::set<std::uint32_t> seen;
    for (const auto& s : parts) {
      CHECK_FALSE(s.side().contains(n));
      seen.insert(s.side().bits());
    }
    CHECK(seen.size() == parts.size());
    CHECK(std::is_sorted(parts.begin(), parts.end()));
  }
  CHECK(code_of([] { enumerate_boundary_partitions(3); }) == ErrorCode::TooFewPoints);
  CHECK(code_of([] { enumerate_boundary_partitions(17); }) == ErrorCode::UnsupportedN);
}

TEST_CASE("partition literals canonicalize either side") {
  const auto a = parse_partition(5, "1,2");
  const auto b = parse_partition(5, "3,4,5");
  CHECK(a == b);
  CHECK(to_literal(b) == "1,2");
  CHECK(to_literal(parse_partition(6, "4,5,6")) == "1,2,3");
  CHECK(code_of([] { parse_partition(5, "2,1"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_partition(5, "1,,2"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_partition(5, "1,6"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_partition(5, "1"); }) == ErrorCode::InvalidPartition);
  CHECK(code_of([] { parse_partition(5, "1,2,3,4"); }) == ErrorCode::InvalidPartition);
}

TEST_CASE("mu_side_sum picks the light side") {
  const auto mu5 = make_weight_vector(5, {q(9, 10), q(3, 10), q(3, 10), q(3, 10), q(1, 5)});
  const auto r = mu_side_sum(mu5, parse_partition(5, "4,5"));
  CHECK(r.sum == q(1, 2));
  CHECK(r.side == MarkedSet::of({4, 5}));

  const auto mu4 = make_weight_vector(4, {q(9, 10), q(3, 5), q(3, 10), q(1, 5)});
  const auto r4 = mu_side_sum(mu4, parse_partition(4, "2,4"));
  CHECK(r4.sum == q(4, 5));
  CHECK(r4.side == MarkedSet::of({2, 4}));

  for (const auto& s : enumerate_boundary_partitions(5)) {
    const auto light = mu_side_sum(mu5, s);
    CHECK(light.sum + mu5.sum_over(light.side.complement(5)) == 2);
    CHECK(light.sum <= 1);
  }
}

TEST_CASE("check_admissibility matches exhaustive subset sums") {
  CHECK(check_admissibility(make_weight_vector(5, {q(9, 10), q(3, 10), q(3, 10), q(3, 10), q(1, 5)})).empty());
  CHECK(check_admissibility(make_weight_vector(6, {q(5, 12), q(5, 12), q(5, 12), q(1, 4), q(1, 4), q(1, 4)}))
            .empty());

  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 4 + trial % 5;
    const long d = 6 + trial % 7;
    std::vector<long> parts(n, 1);
    long left = 2 * d - n;
    if (left < 0) continue;
    bool ok = true;
    while (left > 0) {
      const int i = rng() % n;
      if (parts[i] + 1 < d) {
        ++parts[i];
        --left;
      } else if (std::all_of(parts.begin(), parts.end(), [d](long p) { return p + 1 >= d; })) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    std::vector<Rational> w;
    for (long p : parts) w.emplace_back(p, d);
    const auto mu = make_weight_vector(n, w);
    CHECK(mu.walls() == brute_force_walls(mu.weights()));

    // permuting the weights permutes the walls
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end() - 1, rng);  // keep n fixed so canonical sides stay comparable
    std::vector<Rational> permuted(n);
    for (int i = 0; i < n; ++i) permuted[perm[i]] = w[i];
    std::set<std::uint32_t> expected;
    for (const auto& wall : mu.walls()) {
      std::uint32_t bits = 0;
      for (int i : wall.indices()) bits |= 1u << perm[i - 1];
      expected.insert(bits);
    }
    std::set<std::uint32_t> actual;
    for (const auto& wall : check_admissibility(make_weight_vector(n, permuted))) actual.insert(wall.bits());
    CHECK(actual == expected);
  }
}
