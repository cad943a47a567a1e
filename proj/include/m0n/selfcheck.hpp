#pragma once

#include <string>
#include <vector>

#include "m0n/combinatorics.hpp"
#include "m0n/intersect.hpp"
#include "m0n/qdivisor.hpp"

namespace m0n {

struct CheckResult {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

/// Neither side of one partition nests in a side of the other, so the
/// divisors are disjoint.
bool partitions_disjoint(const BoundaryPartition& a, const BoundaryPartition& b);

/// Known value for a pair of divisors on n = 5 (rule name and value).
std::pair<std::string, Rational> m05_rule(const BoundaryPartition& a, const BoundaryPartition& b);
/// Known value for a triple of divisors on n = 6; the name is
/// "unclassified" for triples outside the table.
std::pair<std::string, Rational> m06_rule(const BoundaryPartition& a, const BoundaryPartition& b,
                                          const BoundaryPartition& c);

/// The divisor groupings A_1, A_2, B, C on n = 6.
struct SymmetricGroupings {
  QDivisor a1{6}, a2{6}, b{6}, c{6};
};
SymmetricGroupings symmetric_groupings();

/// Admissible n = 5 weights, one per closed-form regime (index = regime - 1).
std::vector<std::vector<Rational>> five_point_samples();
/// Betas checked against the n = 6 closed form.
std::vector<Rational> symmetric_betas();

std::vector<CheckResult> check_m05_table(const IntersectionEngine& engine);
std::vector<CheckResult> check_m06_table(const IntersectionEngine& engine);
std::vector<CheckResult> check_symmetric_block(const IntersectionEngine& engine);
std::vector<CheckResult> check_symmetric_volumes(const IntersectionEngine& engine);
std::vector<CheckResult> check_five_point_volumes(const IntersectionEngine& engine);

/// All of the above, in a fixed order.
std::vector<CheckResult> run_selfcheck(const IntersectionEngine& engine);

/// One line per check: "PASS|FAIL  name  expected=..  actual=..".
std::string format_checks(const std::vector<CheckResult>& checks);

}  // namespace m0n
