#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "m0n/rational.hpp"

namespace m0n {

/// Largest number of marked points supported; index sets are 32-bit masks.
inline constexpr int kMaxPoints = 16;

/// Subset of {1..n}, stored as a bitmask (bit i-1 represents index i).
class MarkedSet {
 public:
  constexpr MarkedSet() = default;
  constexpr explicit MarkedSet(std::uint32_t bits) : bits_(bits) {}

  static MarkedSet of(std::initializer_list<int> indices);
  static constexpr MarkedSet singleton(int i) { return MarkedSet(std::uint32_t{1} << (i - 1)); }
  static constexpr MarkedSet full(int n) { return MarkedSet((std::uint32_t{1} << n) - 1); }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int i) const { return (bits_ >> (i - 1)) & 1u; }
  constexpr bool subset_of(MarkedSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool meets(MarkedSet other) const { return (bits_ & other.bits_) != 0; }
  /// Smallest index in the set; 0 for the empty set.
  constexpr int min_index() const { return bits_ == 0 ? 0 : std::countr_zero(bits_) + 1; }
  constexpr MarkedSet complement(int n) const { return MarkedSet(full(n).bits_ & ~bits_); }

  std::vector<int> indices() const;

  friend constexpr MarkedSet operator|(MarkedSet a, MarkedSet b) { return MarkedSet(a.bits_ | b.bits_); }
  friend constexpr MarkedSet operator&(MarkedSet a, MarkedSet b) { return MarkedSet(a.bits_ & b.bits_); }
  friend constexpr MarkedSet operator-(MarkedSet a, MarkedSet b) { return MarkedSet(a.bits_ & ~b.bits_); }
  friend constexpr auto operator<=>(MarkedSet, MarkedSet) = default;

 private:
  std::uint32_t bits_ = 0;
};

/// "1,2,5" style literal; the empty set prints as "".
std::string to_literal(MarkedSet set);

/// Unordered partition {I_0, I_1} of {1..n} with both sides of size >= 2.
/// The stored side is the one not containing n.
class BoundaryPartition {
 public:
  /// Accepts either side and canonicalizes. Throws InvalidPartition.
  BoundaryPartition(int n, MarkedSet either_side);

  int n() const { return n_; }
  MarkedSet side() const { return side_; }
  MarkedSet other_side() const { return side_.complement(n_); }
  /// True iff i and j lie on different sides.
  bool separates(int i, int j) const { return side_.contains(i) != side_.contains(j); }

  friend auto operator<=>(const BoundaryPartition&, const BoundaryPartition&) = default;

 private:
  int n_;
  MarkedSet side_;
};

/// Literal of the canonical side, e.g. "1,2" for {{1,2},{3,4,5}}.
std::string to_literal(const BoundaryPartition& s);

/// Parses a comma-separated ascending index list naming either side.
BoundaryPartition parse_partition(int n, std::string_view literal);

/// Validates 4 <= n <= kMaxPoints (TooFewPoints / UnsupportedN).
void require_supported_n(int n);

/// All 2^(n-1) - n - 1 boundary partitions, ordered by canonical side mask.
std::vector<BoundaryPartition> enumerate_boundary_partitions(int n);

/// Weights 0 < mu_s < 1 summing to exactly 2.
class WeightVector {
 public:
  int n() const { return static_cast<int>(weights_.size()); }
  const std::vector<Rational>& weights() const { return weights_; }
  /// 1-based access.
  const Rational& weight(int s) const { return weights_[s - 1]; }
  Rational sum_over(MarkedSet set) const;
  /// Subsets summing to exactly 1 (see check_admissibility); empty when admissible.
  const std::vector<MarkedSet>& walls() const { return walls_; }
  bool admissible() const { return walls_.empty(); }

 private:
  friend WeightVector make_weight_vector(int n, std::vector<Rational> weights, bool strict);
  std::vector<Rational> weights_;
  std::vector<MarkedSet> walls_;
};

/// Validates and builds a weight vector. Subset sums equal to 1 are recorded
/// as walls; with strict set they raise AdmissibilityWall instead.
WeightVector make_weight_vector(int n, std::vector<Rational> weights, bool strict = false);
WeightVector make_weight_vector(std::vector<Rational> weights, bool strict = false);

struct SideSum {
  Rational sum;
  MarkedSet side;
};

/// mu_S and the side I_1 realizing it (the lighter side; the canonical side on ties).
SideSum mu_side_sum(const WeightVector& mu, const BoundaryPartition& s);

/// Every I with sum over I equal to 1, once per complementary pair, as the
/// side not containing n. Ordered by mask.
std::vector<MarkedSet> check_admissibility(const WeightVector& mu);

}  // namespace m0n
