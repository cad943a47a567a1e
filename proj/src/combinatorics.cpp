#include "m0n/combinatorics.hpp"

#include <charconv>

#include "m0n/error.hpp"

namespace m0n {

MarkedSet MarkedSet::of(std::initializer_list<int> indices) {
  std::uint32_t bits = 0;
  for (int i : indices) bits |= std::uint32_t{1} << (i - 1);
  return MarkedSet(bits);
}

std::vector<int> MarkedSet::indices() const {
  std::vector<int> out;
  for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
  return out;
}

std::string to_literal(MarkedSet set) {
  std::string out;
  for (int i : set.indices()) {
    if (!out.empty()) out += ',';
    out += std::to_string(i);
  }
  return out;
}

void require_supported_n(int n) {
  if (n < 4) throw Error(ErrorCode::TooFewPoints, "need n >= 4, got " + std::to_string(n));
  if (n > kMaxPoints) {
    throw Error(ErrorCode::UnsupportedN,
                "n = " + std::to_string(n) + " exceeds the supported maximum of " + std::to_string(kMaxPoints));
  }
}

BoundaryPartition::BoundaryPartition(int n, MarkedSet either_side) : n_(n) {
  require_supported_n(n);
  if (!either_side.subset_of(MarkedSet::full(n))) {
    throw Error(ErrorCode::InvalidPartition, "side {" + to_literal(either_side) + "} is not a subset of {1.." +
                                                 std::to_string(n) + "}");
  }
  side_ = either_side.contains(n) ? either_side.complement(n) : either_side;
  if (side_.size() < 2 || n - side_.size() < 2) {
    throw Error(ErrorCode::InvalidPartition, "both sides need at least 2 points, got {" + to_literal(side_) + "}");
  }
}

std::string to_literal(const BoundaryPartition& s) { return to_literal(s.side()); }

BoundaryPartition parse_partition(int n, std::string_view literal) {
  MarkedSet side;
  int previous = 0;
  std::size_t pos = 0;
  while (pos <= literal.size()) {
    const std::size_t comma = std::min(literal.find(',', pos), literal.size());
    const std::string_view token = literal.substr(pos, comma - pos);
    int value = 0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || end != token.data() + token.size()) {
      throw Error(ErrorCode::ParseError, "bad index '" + std::string(token) + "' in partition '" +
                                             std::string(literal) + "'");
    }
    if (value < 1 || value > n) {
      throw Error(ErrorCode::ParseError, "index " + std::to_string(value) + " outside 1.." + std::to_string(n));
    }
    if (value <= previous) {
      throw Error(ErrorCode::ParseError, "indices must be strictly ascending in '" + std::string(literal) + "'");
    }
    previous = value;
    side = side | MarkedSet::singleton(value);
    pos = comma + 1;
  }
  return BoundaryPartition(n, side);
}

std::vector<BoundaryPartition> enumerate_boundary_partitions(int n) {
  require_supported_n(n);
  std::vector<BoundaryPartition> out;
  out.reserve((std::size_t{1} << (n - 1)) - n - 1);
  const std::uint32_t limit = std::uint32_t{1} << (n - 1);
  for (std::uint32_t bits = 0; bits < limit; ++bits) {
    const int k = std::popcount(bits);
    if (k >= 2 && n - k >= 2) out.emplace_back(n, MarkedSet(bits));
  }
  return out;
}

Rational WeightVector::sum_over(MarkedSet set) const {
  Rational total(0);
  for (int i : set.indices()) total += weights_[i - 1];
  return total;
}

WeightVector make_weight_vector(int n, std::vector<Rational> weights, bool strict) {
  require_supported_n(n);
  if (static_cast<int>(weights.size()) != n) {
    throw Error(ErrorCode::WrongArity,
                "expected " + std::to_string(n) + " weights, got " + std::to_string(weights.size()));
  }
  Rational total(0);
  for (std::size_t s = 0; s < weights.size(); ++s) {
    weights[s].canonicalize();
    if (weights[s] <= 0 || weights[s] >= 1) {
      throw Error(ErrorCode::WeightOutOfRange,
                  "mu_" + std::to_string(s + 1) + " = " + to_string(weights[s]) + " is not in (0,1)");
    }
    total += weights[s];
  }
  if (total != 2) throw Error(ErrorCode::WeightSumNotTwo, "weights sum to " + to_string(total) + ", expected 2");

  WeightVector mu;
  mu.weights_ = std::move(weights);
  mu.walls_ = check_admissibility(mu);
  if (strict && !mu.walls_.empty()) {
    throw Error(ErrorCode::AdmissibilityWall, "subset {" + to_literal(mu.walls_.front()) + "} has weight sum 1");
  }
  return mu;
}

WeightVector make_weight_vector(std::vector<Rational> weights, bool strict) {
  const int n = static_cast<int>(weights.size());
  return make_weight_vector(n, std::move(weights), strict);
}

SideSum mu_side_sum(const WeightVector& mu, const BoundaryPartition& s) {
  Rational canonical = mu.sum_over(s.side());
  Rational other = Rational(2) - canonical;
  if (other < canonical) return {std::move(other), s.other_side()};
  return {std::move(canonical), s.side()};
}

std::vector<MarkedSet> check_admissibility(const WeightVector& mu) {
  const int n = mu.n();
  const std::uint32_t limit = std::uint32_t{1} << (n - 1);
  std::vector<Rational> sums(limit);
  std::vector<MarkedSet> walls;
  for (std::uint32_t bits = 1; bits < limit; ++bits) {
    sums[bits] = sums[bits & (bits - 1)] + mu.weights()[std::countr_zero(bits)];
    if (sums[bits] == 1) walls.emplace_back(bits);
  }
  return walls;
}

}  // namespace m0n
