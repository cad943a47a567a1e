#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "m0n/combinatorics.hpp"
#include "m0n/divisors.hpp"
#include "m0n/intersect.hpp"
#include "m0n/rational.hpp"

namespace m0n {

/// Largest n for the intersection-engine formulas.
inline constexpr int kMaxEngineN = 9;
/// Largest n for the set-partition formula.
inline constexpr int kMaxPartitionN = 12;

// Volume of M_{0,n} under the complex hyperbolic metric attached to mu,
// computed by independent routes. All are exact and must agree.

/// (K + D_mu)^{n-3} / (n-2)^{n-3}.
Rational volume_ke(const WeightVector& mu, const IntersectionEngine& engine = default_engine());
/// (weighted_divisor / (n-2))^{n-3}.
Rational volume_weighted(const WeightVector& mu, const IntersectionEngine& engine = default_engine());
/// chern_divisor^{n-3}.
Rational volume_psi(const WeightVector& mu, const IntersectionEngine& engine = default_engine(),
                    const PsiReferences& refs = {});
/// kawamata_divisor^{n-3}.
Rational volume_kawamata(const WeightVector& mu, const IntersectionEngine& engine = default_engine());

/// Alternating sum over set partitions Q of {1..n} with at least three blocks:
/// ((-1)^N/(N+1)) sum_Q (-1)^{|Q|+1} (|Q|-3)! prod_B max(0, 1 - mu_B)^{|B|-1}.
Rational volume_mcmullen(const WeightVector& mu);

/// Closed forms for n = 5 (weights sorted descending internally).
Rational five_point_closed_form(const WeightVector& mu);
/// Which of the six n = 5 regimes mu falls in (1-based, in the order the
/// closed forms are listed in five_point_closed_form).
int five_point_regime(const WeightVector& mu);

/// 6 beta^3 - 3 max(2 beta - 1/3, 0)^3 for mu = (a, a, a, b, b, b), a = 2/3 - b.
Rational symmetric_closed_form(const Rational& beta);
/// The weight vector of that family.
WeightVector symmetric_weights(const Rational& beta);
/// beta if mu has the (a, a, a, b, b, b) shape with 0 < b <= a.
std::optional<Rational> symmetric_beta(const WeightVector& mu);

struct VolumeReport {
  int n = 0;
  std::vector<Rational> weights;
  /// Keyed by formula name: ke, weighted, psi, kawamata, mcmullen,
  /// five_point, symmetric.
  std::map<std::string, Rational> results;
  std::map<std::string, double> milliseconds;
  std::vector<MarkedSet> walls;
  bool agree = true;
};

inline const std::vector<std::string>& general_formulas() {
  static const std::vector<std::string> names{"ke", "weighted", "psi", "kawamata", "mcmullen"};
  return names;
}

/// Evaluates one named formula (any of general_formulas()).
Rational volume_by_name(const std::string& formula, const WeightVector& mu,
                        const IntersectionEngine& engine = default_engine());

/// Runs the requested formulas (all general ones by default, plus the closed
/// forms when mu has the matching shape) and records agreement.
VolumeReport cross_check(const WeightVector& mu, const IntersectionEngine& engine = default_engine(),
                         const std::vector<std::string>& formulas = {});

}  // namespace m0n
