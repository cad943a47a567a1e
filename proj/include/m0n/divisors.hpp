#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "m0n/combinatorics.hpp"
#include "m0n/qdivisor.hpp"
#include "m0n/rational.hpp"

namespace m0n {

/// Reference pairs (j, k) used to expand psi_s, indexed by s - 1. An empty
/// vector selects the default pair for every s.
using PsiReferences = std::vector<std::pair<int, int>>;

/// The two smallest indices different from i.
std::pair<int, int> default_psi_reference(int i);

/// psi_i as the sum of D_S over partitions separating i from {j, k}.
QDivisor psi_class(int i, int j, int k, int n);
QDivisor psi_class(int i, int n);

/// K = sum_S ((|I_0|-2)(|I_1|-2) - 2)/(n-1) D_S.
QDivisor canonical_divisor(int n);

/// sum_s psi_s - 2 delta, each psi_s expanded with its default pair.
QDivisor psi_minus_2delta(int n);

/// D_mu with coefficient (|I_1|-1)(mu_S-1)+1 on each D_S.
QDivisor d_mu(const WeightVector& mu);

/// sum_S (|I_1|-1)(mu_S - |I_1|/(n-1)) D_S, equal to K + D_mu coefficientwise.
QDivisor weighted_divisor(const WeightVector& mu);

/// (1/2)(-sum_s mu_s psi_s + sum_S mu_S D_S).
QDivisor chern_divisor(const WeightVector& mu, const PsiReferences& refs = {});

/// Pair coefficient lambda(s, s') of the Kawamata divisor; requires 1 <= s < s' <= n.
Rational kawamata_lambda(const WeightVector& mu, int s, int s_prime);

/// lambda(s, s') for every 1 <= s < s' <= n.
using KawamataLambdaTable = std::map<std::pair<int, int>, Rational>;

KawamataLambdaTable kawamata_lambda_table(const WeightVector& mu);

/// sum_S sum_{s<s'} delta_S(s,s') lambda(s,s') D_S, with delta_S(s,s') = 1 iff
/// both s and s' lie on the light side of S.
QDivisor kawamata_divisor(const WeightVector& mu);

/// Smallest d > 0 with d * mu_s integral for all s.
Integer minimal_scaling(const WeightVector& mu);

/// The multi-index J = (j_1, j'_1, ..., j_d, j'_d) built from consecutive
/// blocks of length d * mu_s. Throws NonIntegralScaling.
std::vector<std::pair<int, int>> kawamata_multi_index(const WeightVector& mu, const Integer& d);

/// lambda(s, s') as (1/d) times the number of i with (j_i, j'_i) = (s, s').
KawamataLambdaTable kawamata_lambda_via_counts(const WeightVector& mu, const Integer& d);

}  // namespace m0n
