#include "m0n/divisors.hpp"

#include <algorithm>

#include "m0n/error.hpp"

namespace m0n {

std::pair<int, int> default_psi_reference(int i) {
  if (i == 1) return {2, 3};
  if (i == 2) return {1, 3};
  return {1, 2};
}

QDivisor psi_class(int i, int j, int k, int n) {
  require_supported_n(n);
  for (int x : {i, j, k}) {
    if (x < 1 || x > n) throw Error(ErrorCode::IndexClash, "index " + std::to_string(x) + " outside 1.." + std::to_string(n));
  }
  if (i == j || j == k || i == k) {
    throw Error(ErrorCode::IndexClash, "psi reference indices must be distinct, got (" + std::to_string(i) + "," +
                                           std::to_string(j) + "," + std::to_string(k) + ")");
  }
  QDivisor psi(n);
  for (const auto& s : enumerate_boundary_partitions(n)) {
    if (s.separates(i, j) && s.separates(i, k)) psi.add(s, Rational(1));
  }
  return psi;
}

QDivisor psi_class(int i, int n) {
  const auto [j, k] = default_psi_reference(i);
  return psi_class(i, j, k, n);
}

QDivisor canonical_divisor(int n) {
  QDivisor k(n);
  for (const auto& s : enumerate_boundary_partitions(n)) {
    const int a = s.side().size();
    const int b = n - a;
    k.add(s, ratio((a - 2) * (b - 2) - 2, n - 1));
  }
  return k;
}

QDivisor psi_minus_2delta(int n) {
  QDivisor k(n);
  for (int s = 1; s <= n; ++s) k += psi_class(s, n);
  for (const auto& s : enumerate_boundary_partitions(n)) k.add(s, Rational(-2));
  return k;
}

QDivisor d_mu(const WeightVector& mu) {
  QDivisor d(mu.n());
  for (const auto& s : enumerate_boundary_partitions(mu.n())) {
    const auto [mu_s, light] = mu_side_sum(mu, s);
    d.add(s, Rational(light.size() - 1) * (mu_s - 1) + 1);
  }
  return d;
}

QDivisor weighted_divisor(const WeightVector& mu) {
  const int n = mu.n();
  QDivisor d(n);
  for (const auto& s : enumerate_boundary_partitions(n)) {
    const auto [mu_s, light] = mu_side_sum(mu, s);
    const int k = light.size();
    d.add(s, Rational(k - 1) * (mu_s - ratio(k, n - 1)));
  }
  return d;
}

QDivisor chern_divisor(const WeightVector& mu, const PsiReferences& refs) {
  const int n = mu.n();
  if (!refs.empty() && static_cast<int>(refs.size()) != n) {
    throw Error(ErrorCode::WrongArity, "need one psi reference pair per marked point");
  }
  QDivisor d(n);
  for (int s = 1; s <= n; ++s) {
    const auto [j, k] = refs.empty() ? default_psi_reference(s) : refs[s - 1];
    d.add(psi_class(s, j, k, n), -mu.weight(s));
  }
  for (const auto& s : enumerate_boundary_partitions(n)) d.add(s, mu_side_sum(mu, s).sum);
  return d.scaled(Rational(1, 2));
}

Rational kawamata_lambda(const WeightVector& mu, int s, int s_prime) {
  if (s < 1 || s_prime > mu.n() || s >= s_prime) {
    throw Error(ErrorCode::BadPairOrder, "need 1 <= s < s' <= " + std::to_string(mu.n()) + ", got (" +
                                             std::to_string(s) + "," + std::to_string(s_prime) + ")");
  }
  Rational interior(0);
  for (int k = s + 1; k < s_prime; ++k) interior += mu.weight(k);
  const Rational span = interior + mu.weight(s) + mu.weight(s_prime);
  if (span <= 1 || interior >= 1) return Rational(0);
  return std::min({mu.weight(s), mu.weight(s_prime), Rational(span - 1), Rational(1 - interior)});
}

KawamataLambdaTable kawamata_lambda_table(const WeightVector& mu) {
  KawamataLambdaTable table;
  for (int s = 1; s <= mu.n(); ++s) {
    for (int t = s + 1; t <= mu.n(); ++t) table[{s, t}] = kawamata_lambda(mu, s, t);
  }
  return table;
}

QDivisor kawamata_divisor(const WeightVector& mu) {
  const auto table = kawamata_lambda_table(mu);
  QDivisor d(mu.n());
  for (const auto& s : enumerate_boundary_partitions(mu.n())) {
    const MarkedSet light = mu_side_sum(mu, s).side;
    Rational coefficient(0);
    for (const auto& [pair, lambda] : table) {
      if (light.contains(pair.first) && light.contains(pair.second)) coefficient += lambda;
    }
    d.add(s, coefficient);
  }
  return d;
}

Integer minimal_scaling(const WeightVector& mu) {
  Integer d(1);
  for (const auto& w : mu.weights()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), w.get_den_mpz_t());
  return d;
}

std::vector<std::pair<int, int>> kawamata_multi_index(const WeightVector& mu, const Integer& d) {
  if (d <= 0) throw Error(ErrorCode::NonIntegralScaling, "scaling must be positive");
  if (d > 10'000'000) throw Error(ErrorCode::UnsupportedN, "scaling " + d.get_str() + " is too large to enumerate");
  std::vector<long> cumulative{0};  // d * (mu_1 + ... + mu_s)
  Rational partial(0);
  for (const auto& w : mu.weights()) {
    partial += w;
    const Rational scaled = partial * d;
    if (!is_integer(scaled)) {
      throw Error(ErrorCode::NonIntegralScaling, "d = " + d.get_str() + " does not clear the denominator of " +
                                                     to_string(w));
    }
    cumulative.push_back(scaled.get_num().get_si());
  }
  const long length = d.get_si();
  auto block_of = [&cumulative](long position) {
    // s with cumulative[s-1] < position <= cumulative[s]
    const auto it = std::lower_bound(cumulative.begin() + 1, cumulative.end(), position);
    return static_cast<int>(it - cumulative.begin());
  };
  std::vector<std::pair<int, int>> j;
  j.reserve(static_cast<std::size_t>(length));
  for (long i = 1; i <= length; ++i) j.emplace_back(block_of(i), block_of(length + i));
  return j;
}

KawamataLambdaTable kawamata_lambda_via_counts(const WeightVector& mu, const Integer& d) {
  const auto j = kawamata_multi_index(mu, d);
  KawamataLambdaTable table;
  for (int s = 1; s <= mu.n(); ++s) {
    for (int t = s + 1; t <= mu.n(); ++t) table[{s, t}] = 0;
  }
  for (const auto& [a, b] : j) {
    if (a == b) throw Error(ErrorCode::InternalInvariant, "multi-index repeats a point within a pair");
    table[{std::min(a, b), std::max(a, b)}] += 1;
  }
  for (auto& [pair, value] : table) value /= d;
  return table;
}

}  // namespace m0n
