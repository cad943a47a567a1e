#include "m0n/volume.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

#include "m0n/divisors.hpp"
#include "m0n/error.hpp"

namespace m0n {

namespace {

void require_engine_n(int n) {
  if (n > kMaxEngineN) {
    throw Error(ErrorCode::UnsupportedN, "intersection formulas are capped at n = " + std::to_string(kMaxEngineN) +
                                             ", got " + std::to_string(n));
  }
}

}  // namespace

Rational volume_ke(const WeightVector& mu, const IntersectionEngine& engine) {
  const int n = mu.n();
  require_engine_n(n);
  const Rational top = engine.qdivisor_power(canonical_divisor(n) + d_mu(mu), n);
  return top / pow(Rational(n - 2), static_cast<unsigned>(n - 3));
}

Rational volume_weighted(const WeightVector& mu, const IntersectionEngine& engine) {
  const int n = mu.n();
  require_engine_n(n);
  return engine.qdivisor_power(weighted_divisor(mu).scaled(ratio(1, n - 2)), n);
}

Rational volume_psi(const WeightVector& mu, const IntersectionEngine& engine, const PsiReferences& refs) {
  require_engine_n(mu.n());
  return engine.qdivisor_power(chern_divisor(mu, refs), mu.n());
}

Rational volume_kawamata(const WeightVector& mu, const IntersectionEngine& engine) {
  require_engine_n(mu.n());
  return engine.qdivisor_power(kawamata_divisor(mu), mu.n());
}

Rational volume_mcmullen(const WeightVector& mu) {
  const int n = mu.n();
  if (n > kMaxPartitionN) {
    throw Error(ErrorCode::UnsupportedN, "partition formula is capped at n = " + std::to_string(kMaxPartitionN) +
                                             ", got " + std::to_string(n));
  }
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;

  // Block factors max(0, 1 - mu_B)^{|B|-1}.
  std::vector<Rational> factor(full + 1);
  {
    std::vector<Rational> sums(full + 1);
    for (std::uint32_t b = 1; b <= full; ++b) {
      sums[b] = sums[b & (b - 1)] + mu.weights()[std::countr_zero(b)];
      const Rational slack = 1 - sums[b];
      const int size = std::popcount(b);
      factor[b] = (size == 1) ? Rational(1) : (slack > 0 ? pow(slack, size - 1) : Rational(0));
    }
  }

  // by_blocks[mask][k]: sum over partitions of mask into k blocks of the
  // product of block factors. The block holding the lowest element is peeled.
  std::vector<std::vector<Rational>> by_blocks(full + 1);
  by_blocks[0] = {Rational(1)};
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    std::vector<Rational> acc(static_cast<std::size_t>(std::popcount(mask)) + 1);
    const std::uint32_t low = mask & (~mask + 1);
    const std::uint32_t others = mask & ~low;
    // iterate subsets of others (including empty) to form B = low | sub
    for (std::uint32_t sub = others;; sub = (sub - 1) & others) {
      const std::uint32_t block = low | sub;
      if (factor[block] != 0) {
        const auto& rest = by_blocks[mask & ~block];
        for (std::size_t k = 0; k < rest.size(); ++k) {
          if (rest[k] != 0) acc[k + 1] += factor[block] * rest[k];
        }
      }
      if (sub == 0) break;
    }
    by_blocks[mask] = std::move(acc);
  }

  Rational sum(0);
  Rational factorial(1);  // (k-3)!
  const auto& blocks = by_blocks[full];
  for (std::size_t k = 3; k < blocks.size(); ++k) {
    if (k > 3) factorial *= static_cast<long>(k - 3);
    const Rational term = factorial * blocks[k];
    if (k % 2 == 1) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  const int big_n = n - 3;
  Rational volume = sum / (big_n + 1);
  if (big_n % 2 == 1) volume = -volume;
  return volume;
}

int five_point_regime(const WeightVector& mu) {
  if (mu.n() != 5) throw Error(ErrorCode::WrongN, "closed form applies to n = 5 only");
  std::vector<Rational> m = mu.weights();
  std::sort(m.begin(), m.end(), std::greater<>());
  if (m[1] + m[2] > 1) return 6;
  if (m[0] + m[4] >= 1) return 1;
  if (m[0] + m[3] >= 1) return 2;
  if (m[0] + m[2] >= 1) return 3;
  if (m[0] + m[1] >= 1) return 4;
  return 5;
}

Rational five_point_closed_form(const WeightVector& mu) {
  const int regime = five_point_regime(mu);
  std::vector<Rational> w = mu.weights();
  std::sort(w.begin(), w.end(), std::greater<>());
  auto m = [&w](int i) -> const Rational& { return w[i - 1]; };
  auto sq = [](const Rational& x) { return Rational(x * x); };
  switch (regime) {
    case 1: return sq(1 - m(1));
    case 2: return sq(1 - m(1)) - sq(1 - m(1) - m(5));
    case 3: return sq(1 - m(1)) - sq(1 - m(1) - m(4)) - sq(1 - m(1) - m(5));
    case 4: return 2 * m(3) * m(5) - sq(1 - m(1) - m(4)) - sq(1 - m(2) - m(4));
    case 5: {
      auto gap = [&m](int i) {
        // 1 - mu_i - mu_{i+1}, indices mod 5
        const int a = (i + 4) % 5 + 1;
        const int b = i % 5 + 1;
        return Rational(1 - m(a) - m(b));
      };
      Rational cross(0);
      Rational squares(0);
      for (int i = 1; i <= 5; ++i) {
        cross += gap(i - 1) * gap(i);
        squares += sq(gap(i));
      }
      return 2 * cross - squares;
    }
    default: return 2 * m(4) * m(5);
  }
}

Rational symmetric_closed_form(const Rational& beta) {
  if (beta <= 0 || beta > Rational(1, 3)) {
    throw Error(ErrorCode::BetaOutOfRange, "beta = " + to_string(beta) + " is not in (0, 1/3]");
  }
  const Rational excess = std::max(Rational(2 * beta - Rational(1, 3)), Rational(0));
  return 6 * pow(beta, 3) - 3 * pow(excess, 3);
}

WeightVector symmetric_weights(const Rational& beta) {
  if (beta <= 0 || beta > Rational(1, 3)) {
    throw Error(ErrorCode::BetaOutOfRange, "beta = " + to_string(beta) + " is not in (0, 1/3]");
  }
  const Rational alpha = Rational(2, 3) - beta;
  return make_weight_vector(6, {alpha, alpha, alpha, beta, beta, beta});
}

std::optional<Rational> symmetric_beta(const WeightVector& mu) {
  if (mu.n() != 6) return std::nullopt;
  const auto& w = mu.weights();
  if (w[0] != w[1] || w[1] != w[2] || w[3] != w[4] || w[4] != w[5] || w[3] > w[0]) return std::nullopt;
  return w[3];
}

Rational volume_by_name(const std::string& formula, const WeightVector& mu, const IntersectionEngine& engine) {
  if (formula == "ke") return volume_ke(mu, engine);
  if (formula == "weighted") return volume_weighted(mu, engine);
  if (formula == "psi") return volume_psi(mu, engine);
  if (formula == "kawamata") return volume_kawamata(mu, engine);
  if (formula == "mcmullen") return volume_mcmullen(mu);
  if (formula == "five_point") return five_point_closed_form(mu);
  if (formula == "symmetric") {
    const auto beta = symmetric_beta(mu);
    if (!beta) throw Error(ErrorCode::WrongN, "weights are not of the form (a,a,a,b,b,b) with b <= a");
    return symmetric_closed_form(*beta);
  }
  throw Error(ErrorCode::ParseError, "unknown formula '" + formula + "'");
}

VolumeReport cross_check(const WeightVector& mu, const IntersectionEngine& engine,
                         const std::vector<std::string>& formulas) {
  VolumeReport report;
  report.n = mu.n();
  report.weights = mu.weights();
  report.walls = mu.walls();

  std::vector<std::string> selected = formulas;
  if (selected.empty()) {
    selected = general_formulas();
    if (mu.n() == 5) selected.push_back("five_point");
    if (symmetric_beta(mu)) selected.push_back("symmetric");
  }
  for (const auto& name : selected) {
    const auto start = std::chrono::steady_clock::now();
    report.results[name] = volume_by_name(name, mu, engine);
    report.milliseconds[name] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  report.agree = std::all_of(report.results.begin(), report.results.end(),
                             [&report](const auto& kv) { return kv.second == report.results.begin()->second; });
  return report;
}

}  // namespace m0n
