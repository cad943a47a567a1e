#include "m0n/qdivisor.hpp"

#include "m0n/error.hpp"

namespace m0n {

QDivisor::QDivisor(int n) : n_(n) { require_supported_n(n); }

Rational QDivisor::coefficient(const BoundaryPartition& s) const {
  const auto it = terms_.find(s);
  return it == terms_.end() ? Rational(0) : it->second;
}

void QDivisor::add(const BoundaryPartition& s, const Rational& c) {
  if (s.n() != n_) {
    throw Error(ErrorCode::WrongN, "partition for n = " + std::to_string(s.n()) + " added to a divisor on n = " +
                                       std::to_string(n_));
  }
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(s, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

void QDivisor::add(const QDivisor& other, const Rational& c) {
  if (other.n_ != n_) {
    throw Error(ErrorCode::WrongN, "cannot add divisors on n = " + std::to_string(other.n_) + " and n = " +
                                       std::to_string(n_));
  }
  if (c == 0) return;
  for (const auto& [s, coeff] : other.terms_) add(s, coeff * c);
}

QDivisor QDivisor::scaled(const Rational& c) const {
  QDivisor out(n_);
  out.add(*this, c);
  return out;
}

QDivisor boundary_divisor(const BoundaryPartition& s) {
  QDivisor d(s.n());
  d.add(s, Rational(1));
  return d;
}

}  // namespace m0n
