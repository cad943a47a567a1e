#pragma once

#include <map>

#include "m0n/combinatorics.hpp"
#include "m0n/rational.hpp"

namespace m0n {

/// Rational combination of boundary divisors D_S on the moduli space of
/// n-pointed genus-zero curves. Zero coefficients are never stored.
class QDivisor {
 public:
  using Storage = std::map<BoundaryPartition, Rational>;

  explicit QDivisor(int n);

  int n() const { return n_; }
  const Storage& coefficients() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  Rational coefficient(const BoundaryPartition& s) const;

  /// Adds c * D_S. Throws WrongN if S lives on a different n.
  void add(const BoundaryPartition& s, const Rational& c);
  void add(const QDivisor& other, const Rational& c = Rational(1));

  QDivisor scaled(const Rational& c) const;
  QDivisor& operator+=(const QDivisor& other) {
    add(other);
    return *this;
  }
  friend QDivisor operator+(QDivisor a, const QDivisor& b) { return a += b; }
  friend QDivisor operator-(QDivisor a, const QDivisor& b) {
    a.add(b, Rational(-1));
    return a;
  }
  friend QDivisor operator*(const Rational& c, const QDivisor& d) { return d.scaled(c); }
  friend bool operator==(const QDivisor&, const QDivisor&) = default;

 private:
  int n_;
  Storage terms_;
};

/// The single divisor D_S with coefficient 1.
QDivisor boundary_divisor(const BoundaryPartition& s);

}  // namespace m0n
