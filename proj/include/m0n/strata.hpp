#pragma once

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "m0n/combinatorics.hpp"
#include "m0n/rational.hpp"

namespace m0n {

/// Dual tree of a boundary stratum. Vertex labels partition {1..n} (empty
/// labels allowed); the codimension is the number of edges.
struct StableTree {
  int n = 0;
  std::vector<MarkedSet> labels;
  std::vector<std::pair<int, int>> edges;

  int vertex_count() const { return static_cast<int>(labels.size()); }
  int codimension() const { return static_cast<int>(edges.size()); }
  /// adjacency()[v] lists (neighbour, edge index) pairs.
  std::vector<std::vector<std::pair<int, int>>> adjacency() const;
};

/// Isomorphism-invariant encoding of a StableTree. Opaque.
class CanonicalTreeKey {
 public:
  CanonicalTreeKey() = default;
  explicit CanonicalTreeKey(std::string bytes) : bytes_(std::move(bytes)) {}
  const std::string& bytes() const { return bytes_; }
  friend auto operator<=>(const CanonicalTreeKey&, const CanonicalTreeKey&) = default;

 private:
  std::string bytes_;
};

StableTree trivial_tree(int n);
StableTree divisor_tree(const BoundaryPartition& s);

struct StabilityReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Checks the labelling, tree shape and |label| + degree >= 3 at each vertex.
StabilityReport validate_stability(const StableTree& t);

/// Rooted AHU encoding, rooted at the vertex owning index 1. Throws InvalidTree.
CanonicalTreeKey canonical_key(const StableTree& t);

/// The same tree with vertices renumbered in canonical preorder and edges
/// written (parent, child); isomorphic inputs give identical outputs.
StableTree canonicalize(const StableTree& t);

/// Parses {"labels": [[1,2],[5],[3,4]], "edges": [[0,1],[1,2]]}.
StableTree tree_from_json(int n, const std::string& json_text);
std::string tree_to_json(const StableTree& t);

/// Finite rational combination of strata of one fixed codimension.
/// Zero coefficients are never stored.
class FormalCycle {
 public:
  struct Term {
    StableTree tree;
    Rational coefficient;
  };
  using Storage = std::map<CanonicalTreeKey, Term>;

  FormalCycle(int n, int codimension) : n_(n), codimension_(codimension) {}
  static FormalCycle of(const StableTree& t, const Rational& coefficient = Rational(1));

  int n() const { return n_; }
  int codimension() const { return codimension_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Storage::const_iterator begin() const { return terms_.begin(); }
  Storage::const_iterator end() const { return terms_.end(); }

  /// Coefficient of the stratum isomorphic to t (0 if absent).
  Rational coefficient(const StableTree& t) const;

  /// Adds c * t. Throws MixedCodimension if t has a different codimension or n.
  void add(const StableTree& t, const Rational& c);
  /// Adds c * other.
  void add(const FormalCycle& other, const Rational& c = Rational(1));

  FormalCycle& operator+=(const FormalCycle& other) {
    add(other);
    return *this;
  }
  FormalCycle scaled(const Rational& c) const;

  /// Sum of all coefficients; the intersection number in top codimension.
  Rational total() const;

  friend bool operator==(const FormalCycle& a, const FormalCycle& b);

 private:
  void add_canonical(const CanonicalTreeKey& key, const StableTree& canonical_tree, const Rational& c);

  int n_;
  int codimension_;
  Storage terms_;
};

FormalCycle cycle_add(const FormalCycle& a, const FormalCycle& b);
FormalCycle cycle_scale(const FormalCycle& c, const Rational& factor);
Rational cycle_total(const FormalCycle& c);

}  // namespace m0n
