#pragma once

#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "m0n/combinatorics.hpp"
#include "m0n/qdivisor.hpp"
#include "m0n/rational.hpp"
#include "m0n/strata.hpp"

namespace m0n {

// Red: nonempty label inside the canonical side I_0. Blue: nonempty label
// inside I_1. Black: label meets both sides. White: empty label.
enum class VertexColor { Red, Blue, Black, White };

std::vector<VertexColor> color_vertices(const StableTree& t, const BoundaryPartition& s);

/// A half-edge at a vertex: either a marked index it carries or an incident edge.
struct Flag {
  enum class Kind { Marked, Edge };
  Kind kind;
  int value;  // marked index (1-based) or edge index into StableTree::edges

  static Flag marked(int i) { return {Kind::Marked, i}; }
  static Flag edge(int e) { return {Kind::Edge, e}; }
  friend auto operator<=>(const Flag&, const Flag&) = default;
};

/// Flags of a vertex: marked indices ascending, then incident edges ordered
/// by the smallest marked index on the far side of each edge.
std::vector<Flag> ordered_flags(const StableTree& t, int vertex);

/// Picks the pair {a_1, a_2} used to expand the psi class at `vertex` along
/// `edge`. `candidates` are the vertex's ordered flags with the edge removed.
using PairChooser = std::function<std::pair<Flag, Flag>(const StableTree& t, int vertex, int edge,
                                                        const std::vector<Flag>& candidates)>;

/// Default choice: the first two candidates.
std::pair<Flag, Flag> smallest_pair(const StableTree& t, int vertex, int edge, const std::vector<Flag>& candidates);

/// Sum of the trees obtained by splitting `vertex` into A_1 -- A_2 with the
/// edge on the A_1 side, the pair on the A_2 side and both sides carrying at
/// least two flags. Each tree enters with coefficient +1.
FormalCycle sigma_split(const StableTree& t, int vertex, int edge, std::pair<Flag, Flag> pair);

/// Write-once memo shared by engines. Safe for concurrent use; inserting a
/// value that differs from an existing entry throws InternalInvariant.
class MemoStore {
 public:
  using ProductKey = std::vector<BoundaryPartition>;

  std::shared_ptr<const FormalCycle> find_cycle(const BoundaryPartition& s, const CanonicalTreeKey& t) const;
  std::shared_ptr<const FormalCycle> insert_cycle(const BoundaryPartition& s, const CanonicalTreeKey& t,
                                                  FormalCycle value);

  /// Keys must be sorted.
  std::optional<Rational> find_product(const ProductKey& key) const;
  void insert_product(const ProductKey& key, const Rational& value);
  /// Finished top products for one n, in key order.
  std::vector<std::pair<ProductKey, Rational>> products(int n) const;

  std::size_t cycle_entries() const;
  std::size_t product_entries() const;
  void clear();

 private:
  static std::string cycle_key(const BoundaryPartition& s, const CanonicalTreeKey& t);

  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, std::shared_ptr<const FormalCycle>> cycles_;
  std::map<ProductKey, Rational> products_;
};

struct EngineOptions {
  bool use_memo = true;
  /// Empty means smallest_pair. Engines with a custom chooser should not
  /// share a MemoStore with default engines: intermediate cycles differ.
  PairChooser pair_chooser;
  /// Coefficient of the excess-intersection (separating edge) terms. Only
  /// mutation tests change it.
  int excess_sign = -1;
};

/// Boundary-divisor intersection on strata trees, extended linearly to cycles
/// and rational divisors.
class IntersectionEngine {
 public:
  IntersectionEngine();
  explicit IntersectionEngine(EngineOptions options, std::shared_ptr<MemoStore> memo = nullptr);

  FormalCycle intersect_divisor_tree(const BoundaryPartition& s, const StableTree& t) const;
  FormalCycle intersect_divisor_cycle(const BoundaryPartition& s, const FormalCycle& c) const;
  /// Sum over S of c_S * (D_S . c).
  FormalCycle intersect_qdivisor_cycle(const QDivisor& d, const FormalCycle& c) const;

  /// D_{S_1} ... D_{S_{n-3}}; the list must have exactly n-3 entries.
  Rational product_number(std::vector<BoundaryPartition> divisors, int n) const;
  /// Product of n-3 rational divisors.
  Rational qdivisor_product(std::span<const QDivisor> divisors, int n) const;
  /// Top self-intersection D^{n-3}.
  Rational qdivisor_power(const QDivisor& d, int n) const;

  const EngineOptions& options() const { return options_; }
  MemoStore& memo() const { return *memo_; }
  std::shared_ptr<MemoStore> shared_memo() const { return memo_; }

 private:
  std::shared_ptr<const FormalCycle> lookup(const BoundaryPartition& s, const CanonicalTreeKey& key,
                                            const StableTree& canonical_tree) const;
  FormalCycle compute(const BoundaryPartition& s, const StableTree& t) const;
  std::pair<Flag, Flag> choose_pair(const StableTree& t, int vertex, int edge) const;

  EngineOptions options_;
  std::shared_ptr<MemoStore> memo_;
};

/// Process-wide engine with the default options and memo.
const IntersectionEngine& default_engine();

FormalCycle intersect_divisor_tree(const BoundaryPartition& s, const StableTree& t);
FormalCycle intersect_divisor_cycle(const BoundaryPartition& s, const FormalCycle& c);
Rational product_number(const std::vector<BoundaryPartition>& divisors, int n);
Rational qdivisor_power(const QDivisor& d, int n);
Rational qdivisor_product(std::span<const QDivisor> divisors, int n);

}  // namespace m0n
