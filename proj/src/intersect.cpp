#include "m0n/intersect.hpp"

#include <algorithm>
#include <mutex>

#include "m0n/error.hpp"

namespace m0n {

namespace {

using Adjacency = std::vector<std::vector<std::pair<int, int>>>;

struct BranchColors {
  bool red = false;
  bool blue = false;
};

// Colors present in the component containing `start` after removing the
// edge towards `from`.
BranchColors branch_colors(const Adjacency& adj, const std::vector<VertexColor>& colors, int start, int from) {
  BranchColors out;
  std::vector<std::pair<int, int>> stack{{start, from}};
  while (!stack.empty()) {
    const auto [v, parent] = stack.back();
    stack.pop_back();
    if (colors[v] == VertexColor::Red) out.red = true;
    if (colors[v] == VertexColor::Blue) out.blue = true;
    for (const auto& [w, e] : adj[v]) {
      if (w != parent) stack.emplace_back(w, v);
    }
  }
  return out;
}

int min_index_behind(const StableTree& t, const Adjacency& adj, int start, int from) {
  int best = t.n + 1;
  std::vector<std::pair<int, int>> stack{{start, from}};
  while (!stack.empty()) {
    const auto [v, parent] = stack.back();
    stack.pop_back();
    if (!t.labels[v].empty()) best = std::min(best, t.labels[v].min_index());
    for (const auto& [w, e] : adj[v]) {
      if (w != parent) stack.emplace_back(w, v);
    }
  }
  return best;
}

[[noreturn]] void invariant_failure(const std::string& what) { throw Error(ErrorCode::InternalInvariant, what); }

// Replaces `vertex` by two vertices joined by a new edge: `vertex` keeps
// `keep_label` and the edges not listed in `moved_edges`; the new vertex gets
// `new_label` and the moved edges.
StableTree split_vertex(const StableTree& t, int vertex, MarkedSet keep_label, MarkedSet new_label,
                        const std::vector<int>& moved_edges) {
  StableTree out = t;
  const int fresh = out.vertex_count();
  out.labels[vertex] = keep_label;
  out.labels.push_back(new_label);
  for (int e : moved_edges) {
    auto& [a, b] = out.edges[e];
    if (a == vertex) {
      a = fresh;
    } else {
      b = fresh;
    }
  }
  out.edges.emplace_back(vertex, fresh);
  return out;
}

}  // namespace

std::vector<VertexColor> color_vertices(const StableTree& t, const BoundaryPartition& s) {
  std::vector<VertexColor> colors;
  colors.reserve(t.labels.size());
  const MarkedSet i0 = s.side();
  const MarkedSet i1 = s.other_side();
  for (const auto& label : t.labels) {
    if (label.empty()) {
      colors.push_back(VertexColor::White);
    } else if (label.subset_of(i0)) {
      colors.push_back(VertexColor::Red);
    } else if (label.subset_of(i1)) {
      colors.push_back(VertexColor::Blue);
    } else {
      colors.push_back(VertexColor::Black);
    }
  }
  return colors;
}

std::vector<Flag> ordered_flags(const StableTree& t, int vertex) {
  std::vector<Flag> flags;
  for (int i : t.labels[vertex].indices()) flags.push_back(Flag::marked(i));
  const auto adj = t.adjacency();
  std::vector<std::pair<int, int>> edges;  // (min index behind, edge)
  for (const auto& [w, e] : adj[vertex]) edges.emplace_back(min_index_behind(t, adj, w, vertex), e);
  std::sort(edges.begin(), edges.end());
  for (const auto& [key, e] : edges) flags.push_back(Flag::edge(e));
  return flags;
}

std::pair<Flag, Flag> smallest_pair(const StableTree&, int, int, const std::vector<Flag>& candidates) {
  if (candidates.size() < 2) invariant_failure("vertex has fewer than two flags besides the split edge");
  return {candidates[0], candidates[1]};
}

FormalCycle sigma_split(const StableTree& t, int vertex, int edge, std::pair<Flag, Flag> pair) {
  if (vertex < 0 || vertex >= t.vertex_count() || edge < 0 || edge >= t.codimension() ||
      (t.edges[edge].first != vertex && t.edges[edge].second != vertex)) {
    throw Error(ErrorCode::InvalidTree, "edge " + std::to_string(edge) + " is not incident to vertex " +
                                            std::to_string(vertex));
  }
  const Flag e = Flag::edge(edge);
  if (pair.first == e || pair.second == e) throw Error(ErrorCode::PairContainsE, "pair contains the split edge");
  if (pair.first == pair.second) throw Error(ErrorCode::PairContainsE, "pair flags must be distinct");

  const auto flags = ordered_flags(t, vertex);
  for (const Flag& f : {pair.first, pair.second}) {
    if (std::find(flags.begin(), flags.end(), f) == flags.end()) {
      throw Error(ErrorCode::PairContainsE, "pair flag is not a flag of vertex " + std::to_string(vertex));
    }
  }
  std::vector<Flag> rest;
  for (const Flag& f : flags) {
    if (f != e && f != pair.first && f != pair.second) rest.push_back(f);
  }

  FormalCycle out(t.n, t.codimension() + 1);
  // A_1 = {e} + chosen (nonempty) subset of rest; A_2 = the pair + the others.
  const std::uint32_t subsets = std::uint32_t{1} << rest.size();
  for (std::uint32_t chosen = 1; chosen < subsets; ++chosen) {
    MarkedSet keep_label;
    MarkedSet moved_label;
    std::vector<int> moved_edges;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      const Flag& f = rest[i];
      const bool on_a1 = (chosen >> i) & 1u;
      if (f.kind == Flag::Kind::Marked) {
        (on_a1 ? keep_label : moved_label) = (on_a1 ? keep_label : moved_label) | MarkedSet::singleton(f.value);
      } else if (!on_a1) {
        moved_edges.push_back(f.value);
      }
    }
    for (const Flag& f : {pair.first, pair.second}) {
      if (f.kind == Flag::Kind::Marked) {
        moved_label = moved_label | MarkedSet::singleton(f.value);
      } else {
        moved_edges.push_back(f.value);
      }
    }
    out.add(split_vertex(t, vertex, keep_label, moved_label, moved_edges), Rational(1));
  }
  return out;
}

std::shared_ptr<const FormalCycle> MemoStore::find_cycle(const BoundaryPartition& s,
                                                         const CanonicalTreeKey& t) const {
  std::shared_lock lock(mutex_);
  const auto it = cycles_.find(cycle_key(s, t));
  return it == cycles_.end() ? nullptr : it->second;
}

std::shared_ptr<const FormalCycle> MemoStore::insert_cycle(const BoundaryPartition& s, const CanonicalTreeKey& t,
                                                           FormalCycle value) {
  auto fresh = std::make_shared<const FormalCycle>(std::move(value));
  std::unique_lock lock(mutex_);
  auto [it, inserted] = cycles_.try_emplace(cycle_key(s, t), fresh);
  if (!inserted && !(*it->second == *fresh)) {
    invariant_failure("memo entry for D_{" + to_literal(s) + "} rewritten with a different cycle");
  }
  return it->second;
}

std::optional<Rational> MemoStore::find_product(const ProductKey& key) const {
  std::shared_lock lock(mutex_);
  const auto it = products_.find(key);
  if (it == products_.end()) return std::nullopt;
  return it->second;
}

void MemoStore::insert_product(const ProductKey& key, const Rational& value) {
  std::unique_lock lock(mutex_);
  auto [it, inserted] = products_.try_emplace(key, value);
  if (!inserted && it->second != value) {
    std::string literal;
    for (const auto& s : key) literal += (literal.empty() ? "" : " ; ") + to_literal(s);
    invariant_failure("memo product [" + literal + "] rewritten: " + to_string(it->second) + " vs " +
                      to_string(value));
  }
}

std::vector<std::pair<MemoStore::ProductKey, Rational>> MemoStore::products(int n) const {
  std::shared_lock lock(mutex_);
  std::vector<std::pair<ProductKey, Rational>> out;
  for (const auto& [key, value] : products_) {
    if (!key.empty() && key.front().n() == n) out.emplace_back(key, value);
  }
  return out;
}

std::size_t MemoStore::cycle_entries() const {
  std::shared_lock lock(mutex_);
  return cycles_.size();
}

std::size_t MemoStore::product_entries() const {
  std::shared_lock lock(mutex_);
  return products_.size();
}

void MemoStore::clear() {
  std::unique_lock lock(mutex_);
  cycles_.clear();
  products_.clear();
}

std::string MemoStore::cycle_key(const BoundaryPartition& s, const CanonicalTreeKey& t) {
  const std::uint32_t bits = s.side().bits();
  std::string key;
  key.reserve(4 + t.bytes().size());
  for (int shift = 24; shift >= 0; shift -= 8) key += static_cast<char>((bits >> shift) & 0xff);
  key += t.bytes();
  return key;
}

IntersectionEngine::IntersectionEngine() : IntersectionEngine(EngineOptions{}) {}

IntersectionEngine::IntersectionEngine(EngineOptions options, std::shared_ptr<MemoStore> memo)
    : options_(std::move(options)), memo_(memo ? std::move(memo) : std::make_shared<MemoStore>()) {}

std::pair<Flag, Flag> IntersectionEngine::choose_pair(const StableTree& t, int vertex, int edge) const {
  std::vector<Flag> candidates = ordered_flags(t, vertex);
  std::erase(candidates, Flag::edge(edge));
  if (options_.pair_chooser) return options_.pair_chooser(t, vertex, edge, candidates);
  return smallest_pair(t, vertex, edge, candidates);
}

FormalCycle IntersectionEngine::compute(const BoundaryPartition& s, const StableTree& t) const {
  FormalCycle result(t.n, t.codimension() + 1);
  const auto colors = color_vertices(t, s);
  const auto adj = t.adjacency();
  const int v_count = t.vertex_count();

  std::vector<int> black;
  bool any_red = false;
  bool any_blue = false;
  for (int v = 0; v < v_count; ++v) {
    if (colors[v] == VertexColor::Black) black.push_back(v);
    any_red = any_red || colors[v] == VertexColor::Red;
    any_blue = any_blue || colors[v] == VertexColor::Blue;
  }

  // Case 1: at least two black vertices.
  if (black.size() >= 2) return result;

  // Case 2: one black vertex; split it so the new edge separates colors.
  if (black.size() == 1) {
    const int a = black.front();
    for (const auto& [u, w] : t.edges) {
      if ((colors[u] == VertexColor::Red && colors[w] == VertexColor::Blue) ||
          (colors[u] == VertexColor::Blue && colors[w] == VertexColor::Red)) {
        return result;
      }
    }
    std::vector<int> blue_edges;
    for (const auto& [w, e] : adj[a]) {
      const auto branch = branch_colors(adj, colors, w, a);
      if (branch.red && branch.blue) return result;  // no refinement realizes S
      if (!branch.red && !branch.blue) invariant_failure("branch without colored vertices");
      if (branch.blue) blue_edges.push_back(e);
    }
    result.add(split_vertex(t, a, t.labels[a] & s.side(), t.labels[a] & s.other_side(), blue_edges), Rational(1));
    return result;
  }

  // Case 3: no black vertex.
  if (!any_red || !any_blue) invariant_failure("tree has no red or no blue vertex");

  // Subtree color counts with the tree rooted at vertex 0.
  std::vector<int> parent(v_count, -1);
  std::vector<int> parent_edge(v_count, -1);
  std::vector<int> order;
  order.reserve(v_count);
  {
    std::vector<int> stack{0};
    std::vector<char> seen(v_count, 0);
    seen[0] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      order.push_back(v);
      for (const auto& [w, e] : adj[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          parent[w] = v;
          parent_edge[w] = e;
          stack.push_back(w);
        }
      }
    }
  }
  std::vector<int> red_below(v_count, 0);
  std::vector<int> blue_below(v_count, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int v = *it;
    red_below[v] += colors[v] == VertexColor::Red;
    blue_below[v] += colors[v] == VertexColor::Blue;
    if (parent[v] >= 0) {
      red_below[parent[v]] += red_below[v];
      blue_below[parent[v]] += blue_below[v];
    }
  }
  const int red_total = red_below[0];
  const int blue_total = blue_below[0];

  // (c) a separating edge: excess intersection, -(psi_A + psi_B) at its ends.
  for (int v = 0; v < v_count; ++v) {
    if (parent[v] < 0) continue;
    const bool reds_below = blue_below[v] == 0 && red_below[v] == red_total;
    const bool blues_below = red_below[v] == 0 && blue_below[v] == blue_total;
    if (!reds_below && !blues_below) continue;
    const int e = parent_edge[v];
    const auto [end_a, end_b] = t.edges[e];
    const Rational sign(options_.excess_sign);
    result.add(sigma_split(t, end_a, e, choose_pair(t, end_a, e)), sign);
    result.add(sigma_split(t, end_b, e, choose_pair(t, end_b, e)), sign);
    return result;
  }

  // (b) a separating vertex: split it into red-facing and blue-facing halves.
  for (int a = 0; a < v_count; ++a) {
    std::vector<int> blue_edges;
    bool separates = true;
    for (const auto& [w, e] : adj[a]) {
      const auto branch = branch_colors(adj, colors, w, a);
      if (branch.red && branch.blue) {
        separates = false;
        break;
      }
      if (!branch.red && !branch.blue) invariant_failure("branch without colored vertices");
      if (branch.blue) blue_edges.push_back(e);
    }
    if (!separates) continue;
    result.add(split_vertex(t, a, t.labels[a] & s.side(), t.labels[a] & s.other_side(), blue_edges), Rational(1));
    return result;
  }

  // (a) nothing separates.
  return result;
}

std::shared_ptr<const FormalCycle> IntersectionEngine::lookup(const BoundaryPartition& s, const CanonicalTreeKey& key,
                                                              const StableTree& canonical_tree) const {
  if (!options_.use_memo) return std::make_shared<const FormalCycle>(compute(s, canonical_tree));
  if (auto hit = memo_->find_cycle(s, key)) return hit;
  return memo_->insert_cycle(s, key, compute(s, canonical_tree));
}

namespace {

void require_room(int n, int codimension) {
  if (codimension > n - 4) {
    throw Error(ErrorCode::CodimensionOverflow, "codimension " + std::to_string(codimension) +
                                                    " stratum cannot be cut further on n = " + std::to_string(n));
  }
}

void require_same_n(const BoundaryPartition& s, int n) {
  if (s.n() != n) {
    throw Error(ErrorCode::WrongN, "D_{" + to_literal(s) + "} lives on n = " + std::to_string(s.n()) +
                                       ", expected n = " + std::to_string(n));
  }
}

}  // namespace

FormalCycle IntersectionEngine::intersect_divisor_tree(const BoundaryPartition& s, const StableTree& t) const {
  require_same_n(s, t.n);
  require_room(t.n, t.codimension());
  const StableTree canonical = canonicalize(t);
  return *lookup(s, canonical_key(canonical), canonical);
}

FormalCycle IntersectionEngine::intersect_divisor_cycle(const BoundaryPartition& s, const FormalCycle& c) const {
  require_same_n(s, c.n());
  require_room(c.n(), c.codimension());
  FormalCycle out(c.n(), c.codimension() + 1);
  for (const auto& [key, term] : c) out.add(*lookup(s, key, term.tree), term.coefficient);
  return out;
}

FormalCycle IntersectionEngine::intersect_qdivisor_cycle(const QDivisor& d, const FormalCycle& c) const {
  if (d.n() != c.n()) throw Error(ErrorCode::WrongN, "divisor and cycle live on different n");
  require_room(c.n(), c.codimension());
  FormalCycle out(c.n(), c.codimension() + 1);
  for (const auto& [key, term] : c) {
    for (const auto& [s, coeff] : d.coefficients()) out.add(*lookup(s, key, term.tree), term.coefficient * coeff);
  }
  return out;
}

Rational IntersectionEngine::product_number(std::vector<BoundaryPartition> divisors, int n) const {
  require_supported_n(n);
  if (static_cast<int>(divisors.size()) != n - 3) {
    throw Error(ErrorCode::WrongArity, "need exactly " + std::to_string(n - 3) + " divisors on n = " +
                                           std::to_string(n) + ", got " + std::to_string(divisors.size()));
  }
  for (const auto& s : divisors) require_same_n(s, n);
  std::sort(divisors.begin(), divisors.end());
  if (options_.use_memo) {
    if (auto hit = memo_->find_product(divisors)) return *hit;
  }
  FormalCycle cycle = FormalCycle::of(trivial_tree(n));
  for (const auto& s : divisors) cycle = intersect_divisor_cycle(s, cycle);
  const Rational value = cycle.total();
  if (!is_integer(value)) invariant_failure("boundary product evaluated to non-integer " + to_string(value));
  if (options_.use_memo) memo_->insert_product(divisors, value);
  return value;
}

Rational IntersectionEngine::qdivisor_product(std::span<const QDivisor> divisors, int n) const {
  require_supported_n(n);
  if (static_cast<int>(divisors.size()) != n - 3) {
    throw Error(ErrorCode::WrongArity, "need exactly " + std::to_string(n - 3) + " divisors on n = " +
                                           std::to_string(n) + ", got " + std::to_string(divisors.size()));
  }
  FormalCycle cycle = FormalCycle::of(trivial_tree(n));
  for (const auto& d : divisors) {
    if (d.n() != n) throw Error(ErrorCode::WrongN, "divisor lives on n = " + std::to_string(d.n()));
    cycle = intersect_qdivisor_cycle(d, cycle);
  }
  return cycle.total();
}

Rational IntersectionEngine::qdivisor_power(const QDivisor& d, int n) const {
  require_supported_n(n);
  const std::vector<QDivisor> copies(static_cast<std::size_t>(n - 3), d);
  return qdivisor_product(copies, n);
}

const IntersectionEngine& default_engine() {
  static const IntersectionEngine engine;
  return engine;
}

FormalCycle intersect_divisor_tree(const BoundaryPartition& s, const StableTree& t) {
  return default_engine().intersect_divisor_tree(s, t);
}

FormalCycle intersect_divisor_cycle(const BoundaryPartition& s, const FormalCycle& c) {
  return default_engine().intersect_divisor_cycle(s, c);
}

Rational product_number(const std::vector<BoundaryPartition>& divisors, int n) {
  return default_engine().product_number(divisors, n);
}

Rational qdivisor_power(const QDivisor& d, int n) { return default_engine().qdivisor_power(d, n); }

Rational qdivisor_product(std::span<const QDivisor> divisors, int n) {
  return default_engine().qdivisor_product(divisors, n);
}

}  // namespace m0n
