#include "m0n/strata.hpp"

#include <algorithm>
#include <json.hpp>

#include "m0n/error.hpp"

namespace m0n {

std::vector<std::vector<std::pair<int, int>>> StableTree::adjacency() const {
  std::vector<std::vector<std::pair<int, int>>> adj(labels.size());
  for (int e = 0; e < codimension(); ++e) {
    const auto [a, b] = edges[e];
    adj[a].emplace_back(b, e);
    adj[b].emplace_back(a, e);
  }
  return adj;
}

StableTree trivial_tree(int n) {
  require_supported_n(n);
  return StableTree{n, {MarkedSet::full(n)}, {}};
}

StableTree divisor_tree(const BoundaryPartition& s) {
  return StableTree{s.n(), {s.side(), s.other_side()}, {{0, 1}}};
}

StabilityReport validate_stability(const StableTree& t) {
  StabilityReport report;
  auto fail = [&report](std::string message) {
    report.ok = false;
    report.violations.push_back(std::move(message));
  };
  const int v = t.vertex_count();
  if (t.n < 3 || t.n > kMaxPoints) fail("n = " + std::to_string(t.n) + " out of range");
  if (v == 0) {
    fail("tree has no vertices");
    return report;
  }

  MarkedSet seen;
  for (int i = 0; i < v; ++i) {
    if (seen.meets(t.labels[i])) fail("vertex " + std::to_string(i) + " label overlaps another label");
    seen = seen | t.labels[i];
  }
  if (t.n >= 3 && t.n <= kMaxPoints && seen != MarkedSet::full(t.n)) {
    fail("labels cover {" + to_literal(seen) + "} instead of {1.." + std::to_string(t.n) + "}");
  }

  if (t.codimension() != v - 1) {
    fail(std::to_string(t.codimension()) + " edges on " + std::to_string(v) + " vertices is not a tree");
  }
  std::vector<int> degree(v, 0);
  for (const auto& [a, b] : t.edges) {
    if (a < 0 || b < 0 || a >= v || b >= v || a == b) {
      fail("edge (" + std::to_string(a) + "," + std::to_string(b) + ") is invalid");
      return report;
    }
    ++degree[a];
    ++degree[b];
  }

  // connectivity
  const auto adj = t.adjacency();
  std::vector<char> reached(v, 0);
  std::vector<int> stack{0};
  reached[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (const auto& [w, e] : adj[u]) {
      if (!reached[w]) {
        reached[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  if (count != v) fail("tree is disconnected");

  for (int i = 0; i < v; ++i) {
    const int flags = t.labels[i].size() + degree[i];
    if (flags < 3) {
      fail("vertex " + std::to_string(i) + " {" + to_literal(t.labels[i]) + "}: |label| + degree = " +
           std::to_string(flags) + " < 3");
    }
  }
  return report;
}

namespace {

void require_valid(const StableTree& t) {
  const auto report = validate_stability(t);
  if (!report.ok) throw Error(ErrorCode::InvalidTree, report.violations.front());
}

struct Encoder {
  const StableTree& tree;
  std::vector<std::vector<std::pair<int, int>>> adj;
  std::vector<std::vector<int>> sorted_children;

  explicit Encoder(const StableTree& t) : tree(t), adj(t.adjacency()), sorted_children(t.labels.size()) {}

  std::string encode(int v, int parent) {
    std::vector<std::pair<std::string, int>> children;
    for (const auto& [w, e] : adj[v]) {
      if (w != parent) children.emplace_back(encode(w, v), w);
    }
    std::sort(children.begin(), children.end());
    const std::uint32_t bits = tree.labels[v].bits();
    std::string out;
    out += '(';
    out += static_cast<char>((bits >> 8) & 0xff);
    out += static_cast<char>(bits & 0xff);
    for (auto& [code, w] : children) {
      out += code;
      sorted_children[v].push_back(w);
    }
    out += ')';
    return out;
  }
};

int root_of(const StableTree& t) {
  for (int v = 0; v < t.vertex_count(); ++v) {
    if (t.labels[v].contains(1)) return v;
  }
  throw Error(ErrorCode::InvalidTree, "no vertex carries index 1");
}

}  // namespace

namespace {

std::pair<CanonicalTreeKey, StableTree> canonical_form(const StableTree& t) {
  require_valid(t);
  Encoder enc(t);
  const int root = root_of(t);
  std::string bytes(1, static_cast<char>(t.n));
  bytes += enc.encode(root, -1);
  StableTree out{t.n, {}, {}};
  out.labels.reserve(t.labels.size());
  out.edges.reserve(t.edges.size());
  // preorder over sorted children; (vertex, new parent id)
  std::vector<std::pair<int, int>> stack{{root, -1}};
  while (!stack.empty()) {
    const auto [v, parent_id] = stack.back();
    stack.pop_back();
    const int id = static_cast<int>(out.labels.size());
    out.labels.push_back(t.labels[v]);
    if (parent_id >= 0) out.edges.emplace_back(parent_id, id);
    const auto& kids = enc.sorted_children[v];
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.emplace_back(*it, id);
  }
  return {CanonicalTreeKey(std::move(bytes)), std::move(out)};
}

}  // namespace

CanonicalTreeKey canonical_key(const StableTree& t) { return canonical_form(t).first; }

StableTree canonicalize(const StableTree& t) { return canonical_form(t).second; }

StableTree tree_from_json(int n, const std::string& json_text) {
  StableTree t{n, {}, {}};
  try {
    const auto doc = nlohmann::json::parse(json_text);
    for (const auto& label : doc.at("labels")) {
      MarkedSet set;
      for (const auto& idx : label) {
        const int i = idx.get<int>();
        if (i < 1 || i > n) throw Error(ErrorCode::InvalidTree, "label index " + std::to_string(i) + " out of range");
        set = set | MarkedSet::singleton(i);
      }
      t.labels.push_back(set);
    }
    for (const auto& edge : doc.at("edges")) {
      if (edge.size() != 2) throw Error(ErrorCode::InvalidTree, "edges must be vertex pairs");
      t.edges.emplace_back(edge[0].get<int>(), edge[1].get<int>());
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ParseError, std::string("tree JSON: ") + ex.what());
  }
  require_valid(t);
  return t;
}

std::string tree_to_json(const StableTree& t) {
  nlohmann::json labels = nlohmann::json::array();
  for (const auto& label : t.labels) labels.push_back(label.indices());
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [a, b] : t.edges) edges.push_back({a, b});
  return nlohmann::json{{"labels", labels}, {"edges", edges}}.dump();
}

FormalCycle FormalCycle::of(const StableTree& t, const Rational& coefficient) {
  FormalCycle c(t.n, t.codimension());
  c.add(t, coefficient);
  return c;
}

Rational FormalCycle::coefficient(const StableTree& t) const {
  const auto it = terms_.find(canonical_key(t));
  return it == terms_.end() ? Rational(0) : it->second.coefficient;
}

void FormalCycle::add(const StableTree& t, const Rational& c) {
  if (t.n != n_ || t.codimension() != codimension_) {
    throw Error(ErrorCode::MixedCodimension, "cannot add a codimension-" + std::to_string(t.codimension()) +
                                                 " stratum to a codimension-" + std::to_string(codimension_) +
                                                 " cycle");
  }
  if (c == 0) return;
  auto [key, canonical] = canonical_form(t);
  add_canonical(key, canonical, c);
}

void FormalCycle::add(const FormalCycle& other, const Rational& c) {
  if (other.n_ != n_ || other.codimension_ != codimension_) {
    throw Error(ErrorCode::MixedCodimension, "cannot add a codimension-" + std::to_string(other.codimension_) +
                                                 " cycle to a codimension-" + std::to_string(codimension_) +
                                                 " cycle");
  }
  if (c == 0) return;
  for (const auto& [key, term] : other.terms_) add_canonical(key, term.tree, term.coefficient * c);
}

void FormalCycle::add_canonical(const CanonicalTreeKey& key, const StableTree& canonical_tree, const Rational& c) {
  auto [it, inserted] = terms_.try_emplace(key, Term{canonical_tree, c});
  if (inserted) return;
  it->second.coefficient += c;
  if (it->second.coefficient == 0) terms_.erase(it);
}

FormalCycle FormalCycle::scaled(const Rational& c) const {
  FormalCycle out(n_, codimension_);
  out.add(*this, c);
  return out;
}

Rational FormalCycle::total() const {
  Rational sum(0);
  for (const auto& [key, term] : terms_) sum += term.coefficient;
  return sum;
}

bool operator==(const FormalCycle& a, const FormalCycle& b) {
  if (a.n_ != b.n_ || a.codimension_ != b.codimension_ || a.terms_.size() != b.terms_.size()) return false;
  auto it = b.terms_.begin();
  for (const auto& [key, term] : a.terms_) {
    if (key != it->first || term.coefficient != it->second.coefficient) return false;
    ++it;
  }
  return true;
}

FormalCycle cycle_add(const FormalCycle& a, const FormalCycle& b) {
  FormalCycle out = a;
  out.add(b);
  return out;
}

FormalCycle cycle_scale(const FormalCycle& c, const Rational& factor) { return c.scaled(factor); }

Rational cycle_total(const FormalCycle& c) { return c.total(); }

}  // namespace m0n
