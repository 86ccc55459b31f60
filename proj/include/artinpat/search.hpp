#pragma once

#include <algorithm>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "artinpat/catalog.hpp"

namespace apat {

struct ForestNode {
  std::string id;
  std::string ref;                      // catalog id or file[#name]
  std::optional<std::string> parent;
  std::optional<ParentKind> kind;       // kind of the edge to the parent
};

class Forest {
 public:
  Forest() = default;

  explicit Forest(std::vector<ForestNode> nodes, std::filesystem::path base = {}) : nodes_(std::move(nodes)), base_(std::move(base)) {
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (!index_.emplace(nodes_[i].id, i).second) throw Error("forest: duplicate node id '" + nodes_[i].id + "'");
    children_.assign(nodes_.size(), {});
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const auto& n = nodes_[i];
      if (!n.parent) {
        roots_.push_back(i);
        continue;
      }
      auto it = index_.find(*n.parent);
      if (it == index_.end()) throw Error("forest: node '" + n.id + "' names unknown parent '" + *n.parent + "'");
      if (!n.kind) throw Error("forest: node '" + n.id + "' has a parent but no parent-kind");
      children_[it->second].push_back(i);
    }
    // every node reachable from a root, no cycles
    std::vector<int> seen(nodes_.size(), 0);
    std::vector<std::size_t> stack(roots_.begin(), roots_.end());
    std::size_t count = 0;
    while (!stack.empty()) {
      auto i = stack.back();
      stack.pop_back();
      if (seen[i]++) throw Error("forest: node '" + nodes_[i].id + "' reached twice");
      ++count;
      for (auto c : children_[i]) stack.push_back(c);
    }
    if (count != nodes_.size()) throw Error("forest: parent links contain a cycle");
    // a subtree may be pruned by tau only if targets grow along each of its edges
    monotone_.assign(nodes_.size(), true);
    fill_monotone();
  }

  static Forest from_json(const nlohmann::json& j, std::filesystem::path base = {}) {
    if (!j.is_array()) throw Error("forest: expected a JSON array of nodes");
    std::vector<ForestNode> nodes;
    for (const auto& e : j) {
      if (!e.is_object() || !e.contains("id") || !e.contains("presentation-ref")) throw Error("forest: each node needs id and presentation-ref");
      ForestNode n;
      n.id = e["id"].get<std::string>();
      n.ref = e["presentation-ref"].get<std::string>();
      if (e.contains("parent-id") && !e["parent-id"].is_null()) n.parent = e["parent-id"].get<std::string>();
      if (e.contains("parent-kind") && !e["parent-kind"].is_null()) n.kind = ParentKind::parse(e["parent-kind"].get<std::string>());
      nodes.push_back(std::move(n));
    }
    return Forest(std::move(nodes), std::move(base));
  }

  static Forest load(const std::filesystem::path& file) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_file(file));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error("forest: " + std::string(e.what()));
    }
    return from_json(j, file.parent_path());
  }

  std::size_t size() const noexcept { return nodes_.size(); }
  const ForestNode& node(std::size_t i) const { return nodes_[i]; }
  const std::vector<std::size_t>& roots() const noexcept { return roots_; }
  const std::vector<std::size_t>& children(std::size_t i) const { return children_[i]; }
  bool monotone_below(std::size_t i) const { return monotone_[i]; }
  const std::filesystem::path& base() const noexcept { return base_; }

 private:
  void fill_monotone() {
    std::function<bool(std::size_t)> rec = [&](std::size_t i) {
      bool ok = true;
      for (auto c : children_[i]) {
        const auto& k = *nodes_[c].kind;
        bool edge = k.tag != SeriesKind::lower_p_central;
        ok = rec(c) && edge && ok;
      }
      monotone_[i] = ok;
      return ok;
    };
    for (auto r : roots_) rec(r);
  }

  std::vector<ForestNode> nodes_;
  std::filesystem::path base_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::size_t> roots_;
  std::vector<bool> monotone_;
};

// Catalog entries linked by their lower-central parents.
inline Forest catalog_forest() {
  std::vector<ForestNode> nodes;
  for (const auto& e : catalog()) {
    ForestNode n{e.id, e.id, e.lc_parent, std::nullopt};
    if (n.parent) n.kind = ParentKind{SeriesKind::lower_central, 0};
    nodes.push_back(std::move(n));
  }
  return Forest(std::move(nodes));
}

struct SearchQuery {
  std::optional<std::string> tkt;          // digit string, matched as an orbit
  std::vector<AbelianType> ttt;            // required sub-multiset of layer-1 targets

  static std::vector<AbelianType> parse_types(std::string_view s) {
    std::vector<AbelianType> out;
    if (s.empty()) return out;
    std::string body(s);
    if (body.front() != '[') body = "[" + body + "]";
    for (auto& t : detail::split_types(body)) out.push_back(AbelianType::parse(t));
    return out;
  }
};

struct SearchResult {
  std::vector<std::string> matches;  // sorted
  std::size_t visited = 0;
  std::size_t pruned = 0;            // subtrees cut below a visited node
};

namespace detail {

// Each wanted type gets its own component, related by rel(component, wanted).
template <class Rel>
bool assignable(const std::vector<AbelianType>& have, const std::vector<AbelianType>& want, Rel rel) {
  if (want.size() > have.size()) return false;
  std::vector<int> owner(have.size(), -1);
  std::function<bool(std::size_t, std::vector<bool>&)> augment = [&](std::size_t w, std::vector<bool>& used) {
    for (std::size_t h = 0; h < have.size(); ++h) {
      if (used[h] || !rel(have[h], want[w])) continue;
      used[h] = true;
      if (owner[h] < 0 || augment(static_cast<std::size_t>(owner[h]), used)) {
        owner[h] = static_cast<int>(w);
        return true;
      }
    }
    return false;
  };
  for (std::size_t w = 0; w < want.size(); ++w) {
    std::vector<bool> used(have.size(), false);
    if (!augment(w, used)) return false;
  }
  return true;
}

}  // namespace detail

class PatternSearch {
 public:
  explicit PatternSearch(const Forest& f) : forest_(f), cache_(f.size()) {}

  const ArtinPattern& pattern(std::size_t i) {
    auto& slot = cache_[i];
    if (!slot) slot = restricted_pattern(resolve_group(forest_.node(i).ref, forest_.base()), forest_.node(i).id);
    return *slot;
  }

  bool matches(std::size_t i, const SearchQuery& q) {
    const auto& ap = pattern(i);
    if (q.tkt) {
      if (ap.shape == LayerShape::other) return false;
      const bool layered = q.tkt->find(';') != std::string::npos;
      if (layered != (ap.shape == LayerShape::p2p)) return false;
      std::string want;
      try {
        want = detail::canonical_of(*q.tkt, ap.shape);
      } catch (const Error&) {
        return false;
      }
      auto have = ap.tkt_canonical();
      if (want.size() != have.size() || want != have) return false;
    }
    if (!q.ttt.empty()) {
      if (ap.layers.size() < 2) return false;
      if (!detail::assignable(ap.layers[1].ttt, q.ttt, [](const AbelianType& a, const AbelianType& b) { return a == b; })) return false;
    }
    return true;
  }

  // No descendant can match: targets only grow, so a wanted type needs a
  // component already below it.
  bool hopeless(std::size_t i, const SearchQuery& q) {
    if (q.ttt.empty() || !forest_.monotone_below(i)) return false;
    const auto& ap = pattern(i);
    if (ap.layers.size() < 2) return false;
    return !detail::assignable(ap.layers[1].ttt, q.ttt, [](const AbelianType& a, const AbelianType& b) { return type_precedes(a, b); });
  }

  SearchResult run(const SearchQuery& q) {
    SearchResult r;
    std::vector<std::size_t> stack(forest_.roots().rbegin(), forest_.roots().rend());
    while (!stack.empty()) {
      auto i = stack.back();
      stack.pop_back();
      ++r.visited;
      if (matches(i, q)) r.matches.push_back(forest_.node(i).id);
      if (hopeless(i, q)) {
        if (!forest_.children(i).empty()) ++r.pruned;
        continue;
      }
      const auto& ch = forest_.children(i);
      stack.insert(stack.end(), ch.rbegin(), ch.rend());
    }
    std::sort(r.matches.begin(), r.matches.end());
    return r;
  }

  // Reference answer: every node, no pruning.
  std::vector<std::string> brute_force(const SearchQuery& q) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < forest_.size(); ++i)
      if (matches(i, q)) out.push_back(forest_.node(i).id);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  const Forest& forest_;
  std::vector<std::optional<ArtinPattern>> cache_;
};

inline SearchResult pattern_search(const Forest& f, const SearchQuery& q) {
  PatternSearch s(f);
  return s.run(q);
}

}  // namespace apat
