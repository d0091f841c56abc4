#include "pinrec/ontology.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <unordered_set>

namespace pinrec {

namespace {

const std::vector<std::string> kNoChildren;

}  // namespace

std::string normalize_name(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (unsigned char c : raw) {
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back((c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a')
                                         : static_cast<char>(c));
  }
  return out;
}

const TopicNode& TopicOntology::node(const std::string& node_id) const {
  const auto it = by_id_.find(node_id);
  if (it == by_id_.end()) throw std::out_of_range("unknown ontology node: " + node_id);
  return nodes_[it->second];
}

std::optional<std::size_t> TopicOntology::index_of(const std::string& node_id) const {
  const auto it = by_id_.find(node_id);
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

const std::vector<std::string>& TopicOntology::children(const std::string& node_id) const {
  const auto it = children_.find(node_id);
  return it == children_.end() ? kNoChildren : it->second;
}

std::optional<std::string> TopicOntology::id_by_name(const std::string& name) const {
  const auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

TopicOntology TopicOntology::build(std::vector<TopicNode> nodes) {
  TopicOntology ont;
  ont.nodes_ = std::move(nodes);
  ont.order_.reserve(ont.nodes_.size());
  for (std::size_t i = 0; i < ont.nodes_.size(); ++i) {
    const auto& n = ont.nodes_[i];
    if (n.node_id.empty()) throw std::runtime_error("ontology node with empty id");
    if (!ont.by_id_.emplace(n.node_id, i).second)
      throw std::runtime_error("duplicate ontology node id: " + n.node_id);
    ont.order_.push_back(n.node_id);
    ont.by_name_.emplace(n.name, n.node_id);  // first declaration wins
  }

  // Resolve parents, build child lists, count in-degrees for the toposort.
  std::unordered_map<std::string, std::size_t> pending;  // unresolved parent count
  for (const auto& n : ont.nodes_) {
    pending[n.node_id] = n.parent_ids.size();
    for (const auto& p : n.parent_ids) {
      if (!ont.by_id_.count(p))
        throw std::runtime_error("node '" + n.name + "' references unknown parent '" + p + "'");
      ont.children_[p].push_back(n.node_id);
    }
    if (n.parent_ids.empty()) ont.roots_.push_back(n.node_id);
  }

  // Kahn order over parent->child edges; leftover nodes sit on a cycle.
  std::deque<std::string> ready;
  for (const auto& id : ont.order_)
    if (pending[id] == 0) ready.push_back(id);
  std::size_t processed = 0;
  while (!ready.empty()) {
    const std::string id = ready.front();
    ready.pop_front();
    ++processed;
    TopicNode& n = ont.nodes_[ont.by_id_[id]];
    if (n.parent_ids.empty()) {
      n.depth = 1;
    } else {
      int best = 0;
      for (const auto& p : n.parent_ids) {
        const int d = ont.nodes_[ont.by_id_[p]].depth;
        if (best == 0 || d < best) best = d;
      }
      n.depth = best + 1;
    }
    for (const auto& c : ont.children_[id])
      if (--pending[c] == 0) ready.push_back(c);
  }

  if (processed != ont.nodes_.size()) {
    // Name one edge of a cycle: walk parents among unprocessed nodes.
    std::unordered_set<std::string> stuck;
    for (const auto& [id, cnt] : pending)
      if (cnt > 0) stuck.insert(id);
    std::string cur = *stuck.begin();
    std::unordered_set<std::string> seen;
    std::string prev;
    while (seen.insert(cur).second) {
      prev = cur;
      for (const auto& p : ont.nodes_[ont.by_id_[cur]].parent_ids) {
        if (stuck.count(p)) {
          cur = p;
          break;
        }
      }
    }
    throw std::runtime_error("ontology cycle detected at edge '" + cur + "' -> '" + prev + "'");
  }
  return ont;
}

TopicOntology load_raw_ontology(const std::vector<RawOntologyRecord>& records) {
  // First pass: canonical names and the name -> id table for parent lookup.
  std::unordered_map<std::string, std::string> id_by_name;
  std::vector<TopicNode> nodes;
  nodes.reserve(records.size());
  for (const auto& rec : records) {
    TopicNode n;
    n.node_id = rec.node_id;
    n.name = normalize_name(rec.name);
    if (n.name.empty()) throw std::runtime_error("ontology node '" + rec.node_id + "' has empty name");
    if (!id_by_name.emplace(n.name, n.node_id).second)
      throw std::runtime_error("duplicate ontology node name: '" + n.name + "'");
    nodes.push_back(std::move(n));
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (const auto& parent_name : records[i].parents) {
      const auto it = id_by_name.find(normalize_name(parent_name));
      if (it == id_by_name.end())
        throw std::runtime_error("node '" + nodes[i].name + "' references unknown parent '" +
                                 normalize_name(parent_name) + "'");
      nodes[i].parent_ids.push_back(it->second);
    }
  }
  return TopicOntology::build(std::move(nodes));
}

std::vector<RawOntologyRecord> to_raw_records(const TopicOntology& ontology) {
  std::vector<RawOntologyRecord> records;
  records.reserve(ontology.size());
  for (std::size_t i = 0; i < ontology.size(); ++i) {
    const auto& n = ontology.node_at(i);
    RawOntologyRecord rec;
    rec.node_id = n.node_id;
    rec.name = n.name;
    for (const auto& p : n.parent_ids) rec.parents.push_back(ontology.node(p).name);
    records.push_back(std::move(rec));
  }
  return records;
}

TopicOntology prune_ontology(const TopicOntology& ontology, const TermEvidence& evidence,
                             std::int64_t pin_threshold, std::int64_t board_divisor,
                             double popularity_weight) {
  // pin_threshold 0 is allowed so that a zero-threshold prune is the identity.
  if (pin_threshold < 0) throw std::invalid_argument("pin_threshold must be >= 0");
  if (board_divisor < 1) throw std::invalid_argument("board_divisor must be >= 1");

  const double board_threshold =
      static_cast<double>(pin_threshold) / static_cast<double>(board_divisor);

  auto freq_of = [](const std::unordered_map<std::string, std::int64_t>& m,
                    const std::string& key) -> double {
    const auto it = m.find(key);
    return it == m.end() ? 0.0 : static_cast<double>(it->second);
  };
  auto pop_of = [&](const std::string& key) -> double {
    const auto it = evidence.popularity.find(key);
    return it == evidence.popularity.end() ? 0.0 : it->second;
  };

  std::unordered_set<std::string> kept;
  for (const auto& id : ontology.roots()) kept.insert(id);
  for (std::size_t i = 0; i < ontology.size(); ++i) {
    const auto& n = ontology.node_at(i);
    const double pop_bonus = popularity_weight * std::log1p(std::max(0.0, pop_of(n.name)));
    const double pin_score = freq_of(evidence.pin_term_freq, n.name) + pop_bonus;
    const double board_score = freq_of(evidence.board_term_freq, n.name) + pop_bonus;
    if (pin_score >= static_cast<double>(pin_threshold) || board_score >= board_threshold)
      kept.insert(n.node_id);
  }

  // Connectivity closure: every ancestor of a kept node is kept.
  std::deque<std::string> frontier(kept.begin(), kept.end());
  while (!frontier.empty()) {
    const std::string id = frontier.front();
    frontier.pop_front();
    for (const auto& p : ontology.node(id).parent_ids)
      if (kept.insert(p).second) frontier.push_back(p);
  }

  std::vector<TopicNode> nodes;
  nodes.reserve(kept.size());
  for (std::size_t i = 0; i < ontology.size(); ++i) {
    if (!kept.count(ontology.node_at(i).node_id)) continue;
    TopicNode n = ontology.node_at(i);
    n.depth = 1;  // recomputed by build
    nodes.push_back(std::move(n));
  }
  return TopicOntology::build(std::move(nodes));
}

OntologyStats ontology_stats(const TopicOntology& ontology) {
  OntologyStats stats;
  stats.total = ontology.size();
  stats.roots = ontology.roots().size();
  for (std::size_t i = 0; i < ontology.size(); ++i) {
    const auto& n = ontology.node_at(i);
    stats.max_depth = std::max(stats.max_depth, n.depth);
    if (ontology.children(n.node_id).empty()) {
      ++stats.leaves;
      if (stats.min_leaf_depth == 0 || n.depth < stats.min_leaf_depth)
        stats.min_leaf_depth = n.depth;
    }
  }
  return stats;
}

}  // namespace pinrec
