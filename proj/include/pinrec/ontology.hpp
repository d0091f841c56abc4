#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace pinrec {

struct TopicNode {
  std::string node_id;
  std::string name;                     // lowercased, whitespace-normalized
  std::vector<std::string> parent_ids;  // empty for roots
  int depth = 1;                        // 1 + min over parents' depths

  bool operator==(const TopicNode&) const = default;
};

// Rooted multi-tree (DAG) of topic nodes. Node order is preserved from the
// source so label indices stay stable across identical inputs.
class TopicOntology {
 public:
  TopicOntology() = default;

  // Validates parent references, rejects cycles, computes depths, assigns
  // dense label indices in node order.
  static TopicOntology build(std::vector<TopicNode> nodes);

  std::size_t size() const { return order_.size(); }
  bool contains(const std::string& node_id) const { return by_id_.count(node_id) != 0; }
  const TopicNode& node(const std::string& node_id) const;
  const TopicNode& node_at(std::size_t index) const { return nodes_[index]; }
  const std::vector<std::string>& order() const { return order_; }
  const std::vector<std::string>& roots() const { return roots_; }
  std::optional<std::size_t> index_of(const std::string& node_id) const;
  const std::vector<std::string>& children(const std::string& node_id) const;
  std::optional<std::string> id_by_name(const std::string& name) const;

 private:
  std::vector<TopicNode> nodes_;        // in declared order
  std::vector<std::string> order_;      // node ids, index = label index
  std::vector<std::string> roots_;
  std::unordered_map<std::string, std::size_t> by_id_;
  std::unordered_map<std::string, std::string> by_name_;
  std::unordered_map<std::string, std::vector<std::string>> children_;
};

// One raw source record: parents are referenced by *name*.
struct RawOntologyRecord {
  std::string node_id;
  std::string name;
  std::vector<std::string> parents;

  bool operator==(const RawOntologyRecord&) const = default;
};

// Resolves names, lowercases and whitespace-normalizes them, computes depths.
// Errors name the offending node or one cycle edge.
TopicOntology load_raw_ontology(const std::vector<RawOntologyRecord>& records);

// Reverse of load: records with parents spelled by name, in node order.
std::vector<RawOntologyRecord> to_raw_records(const TopicOntology& ontology);

// Term-frequency and popularity evidence collected over board/pin texts.
struct TermEvidence {
  std::unordered_map<std::string, std::int64_t> pin_term_freq;
  std::unordered_map<std::string, std::int64_t> board_term_freq;
  std::unordered_map<std::string, double> popularity;
};

// Keeps a node when its pin evidence reaches pin_threshold or its board
// evidence reaches pin_threshold/board_divisor (union of the two rules),
// where evidence = raw count + popularity_weight * ln(1 + popularity).
// Roots are always kept, ancestors of kept nodes are kept, indices are
// reassigned densely in the original order.
TopicOntology prune_ontology(const TopicOntology& ontology, const TermEvidence& evidence,
                             std::int64_t pin_threshold, std::int64_t board_divisor,
                             double popularity_weight);

struct OntologyStats {
  std::size_t total = 0;
  std::size_t roots = 0;
  std::size_t leaves = 0;  // nodes with no children; childless roots count
  int min_leaf_depth = 0;
  int max_depth = 0;

  bool operator==(const OntologyStats&) const = default;
};

OntologyStats ontology_stats(const TopicOntology& ontology);

// Shared text canonicalization: ASCII-lowercase, collapse runs of whitespace.
std::string normalize_name(std::string_view raw);

}  // namespace pinrec
