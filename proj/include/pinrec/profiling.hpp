#pragma once

#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pinrec/data_model.hpp"
#include "pinrec/ontology.hpp"

namespace pinrec {

// Matching-side normalization: ASCII-lowercase, every non-alphanumeric byte
// becomes a space (UTF-8 continuation bytes pass through), then split.
std::vector<std::string> match_tokens(std::string_view text);

// Precompiled contiguous-phrase matcher over ontology node names. A node
// matches when its name's tokens occur consecutively in the text tokens.
class CategoryMatcher {
 public:
  explicit CategoryMatcher(const TopicOntology& ontology);

  std::set<std::string> match(std::string_view text) const;
  std::set<std::string> match(const std::vector<std::string>& tokens) const;

  // Occurrences (all starting positions) of each node name, by node name.
  void count_occurrences(const std::vector<std::string>& tokens,
                         std::unordered_map<std::string, std::int64_t>& freq) const;
  bool contains_any(const std::vector<std::string>& tokens) const;

 private:
  struct Phrase {
    std::string node_id;
    std::string name;
    std::vector<std::string> tokens;
  };
  // first token -> phrases starting with it
  std::unordered_map<std::string, std::vector<Phrase>> by_first_;

  template <typename OnMatch>
  void scan(const std::vector<std::string>& tokens, OnMatch&& on_match) const;
};

// Node ids whose names occur as contiguous token phrases in the text.
std::set<std::string> match_categories(std::string_view text, const TopicOntology& ontology);

// Three-step board mapping: board title+description, then the concatenation
// of all pin descriptions, then the union of both.
LabelVector map_board(const Board& board, const std::vector<Pin>& pins,
                      const TopicOntology& ontology);
LabelVector map_board(const Board& board, const std::vector<Pin>& pins,
                      const TopicOntology& ontology, const CategoryMatcher& matcher);

// Bitwise OR of map_board over the user's boards. Throws on an unresolved
// board id, naming the id.
LabelVector build_user_profile(
    const UserRecord& user, const std::unordered_map<std::string, Board>& boards,
    const std::unordered_map<std::string, std::vector<Pin>>& pins_by_board,
    const TopicOntology& ontology);
LabelVector build_user_profile(
    const UserRecord& user, const std::unordered_map<std::string, Board>& boards,
    const std::unordered_map<std::string, std::vector<Pin>>& pins_by_board,
    const TopicOntology& ontology, const CategoryMatcher& matcher);

}  // namespace pinrec
