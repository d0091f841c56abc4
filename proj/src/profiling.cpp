#include "pinrec/profiling.hpp"

#include <cctype>
#include <stdexcept>

namespace pinrec {

std::vector<std::string> match_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (unsigned char c : text) {
    if (std::isalnum(c) || c >= 0x80) {
      current.push_back((c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a')
                                               : static_cast<char>(c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

CategoryMatcher::CategoryMatcher(const TopicOntology& ontology) {
  for (std::size_t i = 0; i < ontology.size(); ++i) {
    const auto& n = ontology.node_at(i);
    Phrase phrase{n.node_id, n.name, match_tokens(n.name)};
    if (phrase.tokens.empty()) continue;
    by_first_[phrase.tokens.front()].push_back(std::move(phrase));
  }
}

template <typename OnMatch>
void CategoryMatcher::scan(const std::vector<std::string>& tokens, OnMatch&& on_match) const {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto it = by_first_.find(tokens[i]);
    if (it == by_first_.end()) continue;
    for (const auto& phrase : it->second) {
      if (i + phrase.tokens.size() > tokens.size()) continue;
      bool ok = true;
      for (std::size_t j = 1; j < phrase.tokens.size(); ++j) {
        if (tokens[i + j] != phrase.tokens[j]) {
          ok = false;
          break;
        }
      }
      if (ok) on_match(phrase);
    }
  }
}

std::set<std::string> CategoryMatcher::match(const std::vector<std::string>& tokens) const {
  std::set<std::string> ids;
  scan(tokens, [&](const Phrase& p) { ids.insert(p.node_id); });
  return ids;
}

std::set<std::string> CategoryMatcher::match(std::string_view text) const {
  return match(match_tokens(text));
}

void CategoryMatcher::count_occurrences(const std::vector<std::string>& tokens,
                                        std::unordered_map<std::string, std::int64_t>& freq) const {
  scan(tokens, [&](const Phrase& p) { ++freq[p.name]; });
}

bool CategoryMatcher::contains_any(const std::vector<std::string>& tokens) const {
  bool found = false;
  scan(tokens, [&](const Phrase&) { found = true; });
  return found;
}

std::set<std::string> match_categories(std::string_view text, const TopicOntology& ontology) {
  return CategoryMatcher(ontology).match(text);
}

LabelVector map_board(const Board& board, const std::vector<Pin>& pins,
                      const TopicOntology& ontology, const CategoryMatcher& matcher) {
  LabelVector bits(ontology.size());
  auto set_all = [&](const std::set<std::string>& ids) {
    for (const auto& id : ids)
      if (auto idx = ontology.index_of(id)) bits.set(*idx);
  };
  set_all(matcher.match(board.title + " " + board.description));
  std::string pin_text;
  for (const auto& pin : pins) {
    pin_text += pin.description;
    pin_text += ' ';
  }
  set_all(matcher.match(pin_text));
  return bits;
}

LabelVector map_board(const Board& board, const std::vector<Pin>& pins,
                      const TopicOntology& ontology) {
  return map_board(board, pins, ontology, CategoryMatcher(ontology));
}

LabelVector build_user_profile(
    const UserRecord& user, const std::unordered_map<std::string, Board>& boards,
    const std::unordered_map<std::string, std::vector<Pin>>& pins_by_board,
    const TopicOntology& ontology, const CategoryMatcher& matcher) {
  static const std::vector<Pin> no_pins;
  LabelVector profile(ontology.size());
  for (const auto& board_id : user.board_ids) {
    const auto it = boards.find(board_id);
    if (it == boards.end())
      throw std::runtime_error("user '" + user.user_id + "' references unresolved board '" +
                               board_id + "'");
    const auto pins_it = pins_by_board.find(board_id);
    const auto& pins = pins_it == pins_by_board.end() ? no_pins : pins_it->second;
    profile |= map_board(it->second, pins, ontology, matcher);
  }
  return profile;
}

LabelVector build_user_profile(
    const UserRecord& user, const std::unordered_map<std::string, Board>& boards,
    const std::unordered_map<std::string, std::vector<Pin>>& pins_by_board,
    const TopicOntology& ontology) {
  return build_user_profile(user, boards, pins_by_board, ontology, CategoryMatcher(ontology));
}

}  // namespace pinrec
