#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pinrec {

// Timeline tokenizer: ASCII-lowercase, whitespace words starting with "http"
// removed (URLs), then split on non-alphanumeric, tokens shorter than 2
// characters dropped. UTF-8 continuation bytes count as word characters.
std::vector<std::string> tokenize(std::string_view text);

// Sparse real vector; entries sorted by index, indices unique.
struct SparseVector {
  std::size_t dim = 0;
  std::vector<std::pair<std::uint32_t, double>> entries;

  double l2_norm() const;
  bool operator==(const SparseVector&) const = default;
};

// Signed feature hashing with per-bucket document frequency, fitted over one
// document per user timeline.
struct HashedCorpusModel {
  // Published constants so fitted artifacts reproduce bit-for-bit anywhere.
  static constexpr std::uint32_t kHashSeed = 0x50524543;  // bucket hash
  static constexpr std::uint32_t kSignSeed = 0x5349474e;  // sign hash

  std::size_t dimension = 5000;
  std::vector<std::int64_t> doc_freq;  // length = dimension
  std::int64_t doc_count = 0;

  bool operator==(const HashedCorpusModel&) const = default;
};

std::uint32_t hash_bucket(std::string_view token, std::size_t dimension);
double hash_sign(std::string_view token);  // +1 or -1

HashedCorpusModel fit_hashed_corpus(const std::vector<std::vector<std::string>>& timelines,
                                    std::size_t dimension);

// Signed term counts per bucket, tf-idf weighted with the smooth idf
// ln((1+N)/(1+df)) + 1, then L2-normalized (zero vector stays zero).
SparseVector transform_timeline(const HashedCorpusModel& model,
                                const std::vector<std::string>& tokens);

// LIWC-style word category dictionary. Patterns are literal words or
// prefixes ending in '*'.
struct CategoryDictionary {
  std::vector<std::string> categories;
  std::vector<std::pair<std::string, std::vector<std::uint16_t>>> exact_entries;
  std::vector<std::pair<std::string, std::vector<std::uint16_t>>> prefix_entries;  // '*' stripped

  bool operator==(const CategoryDictionary&) const = default;
};

// File format: first non-blank line is the comma-separated ordered category
// list; each following line is `pattern<TAB>cat1,cat2`. '#' starts a comment.
CategoryDictionary parse_category_dictionary(std::istream& in);
CategoryDictionary load_category_dictionary(const std::string& path);

// Proportion of tokens falling in each category (matched count / total).
std::vector<double> category_features(const CategoryDictionary& dict,
                                      const std::vector<std::string>& tokens);

enum class FeatureMode { hashed, categories, fused };

FeatureMode feature_mode_from_string(std::string_view name);
std::string to_string(FeatureMode mode);

struct FeatureVector {
  SparseVector hashed;
  std::vector<double> categories;
};

// Selects the experimental arm: hashed block, category block, or their
// early-fusion concatenation [hashed | categories].
SparseVector fuse(const FeatureVector& features, FeatureMode mode);

std::size_t feature_dimension(FeatureMode mode, std::size_t hash_dim, std::size_t category_count);

}  // namespace pinrec
