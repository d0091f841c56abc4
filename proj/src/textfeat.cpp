#include "pinrec/textfeat.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "pinrec/hashing.hpp"

namespace pinrec {

namespace {

bool is_word_char(unsigned char c) {
  // UTF-8 multibyte sequences stay glued together.
  return std::isalnum(c) || c >= 0x80;
}

char ascii_lower(unsigned char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
}

bool starts_with_http(std::string_view s) { return s.substr(0, 4) == "http"; }

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::string lowered;
  lowered.reserve(text.size());
  for (unsigned char c : text) lowered.push_back(ascii_lower(c));

  std::vector<std::string> tokens;
  std::istringstream words(lowered);
  std::string word;
  while (words >> word) {
    if (starts_with_http(word)) continue;  // whole URL-ish word
    std::string current;
    auto flush = [&] {
      if (current.size() >= 2 && !starts_with_http(current)) tokens.push_back(current);
      current.clear();
    };
    for (unsigned char c : word) {
      if (is_word_char(c)) {
        current.push_back(static_cast<char>(c));
      } else {
        flush();
      }
    }
    flush();
  }
  return tokens;
}

double SparseVector::l2_norm() const {
  double sq = 0.0;
  for (const auto& [_, v] : entries) sq += v * v;
  return std::sqrt(sq);
}

std::uint32_t hash_bucket(std::string_view token, std::size_t dimension) {
  return murmur3_32(token, HashedCorpusModel::kHashSeed) % static_cast<std::uint32_t>(dimension);
}

double hash_sign(std::string_view token) {
  return (murmur3_32(token, HashedCorpusModel::kSignSeed) & 1u) ? 1.0 : -1.0;
}

HashedCorpusModel fit_hashed_corpus(const std::vector<std::vector<std::string>>& timelines,
                                    std::size_t dimension) {
  if (dimension < 1) throw std::invalid_argument("hash dimension must be >= 1");
  if (timelines.empty()) throw std::invalid_argument("empty corpus");
  HashedCorpusModel model;
  model.dimension = dimension;
  model.doc_freq.assign(dimension, 0);
  model.doc_count = static_cast<std::int64_t>(timelines.size());

  std::vector<std::uint8_t> seen(dimension);
  for (const auto& tokens : timelines) {
    std::fill(seen.begin(), seen.end(), 0);
    for (const auto& t : tokens) seen[hash_bucket(t, dimension)] = 1;
    for (std::size_t j = 0; j < dimension; ++j) model.doc_freq[j] += seen[j];
  }
  return model;
}

SparseVector transform_timeline(const HashedCorpusModel& model,
                                const std::vector<std::string>& tokens) {
  SparseVector out;
  out.dim = model.dimension;
  if (tokens.empty()) return out;

  std::map<std::uint32_t, double> raw;  // ordered -> sorted entries for free
  for (const auto& t : tokens) raw[hash_bucket(t, model.dimension)] += hash_sign(t);

  const double n = static_cast<double>(model.doc_count);
  double sq = 0.0;
  out.entries.reserve(raw.size());
  for (const auto& [bucket, count] : raw) {
    const double idf =
        std::log((1.0 + n) / (1.0 + static_cast<double>(model.doc_freq[bucket]))) + 1.0;
    const double w = count * idf;
    if (w == 0.0) continue;  // opposite-sign collisions can cancel exactly
    out.entries.emplace_back(bucket, w);
    sq += w * w;
  }
  if (sq > 0.0) {
    const double inv = 1.0 / std::sqrt(sq);
    for (auto& [_, v] : out.entries) v *= inv;
  }
  return out;
}

CategoryDictionary parse_category_dictionary(std::istream& in) {
  CategoryDictionary dict;
  std::string line;
  bool have_header = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    if (!have_header) {
      std::istringstream header(line);
      std::string name;
      while (std::getline(header, name, ',')) {
        const auto b = name.find_first_not_of(" \t");
        const auto e = name.find_last_not_of(" \t");
        if (b != std::string::npos) dict.categories.push_back(name.substr(b, e - b + 1));
      }
      if (dict.categories.empty())
        throw std::runtime_error("dictionary header has no categories (line " +
                                 std::to_string(lineno) + ")");
      have_header = true;
      continue;
    }

    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw std::runtime_error("dictionary line " + std::to_string(lineno) +
                               ": expected pattern<TAB>categories");
    std::string pattern = line.substr(0, tab);
    std::vector<std::uint16_t> cats;
    std::istringstream catlist(line.substr(tab + 1));
    std::string cat;
    while (std::getline(catlist, cat, ',')) {
      const auto b = cat.find_first_not_of(" \t");
      const auto e = cat.find_last_not_of(" \t");
      if (b == std::string::npos) continue;
      const std::string trimmed = cat.substr(b, e - b + 1);
      const auto it = std::find(dict.categories.begin(), dict.categories.end(), trimmed);
      if (it == dict.categories.end())
        throw std::runtime_error("dictionary line " + std::to_string(lineno) +
                                 ": unknown category '" + trimmed + "'");
      cats.push_back(static_cast<std::uint16_t>(it - dict.categories.begin()));
    }
    if (cats.empty())
      throw std::runtime_error("dictionary line " + std::to_string(lineno) +
                               ": pattern without categories");
    std::sort(cats.begin(), cats.end());
    cats.erase(std::unique(cats.begin(), cats.end()), cats.end());
    if (!pattern.empty() && pattern.back() == '*') {
      pattern.pop_back();
      dict.prefix_entries.emplace_back(std::move(pattern), std::move(cats));
    } else {
      dict.exact_entries.emplace_back(std::move(pattern), std::move(cats));
    }
  }
  if (!have_header) throw std::runtime_error("empty dictionary file");
  return dict;
}

CategoryDictionary load_category_dictionary(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dictionary file: " + path);
  return parse_category_dictionary(in);
}

std::vector<double> category_features(const CategoryDictionary& dict,
                                      const std::vector<std::string>& tokens) {
  std::vector<double> counts(dict.categories.size(), 0.0);
  if (tokens.empty()) return counts;

  std::vector<std::uint8_t> hit(dict.categories.size());
  for (const auto& token : tokens) {
    std::fill(hit.begin(), hit.end(), 0);
    for (const auto& [word, cats] : dict.exact_entries) {
      if (word == token)
        for (auto c : cats) hit[c] = 1;
    }
    for (const auto& [prefix, cats] : dict.prefix_entries) {
      if (token.size() >= prefix.size() && token.compare(0, prefix.size(), prefix) == 0)
        for (auto c : cats) hit[c] = 1;
    }
    for (std::size_t c = 0; c < hit.size(); ++c) counts[c] += hit[c];
  }
  const double total = static_cast<double>(tokens.size());
  for (auto& v : counts) v /= std::max(1.0, total);
  return counts;
}

FeatureMode feature_mode_from_string(std::string_view name) {
  if (name == "hashed") return FeatureMode::hashed;
  if (name == "categories") return FeatureMode::categories;
  if (name == "fused") return FeatureMode::fused;
  throw std::invalid_argument("unknown feature mode: " + std::string(name));
}

std::string to_string(FeatureMode mode) {
  switch (mode) {
    case FeatureMode::hashed: return "hashed";
    case FeatureMode::categories: return "categories";
    case FeatureMode::fused: return "fused";
  }
  return "fused";
}

SparseVector fuse(const FeatureVector& features, FeatureMode mode) {
  SparseVector out;
  const std::size_t hash_dim = features.hashed.dim;
  switch (mode) {
    case FeatureMode::hashed:
      return features.hashed;
    case FeatureMode::categories:
      out.dim = features.categories.size();
      for (std::size_t i = 0; i < features.categories.size(); ++i)
        if (features.categories[i] != 0.0)
          out.entries.emplace_back(static_cast<std::uint32_t>(i), features.categories[i]);
      return out;
    case FeatureMode::fused:
      out.dim = hash_dim + features.categories.size();
      out.entries = features.hashed.entries;
      for (std::size_t i = 0; i < features.categories.size(); ++i)
        if (features.categories[i] != 0.0)
          out.entries.emplace_back(static_cast<std::uint32_t>(hash_dim + i),
                                   features.categories[i]);
      return out;
  }
  return out;
}

std::size_t feature_dimension(FeatureMode mode, std::size_t hash_dim, std::size_t category_count) {
  switch (mode) {
    case FeatureMode::hashed: return hash_dim;
    case FeatureMode::categories: return category_count;
    case FeatureMode::fused: return hash_dim + category_count;
  }
  return hash_dim + category_count;
}

}  // namespace pinrec
