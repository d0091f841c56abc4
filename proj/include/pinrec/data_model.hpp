#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pinrec {

// Core record types shared by every stage. All of them are plain immutable
// values once constructed; sharing across worker threads is safe.

struct Tweet {
  std::string user_id;
  std::string text;
  std::int64_t timestamp = 0;  // seconds; 0 when the source had none

  bool operator==(const Tweet&) const = default;
};

struct Pin {
  std::string pin_id;
  std::string board_id;
  std::string description;
  std::vector<double> embedding;  // empty = no image feature available

  bool has_embedding() const { return !embedding.empty(); }
  bool operator==(const Pin&) const = default;
};

struct Board {
  std::string board_id;
  std::string owner_id;
  std::string title;
  std::string description;
  std::uint64_t popularity = 0;  // follower count
  std::vector<std::string> pin_ids;

  bool operator==(const Board&) const = default;
};

struct UserRecord {
  std::string user_id;
  std::vector<Tweet> tweets;
  std::vector<std::string> board_ids;

  bool operator==(const UserRecord&) const = default;
};

// Binary indicator vector over the ontology's topic index table. Both user
// profiles and classifier predictions live in this type.
class LabelVector {
 public:
  LabelVector() = default;
  explicit LabelVector(std::size_t n) : bits_(n, 0) {}
  explicit LabelVector(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto& b : bits_) b = b ? 1 : 0;
  }

  std::size_t size() const { return bits_.size(); }
  bool test(std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool value = true) { bits_[i] = value ? 1 : 0; }

  std::size_t popcount() const {
    std::size_t n = 0;
    for (auto b : bits_) n += b;
    return n;
  }

  LabelVector& operator|=(const LabelVector& other);

  const std::vector<std::uint8_t>& bits() const { return bits_; }

  bool operator==(const LabelVector&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// |a AND b|: shared positive count of two equal-length vectors.
std::size_t intersection_count(const LabelVector& a, const LabelVector& b);

struct DatasetStats {
  std::size_t examples = 0;
  std::size_t attributes = 0;
  std::size_t labels = 0;
  double label_cardinality = 0.0;  // mean labels per example
  double label_density = 0.0;      // cardinality / labels

  bool operator==(const DatasetStats&) const = default;
};

// Throws std::invalid_argument("empty dataset") on an empty list and
// std::invalid_argument("label length mismatch") on inconsistent lengths.
DatasetStats compute_dataset_stats(const std::vector<LabelVector>& labels,
                                   std::size_t attribute_count);

}  // namespace pinrec
