#include "pinrec/data_model.hpp"

#include <stdexcept>

namespace pinrec {

LabelVector& LabelVector::operator|=(const LabelVector& other) {
  if (other.size() != size()) throw std::invalid_argument("label length mismatch");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= other.bits_[i];
  return *this;
}

std::size_t intersection_count(const LabelVector& a, const LabelVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("label length mismatch");
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += a.bits()[i] & b.bits()[i];
  return n;
}

DatasetStats compute_dataset_stats(const std::vector<LabelVector>& labels,
                                   std::size_t attribute_count) {
  if (labels.empty()) throw std::invalid_argument("empty dataset");
  const std::size_t width = labels.front().size();
  std::size_t total = 0;
  for (const auto& v : labels) {
    if (v.size() != width) throw std::invalid_argument("label length mismatch");
    total += v.popcount();
  }
  DatasetStats stats;
  stats.examples = labels.size();
  stats.attributes = attribute_count;
  stats.labels = width;
  stats.label_cardinality = static_cast<double>(total) / static_cast<double>(labels.size());
  stats.label_density = width == 0 ? 0.0 : stats.label_cardinality / static_cast<double>(width);
  return stats;
}

}  // namespace pinrec
