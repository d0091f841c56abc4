#include "pinrec/metrics.hpp"

#include <stdexcept>

namespace pinrec {

double f1_example(const LabelVector& truth, const LabelVector& prediction) {
  if (truth.size() != prediction.size()) throw std::invalid_argument("label length mismatch");
  const std::size_t t = truth.popcount();
  const std::size_t p = prediction.popcount();
  if (t == 0 && p == 0) return 1.0;
  if (t == 0 || p == 0) return 0.0;
  const std::size_t tp = intersection_count(truth, prediction);
  // 2PR/(P+R) with P=tp/p, R=tp/t reduces to 2*tp/(t+p).
  return 2.0 * static_cast<double>(tp) / static_cast<double>(t + p);
}

double f1_macro_ex(const std::vector<LabelVector>& truth,
                   const std::vector<LabelVector>& prediction) {
  if (truth.empty()) throw std::invalid_argument("empty dataset");
  if (truth.size() != prediction.size()) throw std::invalid_argument("example count mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) sum += f1_example(truth[i], prediction[i]);
  return sum / static_cast<double>(truth.size());
}

MacroLabelResult f1_macro_label(const std::vector<LabelVector>& truth,
                                const std::vector<LabelVector>& prediction) {
  if (truth.empty()) throw std::invalid_argument("empty dataset");
  if (truth.size() != prediction.size()) throw std::invalid_argument("example count mismatch");
  const std::size_t n_labels = truth.front().size();
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i].size() != n_labels || prediction[i].size() != n_labels)
      throw std::invalid_argument("label length mismatch");
  }

  MacroLabelResult result;
  result.per_label.assign(n_labels, 0.0);
  result.included.assign(n_labels, false);
  double sum = 0.0;
  std::size_t counted = 0;
  for (std::size_t l = 0; l < n_labels; ++l) {
    std::size_t tp = 0, truth_pos = 0, pred_pos = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      const bool t = truth[i].test(l);
      const bool p = prediction[i].test(l);
      truth_pos += t;
      pred_pos += p;
      tp += t && p;
    }
    if (truth_pos == 0 && pred_pos == 0) continue;  // zero-support label
    const double f1 = 2.0 * static_cast<double>(tp) / static_cast<double>(truth_pos + pred_pos);
    result.per_label[l] = f1;
    result.included[l] = true;
    sum += f1;
    ++counted;
  }
  if (counted == 0) {
    result.all_labels_excluded = true;
    result.value = 0.0;
  } else {
    result.value = sum / static_cast<double>(counted);
  }
  return result;
}

}  // namespace pinrec
