#pragma once

#include <vector>

#include "pinrec/data_model.hpp"

namespace pinrec {

// F1 between one truth/prediction pair. Conventions: both empty -> 1,
// exactly one empty -> 0, no overlap -> 0. Symmetric in its arguments.
double f1_example(const LabelVector& truth, const LabelVector& prediction);

// Mean of f1_example over rows (example-based averaging).
double f1_macro_ex(const std::vector<LabelVector>& truth,
                   const std::vector<LabelVector>& prediction);

struct MacroLabelResult {
  double value = 0.0;
  // Set when every label had zero positives in both truth and prediction,
  // i.e. nothing contributed to the average.
  bool all_labels_excluded = false;
  std::vector<double> per_label;   // column F1, 0 for excluded labels
  std::vector<bool> included;      // false = zero support on both sides
};

// Label-based averaging: F1 of each column (micro counts within the column),
// averaged over labels that have a positive in truth or prediction.
MacroLabelResult f1_macro_label(const std::vector<LabelVector>& truth,
                                const std::vector<LabelVector>& prediction);

}  // namespace pinrec
