#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pinrec/data_model.hpp"
#include "pinrec/textfeat.hpp"

namespace pinrec {

struct LogisticHyperparams {
  double learning_rate = 0.1;
  double l2_lambda = 1e-4;
  int iterations = 200;

  bool operator==(const LogisticHyperparams&) const = default;
};

// L2-regularized logistic model trained by full-batch gradient descent from
// zero initialization. Columns with a single class collapse to a constant.
struct BinaryLearner {
  std::vector<double> weights;
  double bias = 0.0;
  LogisticHyperparams hp;
  bool constant = false;
  double constant_value = 0.0;
  std::vector<double> loss_history;  // loss per iteration incl. initial; not persisted

  bool operator==(const BinaryLearner& o) const {
    return weights == o.weights && bias == o.bias && hp == o.hp && constant == o.constant &&
           constant_value == o.constant_value;
  }
};

// Mean cross-entropy + (lambda/2)*||w||^2, numerically stable form.
double logistic_loss(const std::vector<SparseVector>& X, const std::vector<std::uint8_t>& y,
                     const std::vector<double>& weights, double bias, double l2_lambda);

// Analytic gradient of logistic_loss; grad_w sized like weights.
void logistic_gradient(const std::vector<SparseVector>& X, const std::vector<std::uint8_t>& y,
                       const std::vector<double>& weights, double bias, double l2_lambda,
                       std::vector<double>& grad_w, double& grad_b);

// Throws std::invalid_argument("non-finite feature") on NaN/Inf inputs.
BinaryLearner fit_binary(const std::vector<SparseVector>& X, const std::vector<std::uint8_t>& y,
                         std::size_t dim, const LogisticHyperparams& hp);

double predict_prob(const BinaryLearner& learner, const SparseVector& x);

// ---- Binary Relevance ----

struct BrModel {
  std::size_t n_labels = 0;
  std::size_t dim = 0;
  std::vector<BinaryLearner> learners;  // one per label

  bool operator==(const BrModel&) const = default;
};

BrModel fit_br(const std::vector<SparseVector>& X, const std::vector<LabelVector>& Y,
               const LogisticHyperparams& hp, int threads = 1);
LabelVector predict_br(const BrModel& model, const SparseVector& x);

// ---- Label Powerset ----

// Distinct labelset patterns <-> class indices, in first-appearance order.
struct LabelsetTable {
  std::vector<std::vector<std::uint8_t>> patterns;
  std::vector<std::int64_t> counts;  // training frequency per class

  bool operator==(const LabelsetTable&) const = default;
};

struct LpModel {
  std::size_t n_labels = 0;
  std::size_t dim = 0;
  LabelsetTable table;
  std::vector<BinaryLearner> class_learners;  // one-vs-rest per class

  bool operator==(const LpModel&) const = default;
};

LpModel fit_lp(const std::vector<SparseVector>& X, const std::vector<LabelVector>& Y,
               const LogisticHyperparams& hp, int threads = 1);
// Argmax class score; ties go to the more frequent training labelset, then
// the lower class index. Output is always a training labelset.
LabelVector predict_lp(const LpModel& model, const SparseVector& x);

// ---- RAkEL ----

struct LabelsetDraw {
  std::vector<std::vector<std::uint32_t>> labelsets;  // M distinct sorted k-subsets
  std::vector<std::uint32_t> uncovered;               // labels in no subset
};

// Seeded rejection sampling of M distinct sorted k-subsets of [0, L). When
// M*k >= L the batch is redrawn (bounded retries) until every label is
// covered; otherwise `uncovered` lists the gap. Throws
// "too many distinct subsets requested" when M > C(L, k).
LabelsetDraw draw_labelsets(std::size_t n_labels, std::size_t k, std::size_t m,
                            std::uint64_t seed);

struct RakelMember {
  std::vector<std::uint32_t> labelset;  // sorted label indices, size k
  LpModel lp;                           // trained on the restricted columns

  bool operator==(const RakelMember&) const = default;
};

struct RakelModel {
  std::size_t n_labels = 0;
  std::size_t dim = 0;
  std::size_t subset_size = 0;   // k
  std::size_t member_count = 0;  // M
  double vote_threshold = 0.5;   // t, strict >
  std::uint64_t seed = 0;
  std::vector<RakelMember> members;
  std::vector<std::uint32_t> uncovered;

  bool operator==(const RakelModel&) const = default;
};

RakelModel fit_rakel(const std::vector<SparseVector>& X, const std::vector<LabelVector>& Y,
                     std::size_t k, std::size_t m, double vote_threshold, std::uint64_t seed,
                     const LogisticHyperparams& hp, int threads = 1);
// Per-label vote: positive votes / members containing the label, bit set iff
// the ratio strictly exceeds the threshold. Labels in no member stay 0.
LabelVector predict_rakel(const RakelModel& model, const SparseVector& x);

}  // namespace pinrec
