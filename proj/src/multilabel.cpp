#include "pinrec/multilabel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "pinrec/parallel.hpp"
#include "pinrec/rng.hpp"

namespace pinrec {

namespace {

double sigmoid(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double dot(const std::vector<double>& w, const SparseVector& x, double bias) {
  double z = bias;
  for (const auto& [j, v] : x.entries) z += w[j] * v;
  return z;
}

// log(1 + exp(-|z|)) + max(z,0) - y*z  ==  -[y log p + (1-y) log(1-p)]
double cross_entropy_term(double z, double y) {
  return std::log1p(std::exp(-std::abs(z))) + std::max(z, 0.0) - y * z;
}

void check_finite(const std::vector<SparseVector>& X) {
  for (const auto& x : X)
    for (const auto& [_, v] : x.entries)
      if (!std::isfinite(v)) throw std::invalid_argument("non-finite feature");
}

// C(n, k) saturating at 2^62 to avoid overflow; exact below that.
std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  const std::uint64_t cap = 1ull << 62;
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    if (result > cap / (n - k + i)) return cap;
    result = result * (n - k + i) / i;
  }
  return result;
}

}  // namespace

double logistic_loss(const std::vector<SparseVector>& X, const std::vector<std::uint8_t>& y,
                     const std::vector<double>& weights, double bias, double l2_lambda) {
  double loss = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i)
    loss += cross_entropy_term(dot(weights, X[i], bias), static_cast<double>(y[i]));
  loss /= static_cast<double>(X.size());
  double reg = 0.0;
  for (double w : weights) reg += w * w;
  return loss + 0.5 * l2_lambda * reg;
}

void logistic_gradient(const std::vector<SparseVector>& X, const std::vector<std::uint8_t>& y,
                       const std::vector<double>& weights, double bias, double l2_lambda,
                       std::vector<double>& grad_w, double& grad_b) {
  grad_w.assign(weights.size(), 0.0);
  grad_b = 0.0;
  const double inv_n = 1.0 / static_cast<double>(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) {
    const double residual = sigmoid(dot(weights, X[i], bias)) - static_cast<double>(y[i]);
    for (const auto& [j, v] : X[i].entries) grad_w[j] += residual * v * inv_n;
    grad_b += residual * inv_n;
  }
  for (std::size_t j = 0; j < weights.size(); ++j) grad_w[j] += l2_lambda * weights[j];
}

BinaryLearner fit_binary(const std::vector<SparseVector>& X, const std::vector<std::uint8_t>& y,
                         std::size_t dim, const LogisticHyperparams& hp) {
  if (X.empty() || X.size() != y.size())
    throw std::invalid_argument("empty or mismatched training set");
  check_finite(X);

  BinaryLearner learner;
  learner.hp = hp;

  std::size_t positives = 0;
  for (auto v : y) positives += v ? 1 : 0;
  if (positives == 0 || positives == y.size()) {
    // Single-class column: constant predictor of the (majority = only) value.
    learner.constant = true;
    learner.constant_value = positives == 0 ? 0.0 : 1.0;
    learner.weights.assign(dim, 0.0);
    return learner;
  }

  learner.weights.assign(dim, 0.0);
  learner.bias = 0.0;
  learner.loss_history.reserve(static_cast<std::size_t>(hp.iterations) + 1);

  const double inv_n = 1.0 / static_cast<double>(X.size());
  std::vector<double> grad(dim, 0.0);
  for (int it = 0; it < hp.iterations; ++it) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0.0;
    double loss = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) {
      const double z = dot(learner.weights, X[i], learner.bias);
      const double target = static_cast<double>(y[i]);
      loss += cross_entropy_term(z, target);
      const double residual = sigmoid(z) - target;
      for (const auto& [j, v] : X[i].entries) grad[j] += residual * v * inv_n;
      grad_b += residual * inv_n;
    }
    double reg = 0.0;
    for (double w : learner.weights) reg += w * w;
    learner.loss_history.push_back(loss * inv_n + 0.5 * hp.l2_lambda * reg);

    for (std::size_t j = 0; j < dim; ++j)
      learner.weights[j] -= hp.learning_rate * (grad[j] + hp.l2_lambda * learner.weights[j]);
    learner.bias -= hp.learning_rate * grad_b;
  }
  learner.loss_history.push_back(
      logistic_loss(X, y, learner.weights, learner.bias, hp.l2_lambda));

  for (double w : learner.weights)
    if (!std::isfinite(w)) throw std::runtime_error("training diverged to non-finite weights");
  return learner;
}

double predict_prob(const BinaryLearner& learner, const SparseVector& x) {
  if (learner.constant) return learner.constant_value;
  return sigmoid(dot(learner.weights, x, learner.bias));
}

namespace {

// Raw affine score; argmax over sigmoid equals argmax over this.
double class_score(const BinaryLearner& learner, const SparseVector& x) {
  if (learner.constant) return learner.constant_value > 0.5 ? 1e30 : -1e30;
  return dot(learner.weights, x, learner.bias);
}

std::size_t infer_dim(const std::vector<SparseVector>& X) {
  std::size_t dim = 0;
  for (const auto& x : X) dim = std::max(dim, x.dim);
  return dim;
}

}  // namespace

BrModel fit_br(const std::vector<SparseVector>& X, const std::vector<LabelVector>& Y,
               const LogisticHyperparams& hp, int threads) {
  if (X.empty() || X.size() != Y.size())
    throw std::invalid_argument("empty or mismatched training set");
  BrModel model;
  model.n_labels = Y.front().size();
  model.dim = infer_dim(X);
  for (const auto& row : Y)
    if (row.size() != model.n_labels) throw std::invalid_argument("label length mismatch");

  model.learners.resize(model.n_labels);
  parallel_for(model.n_labels, threads, [&](std::size_t l) {
    std::vector<std::uint8_t> y(X.size());
    for (std::size_t i = 0; i < X.size(); ++i) y[i] = Y[i].test(l) ? 1 : 0;
    model.learners[l] = fit_binary(X, y, model.dim, hp);
  });
  return model;
}

LabelVector predict_br(const BrModel& model, const SparseVector& x) {
  LabelVector out(model.n_labels);
  for (std::size_t l = 0; l < model.n_labels; ++l)
    out.set(l, predict_prob(model.learners[l], x) > 0.5);
  return out;
}

LpModel fit_lp(const std::vector<SparseVector>& X, const std::vector<LabelVector>& Y,
               const LogisticHyperparams& hp, int threads) {
  if (X.empty() || X.size() != Y.size())
    throw std::invalid_argument("empty or mismatched training set");
  LpModel model;
  model.n_labels = Y.front().size();
  model.dim = infer_dim(X);

  // Distinct labelsets become classes, numbered in first-appearance order.
  std::map<std::vector<std::uint8_t>, std::size_t> class_of;
  std::vector<std::size_t> row_class(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) {
    if (Y[i].size() != model.n_labels) throw std::invalid_argument("label length mismatch");
    const auto& pattern = Y[i].bits();
    auto [it, inserted] = class_of.emplace(pattern, model.table.patterns.size());
    if (inserted) {
      model.table.patterns.push_back(pattern);
      model.table.counts.push_back(0);
    }
    row_class[i] = it->second;
    ++model.table.counts[it->second];
  }

  model.class_learners.resize(model.table.patterns.size());
  parallel_for(model.table.patterns.size(), threads, [&](std::size_t c) {
    std::vector<std::uint8_t> y(X.size());
    for (std::size_t i = 0; i < X.size(); ++i) y[i] = row_class[i] == c ? 1 : 0;
    model.class_learners[c] = fit_binary(X, y, model.dim, hp);
  });
  return model;
}

LabelVector predict_lp(const LpModel& model, const SparseVector& x) {
  std::size_t best = 0;
  double best_score = class_score(model.class_learners[0], x);
  for (std::size_t c = 1; c < model.class_learners.size(); ++c) {
    const double score = class_score(model.class_learners[c], x);
    if (score > best_score ||
        (score == best_score && model.table.counts[c] > model.table.counts[best])) {
      best = c;
      best_score = score;
    }
  }
  return LabelVector(model.table.patterns[best]);
}

LabelsetDraw draw_labelsets(std::size_t n_labels, std::size_t k, std::size_t m,
                            std::uint64_t seed) {
  if (k < 1 || k > n_labels) throw std::invalid_argument("labelset size k must be in [1, L]");
  if (m < 1) throw std::invalid_argument("need at least one labelset");
  if (static_cast<std::uint64_t>(m) > binomial_capped(n_labels, k))
    throw std::invalid_argument("too many distinct subsets requested");

  Rng rng(seed);
  auto draw_one = [&]() {
    // Floyd's algorithm for a uniform k-subset of [0, n_labels).
    std::set<std::uint32_t> chosen;
    for (std::size_t j = n_labels - k; j < n_labels; ++j) {
      const auto r = static_cast<std::uint32_t>(rng.uniform_below(j + 1));
      if (!chosen.insert(r).second) chosen.insert(static_cast<std::uint32_t>(j));
    }
    return std::vector<std::uint32_t>(chosen.begin(), chosen.end());
  };

  auto draw_batch = [&]() {
    std::set<std::vector<std::uint32_t>> distinct;
    std::vector<std::vector<std::uint32_t>> batch;
    std::size_t attempts = 0;
    const std::size_t budget = 10000 * m;
    while (batch.size() < m) {
      if (++attempts > budget)
        throw std::runtime_error("unable to draw the requested distinct labelsets");
      auto subset = draw_one();
      if (distinct.insert(subset).second) batch.push_back(std::move(subset));
    }
    return batch;
  };

  auto uncovered_of = [&](const std::vector<std::vector<std::uint32_t>>& batch) {
    std::vector<std::uint8_t> covered(n_labels, 0);
    for (const auto& s : batch)
      for (auto l : s) covered[l] = 1;
    std::vector<std::uint32_t> gap;
    for (std::size_t l = 0; l < n_labels; ++l)
      if (!covered[l]) gap.push_back(static_cast<std::uint32_t>(l));
    return gap;
  };

  LabelsetDraw draw;
  draw.labelsets = draw_batch();
  draw.uncovered = uncovered_of(draw.labelsets);
  if (!draw.uncovered.empty() && m * k >= n_labels) {
    // Coverage is possible; redraw the batch a bounded number of times.
    for (int retry = 0; retry < 200 && !draw.uncovered.empty(); ++retry) {
      draw.labelsets = draw_batch();
      draw.uncovered = uncovered_of(draw.labelsets);
    }
  }
  return draw;
}

RakelModel fit_rakel(const std::vector<SparseVector>& X, const std::vector<LabelVector>& Y,
                     std::size_t k, std::size_t m, double vote_threshold, std::uint64_t seed,
                     const LogisticHyperparams& hp, int threads) {
  if (X.empty() || X.size() != Y.size())
    throw std::invalid_argument("empty or mismatched training set");
  RakelModel model;
  model.n_labels = Y.front().size();
  model.dim = infer_dim(X);
  model.subset_size = k;
  model.member_count = m;
  model.vote_threshold = vote_threshold;
  model.seed = seed;

  auto draw = draw_labelsets(model.n_labels, k, m, seed);
  model.uncovered = draw.uncovered;
  model.members.resize(draw.labelsets.size());
  for (std::size_t j = 0; j < draw.labelsets.size(); ++j)
    model.members[j].labelset = draw.labelsets[j];

  parallel_for(model.members.size(), threads, [&](std::size_t j) {
    auto& member = model.members[j];
    std::vector<LabelVector> restricted(Y.size());
    for (std::size_t i = 0; i < Y.size(); ++i) {
      LabelVector row(member.labelset.size());
      for (std::size_t p = 0; p < member.labelset.size(); ++p)
        row.set(p, Y[i].test(member.labelset[p]));
      restricted[i] = std::move(row);
    }
    member.lp = fit_lp(X, restricted, hp, 1);
  });
  return model;
}

LabelVector predict_rakel(const RakelModel& model, const SparseVector& x) {
  std::vector<std::uint32_t> votes(model.n_labels, 0);
  std::vector<std::uint32_t> appearances(model.n_labels, 0);
  for (const auto& member : model.members) {
    const LabelVector local = predict_lp(member.lp, x);
    for (std::size_t p = 0; p < member.labelset.size(); ++p) {
      const auto l = member.labelset[p];
      ++appearances[l];
      votes[l] += local.test(p) ? 1 : 0;
    }
  }
  LabelVector out(model.n_labels);
  for (std::size_t l = 0; l < model.n_labels; ++l) {
    if (appearances[l] == 0) continue;
    const double ratio = static_cast<double>(votes[l]) / static_cast<double>(appearances[l]);
    out.set(l, ratio > model.vote_threshold);
  }
  return out;
}

}  // namespace pinrec
