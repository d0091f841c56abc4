#include "pinrec/diversify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pinrec/profiling.hpp"

namespace pinrec {

namespace {

double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sq += d * d;
  }
  return sq;
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log(x);
  return h;
}

std::vector<double> mean_distribution(const std::vector<ClusterDistribution>& dists) {
  std::vector<double> mean(dists.front().probs.size(), 0.0);
  for (const auto& d : dists) {
    if (d.empty_board) throw std::invalid_argument("empty board in distribution set");
    if (d.probs.size() != mean.size()) throw std::invalid_argument("distribution length mismatch");
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += d.probs[i];
  }
  const double inv = 1.0 / static_cast<double>(dists.size());
  for (auto& x : mean) x *= inv;
  return mean;
}

}  // namespace

ClusterModel fit_affinity_propagation(const std::vector<std::vector<double>>& points,
                                      const ApParams& params) {
  if (points.empty()) throw std::invalid_argument("no points to cluster");
  if (params.damping < 0.5 || params.damping >= 1.0)
    throw std::invalid_argument("damping must be in [0.5, 1)");
  const std::size_t n = points.size();
  const std::size_t dim = points.front().size();
  for (const auto& p : points) {
    if (p.size() != dim) throw std::invalid_argument("point dimension mismatch");
    for (double v : p)
      if (!std::isfinite(v)) throw std::invalid_argument("non-finite point coordinate");
  }

  ClusterModel model;
  model.damping = params.damping;
  if (n == 1) {
    model.exemplars = {0};
    model.assignment = {0};
    model.converged = true;
    return model;
  }

  // Similarity matrix: s(i,j) = -||xi - xj||^2, diagonal = median off-diagonal.
  std::vector<double> S(n * n, 0.0);
  std::vector<double> off_diag;
  off_diag.reserve(n * (n - 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s = -squared_distance(points[i], points[j]);
      S[i * n + j] = s;
      S[j * n + i] = s;
      off_diag.push_back(s);
      off_diag.push_back(s);
    }
  }
  const double preference = median(std::move(off_diag));
  for (std::size_t i = 0; i < n; ++i) S[i * n + i] = preference;

  std::vector<double> R(n * n, 0.0);
  std::vector<double> A(n * n, 0.0);
  const double damp = params.damping;
  const double keep = 1.0 - damp;

  std::vector<std::uint8_t> exemplar_mask(n, 0);
  int stable = 0;
  int iter = 0;
  for (; iter < params.max_iter; ++iter) {
    // Responsibilities: r(i,k) <- s(i,k) - max_{k' != k} (a(i,k') + s(i,k')).
    for (std::size_t i = 0; i < n; ++i) {
      double max1 = -HUGE_VAL, max2 = -HUGE_VAL;
      std::size_t arg1 = 0;
      for (std::size_t k = 0; k < n; ++k) {
        const double v = A[i * n + k] + S[i * n + k];
        if (v > max1) {
          max2 = max1;
          max1 = v;
          arg1 = k;
        } else if (v > max2) {
          max2 = v;
        }
      }
      for (std::size_t k = 0; k < n; ++k) {
        const double target = S[i * n + k] - (k == arg1 ? max2 : max1);
        R[i * n + k] = damp * R[i * n + k] + keep * target;
      }
    }
    // Availabilities: a(i,k) <- min(0, r(k,k) + sum_{i' != i,k} max(0, r(i',k))),
    // self-availability a(k,k) <- sum_{i' != k} max(0, r(i',k)).
    for (std::size_t k = 0; k < n; ++k) {
      double pos_sum = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        if (i != k) pos_sum += std::max(0.0, R[i * n + k]);
      const double rkk = R[k * n + k];
      for (std::size_t i = 0; i < n; ++i) {
        double target;
        if (i == k) {
          target = pos_sum;
        } else {
          target = std::min(0.0, rkk + pos_sum - std::max(0.0, R[i * n + k]));
        }
        A[i * n + k] = damp * A[i * n + k] + keep * target;
      }
    }

    bool changed = false;
    for (std::size_t k = 0; k < n; ++k) {
      const std::uint8_t is_exemplar = (R[k * n + k] + A[k * n + k]) > 0.0 ? 1 : 0;
      if (is_exemplar != exemplar_mask[k]) {
        exemplar_mask[k] = is_exemplar;
        changed = true;
      }
    }
    stable = changed ? 0 : stable + 1;
    if (stable >= params.stable_iter) {
      ++iter;
      break;
    }
  }
  model.iterations = iter;
  model.converged = stable >= params.stable_iter;

  std::vector<int> exemplars;
  for (std::size_t k = 0; k < n; ++k)
    if (exemplar_mask[k]) exemplars.push_back(static_cast<int>(k));
  if (exemplars.empty()) {
    // Degenerate run; fall back to the strongest self-belief so every point
    // still gets a cluster.
    std::size_t best = 0;
    for (std::size_t k = 1; k < n; ++k)
      if (R[k * n + k] + A[k * n + k] > R[best * n + best] + A[best * n + best]) best = k;
    exemplars.push_back(static_cast<int>(best));
  }

  model.exemplars = exemplars;
  model.assignment.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    int best_cluster = -1;
    double best_sim = -HUGE_VAL;
    for (std::size_t c = 0; c < exemplars.size(); ++c) {
      const auto e = static_cast<std::size_t>(exemplars[c]);
      if (e == i) {  // exemplars own their cluster
        best_cluster = static_cast<int>(c);
        break;
      }
      const double sim = S[i * n + e];
      if (sim > best_sim) {
        best_sim = sim;
        best_cluster = static_cast<int>(c);
      }
    }
    model.assignment[i] = best_cluster;
  }
  return model;
}

ClusterDistribution board_distribution(
    const Board& board, const ClusterModel& model,
    const std::unordered_map<std::string, std::size_t>& pin_index) {
  ClusterDistribution dist;
  dist.board_id = board.board_id;
  std::vector<double> counts(model.cluster_count(), 0.0);
  std::size_t total = 0;
  for (const auto& pin_id : board.pin_ids) {
    const auto it = pin_index.find(pin_id);
    if (it == pin_index.end()) continue;  // pin without embedding
    counts[static_cast<std::size_t>(model.assignment[it->second])] += 1.0;
    ++total;
  }
  if (total == 0) {
    dist.empty_board = true;
    return dist;
  }
  for (auto& c : counts) c /= static_cast<double>(total);
  dist.probs = std::move(counts);
  return dist;
}

double set_entropy(const std::vector<ClusterDistribution>& dists) {
  if (dists.empty()) throw std::invalid_argument("empty distribution set");
  return entropy(mean_distribution(dists));
}

std::vector<Board> select_candidates(
    const std::vector<Board>& boards,
    const std::unordered_map<std::string, std::vector<Pin>>& pins_by_board,
    const std::string& topic_id, std::size_t k, const TopicOntology& ontology) {
  if (k < 1) throw std::invalid_argument("candidate count must be >= 1");
  const auto topic_index = ontology.index_of(topic_id);
  if (!topic_index) throw std::invalid_argument("unknown topic: " + topic_id);

  static const std::vector<Pin> no_pins;
  CategoryMatcher matcher(ontology);
  std::vector<Board> matched;
  for (const auto& board : boards) {
    const auto it = pins_by_board.find(board.board_id);
    const auto& pins = it == pins_by_board.end() ? no_pins : it->second;
    if (map_board(board, pins, ontology, matcher).test(*topic_index)) matched.push_back(board);
  }
  std::sort(matched.begin(), matched.end(), [](const Board& a, const Board& b) {
    if (a.popularity != b.popularity) return a.popularity > b.popularity;
    return a.board_id < b.board_id;
  });
  if (matched.size() > k) matched.resize(k);
  return matched;
}

namespace {

std::vector<std::string> id_tuple(const std::vector<ClusterDistribution>& dists,
                                  const std::vector<std::size_t>& subset) {
  std::vector<std::string> ids;
  ids.reserve(subset.size());
  for (auto i : subset) ids.push_back(dists[i].board_id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

std::vector<ClusterDistribution> select_diverse_exact(
    const std::vector<ClusterDistribution>& candidates, std::size_t m, std::size_t exact_cap) {
  if (m < 1 || m > candidates.size())
    throw std::invalid_argument("subset size must be in [1, |candidates|]");
  if (candidates.size() > exact_cap)
    throw std::invalid_argument(
        "too many candidates for exhaustive selection; use select_diverse_greedy");

  std::vector<std::size_t> indices(m);
  for (std::size_t i = 0; i < m; ++i) indices[i] = i;

  std::vector<std::size_t> best_subset;
  std::vector<std::string> best_ids;
  double best_value = -HUGE_VAL;

  std::vector<ClusterDistribution> scratch;
  for (;;) {
    scratch.clear();
    for (auto i : indices) scratch.push_back(candidates[i]);
    const double value = set_entropy(scratch);
    auto ids = id_tuple(candidates, indices);
    if (value > best_value || (value == best_value && ids < best_ids)) {
      best_value = value;
      best_subset = indices;
      best_ids = std::move(ids);
    }

    // next combination in lexicographic index order
    std::size_t pos = m;
    while (pos > 0 && indices[pos - 1] == candidates.size() - m + pos - 1) --pos;
    if (pos == 0) break;
    ++indices[pos - 1];
    for (std::size_t j = pos; j < m; ++j) indices[j] = indices[j - 1] + 1;
  }

  std::vector<ClusterDistribution> result;
  result.reserve(m);
  for (auto i : best_subset) result.push_back(candidates[i]);
  return result;
}

std::vector<ClusterDistribution> select_diverse_greedy(
    const std::vector<ClusterDistribution>& candidates, std::size_t m) {
  if (m < 1 || m > candidates.size())
    throw std::invalid_argument("subset size must be in [1, |candidates|]");

  std::vector<std::uint8_t> used(candidates.size(), 0);
  std::vector<ClusterDistribution> chosen;
  chosen.reserve(m);

  while (chosen.size() < m) {
    std::size_t best_index = candidates.size();
    double best_value = -HUGE_VAL;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (used[i]) continue;
      chosen.push_back(candidates[i]);
      const double value = set_entropy(chosen);
      chosen.pop_back();
      const bool better =
          value > best_value ||
          (value == best_value && best_index < candidates.size() &&
           candidates[i].board_id < candidates[best_index].board_id);
      if (best_index == candidates.size() || better) {
        best_value = value;
        best_index = i;
      }
    }
    used[best_index] = 1;
    chosen.push_back(candidates[best_index]);
  }
  return chosen;
}

}  // namespace pinrec
