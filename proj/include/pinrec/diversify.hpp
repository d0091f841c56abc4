#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "pinrec/data_model.hpp"
#include "pinrec/ontology.hpp"

namespace pinrec {

struct ApParams {
  double damping = 0.5;   // lambda in [0.5, 1)
  int max_iter = 200;
  int stable_iter = 15;   // stop after this many iterations without exemplar change
};

struct ClusterModel {
  std::vector<int> exemplars;   // point indices, ascending; cluster c = exemplars[c]
  std::vector<int> assignment;  // point index -> cluster index in [0, C)
  double damping = 0.5;
  int iterations = 0;
  bool converged = false;

  std::size_t cluster_count() const { return exemplars.size(); }
};

// Exemplar clustering by responsibility/availability message passing.
// Similarity is negative squared euclidean distance; the self-preference is
// the median off-diagonal similarity. Fully deterministic: no jitter, ties
// resolve to the lower index.
ClusterModel fit_affinity_propagation(const std::vector<std::vector<double>>& points,
                                      const ApParams& params = {});

// Normalized histogram of a board's pin cluster assignments.
struct ClusterDistribution {
  std::string board_id;
  std::vector<double> probs;
  bool empty_board = false;  // no embeddable pins; excluded from selection
};

ClusterDistribution board_distribution(const Board& board, const ClusterModel& model,
                                       const std::unordered_map<std::string, std::size_t>& pin_index);

// Set-level entropy: Shannon entropy (natural log) of the mean distribution.
double set_entropy(const std::vector<ClusterDistribution>& dists);

// Boards mapped to the topic, by popularity descending then board_id, first k.
std::vector<Board> select_candidates(
    const std::vector<Board>& boards,
    const std::unordered_map<std::string, std::vector<Pin>>& pins_by_board,
    const std::string& topic_id, std::size_t k, const TopicOntology& ontology);

// Exhaustive argmax of set entropy over size-m subsets; ties go to the
// lexicographically smallest board_id tuple. Refuses candidate lists larger
// than exact_cap.
std::vector<ClusterDistribution> select_diverse_exact(
    const std::vector<ClusterDistribution>& candidates, std::size_t m,
    std::size_t exact_cap = 20);

// Greedy forward selection: start from the highest-entropy single board, then
// repeatedly add the board that maximizes the augmented set entropy.
std::vector<ClusterDistribution> select_diverse_greedy(
    const std::vector<ClusterDistribution>& candidates, std::size_t m);

}  // namespace pinrec
