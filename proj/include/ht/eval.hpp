#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ht/corpus_io.hpp"
#include "ht/embeddings.hpp"
#include "ht/linalg.hpp"
#include "ht/preprocess.hpp"

namespace ht {

struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Positive-class precision/recall/F1; zero denominators yield 0.
Metrics classification_metrics(const std::vector<bool>& predictions,
                               const std::vector<bool>& labels);

// F1-maximizing threshold for the rule "score > threshold => positive",
// searched over midpoints of adjacent distinct scores plus -inf/+inf
// sentinels. Ties pick the lowest threshold (favoring recall). Requires both
// classes in `labels`.
double tune_threshold(const std::vector<double>& scores, const std::vector<bool>& labels);

struct ScoredLabel {
  double score = 0.0;
  bool label = false;
};

struct ClassificationStats {
  std::vector<Metrics> per_fold;
  Metrics mean;
  Metrics stddev;
  std::vector<double> thresholds;                        // per fold
  std::vector<std::vector<std::size_t>> tuning_indices;  // per fold, into input order
};

// Seeded shuffle into `folds` deciles; each fold tunes the threshold on its
// decile and tests on the remaining data. A shuffle whose tuning splits are
// single-class is redrawn a bounded number of times, then rejected.
ClassificationStats cross_validate(const std::vector<ScoredLabel>& pairs,
                                   std::size_t folds = 10, std::uint64_t seed = 0);

// |top-k of ranked_ids in relevant_ids| / k. Requires 1 <= k <= list length.
double precision_at_k(const std::vector<std::string>& ranked_ids,
                      const std::set<std::string>& relevant_ids, std::size_t k);

// k+1 bins {0/k, ..., k/k} of query fractions; every precision value must
// sit on the 1/k grid within 1e-12.
std::vector<double> precision_histogram(
    const std::map<std::string, double>& per_query_precision, std::size_t k);

struct RankingStats {
  std::size_t k = 0;
  std::map<std::string, double> per_query_precision;
  std::vector<double> histogram;
};

struct RankedDoc {
  std::string doc_id;
  double score = 0.0;
  bool failed = false;  // no usable words after preprocessing

  bool operator==(const RankedDoc&) const = default;
};

// Descending score, ties by ascending doc_id; failed documents sort last.
void sort_ranked(std::vector<RankedDoc>& docs);

// Scores every corpus document against the summary and ranks them.
// Documents with no usable content get score 0 and the failed flag.
std::vector<RankedDoc> rank_documents(const std::string& summary_text,
                                      const std::map<std::string, std::string>& corpus,
                                      const EmbeddingStore& store, int k,
                                      const Stoplist& stoplist,
                                      double svd_tol = linalg::kDefaultJacobiTol);

// match_score over a pair list (parallel across pairs). ZeroContentError is
// rethrown with the offending pair's ids in the message.
std::vector<ScoredLabel> score_pairs(const std::vector<LabeledPair>& pairs,
                                     const EmbeddingStore& store, int k,
                                     const Stoplist& stoplist,
                                     double svd_tol = linalg::kDefaultJacobiTol);

}  // namespace ht
