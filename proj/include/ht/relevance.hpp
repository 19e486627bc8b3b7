#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "ht/embeddings.hpp"
#include "ht/preprocess.hpp"
#include "ht/topics.hpp"

namespace ht {

// The summary side is stacked word vectors too, never its own topic model.
using SummaryMatrix = DocumentMatrix;

struct RelevanceReport {
  std::vector<double> per_topic;  // r(h_k, S), each in [0, 1]
  double score = 0.0;             // sum_k norm_importance[k] * per_topic[k]
  std::size_t effective_k = 0;
};

// |cos| between a summary word and its rank-1 reconstruction by the topic;
// 0 when the word is orthogonal to the topic. h must be unit length within
// 1e-8 and s nonzero.
double word_topic_relevance(std::span<const double> h, std::span<const double> s);

// Mean word relevance over the summary columns.
double topic_summary_relevance(std::span<const double> h, const SummaryMatrix& summary);

RelevanceReport document_summary_relevance(const TopicModel& model,
                                           const SummaryMatrix& summary);

struct MatchResult {
  TopicModel model;
  RelevanceReport report;
  std::size_t doc_words = 0;         // columns kept on each side
  std::size_t summary_words = 0;
  std::size_t doc_dropped = 0;       // tokens without a usable vector
  std::size_t summary_dropped = 0;
};

// Full pipeline: tokenize -> remove stopwords -> stack vectors -> extract
// topics from the document -> score the summary. Throws ZeroContentError
// naming the offending side.
MatchResult match_pair(std::string_view doc_text, std::string_view summary_text,
                       const EmbeddingStore& store, int k, const Stoplist& stoplist,
                       double svd_tol = linalg::kDefaultJacobiTol);

double match_score(std::string_view doc_text, std::string_view summary_text,
                   const EmbeddingStore& store, int k, const Stoplist& stoplist,
                   double svd_tol = linalg::kDefaultJacobiTol);

// Cosine between the mean document vector and the mean summary vector;
// 0 when either mean vanishes. Comparison baseline only.
double baseline_avg_cosine(const DocumentMatrix& doc, const SummaryMatrix& summary);

}  // namespace ht
