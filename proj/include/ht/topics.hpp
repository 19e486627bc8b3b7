#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ht/linalg.hpp"
#include "ht/matrix.hpp"
#include "ht/preprocess.hpp"

namespace ht {

// Orthonormal topic basis extracted from one document, with per-topic
// importance. Immutable after construction; share freely across threads.
struct TopicModel {
  Matrix topics;                        // dim x effective_k, orthonormal columns
  std::vector<double> raw_importance;   // ||h_k^T W||^2, nonincreasing
  std::vector<double> norm_importance;  // raw / sum(raw), sums to 1
  std::size_t effective_k = 0;
  double frobenius_sq = 0.0;            // ||W||_F^2 of the source document

  std::size_t dim() const { return topics.rows(); }
};

// Top-k topic vectors of the document matrix. k is clamped to
// min(dim, n) for short documents.
TopicModel extract_topics(const DocumentMatrix& doc, int k,
                          double svd_tol = linalg::kDefaultJacobiTol);

// H H^T w: the best approximation of w inside the topic span.
std::vector<double> reconstruct_word(const TopicModel& model, std::span<const double> w);

// ||W - h_k h_k^T W||_F^2 for a single topic (0-based index).
double topic_reconstruction_error(const TopicModel& model, const DocumentMatrix& doc,
                                  std::size_t topic_index);

// Sum over words of ||w_i - H H^T w_i||^2.
double total_reconstruction_error(const TopicModel& model, const DocumentMatrix& doc);

struct TopicWord {
  std::string token;
  double error = 0.0;
};

// The m distinct tokens the topic basis reconstructs best, ascending by
// error, ties broken alphabetically. Returns fewer than m when the document
// has fewer distinct tokens.
std::vector<TopicWord> topic_words(const TopicModel& model, const DocumentMatrix& doc,
                                   std::size_t m);

// Text serialization (17 significant digits, lossless round-trip).
void write_model(const TopicModel& model, std::ostream& out);
TopicModel read_model(std::istream& in);

}  // namespace ht
