#include "ht/relevance.hpp"

#include <cmath>
#include <stdexcept>

#include "ht/errors.hpp"
#include "ht/kernels.hpp"

namespace ht {

namespace {

double norm(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

MatrixBuild build_side(std::string_view text, const EmbeddingStore& store,
                       const Stoplist& stoplist, ZeroContentError::Side side) {
  const auto content = remove_stopwords(tokenize(text), stoplist);
  try {
    return build_matrix(content, store);
  } catch (const ZeroContentError&) {
    const char* name = side == ZeroContentError::Side::document ? "document" : "summary";
    throw ZeroContentError(std::string(name) + " has no in-vocabulary content words", side);
  }
}

}  // namespace

double word_topic_relevance(std::span<const double> h, std::span<const double> s) {
  if (h.size() != s.size()) throw std::invalid_argument("vector dimension mismatch");
  if (std::abs(norm(h) - 1.0) > 1e-8) {
    throw std::invalid_argument("topic vector must be unit length");
  }
  if (norm(s) == 0.0) throw std::invalid_argument("summary word vector is zero");
  return kernels::projection_cosine(h, s);
}

double topic_summary_relevance(std::span<const double> h, const SummaryMatrix& summary) {
  if (summary.cols() == 0) throw std::invalid_argument("empty summary");
  if (summary.matrix.rows() != h.size()) {
    throw std::invalid_argument("summary dimension mismatch");
  }
  if (std::abs(norm(h) - 1.0) > 1e-8) {
    throw std::invalid_argument("topic vector must be unit length");
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < summary.cols(); ++j) {
    sum += kernels::projection_cosine(h, summary.matrix.col(j));
  }
  return sum / static_cast<double>(summary.cols());
}

RelevanceReport document_summary_relevance(const TopicModel& model,
                                           const SummaryMatrix& summary) {
  if (summary.cols() == 0) throw std::invalid_argument("empty summary");
  if (summary.matrix.rows() != model.dim()) {
    throw std::invalid_argument("model and summary disagree on dimension");
  }
  RelevanceReport report;
  report.effective_k = model.effective_k;
  report.per_topic = kernels::topic_summary_means(model.topics, summary.matrix);
  double score = 0.0;
  for (std::size_t t = 0; t < model.effective_k; ++t) {
    score += model.norm_importance[t] * report.per_topic[t];
  }
  report.score = score > 1.0 ? 1.0 : score;  // guard the convex combination
  return report;
}

MatchResult match_pair(std::string_view doc_text, std::string_view summary_text,
                       const EmbeddingStore& store, int k, const Stoplist& stoplist,
                       double svd_tol) {
  auto doc = build_side(doc_text, store, stoplist, ZeroContentError::Side::document);
  auto summary = build_side(summary_text, store, stoplist, ZeroContentError::Side::summary);

  MatchResult out;
  out.model = extract_topics(doc.doc, k, svd_tol);
  out.report = document_summary_relevance(out.model, summary.doc);
  out.doc_words = doc.doc.cols();
  out.summary_words = summary.doc.cols();
  out.doc_dropped = doc.dropped;
  out.summary_dropped = summary.dropped;
  return out;
}

double match_score(std::string_view doc_text, std::string_view summary_text,
                   const EmbeddingStore& store, int k, const Stoplist& stoplist,
                   double svd_tol) {
  return match_pair(doc_text, summary_text, store, k, stoplist, svd_tol).report.score;
}

double baseline_avg_cosine(const DocumentMatrix& doc, const SummaryMatrix& summary) {
  if (doc.cols() == 0) throw std::invalid_argument("empty document");
  if (summary.cols() == 0) throw std::invalid_argument("empty summary");
  if (doc.matrix.rows() != summary.matrix.rows()) {
    throw std::invalid_argument("document and summary disagree on dimension");
  }
  const std::size_t d = doc.matrix.rows();
  std::vector<double> md(d, 0.0), ms(d, 0.0);
  for (std::size_t j = 0; j < doc.cols(); ++j) {
    auto col = doc.matrix.col(j);
    for (std::size_t r = 0; r < d; ++r) md[r] += col[r];
  }
  for (std::size_t j = 0; j < summary.cols(); ++j) {
    auto col = summary.matrix.col(j);
    for (std::size_t r = 0; r < d; ++r) ms[r] += col[r];
  }
  for (std::size_t r = 0; r < d; ++r) {
    md[r] /= static_cast<double>(doc.cols());
    ms[r] /= static_cast<double>(summary.cols());
  }
  const double nd = norm(md);
  const double ns = norm(ms);
  if (nd < 1e-12 || ns < 1e-12) return 0.0;
  double dot = 0.0;
  for (std::size_t r = 0; r < d; ++r) dot += md[r] * ms[r];
  return dot / (nd * ns);
}

}  // namespace ht
