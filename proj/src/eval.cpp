#include "ht/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

#include "ht/errors.hpp"
#include "ht/relevance.hpp"

namespace ht {

namespace {

using index_t = std::ptrdiff_t;

Metrics metrics_from_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
  Metrics m;
  m.precision = (tp + fp) ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  m.recall = (tp + fn) ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  m.f1 = (m.precision + m.recall) > 0.0
             ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
             : 0.0;
  return m;
}

double f1_at_threshold(const std::vector<double>& scores, const std::vector<bool>& labels,
                       double threshold) {
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool pred = scores[i] > threshold;
    if (pred && labels[i]) ++tp;
    else if (pred && !labels[i]) ++fp;
    else if (!pred && labels[i]) ++fn;
  }
  return metrics_from_counts(tp, fp, fn).f1;
}

// Deterministic Fisher-Yates; std::shuffle's sequence is not pinned by the
// standard, this one is.
void shuffle_indices(std::vector<std::size_t>& idx, std::mt19937_64& rng) {
  for (std::size_t i = idx.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(idx[i - 1], idx[j]);
  }
}

}  // namespace

Metrics classification_metrics(const std::vector<bool>& predictions,
                               const std::vector<bool>& labels) {
  if (predictions.size() != labels.size()) {
    throw std::invalid_argument("predictions and labels differ in length");
  }
  if (predictions.empty()) throw std::invalid_argument("empty prediction list");
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (predictions[i] && labels[i]) ++tp;
    else if (predictions[i] && !labels[i]) ++fp;
    else if (!predictions[i] && labels[i]) ++fn;
  }
  return metrics_from_counts(tp, fp, fn);
}

double tune_threshold(const std::vector<double>& scores, const std::vector<bool>& labels) {
  if (scores.size() != labels.size()) {
    throw std::invalid_argument("scores and labels differ in length");
  }
  if (scores.empty()) throw std::invalid_argument("empty score list");
  const auto positives = static_cast<std::size_t>(
      std::count(labels.begin(), labels.end(), true));
  if (positives == 0 || positives == labels.size()) {
    throw DegenerateDataError("degenerate labels: both classes required");
  }

  std::vector<double> distinct(scores);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  std::vector<double> candidates;
  candidates.reserve(distinct.size() + 1);
  candidates.push_back(-std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i + 1 < distinct.size(); ++i) {
    candidates.push_back(0.5 * (distinct[i] + distinct[i + 1]));
  }
  candidates.push_back(std::numeric_limits<double>::infinity());

  double best_threshold = candidates.front();
  double best_f1 = -1.0;
  for (double t : candidates) {  // ascending: ties keep the lowest threshold
    const double f1 = f1_at_threshold(scores, labels, t);
    if (f1 > best_f1) {
      best_f1 = f1;
      best_threshold = t;
    }
  }
  return best_threshold;
}

ClassificationStats cross_validate(const std::vector<ScoredLabel>& pairs, std::size_t folds,
                                   std::uint64_t seed) {
  if (folds < 2) throw std::invalid_argument("need at least 2 folds");
  if (pairs.size() < folds) throw std::invalid_argument("fewer samples than folds");
  bool any_pos = false, any_neg = false;
  for (const auto& p : pairs) (p.label ? any_pos : any_neg) = true;
  if (!any_pos || !any_neg) {
    throw DegenerateDataError("degenerate labels: both classes required");
  }

  const std::size_t n = pairs.size();
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> idx(n);

  // Redraw the shuffle until every tuning decile holds both classes.
  constexpr int kMaxRedraws = 100;
  std::vector<std::vector<std::size_t>> fold_indices;
  bool ok = false;
  for (int attempt = 0; attempt < kMaxRedraws && !ok; ++attempt) {
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    shuffle_indices(idx, rng);
    fold_indices.assign(folds, {});
    std::size_t cursor = 0;
    for (std::size_t f = 0; f < folds; ++f) {
      std::size_t size = n / folds + (f < n % folds ? 1 : 0);
      for (std::size_t i = 0; i < size; ++i) fold_indices[f].push_back(idx[cursor++]);
    }
    ok = true;
    for (const auto& fold : fold_indices) {
      bool pos = false, neg = false;
      for (std::size_t i : fold) (pairs[i].label ? pos : neg) = true;
      if (!pos || !neg) {
        ok = false;
        break;
      }
    }
  }
  if (!ok) {
    throw DegenerateDataError("could not draw folds with two-class tuning splits");
  }

  ClassificationStats stats;
  stats.tuning_indices = fold_indices;
  for (std::size_t f = 0; f < folds; ++f) {
    std::vector<double> tune_scores;
    std::vector<bool> tune_labels;
    for (std::size_t i : fold_indices[f]) {
      tune_scores.push_back(pairs[i].score);
      tune_labels.push_back(pairs[i].label);
    }
    const double threshold = tune_threshold(tune_scores, tune_labels);
    stats.thresholds.push_back(threshold);

    std::vector<bool> preds, labels;
    for (std::size_t g = 0; g < folds; ++g) {
      if (g == f) continue;
      for (std::size_t i : fold_indices[g]) {
        preds.push_back(pairs[i].score > threshold);
        labels.push_back(pairs[i].label);
      }
    }
    stats.per_fold.push_back(classification_metrics(preds, labels));
  }

  auto mean_of = [&](auto proj) {
    double sum = 0.0;
    for (const auto& m : stats.per_fold) sum += proj(m);
    return sum / static_cast<double>(stats.per_fold.size());
  };
  auto std_of = [&](auto proj, double mean) {
    double sum = 0.0;
    for (const auto& m : stats.per_fold) {
      const double d = proj(m) - mean;
      sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(stats.per_fold.size()));
  };
  auto precision = [](const Metrics& m) { return m.precision; };
  auto recall = [](const Metrics& m) { return m.recall; };
  auto f1 = [](const Metrics& m) { return m.f1; };
  stats.mean = {mean_of(precision), mean_of(recall), mean_of(f1)};
  stats.stddev = {std_of(precision, stats.mean.precision), std_of(recall, stats.mean.recall),
                  std_of(f1, stats.mean.f1)};
  return stats;
}

double precision_at_k(const std::vector<std::string>& ranked_ids,
                      const std::set<std::string>& relevant_ids, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be positive");
  if (k > ranked_ids.size()) throw std::invalid_argument("k exceeds ranked list length");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (relevant_ids.count(ranked_ids[i]) > 0) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(k);
}

std::vector<double> precision_histogram(
    const std::map<std::string, double>& per_query_precision, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be positive");
  if (per_query_precision.empty()) throw std::invalid_argument("no queries to bin");
  std::vector<double> bins(k + 1, 0.0);
  for (const auto& [id, p] : per_query_precision) {
    const auto b = static_cast<long long>(std::llround(p * static_cast<double>(k)));
    if (b < 0 || b > static_cast<long long>(k) ||
        std::abs(p - static_cast<double>(b) / static_cast<double>(k)) > 1e-12) {
      throw std::invalid_argument("precision for query '" + id + "' is not on the 1/" +
                                  std::to_string(k) + " grid");
    }
    bins[static_cast<std::size_t>(b)] += 1.0;
  }
  for (double& b : bins) b /= static_cast<double>(per_query_precision.size());
  return bins;
}

void sort_ranked(std::vector<RankedDoc>& docs) {
  std::sort(docs.begin(), docs.end(), [](const RankedDoc& a, const RankedDoc& b) {
    if (a.failed != b.failed) return b.failed;
    if (a.score != b.score) return a.score > b.score;
    return a.doc_id < b.doc_id;
  });
}

std::vector<RankedDoc> rank_documents(const std::string& summary_text,
                                      const std::map<std::string, std::string>& corpus,
                                      const EmbeddingStore& store, int k,
                                      const Stoplist& stoplist, double svd_tol) {
  if (corpus.empty()) throw std::invalid_argument("empty corpus");

  // Build the summary side once; its failure is an error, not a flag.
  const auto summary_tokens = remove_stopwords(tokenize(summary_text), stoplist);
  SummaryMatrix summary;
  try {
    summary = build_matrix(summary_tokens, store).doc;
  } catch (const ZeroContentError&) {
    throw ZeroContentError("summary has no in-vocabulary content words",
                           ZeroContentError::Side::summary);
  }

  std::vector<std::pair<const std::string*, const std::string*>> entries;
  entries.reserve(corpus.size());
  for (const auto& [id, text] : corpus) entries.emplace_back(&id, &text);

  std::vector<RankedDoc> out(entries.size());
  std::string first_error;
#pragma omp parallel for schedule(dynamic)
  for (index_t i = 0; i < static_cast<index_t>(entries.size()); ++i) {
    try {
      const auto tokens = remove_stopwords(tokenize(*entries[i].second), stoplist);
      const auto built = build_matrix(tokens, store);
      const auto model = extract_topics(built.doc, k, svd_tol);
      const auto report = document_summary_relevance(model, summary);
      out[i] = {*entries[i].first, report.score, false};
    } catch (const ZeroContentError&) {
      out[i] = {*entries[i].first, 0.0, true};
    } catch (const std::exception& e) {
#pragma omp critical
      if (first_error.empty()) first_error = e.what();
    }
  }
  if (!first_error.empty()) throw std::runtime_error(first_error);

  sort_ranked(out);
  return out;
}

std::vector<ScoredLabel> score_pairs(const std::vector<LabeledPair>& pairs,
                                     const EmbeddingStore& store, int k,
                                     const Stoplist& stoplist, double svd_tol) {
  std::vector<ScoredLabel> out(pairs.size());
  std::string first_error;
#pragma omp parallel for schedule(dynamic)
  for (index_t i = 0; i < static_cast<index_t>(pairs.size()); ++i) {
    try {
      const double s =
          match_score(pairs[i].doc_text, pairs[i].summary_text, store, k, stoplist, svd_tol);
      out[i] = {s, pairs[i].label};
    } catch (const std::exception& e) {
#pragma omp critical
      if (first_error.empty()) {
        first_error = "pair (" + pairs[i].summary_id + ", " + pairs[i].doc_id + "): " + e.what();
      }
    }
  }
  if (!first_error.empty()) throw std::runtime_error(first_error);
  return out;
}

}  // namespace ht
