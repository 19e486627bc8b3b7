// hidden_topics: match long documents against short summaries in a shared
// space of hidden topic vectors, rank corpora, and run the evaluation
// protocols. See README.md for the file formats.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ht/corpus_io.hpp"
#include "ht/embeddings.hpp"
#include "ht/errors.hpp"
#include "ht/eval.hpp"
#include "ht/linalg.hpp"
#include "ht/preprocess.hpp"
#include "ht/relevance.hpp"
#include "ht/topics.hpp"

namespace {

using nlohmann::ordered_json;

struct Config {
  std::string embeddings_path;
  std::string stoplist_path;
  int k = 15;
  std::uint64_t seed = 42;
  std::string format = "text";
  double svd_tol = ht::linalg::kDefaultJacobiTol;
};

void add_common_options(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--embeddings", cfg.embeddings_path, "word-vector text file")->required();
  cmd->add_option("--stoplist", cfg.stoplist_path,
                  "stopword file (default: $HIDDEN_TOPICS_STOPLIST, else built-in list)");
  cmd->add_option("-K,--topics", cfg.k, "number of hidden topics")->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "RNG seed for protocols that shuffle")
      ->capture_default_str();
  cmd->add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  cmd->add_option("--svd-tol", cfg.svd_tol, "relative convergence tolerance of the solver")
      ->capture_default_str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ht::Stoplist resolve_stoplist(const Config& cfg) {
  if (!cfg.stoplist_path.empty()) return ht::Stoplist::from_file(cfg.stoplist_path);
  if (const char* env = std::getenv("HIDDEN_TOPICS_STOPLIST"); env && *env) {
    return ht::Stoplist::from_file(env);
  }
  return ht::Stoplist::builtin();
}

ht::EmbeddingStore load_store(const Config& cfg) {
  auto store = ht::load_embeddings(cfg.embeddings_path);
  if (store.duplicates_dropped() > 0) {
    std::cerr << "warning: " << store.duplicates_dropped()
              << " duplicate token(s) dropped from " << cfg.embeddings_path << "\n";
  }
  return store;
}

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void emit(const ordered_json& doc) { std::cout << doc.dump(2) << "\n"; }

int cmd_match(const Config& cfg, const std::string& doc_file, const std::string& summary_file) {
  const auto store = load_store(cfg);
  const auto stoplist = resolve_stoplist(cfg);
  const auto result = ht::match_pair(read_file(doc_file), read_file(summary_file), store,
                                     cfg.k, stoplist, cfg.svd_tol);

  if (cfg.format == "json") {
    ordered_json out;
    out["score"] = result.report.score;
    out["effective_k"] = result.report.effective_k;
    out["per_topic"] = result.report.per_topic;
    out["importance"] = result.model.norm_importance;
    out["raw_importance"] = result.model.raw_importance;
    out["words"] = {{"document", result.doc_words}, {"summary", result.summary_words}};
    out["dropped"] = {{"document", result.doc_dropped}, {"summary", result.summary_dropped}};
    emit(out);
  } else {
    std::cout << "score          " << fmt6(result.report.score) << "\n";
    std::cout << "effective_k    " << result.report.effective_k << "\n";
    std::cout << "words          document " << result.doc_words << " (dropped "
              << result.doc_dropped << "), summary " << result.summary_words << " (dropped "
              << result.summary_dropped << ")\n";
    std::cout << "topic  importance  relevance\n";
    for (std::size_t t = 0; t < result.report.effective_k; ++t) {
      std::printf("%-6zu %-11s %s\n", t + 1, fmt6(result.model.norm_importance[t]).c_str(),
                  fmt6(result.report.per_topic[t]).c_str());
    }
  }
  return 0;
}

int cmd_rank(const Config& cfg, const std::string& summary_file, const std::string& corpus_file,
             std::size_t top) {
  const auto store = load_store(cfg);
  const auto stoplist = resolve_stoplist(cfg);
  const auto corpus = ht::load_corpus(corpus_file);
  const auto ranked =
      ht::rank_documents(read_file(summary_file), corpus, store, cfg.k, stoplist, cfg.svd_tol);
  const std::size_t shown = top == 0 ? ranked.size() : std::min(top, ranked.size());

  if (cfg.format == "json") {
    ordered_json list = ordered_json::array();
    for (std::size_t i = 0; i < shown; ++i) {
      ordered_json entry;
      entry["rank"] = i + 1;
      entry["doc_id"] = ranked[i].doc_id;
      entry["score"] = ranked[i].score;
      if (ranked[i].failed) entry["failed"] = true;
      list.push_back(entry);
    }
    ordered_json out;
    out["corpus_size"] = corpus.size();
    out["ranking"] = list;
    emit(out);
  } else {
    for (std::size_t i = 0; i < shown; ++i) {
      std::printf("%4zu  %-24s %s%s\n", i + 1, ranked[i].doc_id.c_str(),
                  fmt6(ranked[i].score).c_str(), ranked[i].failed ? "  (no usable content)" : "");
    }
  }
  return 0;
}

int cmd_topics(const Config& cfg, const std::string& doc_file, std::size_t words) {
  const auto store = load_store(cfg);
  const auto stoplist = resolve_stoplist(cfg);
  const auto built =
      ht::build_matrix(ht::remove_stopwords(ht::tokenize(read_file(doc_file)), stoplist), store);
  const auto model = ht::extract_topics(built.doc, cfg.k, cfg.svd_tol);
  const auto top_words = ht::topic_words(model, built.doc, words);

  if (cfg.format == "json") {
    ordered_json words_json = ordered_json::array();
    for (const auto& w : top_words) {
      words_json.push_back({{"token", w.token}, {"error", w.error}});
    }
    ordered_json out;
    out["effective_k"] = model.effective_k;
    out["importance"] = model.norm_importance;
    out["raw_importance"] = model.raw_importance;
    out["document_words"] = built.doc.cols();
    out["dropped"] = built.dropped;
    out["topic_words"] = words_json;
    emit(out);
  } else {
    std::cout << "effective_k    " << model.effective_k << "\n";
    std::cout << "importance    ";
    for (double v : model.norm_importance) std::cout << ' ' << fmt6(v);
    std::cout << "\ntoken  error\n";
    for (const auto& w : top_words) {
      std::printf("%-20s %s\n", w.token.c_str(), fmt6(w.error).c_str());
    }
  }
  return 0;
}

int cmd_eval_classify(const Config& cfg, const std::string& pairs_file) {
  const auto pairs = ht::load_pairs(pairs_file);
  const auto store = load_store(cfg);
  const auto stoplist = resolve_stoplist(cfg);
  const auto scored = ht::score_pairs(pairs, store, cfg.k, stoplist, cfg.svd_tol);
  const auto stats = ht::cross_validate(scored, 10, cfg.seed);

  if (cfg.format == "json") {
    auto metrics_json = [](const ht::Metrics& m) {
      return ordered_json{{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}};
    };
    ordered_json folds = ordered_json::array();
    for (const auto& m : stats.per_fold) folds.push_back(metrics_json(m));
    ordered_json pair_list = ordered_json::array();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      pair_list.push_back({{"summary_id", pairs[i].summary_id},
                           {"doc_id", pairs[i].doc_id},
                           {"score", scored[i].score},
                           {"label", scored[i].label}});
    }
    ordered_json out;
    out["pairs_evaluated"] = pairs.size();
    out["folds"] = stats.per_fold.size();
    out["seed"] = cfg.seed;
    out["mean"] = metrics_json(stats.mean);
    out["std"] = metrics_json(stats.stddev);
    out["per_fold"] = folds;
    out["thresholds"] = stats.thresholds;
    out["scores"] = pair_list;
    emit(out);
  } else {
    std::printf("pairs      %zu\n", pairs.size());
    std::printf("precision  %s +/- %s\n", fmt6(stats.mean.precision).c_str(),
                fmt6(stats.stddev.precision).c_str());
    std::printf("recall     %s +/- %s\n", fmt6(stats.mean.recall).c_str(),
                fmt6(stats.stddev.recall).c_str());
    std::printf("f1         %s +/- %s\n", fmt6(stats.mean.f1).c_str(),
                fmt6(stats.stddev.f1).c_str());
  }
  return 0;
}

int cmd_eval_rank(const Config& cfg, const std::string& categories_file,
                  const std::string& docs_file, const std::vector<std::size_t>& ks) {
  const auto dataset = ht::load_ranking_dataset(categories_file, docs_file);
  for (std::size_t k : ks) {
    if (k == 0 || k > dataset.corpus.size()) {
      throw std::runtime_error("k=" + std::to_string(k) + " exceeds corpus size " +
                               std::to_string(dataset.corpus.size()));
    }
  }
  const auto store = load_store(cfg);
  const auto stoplist = resolve_stoplist(cfg);

  std::map<std::string, std::vector<std::string>> ranked_ids;
  for (const auto& cat : dataset.categories) {
    std::vector<ht::RankedDoc> ranked;
    try {
      ranked =
          ht::rank_documents(cat.summary_text, dataset.corpus, store, cfg.k, stoplist, cfg.svd_tol);
    } catch (const ht::ZeroContentError& e) {
      throw std::runtime_error("category '" + cat.category_id + "': " + e.what());
    }
    auto& ids = ranked_ids[cat.category_id];
    ids.reserve(ranked.size());
    for (const auto& r : ranked) ids.push_back(r.doc_id);
  }

  std::vector<ht::RankingStats> all_stats;
  for (std::size_t k : ks) {
    ht::RankingStats stats;
    stats.k = k;
    for (const auto& cat : dataset.categories) {
      stats.per_query_precision[cat.category_id] =
          ht::precision_at_k(ranked_ids[cat.category_id], cat.relevant_doc_ids, k);
    }
    stats.histogram = ht::precision_histogram(stats.per_query_precision, k);
    all_stats.push_back(std::move(stats));
  }

  if (cfg.format == "json") {
    ordered_json out_ks = ordered_json::array();
    for (const auto& stats : all_stats) {
      double mean = 0.0;
      for (const auto& [id, p] : stats.per_query_precision) mean += p;
      mean /= static_cast<double>(stats.per_query_precision.size());
      ordered_json entry;
      entry["k"] = stats.k;
      entry["mean_precision"] = mean;
      entry["histogram"] = stats.histogram;
      entry["per_category"] = stats.per_query_precision;
      out_ks.push_back(entry);
    }
    ordered_json out;
    out["categories"] = dataset.categories.size();
    out["corpus_size"] = dataset.corpus.size();
    out["precision_at"] = out_ks;
    emit(out);
  } else {
    for (const auto& stats : all_stats) {
      double mean = 0.0;
      for (const auto& [id, p] : stats.per_query_precision) mean += p;
      mean /= static_cast<double>(stats.per_query_precision.size());
      std::printf("precision@%zu  mean %s  bins", stats.k, fmt6(mean).c_str());
      for (double b : stats.histogram) std::printf(" %s", fmt6(b).c_str());
      std::printf("\n");
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"document-summary matching via hidden topic vectors"};
  app.require_subcommand(1);

  Config cfg;
  std::string doc_file, summary_file, corpus_file, pairs_file, categories_file, docs_file;
  std::size_t top = 10;
  std::size_t words = 10;
  std::vector<std::size_t> ks = {1, 3, 6};

  auto* match = app.add_subcommand("match", "score one document-summary pair");
  match->add_option("doc", doc_file, "document text file")->required();
  match->add_option("summary", summary_file, "summary text file")->required();
  add_common_options(match, cfg);

  auto* rank = app.add_subcommand("rank", "rank a document corpus against a summary");
  rank->add_option("summary", summary_file, "summary text file")->required();
  rank->add_option("corpus", corpus_file, "JSON-lines corpus {doc_id, text}")->required();
  rank->add_option("--top", top, "entries to print (0 = all)")->capture_default_str();
  add_common_options(rank, cfg);

  auto* topics = app.add_subcommand("topics", "extract topics from a document");
  topics->add_option("doc", doc_file, "document text file")->required();
  topics->add_option("--words", words, "topic words to print")->capture_default_str();
  add_common_options(topics, cfg);

  auto* eval_classify =
      app.add_subcommand("eval-classify", "thresholded classification with cross-validation");
  eval_classify->add_option("pairs", pairs_file, "JSON-lines labeled pairs")->required();
  add_common_options(eval_classify, cfg);

  auto* eval_rank = app.add_subcommand("eval-rank", "ranked retrieval with precision@k");
  eval_rank->add_option("categories", categories_file, "JSON-lines categories")->required();
  eval_rank->add_option("docs", docs_file, "JSON-lines corpus {doc_id, text}")->required();
  eval_rank->add_option("--k", ks, "precision@k cutoffs")->delimiter(',')->capture_default_str();
  add_common_options(eval_rank, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (match->parsed()) return cmd_match(cfg, doc_file, summary_file);
    if (rank->parsed()) return cmd_rank(cfg, summary_file, corpus_file, top);
    if (topics->parsed()) return cmd_topics(cfg, doc_file, words);
    if (eval_classify->parsed()) return cmd_eval_classify(cfg, pairs_file);
    if (eval_rank->parsed()) return cmd_eval_rank(cfg, categories_file, docs_file, ks);
  } catch (const ht::DegenerateDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
