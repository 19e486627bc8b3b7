#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace ht {

struct LabeledPair {
  std::string summary_id;
  std::string doc_id;
  std::string summary_text;
  std::string doc_text;
  bool label = false;

  bool operator==(const LabeledPair&) const = default;
};

// JSON-lines, one object per line with fields summary_id, doc_id,
// summary_text, doc_text, label. Order-preserving; ParseError carries the
// offending line number.
std::vector<LabeledPair> load_pairs(const std::filesystem::path& path);

struct RankingCategory {
  std::string category_id;
  std::string summary_text;
  std::set<std::string> relevant_doc_ids;

  bool operator==(const RankingCategory&) const = default;
};

struct RankingDataset {
  std::vector<RankingCategory> categories;
  std::map<std::string, std::string> corpus;  // doc_id -> text
};

// JSON-lines {doc_id, text}; duplicate ids are an error.
std::map<std::string, std::string> load_corpus(const std::filesystem::path& docs_path);

// Categories file: JSON-lines {category_id, summary_text, relevant_doc_ids}.
// Every referenced doc_id must exist in the docs file.
RankingDataset load_ranking_dataset(const std::filesystem::path& categories_path,
                                    const std::filesystem::path& docs_path);

}  // namespace ht
