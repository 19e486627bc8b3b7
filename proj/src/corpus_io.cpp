#include "ht/corpus_io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "ht/errors.hpp"

namespace ht {

namespace {

using nlohmann::json;

bool blank(const std::string& s) {
  for (char c : s) {
    if (c != ' ' && c != '\t' && c != '\r') return false;
  }
  return true;
}

json parse_line(const std::string& line, std::size_t line_no) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), line_no);
  }
  if (!obj.is_object()) throw ParseError("expected a JSON object", line_no);
  return obj;
}

std::string require_string(const json& obj, const char* field, std::size_t line_no,
                           bool allow_empty = false) {
  if (!obj.contains(field)) {
    throw ParseError(std::string("missing field '") + field + "'", line_no);
  }
  if (!obj[field].is_string()) {
    throw ParseError(std::string("field '") + field + "' must be a string", line_no);
  }
  auto value = obj[field].get<std::string>();
  if (value.empty() && !allow_empty) {
    throw ParseError(std::string("field '") + field + "' must be non-empty", line_no);
  }
  return value;
}

bool require_bool(const json& obj, const char* field, std::size_t line_no) {
  if (!obj.contains(field)) {
    throw ParseError(std::string("missing field '") + field + "'", line_no);
  }
  if (!obj[field].is_boolean()) {
    throw ParseError(std::string("field '") + field + "' must be a boolean", line_no);
  }
  return obj[field].get<bool>();
}

// Calls fn(line, line_no) for every non-blank line.
template <typename Fn>
void for_each_line(const std::filesystem::path& path, Fn fn) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank(line)) continue;
    fn(line, line_no);
  }
}

}  // namespace

std::vector<LabeledPair> load_pairs(const std::filesystem::path& path) {
  std::vector<LabeledPair> pairs;
  for_each_line(path, [&](const std::string& line, std::size_t line_no) {
    const json obj = parse_line(line, line_no);
    LabeledPair p;
    p.summary_id = require_string(obj, "summary_id", line_no);
    p.doc_id = require_string(obj, "doc_id", line_no);
    p.summary_text = require_string(obj, "summary_text", line_no);
    p.doc_text = require_string(obj, "doc_text", line_no);
    p.label = require_bool(obj, "label", line_no);
    pairs.push_back(std::move(p));
  });
  return pairs;
}

std::map<std::string, std::string> load_corpus(const std::filesystem::path& docs_path) {
  std::map<std::string, std::string> corpus;
  for_each_line(docs_path, [&](const std::string& line, std::size_t line_no) {
    const json obj = parse_line(line, line_no);
    auto id = require_string(obj, "doc_id", line_no);
    auto text = require_string(obj, "text", line_no);
    if (!corpus.emplace(std::move(id), std::move(text)).second) {
      throw ParseError("duplicate doc_id '" + obj["doc_id"].get<std::string>() + "'", line_no);
    }
  });
  return corpus;
}

RankingDataset load_ranking_dataset(const std::filesystem::path& categories_path,
                                    const std::filesystem::path& docs_path) {
  RankingDataset out;
  out.corpus = load_corpus(docs_path);

  for_each_line(categories_path, [&](const std::string& line, std::size_t line_no) {
    const json obj = parse_line(line, line_no);
    RankingCategory cat;
    cat.category_id = require_string(obj, "category_id", line_no);
    cat.summary_text = require_string(obj, "summary_text", line_no);
    if (!obj.contains("relevant_doc_ids") || !obj["relevant_doc_ids"].is_array()) {
      throw ParseError("field 'relevant_doc_ids' must be an array", line_no);
    }
    for (const auto& item : obj["relevant_doc_ids"]) {
      if (!item.is_string() || item.get<std::string>().empty()) {
        throw ParseError("'relevant_doc_ids' entries must be non-empty strings", line_no);
      }
      const auto id = item.get<std::string>();
      if (out.corpus.find(id) == out.corpus.end()) {
        throw ParseError("dangling doc_id reference '" + id + "' in category '" +
                             cat.category_id + "'",
                         line_no);
      }
      cat.relevant_doc_ids.insert(id);
    }
    if (cat.relevant_doc_ids.empty()) {
      throw ParseError("category '" + cat.category_id + "' has no relevant documents",
                       line_no);
    }
    out.categories.push_back(std::move(cat));
  });
  return out;
}

}  // namespace ht
