#include <doctest.h>

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ht/corpus_io.hpp"
#include "ht/errors.hpp"
#include "support/test_util.hpp"

using ht::LabeledPair;
using ht::load_pairs;
using ht::load_ranking_dataset;
using ht::ParseError;
using ht::testing::TempDir;
using ht::testing::write_file;

namespace {

const char* kTwoPairs =
    R"({"summary_id":"s1","doc_id":"d1","summary_text":"genes","doc_text":"dna genes","label":true})"
    "\n"
    R"({"summary_id":"s2","doc_id":"d2","summary_text":"storm","doc_text":"weather","label":false})"
    "\n";

}  // namespace

TEST_CASE("well-formed pairs file loads in order") {
  TempDir dir;
  const auto pairs = load_pairs(write_file(dir.file("pairs.jsonl"), kTwoPairs));
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].summary_id == "s1");
  CHECK(pairs[0].label == true);
  CHECK(pairs[1].doc_id == "d2");
  CHECK(pairs[1].label == false);
}

TEST_CASE("pair file errors carry line numbers") {
  TempDir dir;
  SUBCASE("missing label") {
    const std::string text =
        std::string(kTwoPairs) +
        R"({"summary_id":"s3","doc_id":"d3","summary_text":"x","doc_text":"y"})" "\n";
    try {
      load_pairs(write_file(dir.file("p.jsonl"), text));
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(std::string(e.what()).find("label") != std::string::npos);
    }
  }
  SUBCASE("malformed json") {
    try {
      load_pairs(write_file(dir.file("p.jsonl"), "{not json\n"));
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);
    }
  }
  SUBCASE("empty text field") {
    CHECK_THROWS_AS(
        load_pairs(write_file(
            dir.file("p.jsonl"),
            R"({"summary_id":"s","doc_id":"d","summary_text":"","doc_text":"y","label":true})")),
        ParseError);
  }
  SUBCASE("label with wrong type") {
    CHECK_THROWS_AS(
        load_pairs(write_file(
            dir.file("p.jsonl"),
            R"({"summary_id":"s","doc_id":"d","summary_text":"x","doc_text":"y","label":1})")),
        ParseError);
  }
  SUBCASE("missing file") { CHECK_THROWS(load_pairs(dir.file("absent.jsonl"))); }
}

TEST_CASE("blank lines are skipped") {
  TempDir dir;
  const auto pairs =
      load_pairs(write_file(dir.file("p.jsonl"), std::string("\n") + kTwoPairs + "\n\n"));
  CHECK(pairs.size() == 2);
}

TEST_CASE("pairs round-trip through JSON-lines") {
  std::vector<LabeledPair> original;
  for (int i = 0; i < 10; ++i) {
    original.push_back({"s" + std::to_string(i), "d" + std::to_string(i),
                        "summary text " + std::to_string(i),
                        "doc text with \"quotes\" and\nnewline " + std::to_string(i),
                        i % 3 == 0});
  }
  std::string serialized;
  for (const auto& p : original) {
    nlohmann::json obj = {{"summary_id", p.summary_id},
                          {"doc_id", p.doc_id},
                          {"summary_text", p.summary_text},
                          {"doc_text", p.doc_text},
                          {"label", p.label}};
    serialized += obj.dump() + "\n";
  }
  TempDir dir;
  const auto loaded = load_pairs(write_file(dir.file("rt.jsonl"), serialized));
  CHECK(loaded == original);
}

TEST_CASE("ranking dataset loads and validates references") {
  TempDir dir;
  const auto docs = write_file(dir.file("docs.jsonl"),
                               R"({"doc_id":"d1","text":"alpha"})" "\n"
                               R"({"doc_id":"d2","text":"beta"})" "\n"
                               R"({"doc_id":"d3","text":"gamma"})" "\n");
  SUBCASE("well-formed") {
    const auto cats = write_file(
        dir.file("cats.jsonl"),
        R"({"category_id":"c1","summary_text":"x","relevant_doc_ids":["d1","d3"]})" "\n");
    const auto dataset = load_ranking_dataset(cats, docs);
    REQUIRE(dataset.categories.size() == 1);
    CHECK(dataset.categories[0].relevant_doc_ids.count("d1") == 1);
    CHECK(dataset.corpus.size() == 3);  // the ranking pool is every document
  }
  SUBCASE("dangling reference") {
    const auto cats = write_file(
        dir.file("cats.jsonl"),
        R"({"category_id":"c1","summary_text":"x","relevant_doc_ids":["d9"]})" "\n");
    try {
      load_ranking_dataset(cats, docs);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("d9") != std::string::npos);
    }
  }
  SUBCASE("empty relevant set") {
    const auto cats = write_file(
        dir.file("cats.jsonl"),
        R"({"category_id":"c1","summary_text":"x","relevant_doc_ids":[]})" "\n");
    CHECK_THROWS_AS(load_ranking_dataset(cats, docs), ParseError);
  }
  SUBCASE("duplicate doc ids") {
    const auto dup = write_file(dir.file("dup.jsonl"),
                                R"({"doc_id":"d1","text":"alpha"})" "\n"
                                R"({"doc_id":"d1","text":"beta"})" "\n");
    const auto cats = write_file(
        dir.file("cats.jsonl"),
        R"({"category_id":"c1","summary_text":"x","relevant_doc_ids":["d1"]})" "\n");
    CHECK_THROWS_AS(load_ranking_dataset(cats, dup), ParseError);
  }
}

TEST_CASE("ranking dataset round-trips") {
  TempDir dir;
  std::string docs_text, cats_text;
  std::map<std::string, std::string> docs;
  std::vector<ht::RankingCategory> cats;
  for (int i = 0; i < 6; ++i) {
    const std::string id = "doc" + std::to_string(i);
    docs[id] = "text number " + std::to_string(i);
    docs_text += nlohmann::json{{"doc_id", id}, {"text", docs[id]}}.dump() + "\n";
  }
  for (int c = 0; c < 2; ++c) {
    ht::RankingCategory cat;
    cat.category_id = "cat" + std::to_string(c);
    cat.summary_text = "summary " + std::to_string(c);
    cat.relevant_doc_ids = {"doc" + std::to_string(c), "doc" + std::to_string(c + 2)};
    cats.push_back(cat);
    cats_text += nlohmann::json{{"category_id", cat.category_id},
                                {"summary_text", cat.summary_text},
                                {"relevant_doc_ids", cat.relevant_doc_ids}}
                     .dump() +
                 "\n";
  }
  const auto dataset = load_ranking_dataset(write_file(dir.file("c.jsonl"), cats_text),
                                            write_file(dir.file("d.jsonl"), docs_text));
  CHECK(dataset.corpus == docs);
  CHECK(dataset.categories == cats);
}
