#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "ht/embeddings.hpp"
#include "ht/errors.hpp"
#include "ht/preprocess.hpp"
#include "support/test_util.hpp"

using ht::build_matrix;
using ht::EmbeddingStore;
using ht::remove_stopwords;
using ht::Stoplist;
using ht::tokenize;
using ht::TokenSequence;
using ht::ZeroContentError;
using ht::testing::TempDir;
using ht::testing::write_file;

namespace {

TokenSequence seq(std::vector<std::string> tokens) { return TokenSequence{std::move(tokens)}; }

}  // namespace

TEST_CASE("tokenize splits on punctuation and lowercases") {
  CHECK(tokenize("DNA molecules, DNA!") == seq({"dna", "molecules", "dna"}));
  CHECK(tokenize("") == seq({}));
  CHECK(tokenize("3 genes in 2020") == seq({"genes", "in"}));
}

TEST_CASE("tokenize edge cases") {
  CHECK(tokenize("a-b_c") == seq({"a", "b", "c"}));
  CHECK(tokenize("  \t\n ") == seq({}));
  CHECK(tokenize("...!!!") == seq({}));
  CHECK(tokenize("x2 2x 22") == seq({"x2", "2x"}));  // mixed alphanumerics survive
  CHECK(tokenize("Caf\xc3\xa9 au lait") == seq({"caf\xc3\xa9", "au", "lait"}));
}

TEST_CASE("remove_stopwords filters in order") {
  const Stoplist stoplist(std::vector<std::string>{"in", "the"});
  CHECK(remove_stopwords(seq({"genes", "in", "the", "dna"}), stoplist) ==
        seq({"genes", "dna"}));
  CHECK(remove_stopwords(seq({"a", "a", "a"}), Stoplist(std::vector<std::string>{"a"})) ==
        seq({}));
}

TEST_CASE("remove_stopwords property: output is a stopword-free subsequence") {
  std::mt19937_64 rng(99);
  std::vector<std::string> lexicon;
  for (int i = 0; i < 30; ++i) lexicon.push_back("w" + std::to_string(i));
  const Stoplist stoplist(std::vector<std::string>{"w0", "w5", "w13", "w21"});

  TokenSequence input;
  for (int i = 0; i < 1000; ++i) input.tokens.push_back(lexicon[rng() % lexicon.size()]);
  const auto output = remove_stopwords(input, stoplist);

  for (const auto& t : output.tokens) CHECK_FALSE(stoplist.contains(t));
  // subsequence check
  std::size_t pos = 0;
  for (const auto& t : output.tokens) {
    while (pos < input.tokens.size() && input.tokens[pos] != t) ++pos;
    REQUIRE(pos < input.tokens.size());
    ++pos;
  }
}

TEST_CASE("stoplist file parsing handles comments and case") {
  TempDir dir;
  auto path = write_file(dir.file("stop.txt"),
                         "# comment line\nThe\nin  \n\n  of # trailing comment\n");
  const auto stoplist = Stoplist::from_file(path);
  CHECK(stoplist.size() == 3);
  CHECK(stoplist.contains("the"));
  CHECK(stoplist.contains("in"));
  CHECK(stoplist.contains("of"));
  CHECK_FALSE(stoplist.contains("comment"));
}

TEST_CASE("builtin stoplist covers stopwords and prepositions") {
  const auto& stoplist = Stoplist::builtin();
  CHECK(stoplist.size() > 100);
  for (const char* w : {"the", "a", "and", "of", "in", "between", "through", "upon"}) {
    CHECK(stoplist.contains(w));
  }
  CHECK_FALSE(stoplist.contains("dna"));
}

TEST_CASE("build_matrix keeps in-vocabulary tokens in order") {
  const EmbeddingStore store(2, {{"a", {1, 0}}, {"b", {0, 1}}});
  const auto built = build_matrix(seq({"a", "zzz", "b"}), store);
  CHECK(built.doc.cols() == 2);
  CHECK(built.dropped == 1);
  CHECK(built.doc.tokens == std::vector<std::string>{"a", "b"});
  CHECK(built.doc.matrix(0, 0) == 1.0);
  CHECK(built.doc.matrix(1, 0) == 0.0);
  CHECK(built.doc.matrix(0, 1) == 0.0);
  CHECK(built.doc.matrix(1, 1) == 1.0);
}

TEST_CASE("build_matrix: zero columns is an error") {
  const EmbeddingStore store(2, {{"a", {1, 0}}});
  CHECK_THROWS_AS(build_matrix(seq({"zzz"}), store), ZeroContentError);
  CHECK_THROWS_AS(build_matrix(seq({}), store), ZeroContentError);
}

TEST_CASE("build_matrix keeps duplicate columns") {
  const EmbeddingStore store(2, {{"a", {1, 0}}});
  const auto built = build_matrix(seq({"a", "a"}), store);
  CHECK(built.doc.cols() == 2);
  CHECK(built.doc.matrix(0, 0) == 1.0);
  CHECK(built.doc.matrix(0, 1) == 1.0);
}

TEST_CASE("build_matrix drops zero vectors like OOV") {
  const EmbeddingStore store(2, {{"a", {1, 0}}, {"z", {0, 0}}});
  const auto built = build_matrix(seq({"a", "z"}), store);
  CHECK(built.doc.cols() == 1);
  CHECK(built.dropped == 1);
}

TEST_CASE("build_matrix columns equal lookups exactly") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  std::vector<std::pair<std::string, std::vector<double>>> entries;
  for (int i = 0; i < 20; ++i) {
    entries.emplace_back("w" + std::to_string(i),
                         std::vector<double>{dist(rng), dist(rng), dist(rng)});
  }
  const EmbeddingStore store(3, entries);

  TokenSequence tokens;
  for (int i = 0; i < 60; ++i) tokens.tokens.push_back("w" + std::to_string(rng() % 20));
  const auto built = build_matrix(tokens, store);
  REQUIRE(built.doc.cols() == 60);
  for (std::size_t j = 0; j < built.doc.cols(); ++j) {
    auto expected = store.lookup(built.doc.tokens[j]);
    REQUIRE(expected.has_value());
    auto col = built.doc.matrix.col(j);
    for (std::size_t r = 0; r < 3; ++r) CHECK(col[r] == (*expected)[r]);
  }
}

TEST_CASE("pipeline is deterministic") {
  const EmbeddingStore store(2, {{"genes", {1, 0}}, {"dna", {0.5, 0.5}}});
  const Stoplist stoplist(std::vector<std::string>{"the"});
  const std::string text = "The genes; the DNA... genes!";
  const auto a = build_matrix(remove_stopwords(tokenize(text), stoplist), store);
  const auto b = build_matrix(remove_stopwords(tokenize(text), stoplist), store);
  CHECK(a.doc.matrix == b.doc.matrix);
  CHECK(a.doc.tokens == b.doc.tokens);
  CHECK(a.dropped == b.dropped);
}
