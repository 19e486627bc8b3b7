#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ht/embeddings.hpp"
#include "ht/errors.hpp"
#include "support/test_util.hpp"

using ht::EmbeddingStore;
using ht::load_embeddings;
using ht::ParseError;
using ht::testing::TempDir;
using ht::testing::write_file;

TEST_CASE("minimal well-formed file loads") {
  TempDir dir;
  auto path = write_file(dir.file("emb.txt"), "2 3\na 1 0 0\nb 0 1 0\n");
  const auto store = load_embeddings(path);
  CHECK(store.dim() == 3);
  CHECK(store.size() == 2);
  CHECK(store.duplicates_dropped() == 0);
}

TEST_CASE("loaded values round-trip") {
  TempDir dir;
  auto path = write_file(dir.file("emb.txt"), "1 2\na 0.5 -0.25\n");
  const auto store = load_embeddings(path);
  auto vec = store.lookup("a");
  REQUIRE(vec.has_value());
  CHECK((*vec)[0] == 0.5);
  CHECK((*vec)[1] == -0.25);
}

TEST_CASE("wrong component count reports the line") {
  TempDir dir;
  auto path = write_file(dir.file("emb.txt"), "1 3\na 1 0\n");
  try {
    load_embeddings(path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("malformed inputs raise distinct parse errors") {
  TempDir dir;
  SUBCASE("empty file") {
    try {
      load_embeddings(write_file(dir.file("e.txt"), ""));
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);
    }
  }
  SUBCASE("malformed header") {
    CHECK_THROWS_AS(load_embeddings(write_file(dir.file("e.txt"), "2\na 1\n")), ParseError);
    CHECK_THROWS_AS(load_embeddings(write_file(dir.file("e.txt"), "two 3\na 1 2 3\n")),
                    ParseError);
  }
  SUBCASE("non-finite component") {
    try {
      load_embeddings(write_file(dir.file("e.txt"), "2 2\na 1 2\nb inf 0\n"));
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(std::string(e.what()).find("non-finite") != std::string::npos);
    }
    CHECK_THROWS_AS(load_embeddings(write_file(dir.file("e.txt"), "1 2\na nan 0\n")),
                    ParseError);
  }
  SUBCASE("file shorter than declared count") {
    CHECK_THROWS_AS(load_embeddings(write_file(dir.file("e.txt"), "3 2\na 1 2\nb 3 4\n")),
                    ParseError);
  }
  SUBCASE("trailing entries past declared count") {
    CHECK_THROWS_AS(load_embeddings(write_file(dir.file("e.txt"), "1 2\na 1 2\nb 3 4\n")),
                    ParseError);
  }
  SUBCASE("missing file") { CHECK_THROWS(load_embeddings(dir.file("nope.txt"))); }
}

TEST_CASE("duplicates keep the first occurrence and are counted") {
  TempDir dir;
  auto path = write_file(dir.file("emb.txt"), "3 2\na 1 2\na 9 9\nb 3 4\n");
  const auto store = load_embeddings(path);
  CHECK(store.size() == 2);
  CHECK(store.duplicates_dropped() == 1);
  auto vec = store.lookup("a");
  REQUIRE(vec.has_value());
  CHECK((*vec)[0] == 1.0);
}

TEST_CASE("crlf line endings are accepted") {
  TempDir dir;
  auto path = write_file(dir.file("emb.txt"), "2 2\r\na 1 2\r\nb 3 4\r\n");
  const auto store = load_embeddings(path);
  CHECK(store.size() == 2);
  auto vec = store.lookup("b");
  REQUIRE(vec.has_value());
  CHECK((*vec)[0] == 3.0);
}

TEST_CASE("lookup is absent for unknown tokens") {
  TempDir dir;
  auto path = write_file(dir.file("emb.txt"), "1 2\na 1 0\n");
  const auto store = load_embeddings(path);
  CHECK(store.lookup("a").has_value());
  CHECK_FALSE(store.lookup("zzz").has_value());
  CHECK_FALSE(store.lookup("").has_value());
}

TEST_CASE("randomized store: load-then-lookup is stable and complete") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  const std::size_t dim = 7;
  const std::size_t count = 2000;

  std::ostringstream file;
  file.precision(17);
  file << count << ' ' << dim << '\n';
  std::vector<std::pair<std::string, std::vector<double>>> entries;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<double> vec(dim);
    file << 'w' << i;
    for (auto& v : vec) {
      v = dist(rng);
      file << ' ' << v;
    }
    file << '\n';
    entries.emplace_back("w" + std::to_string(i), vec);
  }

  TempDir dir;
  auto path = write_file(dir.file("emb.txt"), file.str());
  const auto store = load_embeddings(path);
  REQUIRE(store.size() == count);

  std::uniform_int_distribution<std::size_t> pick(0, count - 1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto& [token, expected] = entries[pick(rng)];
    auto first = store.lookup(token);
    auto second = store.lookup(token);
    REQUIRE(first.has_value());
    REQUIRE(second.has_value());
    CHECK(first->data() == second->data());  // repeated lookups hit the same storage
    for (std::size_t c = 0; c < dim; ++c) {
      CHECK((*first)[c] == expected[c]);  // written with 17 digits, exact round-trip
    }
  }
  CHECK_FALSE(store.lookup("w" + std::to_string(count)).has_value());
}

TEST_CASE("in-memory constructor validates entries") {
  using Entries = std::vector<std::pair<std::string, std::vector<double>>>;
  CHECK_THROWS_AS(EmbeddingStore(0, Entries{}), std::invalid_argument);
  CHECK_THROWS_AS(EmbeddingStore(2, Entries{{"", {1, 2}}}), std::invalid_argument);
  CHECK_THROWS_AS(EmbeddingStore(2, Entries{{"a", {1}}}), std::invalid_argument);
  CHECK_THROWS_AS(EmbeddingStore(2, Entries{{"a", {1, std::nan("")}}}), std::invalid_argument);
  const EmbeddingStore store(2, Entries{{"a", {1, 2}}, {"a", {3, 4}}});
  CHECK(store.size() == 1);
  CHECK(store.duplicates_dropped() == 1);
}
