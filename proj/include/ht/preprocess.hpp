#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "ht/embeddings.hpp"
#include "ht/matrix.hpp"

namespace ht {

struct TokenSequence {
  std::vector<std::string> tokens;

  bool empty() const { return tokens.empty(); }
  std::size_t size() const { return tokens.size(); }
  bool operator==(const TokenSequence&) const = default;
};

// Lowercased content tokens: the text is split on every non-alphanumeric
// byte, ASCII uppercase is folded, and pure-digit tokens are dropped. Bytes
// >= 0x80 pass through verbatim so multibyte UTF-8 words stay intact.
TokenSequence tokenize(std::string_view text);

class Stoplist {
 public:
  Stoplist() = default;
  explicit Stoplist(const std::vector<std::string>& words);

  // One token per line; '#' starts a comment, blank lines are skipped.
  static Stoplist from_file(const std::filesystem::path& path);

  // Compiled-in copy of data/stopwords_en.txt.
  static const Stoplist& builtin();

  bool contains(const std::string& token) const { return words_.count(token) > 0; }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// Order-preserving filter.
TokenSequence remove_stopwords(const TokenSequence& seq, const Stoplist& stoplist);

// Column matrix of a text's in-vocabulary word vectors, in token order.
// Repeated tokens keep repeated columns; frequency weights the topic fit.
struct DocumentMatrix {
  Matrix matrix;                    // dim x n
  std::vector<std::string> tokens;  // n entries aligned with the columns

  std::size_t cols() const { return tokens.size(); }
};

struct MatrixBuild {
  DocumentMatrix doc;
  std::size_t dropped = 0;  // tokens without a usable vector (OOV or zero)
};

// Throws ZeroContentError when no token has a usable vector.
MatrixBuild build_matrix(const TokenSequence& seq, const EmbeddingStore& store);

}  // namespace ht
