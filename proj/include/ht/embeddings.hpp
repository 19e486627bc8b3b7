#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ht {

enum class EmbeddingFormat { text };

// Immutable token -> vector map. All vectors share one dimension and are
// finite. Safe for any number of concurrent readers once constructed.
class EmbeddingStore {
 public:
  // Validating constructor for stores built in memory (tests, synthetic
  // data). Duplicate tokens keep the first occurrence.
  EmbeddingStore(std::size_t dim,
                 const std::vector<std::pair<std::string, std::vector<double>>>& entries);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return index_.size(); }

  // Number of duplicate tokens dropped while building the store.
  std::size_t duplicates_dropped() const { return duplicates_; }

  std::optional<std::span<const double>> lookup(const std::string& token) const;

 private:
  EmbeddingStore() = default;
  friend EmbeddingStore load_embeddings(const std::filesystem::path&, EmbeddingFormat);

  void insert(std::string token, std::span<const double> vec);

  std::size_t dim_ = 0;
  std::size_t duplicates_ = 0;
  std::vector<double> values_;  // size() * dim_, in insertion order
  std::unordered_map<std::string, std::size_t> index_;  // token -> slot
};

// Text format: header line "vocab_count dim", then one line per word
// ("token v1 ... v_dim"). UTF-8, LF or CRLF. Throws ParseError with the
// offending line on malformed input.
EmbeddingStore load_embeddings(const std::filesystem::path& path,
                               EmbeddingFormat format = EmbeddingFormat::text);

}  // namespace ht
