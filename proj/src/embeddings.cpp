#include "ht/embeddings.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string_view>

#include "ht/errors.hpp"

namespace ht {

namespace {

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

bool blank(std::string_view s) {
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Splits on runs of spaces/tabs.
std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

double parse_double(std::string_view s, std::size_t line_no, const std::string& what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError("unparsable " + what + " '" + std::string(s) + "'", line_no);
  }
  return v;
}

std::size_t parse_count(std::string_view s, std::size_t line_no, const std::string& what) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError("unparsable " + what + " '" + std::string(s) + "'", line_no);
  }
  return v;
}

}  // namespace

EmbeddingStore::EmbeddingStore(
    std::size_t dim, const std::vector<std::pair<std::string, std::vector<double>>>& entries) {
  if (dim == 0) throw std::invalid_argument("embedding dimension must be positive");
  dim_ = dim;
  values_.reserve(entries.size() * dim);
  for (const auto& [token, vec] : entries) {
    if (token.empty()) throw std::invalid_argument("empty token in embedding entries");
    if (vec.size() != dim) {
      throw std::invalid_argument("vector length mismatch for token '" + token + "'");
    }
    for (double v : vec) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("non-finite component for token '" + token + "'");
      }
    }
    insert(token, vec);
  }
}

void EmbeddingStore::insert(std::string token, std::span<const double> vec) {
  auto [it, inserted] = index_.try_emplace(std::move(token), index_.size());
  if (!inserted) {
    ++duplicates_;
    return;
  }
  values_.insert(values_.end(), vec.begin(), vec.end());
}

std::optional<std::span<const double>> EmbeddingStore::lookup(const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return std::span<const double>{values_.data() + it->second * dim_, dim_};
}

EmbeddingStore load_embeddings(const std::filesystem::path& path, EmbeddingFormat format) {
  (void)format;  // only ::text exists
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open embeddings file: " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty embeddings file", 1);
  strip_cr(line);
  auto header = fields(line);
  if (header.size() != 2) {
    throw ParseError("malformed header, expected 'vocab_count dim'", 1);
  }
  const std::size_t count = parse_count(header[0], 1, "vocab count");
  const std::size_t dim = parse_count(header[1], 1, "dimension");
  if (count == 0 || dim == 0) {
    throw ParseError("vocab count and dimension must be positive", 1);
  }

  EmbeddingStore store;
  store.dim_ = dim;
  store.values_.reserve(count * dim);

  std::vector<double> vec(dim);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t line_no = i + 2;
    if (!std::getline(in, line)) {
      throw ParseError("file ends before the declared " + std::to_string(count) + " entries",
                       line_no);
    }
    strip_cr(line);
    auto f = fields(line);
    if (f.empty()) throw ParseError("blank embedding line", line_no);
    if (f.size() != dim + 1) {
      throw ParseError("expected " + std::to_string(dim) + " components for token '" +
                           std::string(f[0]) + "', got " + std::to_string(f.size() - 1),
                       line_no);
    }
    for (std::size_t c = 0; c < dim; ++c) {
      vec[c] = parse_double(f[c + 1], line_no, "component");
      if (!std::isfinite(vec[c])) {
        throw ParseError("non-finite component for token '" + std::string(f[0]) + "'", line_no);
      }
    }
    store.insert(std::string(f[0]), vec);
  }

  std::size_t line_no = count + 2;
  while (std::getline(in, line)) {
    strip_cr(line);
    if (!blank(line)) {
      throw ParseError("trailing content after the declared " + std::to_string(count) +
                           " entries",
                       line_no);
    }
    ++line_no;
  }
  return store;
}

}  // namespace ht
