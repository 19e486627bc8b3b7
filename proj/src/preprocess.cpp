#include "ht/preprocess.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <stdexcept>

#include "ht/errors.hpp"

namespace ht {

namespace {

std::string to_lower_ascii(std::string s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

}  // namespace

namespace detail {
// The compiled-in copy of data/stopwords_en.txt, generated at configure time.
extern const char* const kDefaultStopwords;
}  // namespace detail

TokenSequence tokenize(std::string_view text) {
  TokenSequence out;
  std::string cur;
  bool has_nondigit = false;
  auto flush = [&] {
    if (!cur.empty() && has_nondigit) out.tokens.push_back(cur);
    cur.clear();
    has_nondigit = false;
  };
  for (unsigned char c : text) {
    if (c >= '0' && c <= '9') {
      cur.push_back(static_cast<char>(c));
    } else if (c >= 'a' && c <= 'z') {
      cur.push_back(static_cast<char>(c));
      has_nondigit = true;
    } else if (c >= 'A' && c <= 'Z') {
      cur.push_back(static_cast<char>(c - 'A' + 'a'));
      has_nondigit = true;
    } else if (c >= 0x80) {  // inside a multibyte UTF-8 sequence
      cur.push_back(static_cast<char>(c));
      has_nondigit = true;
    } else {
      flush();
    }
  }
  flush();
  return out;
}

Stoplist::Stoplist(const std::vector<std::string>& words) {
  for (const auto& w : words) {
    if (!w.empty()) words_.insert(to_lower_ascii(w));
  }
}

namespace {

Stoplist parse_stoplist_text(std::string_view text) {
  std::vector<std::string> words;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::size_t b = 0, e = line.size();
    while (b < e && std::isspace(static_cast<unsigned char>(line[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(line[e - 1]))) --e;
    if (e > b) words.emplace_back(line.substr(b, e - b));
  }
  return Stoplist(words);
}

}  // namespace

Stoplist Stoplist::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stoplist file: " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_stoplist_text(text);
}

const Stoplist& Stoplist::builtin() {
  static const Stoplist list = parse_stoplist_text(detail::kDefaultStopwords);
  return list;
}

TokenSequence remove_stopwords(const TokenSequence& seq, const Stoplist& stoplist) {
  TokenSequence out;
  out.tokens.reserve(seq.tokens.size());
  std::copy_if(seq.tokens.begin(), seq.tokens.end(), std::back_inserter(out.tokens),
               [&](const std::string& t) { return !stoplist.contains(t); });
  return out;
}

MatrixBuild build_matrix(const TokenSequence& seq, const EmbeddingStore& store) {
  std::vector<std::pair<const std::string*, std::span<const double>>> kept;
  kept.reserve(seq.tokens.size());
  std::size_t dropped = 0;
  for (const auto& token : seq.tokens) {
    auto vec = store.lookup(token);
    if (!vec) {
      ++dropped;
      continue;
    }
    bool zero = std::all_of(vec->begin(), vec->end(), [](double v) { return v == 0.0; });
    if (zero) {
      ++dropped;
      continue;
    }
    kept.emplace_back(&token, *vec);
  }
  if (kept.empty()) {
    throw ZeroContentError("no in-vocabulary content words", ZeroContentError::Side::document);
  }

  MatrixBuild out;
  out.dropped = dropped;
  out.doc.matrix = Matrix(store.dim(), kept.size());
  out.doc.tokens.reserve(kept.size());
  for (std::size_t j = 0; j < kept.size(); ++j) {
    out.doc.tokens.push_back(*kept[j].first);
    auto col = out.doc.matrix.col(j);
    std::copy(kept[j].second.begin(), kept[j].second.end(), col.begin());
  }
  return out;
}

}  // namespace ht
