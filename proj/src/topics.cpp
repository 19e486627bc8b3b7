#include "ht/topics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "ht/kernels.hpp"
#include "ht/linalg.hpp"

namespace ht {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void check_doc_dim(const TopicModel& model, const DocumentMatrix& doc) {
  if (doc.matrix.rows() != model.dim()) {
    throw std::invalid_argument("document and topic model disagree on dimension");
  }
}

}  // namespace

TopicModel extract_topics(const DocumentMatrix& doc, int k, double svd_tol) {
  if (doc.cols() == 0) throw std::invalid_argument("document matrix has no columns");
  auto svd = linalg::top_k_svd(doc.matrix, k, svd_tol);

  TopicModel model;
  model.topics = std::move(svd.left_vectors);
  model.effective_k = svd.k();
  model.raw_importance = kernels::projection_energies(model.topics, doc.matrix);

  // The directly measured energies can land a hair out of order for
  // near-tied singular values; reorder so importance is nonincreasing.
  std::vector<std::size_t> order(model.effective_k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return model.raw_importance[a] > model.raw_importance[b];
  });
  bool identity = true;
  for (std::size_t i = 0; i < order.size(); ++i) identity = identity && order[i] == i;
  if (!identity) {
    Matrix sorted(model.topics.rows(), model.effective_k);
    std::vector<double> raw(model.effective_k);
    for (std::size_t i = 0; i < order.size(); ++i) {
      auto src = model.topics.col(order[i]);
      auto dst = sorted.col(i);
      std::copy(src.begin(), src.end(), dst.begin());
      raw[i] = model.raw_importance[order[i]];
    }
    model.topics = std::move(sorted);
    model.raw_importance = std::move(raw);
  }

  const double total =
      std::accumulate(model.raw_importance.begin(), model.raw_importance.end(), 0.0);
  model.norm_importance.resize(model.effective_k);
  for (std::size_t i = 0; i < model.effective_k; ++i) {
    model.norm_importance[i] = model.raw_importance[i] / total;
  }
  model.frobenius_sq = frobenius_sq(doc.matrix);
  return model;
}

std::vector<double> reconstruct_word(const TopicModel& model, std::span<const double> w) {
  const std::size_t d = model.dim();
  if (w.size() != d) throw std::invalid_argument("word vector dimension mismatch");
  std::vector<double> out(d, 0.0);
  for (std::size_t t = 0; t < model.effective_k; ++t) {
    auto h = model.topics.col(t);
    double coeff = 0.0;
    for (std::size_t r = 0; r < d; ++r) coeff += h[r] * w[r];
    for (std::size_t r = 0; r < d; ++r) out[r] += coeff * h[r];
  }
  return out;
}

double topic_reconstruction_error(const TopicModel& model, const DocumentMatrix& doc,
                                  std::size_t topic_index) {
  if (topic_index >= model.effective_k) {
    throw std::out_of_range("topic index out of range");
  }
  check_doc_dim(model, doc);
  Matrix single(model.dim(), 1);
  auto src = model.topics.col(topic_index);
  std::copy(src.begin(), src.end(), single.col(0).begin());
  const auto errors = kernels::column_reconstruction_errors(single, doc.matrix);
  double sum = 0.0;
  for (double e : errors) sum += e;
  return sum;
}

double total_reconstruction_error(const TopicModel& model, const DocumentMatrix& doc) {
  check_doc_dim(model, doc);
  const auto errors = kernels::column_reconstruction_errors(model.topics, doc.matrix);
  double sum = 0.0;
  for (double e : errors) sum += e;
  return sum;
}

std::vector<TopicWord> topic_words(const TopicModel& model, const DocumentMatrix& doc,
                                   std::size_t m) {
  if (m == 0) throw std::invalid_argument("word count must be positive");
  check_doc_dim(model, doc);
  const auto errors = kernels::column_reconstruction_errors(model.topics, doc.matrix);

  std::unordered_map<std::string, double> first_error;
  std::vector<TopicWord> distinct;
  distinct.reserve(doc.tokens.size());
  for (std::size_t j = 0; j < doc.tokens.size(); ++j) {
    if (first_error.emplace(doc.tokens[j], errors[j]).second) {
      distinct.push_back({doc.tokens[j], errors[j]});
    }
  }
  std::sort(distinct.begin(), distinct.end(), [](const TopicWord& a, const TopicWord& b) {
    if (a.error != b.error) return a.error < b.error;
    return a.token < b.token;
  });
  if (distinct.size() > m) distinct.resize(m);
  return distinct;
}

void write_model(const TopicModel& model, std::ostream& out) {
  out << model.dim() << ' ' << model.effective_k << ' ' << fmt17(model.frobenius_sq) << '\n';
  for (std::size_t i = 0; i < model.effective_k; ++i) {
    out << (i ? " " : "") << fmt17(model.raw_importance[i]);
  }
  out << '\n';
  for (std::size_t i = 0; i < model.effective_k; ++i) {
    out << (i ? " " : "") << fmt17(model.norm_importance[i]);
  }
  out << '\n';
  for (std::size_t r = 0; r < model.dim(); ++r) {
    for (std::size_t c = 0; c < model.effective_k; ++c) {
      out << (c ? " " : "") << fmt17(model.topics(r, c));
    }
    out << '\n';
  }
}

TopicModel read_model(std::istream& in) {
  std::size_t dim = 0, k = 0;
  double frob = 0.0;
  if (!(in >> dim >> k >> frob) || dim == 0 || k == 0) {
    throw std::runtime_error("malformed topic model header");
  }
  TopicModel model;
  model.effective_k = k;
  model.frobenius_sq = frob;
  model.raw_importance.resize(k);
  model.norm_importance.resize(k);
  for (auto& v : model.raw_importance) {
    if (!(in >> v)) throw std::runtime_error("malformed topic model importances");
  }
  for (auto& v : model.norm_importance) {
    if (!(in >> v)) throw std::runtime_error("malformed topic model importances");
  }
  model.topics = Matrix(dim, k);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < k; ++c) {
      if (!(in >> model.topics(r, c))) {
        throw std::runtime_error("malformed topic model vectors");
      }
    }
  }
  return model;
}

}  // namespace ht
