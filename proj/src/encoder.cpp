// Copyright 2026 The picoir Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "picoir/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

#include "picoir/errors.hpp"
#include "picoir/querygen.hpp"
#include "picoir/random.hpp"
#include "picoir/stopwords.hpp"
#include "picoir/text.hpp"

namespace picoir::encoder {

using nlohmann::json;

std::vector<Term> tokenize(std::string_view s) {
  std::vector<Term> out;
  for (const auto& r : text::word_ranges(s)) {
    out.push_back({text::casefold(s.substr(r.start, r.end - r.start)), r.start,
                   r.end});
  }
  return out;
}

std::vector<std::string> terms(std::string_view s, std::size_t limit) {
  std::vector<std::string> out;
  for (const auto& r : text::word_ranges(s)) {
    if (out.size() >= limit) break;
    out.push_back(text::casefold(s.substr(r.start, r.end - r.start)));
  }
  return out;
}

std::vector<std::string> keywords(const std::vector<std::string>& ts) {
  std::vector<std::string> out;
  for (const auto& t : ts) {
    if (!is_stopword(t)) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// SparseVector

SparseVector::SparseVector(std::size_t dimension,
                           std::vector<std::pair<std::uint32_t, double>> entries)
    : dimension_(dimension) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  indices_.reserve(entries.size());
  values_.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto [index, value] = entries[i];
    if (index >= dimension) {
      throw InvalidArgument("sparse index " + std::to_string(index) +
                            " out of range for dimension " +
                            std::to_string(dimension));
    }
    if (i > 0 && entries[i - 1].first == index) {
      throw InvalidArgument("duplicate sparse index " + std::to_string(index));
    }
    if (!std::isfinite(value)) {
      throw InvalidArgument("non-finite sparse weight at index " +
                            std::to_string(index));
    }
    if (value == 0.0) continue;
    indices_.push_back(index);
    values_.push_back(value);
  }
}

double SparseVector::dot(const SparseVector& other) const {
  double sum = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < indices_.size() && j < other.indices_.size()) {
    if (indices_[i] < other.indices_[j]) {
      ++i;
    } else if (indices_[i] > other.indices_[j]) {
      ++j;
    } else {
      sum += values_[i++] * other.values_[j++];
    }
  }
  return sum;
}

double SparseVector::norm() const {
  double sum = 0.0;
  for (double v : values_) sum += v * v;
  return std::sqrt(sum);
}

std::vector<double> SparseVector::to_dense() const {
  std::vector<double> out(dimension_, 0.0);
  for (std::size_t i = 0; i < indices_.size(); ++i) out[indices_[i]] = values_[i];
  return out;
}

double cosine(const SparseVector& a, const SparseVector& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return a.dot(b) / (na * nb);
}

// ---------------------------------------------------------------------------
// Vocabulary

Vocabulary::Vocabulary(std::vector<std::string> terms,
                       std::vector<std::size_t> df, std::size_t total_docs)
    : terms_(std::move(terms)), df_(std::move(df)), total_docs_(total_docs) {
  if (terms_.size() != df_.size()) {
    throw InvalidArgument("vocabulary terms and df differ in length");
  }
  lookup_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i > 0 && !(terms_[i - 1] < terms_[i])) {
      throw InvalidArgument("vocabulary terms must be sorted and unique");
    }
    if (df_[i] == 0) throw InvalidArgument("vocabulary df must be >= 1");
    lookup_.emplace(terms_[i], i);
  }
}

std::optional<std::size_t> Vocabulary::index(std::string_view term) const {
  auto it = lookup_.find(std::string(term));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

double Vocabulary::idf(std::size_t index) const {
  return std::log((static_cast<double>(total_docs_) + 1.0) /
                  (static_cast<double>(df_[index]) + 1.0)) +
         1.0;
}

json Vocabulary::to_json() const {
  return json{{"terms", terms_}, {"df", df_}, {"total_docs", total_docs_}};
}

Vocabulary Vocabulary::from_json(const json& j) {
  try {
    return Vocabulary(j.at("terms").get<std::vector<std::string>>(),
                      j.at("df").get<std::vector<std::size_t>>(),
                      j.at("total_docs").get<std::size_t>());
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed vocabulary: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw DataError(std::string("malformed vocabulary: ") + e.what());
  }
}

void Vocabulary::write_jsonl(std::ostream& out) const {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    out << json{{"term", terms_[i]}, {"index", i}, {"df", df_[i]}}.dump()
        << '\n';
  }
}

Vocabulary build_vocab(const std::vector<std::string>& texts,
                       std::size_t min_df) {
  if (texts.empty()) throw InvalidArgument("cannot build a vocabulary from no documents");
  std::map<std::string, std::size_t> df;
  for (const auto& t : texts) {
    auto ts = terms(t);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    for (auto& term : ts) ++df[std::move(term)];
  }
  std::vector<std::string> keep;
  std::vector<std::size_t> counts;
  for (auto& [term, count] : df) {
    if (count >= std::max<std::size_t>(min_df, 1)) {
      keep.push_back(term);
      counts.push_back(count);
    }
  }
  return Vocabulary(std::move(keep), std::move(counts), texts.size());
}

Vocabulary build_vocab(const Corpus& corpus, std::size_t min_df) {
  std::vector<std::string> texts;
  texts.reserve(corpus.size());
  for (const auto& doc : corpus) texts.push_back(doc.abstract);
  return build_vocab(texts, min_df);
}

SparseVector encode_tfidf_terms(const std::vector<std::string>& ts,
                                const Vocabulary& vocab) {
  std::map<std::uint32_t, double> tf;
  for (const auto& t : ts) {
    if (auto idx = vocab.index(t)) tf[static_cast<std::uint32_t>(*idx)] += 1.0;
  }
  std::vector<std::pair<std::uint32_t, double>> entries;
  entries.reserve(tf.size());
  double sq = 0.0;
  for (const auto& [idx, count] : tf) {
    const double w = count * vocab.idf(idx);
    entries.emplace_back(idx, w);
    sq += w * w;
  }
  if (sq > 0.0) {
    const double inv = 1.0 / std::sqrt(sq);
    for (auto& e : entries) e.second *= inv;
  }
  return SparseVector(vocab.size(), std::move(entries));
}

SparseVector encode_tfidf(std::string_view s, const Vocabulary& vocab) {
  return encode_tfidf_terms(terms(s), vocab);
}

// ---------------------------------------------------------------------------
// Embeddings

void EmbeddingTable::add(std::string id, DenseVector vector) {
  if (dimension_ && vector.size() != *dimension_) {
    throw InvalidArgument("embedding '" + id + "' has dimension " +
                          std::to_string(vector.size()) + ", expected " +
                          std::to_string(*dimension_));
  }
  for (double v : vector) {
    if (!std::isfinite(v)) {
      throw InvalidArgument("embedding '" + id + "' has a non-finite value");
    }
  }
  if (vector.empty()) throw InvalidArgument("embedding '" + id + "' is empty");
  dimension_ = vector.size();
  vectors_[std::move(id)] = std::move(vector);
}

const DenseVector& EmbeddingTable::at(const std::string& id) const {
  auto it = vectors_.find(id);
  if (it == vectors_.end()) throw MissingEmbedding(id);
  return it->second;
}

const DenseVector* EmbeddingTable::find(const std::string& id) const {
  auto it = vectors_.find(id);
  return it == vectors_.end() ? nullptr : &it->second;
}

std::size_t EmbeddingTable::dimension() const {
  if (!dimension_) throw InvalidArgument("embedding table is empty; dimension undefined");
  return *dimension_;
}

EmbeddingTable load_embeddings(std::istream& in) {
  EmbeddingTable table;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(raw);
    } catch (const json::parse_error& e) {
      throw SchemaError(line, "<root>", std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("id") || !j["id"].is_string()) {
      throw SchemaError(line, "id", "expected a string");
    }
    if (!j.contains("vector") || !j["vector"].is_array()) {
      throw SchemaError(line, "vector", "expected an array of numbers");
    }
    DenseVector v;
    for (const auto& x : j["vector"]) {
      if (!x.is_number()) throw SchemaError(line, "vector", "non-numeric entry");
      v.push_back(x.get<double>());
    }
    try {
      table.add(j["id"].get<std::string>(), std::move(v));
    } catch (const InvalidArgument& e) {
      throw SchemaError(line, "vector", e.what());
    }
  }
  return table;
}

EmbeddingTable load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return load_embeddings(in);
}

std::string query_embedding_id(std::string_view query) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "q_%016llx",
                static_cast<unsigned long long>(fnv1a64(query)));
  return buf;
}

std::string_view backend_name(Backend backend) {
  return backend == Backend::kTfidf ? "tfidf" : "dense";
}

std::optional<Backend> backend_from_name(std::string_view name) {
  if (name == "tfidf") return Backend::kTfidf;
  if (name == "dense") return Backend::kDense;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Pair features

namespace {

std::size_t intersection_size(const std::vector<std::string>& a,
                              const std::vector<std::string>& b) {
  std::size_t n = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

double coverage(const std::vector<std::string>& query_kw,
                const std::vector<std::string>& doc_kw) {
  if (query_kw.empty()) return 0.0;
  return static_cast<double>(intersection_size(query_kw, doc_kw)) /
         static_cast<double>(query_kw.size());
}

// An absent clause places no constraint on the document.
double clause_coverage(const std::vector<std::string>& clause_kw,
                       const std::vector<std::string>& doc_kw) {
  return clause_kw.empty() ? 1.0 : coverage(clause_kw, doc_kw);
}

std::vector<std::string> merge_keywords(
    const std::array<std::vector<std::string>, 3>& clauses) {
  std::vector<std::string> all;
  for (const auto& c : clauses) all.insert(all.end(), c.begin(), c.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

double length_feature(std::size_t n) {
  return std::log1p(static_cast<double>(n)) /
         std::log1p(static_cast<double>(kMaxInputTokens));
}

EncodedText encode_text(std::string_view s, const Vocabulary& vocab) {
  EncodedText out;
  auto ts = terms(s, kMaxInputTokens);
  out.length = ts.size();
  out.tfidf = encode_tfidf_terms(ts, vocab);
  out.keywords = keywords(ts);
  return out;
}

}  // namespace

std::vector<std::string> query_keywords(std::string_view query) {
  const auto clauses = querygen::parse_query_clauses(query);
  std::array<std::vector<std::string>, 3> kw;
  bool templated = false;
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    kw[c] = keywords(terms(clauses[c]));
    templated = templated || !clauses[c].empty();
  }
  if (!templated) return keywords(terms(query));
  return merge_keywords(kw);
}

PairEncoder PairEncoder::tfidf(Vocabulary vocab) {
  PairEncoder e;
  e.backend_ = Backend::kTfidf;
  e.vocab_ = std::move(vocab);
  return e;
}

PairEncoder PairEncoder::dense(EmbeddingTable embeddings) {
  PairEncoder e;
  e.backend_ = Backend::kDense;
  e.embeddings_ = std::move(embeddings);
  return e;
}

std::size_t PairEncoder::dimension() const {
  if (backend_ == Backend::kTfidf) return kTfidfSummaryCount + vocab_.size();
  return 4 * embeddings_.dimension();
}

EncodedQuery PairEncoder::encode_query(std::string_view query) const {
  EncodedQuery q;
  q.text_raw = std::string(query);
  if (backend_ == Backend::kDense) return q;
  q.text = encode_text(query, vocab_);
  const auto clauses = querygen::parse_query_clauses(query);
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    q.clause_keywords[c] = keywords(terms(clauses[c], kMaxInputTokens));
  }
  if (std::any_of(clauses.begin(), clauses.end(),
                  [](const std::string& c) { return !c.empty(); })) {
    q.text.keywords = merge_keywords(q.clause_keywords);
  }
  return q;
}

EncodedText PairEncoder::encode_document(const AnnotatedDocument& doc) const {
  if (backend_ == Backend::kDense) return {};
  return encode_text(doc.abstract, vocab_);
}

PairFeatures PairEncoder::combine(const EncodedQuery& q, const EncodedText& d,
                                  const std::string& doc_id) const {
  std::vector<std::pair<std::uint32_t, double>> entries;
  if (backend_ == Backend::kDense) {
    const DenseVector& eq = embeddings_.at(query_embedding_id(q.text_raw));
    const DenseVector& ed = embeddings_.at(doc_id);
    const auto dim = static_cast<std::uint32_t>(eq.size());
    entries.reserve(4 * dim);
    for (std::uint32_t i = 0; i < dim; ++i) {
      entries.emplace_back(i, eq[i]);
      entries.emplace_back(dim + i, ed[i]);
      entries.emplace_back(2 * dim + i, eq[i] * ed[i]);
      entries.emplace_back(3 * dim + i, std::abs(eq[i] - ed[i]));
    }
    return {SparseVector(4 * dim, std::move(entries)), Backend::kDense};
  }

  const auto& qk = q.text.keywords;
  const auto& dk = d.keywords;
  const std::size_t inter = intersection_size(qk, dk);
  const std::size_t uni = qk.size() + dk.size() - inter;
  entries.reserve(kTfidfSummaryCount + q.text.tfidf.nnz());
  entries.emplace_back(kCosine, cosine(q.text.tfidf, d.tfidf));
  entries.emplace_back(kJaccard, uni == 0 ? 0.0 : static_cast<double>(inter) /
                                                      static_cast<double>(uni));
  entries.emplace_back(kQueryCoverage, coverage(qk, dk));
  entries.emplace_back(kQueryLength, length_feature(q.text.length));
  entries.emplace_back(kDocLength, length_feature(d.length));
  const double pc = clause_coverage(q.clause_keywords[0], dk);
  const double ic = clause_coverage(q.clause_keywords[1], dk);
  const double oc = clause_coverage(q.clause_keywords[2], dk);
  entries.emplace_back(kPopulationCoverage, pc);
  entries.emplace_back(kInterventionCoverage, ic);
  entries.emplace_back(kOutcomeCoverage, oc);
  entries.emplace_back(kMinClauseCoverage, std::min({pc, ic, oc}));

  // Element-wise product of the two TF-IDF vectors.
  const auto& qi = q.text.tfidf.indices();
  const auto& qv = q.text.tfidf.values();
  const auto& di = d.tfidf.indices();
  const auto& dv = d.tfidf.values();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < qi.size() && j < di.size()) {
    if (qi[i] < di[j]) {
      ++i;
    } else if (qi[i] > di[j]) {
      ++j;
    } else {
      entries.emplace_back(kTfidfSummaryCount + qi[i], qv[i] * dv[j]);
      ++i;
      ++j;
    }
  }
  return {SparseVector(dimension(), std::move(entries)), Backend::kTfidf};
}

PairFeatures PairEncoder::encode(std::string_view query,
                                 const AnnotatedDocument& doc) const {
  return combine(encode_query(query), encode_document(doc), doc.id);
}

}  // namespace picoir::encoder
