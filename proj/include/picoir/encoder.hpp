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

// Text featurization: tokenization, vocabulary, TF-IDF vectors, imported
// dense embeddings, and (query, abstract) pair features.

#ifndef PICOIR_ENCODER_HPP_
#define PICOIR_ENCODER_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "picoir/types.hpp"

namespace picoir::encoder {

// Inputs longer than this many tokens are cut to their prefix.
inline constexpr std::size_t kMaxInputTokens = 512;

// A case-folded word with offsets of its original surface.
struct Term {
  std::string text;
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const Term&, const Term&) = default;
};

std::vector<Term> tokenize(std::string_view text);

// Case-folded term strings of tokenize(text), at most limit of them.
std::vector<std::string> terms(std::string_view text,
                               std::size_t limit = static_cast<std::size_t>(-1));

class SparseVector {
 public:
  SparseVector() = default;
  explicit SparseVector(std::size_t dimension) : dimension_(dimension) {}
  // Sorts and validates; throws InvalidArgument on duplicate or
  // out-of-range indices or non-finite values. Zero weights are dropped.
  SparseVector(std::size_t dimension,
               std::vector<std::pair<std::uint32_t, double>> entries);

  std::size_t dimension() const { return dimension_; }
  std::size_t nnz() const { return indices_.size(); }
  const std::vector<std::uint32_t>& indices() const { return indices_; }
  const std::vector<double>& values() const { return values_; }

  double dot(const SparseVector& other) const;
  double norm() const;
  std::vector<double> to_dense() const;

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::size_t dimension_ = 0;
  std::vector<std::uint32_t> indices_;
  std::vector<double> values_;
};

double cosine(const SparseVector& a, const SparseVector& b);

class Vocabulary {
 public:
  Vocabulary() = default;
  // terms must be sorted and unique; df entries >= 1.
  Vocabulary(std::vector<std::string> terms, std::vector<std::size_t> df,
             std::size_t total_docs);

  std::size_t size() const { return terms_.size(); }
  std::size_t total_docs() const { return total_docs_; }
  std::optional<std::size_t> index(std::string_view term) const;
  const std::string& term(std::size_t index) const { return terms_[index]; }
  std::size_t df(std::size_t index) const { return df_[index]; }
  // ln((N + 1) / (df + 1)) + 1
  double idf(std::size_t index) const;

  nlohmann::json to_json() const;
  static Vocabulary from_json(const nlohmann::json& j);
  // Debug dump, one {term, index, df} object per line.
  void write_jsonl(std::ostream& out) const;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.terms_ == b.terms_ && a.df_ == b.df_ &&
           a.total_docs_ == b.total_docs_;
  }

 private:
  std::vector<std::string> terms_;
  std::vector<std::size_t> df_;
  std::size_t total_docs_ = 0;
  std::unordered_map<std::string, std::size_t> lookup_;
};

// Document frequency over the given texts; indices in lexicographic term
// order. Throws InvalidArgument on empty input.
Vocabulary build_vocab(const std::vector<std::string>& texts,
                       std::size_t min_df = 1);
Vocabulary build_vocab(const Corpus& corpus, std::size_t min_df = 1);

// tf * idf, L2-normalized. Out-of-vocabulary terms are ignored.
SparseVector encode_tfidf(std::string_view text, const Vocabulary& vocab);
SparseVector encode_tfidf_terms(const std::vector<std::string>& terms,
                                const Vocabulary& vocab);

using DenseVector = std::vector<double>;

class EmbeddingTable {
 public:
  EmbeddingTable() = default;

  // Throws InvalidArgument on a dimension mismatch or non-finite value.
  void add(std::string id, DenseVector vector);

  std::size_t size() const { return vectors_.size(); }
  bool empty() const { return vectors_.empty(); }
  bool contains(const std::string& id) const { return vectors_.count(id) > 0; }
  // Throws MissingEmbedding.
  const DenseVector& at(const std::string& id) const;
  const DenseVector* find(const std::string& id) const;
  // Throws InvalidArgument when the table is empty (dimension undefined).
  std::size_t dimension() const;

 private:
  std::map<std::string, DenseVector> vectors_;
  std::optional<std::size_t> dimension_;
};

// JSONL, one {"id": ..., "vector": [...]} per line. Errors name the line.
EmbeddingTable load_embeddings(std::istream& in);
EmbeddingTable load_embeddings(const std::filesystem::path& path);

// Key under which a query's dense embedding is looked up: "q_" followed by
// the 16-digit hex FNV-1a-64 hash of the query text.
std::string query_embedding_id(std::string_view query);

enum class Backend { kTfidf, kDense };
std::string_view backend_name(Backend backend);
std::optional<Backend> backend_from_name(std::string_view name);

struct PairFeatures {
  SparseVector features;
  Backend backend = Backend::kTfidf;
};

// Index layout of the TF-IDF pair features. Keyword sets exclude stopwords.
enum TfidfFeature : std::uint32_t {
  kCosine = 0,                 // cosine of the TF-IDF vectors
  kJaccard = 1,                // keyword-set Jaccard
  kQueryCoverage = 2,          // |query kw in doc| / |query kw|, see query_keywords
  kQueryLength = 3,            // ln(1 + tokens) / ln(1 + 512)
  kDocLength = 4,
  kPopulationCoverage = 5,     // coverage of each query clause's keywords; 1 when absent
  kInterventionCoverage = 6,
  kOutcomeCoverage = 7,
  kMinClauseCoverage = 8,      // smallest of the three clause coverages
  kTfidfSummaryCount = 9,      // element-wise product block starts here
};

// Precomputed per-side encodings; reusable across many pairs.
struct EncodedText {
  SparseVector tfidf;
  std::vector<std::string> keywords;  // sorted, distinct
  std::size_t length = 0;             // tokens after truncation
};

struct EncodedQuery {
  EncodedText text;
  std::array<std::vector<std::string>, 3> clause_keywords;  // P, I/C, O
  std::string text_raw;
};

// Encoder for (query, abstract) pairs under one backend. Immutable after
// construction and safe to share across threads.
class PairEncoder {
 public:
  static PairEncoder tfidf(Vocabulary vocab);
  static PairEncoder dense(EmbeddingTable embeddings);

  Backend backend() const { return backend_; }
  std::size_t dimension() const;
  const Vocabulary& vocabulary() const { return vocab_; }
  const EmbeddingTable& embeddings() const { return embeddings_; }

  EncodedQuery encode_query(std::string_view query) const;
  EncodedText encode_document(const AnnotatedDocument& doc) const;
  PairFeatures combine(const EncodedQuery& query, const EncodedText& doc,
                       const std::string& doc_id) const;

  PairFeatures encode(std::string_view query, const AnnotatedDocument& doc) const;

 private:
  Backend backend_ = Backend::kTfidf;
  Vocabulary vocab_;
  EmbeddingTable embeddings_;
};

inline PairFeatures encode_pair(std::string_view query,
                                const AnnotatedDocument& doc,
                                const PairEncoder& encoder) {
  return encoder.encode(query, doc);
}

// Distinct non-stopword terms, sorted.
std::vector<std::string> keywords(const std::vector<std::string>& terms);

// Keywords of a query. For a templated query only the clause contents
// count, so the clause labels are not keywords.
std::vector<std::string> query_keywords(std::string_view query);

}  // namespace picoir::encoder

#endif  // PICOIR_ENCODER_HPP_
