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

// Search and extraction service over an immutable corpus and models.
//
// Endpoints (JSON in, JSON out):
//   POST /search         SearchRequest -> ranked hits with PICO highlights
//   POST /extract        {"text": ...} -> ExtractionResult
//   GET  /documents/{id} one document with its extraction
//   GET  /health         {status, corpus_size, model_versions}
// Errors are {"error": message, "field": name-or-null} with status 400 for
// bad requests, 404 for unknown documents and 503 when the request needs a
// model that was not loaded.

#ifndef PICOIR_SERVICE_HPP_
#define PICOIR_SERVICE_HPP_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "picoir/encoder.hpp"
#include "picoir/errors.hpp"
#include "picoir/pico.hpp"
#include "picoir/retrieval.hpp"
#include "picoir/types.hpp"

namespace picoir::service {

inline constexpr std::size_t kDefaultK = 10;
inline constexpr std::size_t kMaxK = 100;
inline constexpr double kDefaultKeywordThreshold = 0.4;

enum class Scorer { kLearned, kKeyword, kCosine };
std::string_view scorer_name(Scorer s);

// A malformed request; field names the offending member when known.
class RequestError : public InvalidArgument {
 public:
  RequestError(std::optional<std::string> field, const std::string& message)
      : InvalidArgument(message), field_(std::move(field)) {}
  const std::optional<std::string>& field() const { return field_; }

 private:
  std::optional<std::string> field_;
};

struct StructuredQuery {
  std::string population;
  std::string intervention;
  std::string comparator;
  std::string outcome;
};

struct SearchRequest {
  std::optional<std::string> free_text;
  std::optional<StructuredQuery> structured;
  std::size_t k = kDefaultK;
  std::optional<Scorer> scorer;  // unset: learned when loaded, else cosine
  double keyword_threshold = kDefaultKeywordThreshold;

  // Throws RequestError. Exactly one of free_text and structured must be
  // given and carry non-blank text; k must lie in [1, kMaxK].
  static SearchRequest parse(const nlohmann::json& body);

  // Free text verbatim, or the structured fields rendered through the
  // query template with the comparator appended to the intervention clause.
  std::string query_text() const;
};

struct Highlight {
  std::size_t start = 0;  // byte offsets into the abstract
  std::size_t end = 0;
  PicoLabel label = PicoLabel::kNone;
  std::string span_text;  // abstract.substr(start, end - start)
};

// Character ranges of the extraction spans within the document's abstract.
std::vector<Highlight> highlights(const AnnotatedDocument& doc,
                                  const pico::ExtractionResult& extraction);
nlohmann::json to_json(const Highlight& h);

struct Response {
  int status = 200;
  nlohmann::json body;
};

struct ServiceConfig {
  std::filesystem::path corpus_path;
  std::optional<std::filesystem::path> relevance_model_path;
  std::optional<std::filesystem::path> pico_model_path;
  std::optional<std::filesystem::path> embeddings_path;
  std::string bind_address = "127.0.0.1";
  int port = 8080;
};

// Applies PICOIR_BIND_ADDRESS and PICOIR_PORT when set.
void apply_environment(ServiceConfig& config);

// All request handling; safe for concurrent use after construction.
class SearchService {
 public:
  // Extraction for served documents comes from the tagger when one is
  // given, else from the corpus labels.
  SearchService(Corpus corpus, std::optional<retrieval::RelevanceModel> relevance,
                std::optional<pico::PicoTagger> tagger);

  // Throws DataError (or a subclass) when anything fails to load.
  static std::unique_ptr<SearchService> load(const ServiceConfig& config);

  Response search(std::string_view body) const;
  Response extract(std::string_view body) const;
  Response document(std::string_view id) const;
  Response health() const;

  std::size_t corpus_size() const { return corpus_.size(); }

 private:
  Response run_search(const SearchRequest& request) const;
  nlohmann::json hit_json(std::size_t doc_index, double score, std::size_t rank) const;
  nlohmann::json document_json(std::size_t doc_index) const;

  Corpus corpus_;
  std::unordered_map<std::string, std::size_t> by_id_;
  std::optional<retrieval::RelevanceModel> relevance_;
  std::optional<pico::PicoTagger> tagger_;
  encoder::PairEncoder cosine_encoder_;
  std::unique_ptr<retrieval::RankIndex> learned_index_;
  std::unique_ptr<retrieval::RankIndex> cosine_index_;
  std::vector<std::vector<std::string>> doc_keywords_;
  std::vector<pico::ExtractionResult> extractions_;
  nlohmann::json model_versions_;
};

// HTTP front end. Runs on its own thread pool; the service must outlive it.
class HttpServer {
 public:
  explicit HttpServer(const SearchService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds; port 0 picks a free port. Returns the bound port. Throws Error
  // when binding fails.
  int bind(const std::string& host, int port);
  // Serves until stop(); call after bind.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace picoir::service

#endif  // PICOIR_SERVICE_HPP_
