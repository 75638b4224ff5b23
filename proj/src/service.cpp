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

#include "picoir/service.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>

#include "picoir/corpus.hpp"
#include "picoir/querygen.hpp"
#include "picoir/random.hpp"

namespace picoir::service {

using nlohmann::json;

std::string_view scorer_name(Scorer s) {
  switch (s) {
    case Scorer::kLearned:
      return "learned";
    case Scorer::kKeyword:
      return "keyword";
    case Scorer::kCosine:
      return "cosine";
  }
  return "cosine";
}

namespace {

bool blank(std::string_view s) {
  for (unsigned char c : s) {
    if (!std::isspace(c)) return false;
  }
  return true;
}

std::string string_field(const json& obj, const char* name, const std::string& path) {
  if (!obj.contains(name) || obj[name].is_null()) return {};
  if (!obj[name].is_string()) throw RequestError(path + name, "must be a string");
  return obj[name].get<std::string>();
}

Response error(int status, const std::string& message,
               const std::optional<std::string>& field = std::nullopt) {
  return {status, json{{"error", message},
                       {"field", field ? json(*field) : json(nullptr)}}};
}

std::string version_of(const json& j) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(j.dump())));
  return std::string("fnv1a64:") + buf;
}

}  // namespace

SearchRequest SearchRequest::parse(const json& body) {
  if (!body.is_object()) throw RequestError(std::nullopt, "request body must be a JSON object");
  SearchRequest r;
  const bool has_free = body.contains("free_text") && !body["free_text"].is_null();
  const bool has_structured = body.contains("structured") && !body["structured"].is_null();
  if (has_free == has_structured) {
    throw RequestError(std::nullopt, "exactly one of 'free_text' and 'structured' is required");
  }
  if (has_free) {
    if (!body["free_text"].is_string()) throw RequestError("free_text", "must be a string");
    r.free_text = body["free_text"].get<std::string>();
    if (blank(*r.free_text)) throw RequestError("free_text", "must not be empty");
  } else {
    const json& s = body["structured"];
    if (!s.is_object()) throw RequestError("structured", "must be an object");
    StructuredQuery q;
    q.population = string_field(s, "population", "structured.");
    q.intervention = string_field(s, "intervention", "structured.");
    q.comparator = string_field(s, "comparator", "structured.");
    q.outcome = string_field(s, "outcome", "structured.");
    if (blank(q.population) && blank(q.intervention) && blank(q.comparator) &&
        blank(q.outcome)) {
      throw RequestError("structured", "at least one field must be non-empty");
    }
    r.structured = std::move(q);
  }
  if (body.contains("k") && !body["k"].is_null()) {
    const json& k = body["k"];
    if (!k.is_number_integer()) throw RequestError("k", "must be an integer");
    const auto v = k.get<long long>();
    if (v < 1 || v > static_cast<long long>(kMaxK)) {
      throw RequestError("k", "must lie in [1, " + std::to_string(kMaxK) + "]");
    }
    r.k = static_cast<std::size_t>(v);
  }
  if (body.contains("scorer") && !body["scorer"].is_null()) {
    if (!body["scorer"].is_string()) throw RequestError("scorer", "must be a string");
    const auto name = body["scorer"].get<std::string>();
    if (name == "learned") {
      r.scorer = Scorer::kLearned;
    } else if (name == "keyword") {
      r.scorer = Scorer::kKeyword;
    } else if (name == "cosine") {
      r.scorer = Scorer::kCosine;
    } else {
      throw RequestError("scorer", "must be one of learned, keyword, cosine");
    }
  }
  if (body.contains("keyword_threshold") && !body["keyword_threshold"].is_null()) {
    const json& t = body["keyword_threshold"];
    if (!t.is_number()) throw RequestError("keyword_threshold", "must be a number");
    r.keyword_threshold = t.get<double>();
    if (!(r.keyword_threshold >= 0.0 && r.keyword_threshold <= 1.0)) {
      throw RequestError("keyword_threshold", "must lie in [0, 1]");
    }
  }
  return r;
}

std::string SearchRequest::query_text() const {
  if (free_text) return *free_text;
  const auto& s = *structured;
  std::string ic = blank(s.intervention) ? std::string() : s.intervention;
  if (!blank(s.comparator)) {
    if (!ic.empty()) ic += ", ";
    ic += s.comparator;
  }
  return querygen::render_query({blank(s.population) ? std::string() : s.population, ic,
                                 blank(s.outcome) ? std::string() : s.outcome});
}

std::vector<Highlight> highlights(const AnnotatedDocument& doc,
                                  const pico::ExtractionResult& extraction) {
  std::vector<Highlight> out;
  for (const auto label : kEvidenceLabels) {
    for (const auto& span : extraction.of(label)) {
      if (span.token_end <= span.token_start || span.token_end > doc.tokens.size()) {
        continue;
      }
      Highlight h;
      h.start = doc.tokens[span.token_start].start;
      h.end = doc.tokens[span.token_end - 1].end;
      h.label = label;
      h.span_text = doc.abstract.substr(h.start, h.end - h.start);
      out.push_back(std::move(h));
    }
  }
  std::sort(out.begin(), out.end(), [](const Highlight& a, const Highlight& b) {
    return a.start < b.start;
  });
  return out;
}

json to_json(const Highlight& h) {
  return json{{"start", h.start},
              {"end", h.end},
              {"label", std::string(label_name(h.label))},
              {"span_text", h.span_text}};
}

void apply_environment(ServiceConfig& config) {
  if (const char* host = std::getenv("PICOIR_BIND_ADDRESS"); host && *host) {
    config.bind_address = host;
  }
  if (const char* port = std::getenv("PICOIR_PORT"); port && *port) {
    char* end = nullptr;
    const long v = std::strtol(port, &end, 10);
    if (*end != '\0' || v < 0 || v > 65535) {
      throw InvalidArgument(std::string("PICOIR_PORT is not a valid port: ") + port);
    }
    config.port = static_cast<int>(v);
  }
}

SearchService::SearchService(Corpus corpus,
                             std::optional<retrieval::RelevanceModel> relevance,
                             std::optional<pico::PicoTagger> tagger)
    : corpus_(std::move(corpus)),
      relevance_(std::move(relevance)),
      tagger_(std::move(tagger)) {
  for (std::size_t i = 0; i < corpus_.size(); ++i) {
    if (!by_id_.emplace(corpus_[i].id, i).second) {
      throw DataError("duplicate document id '" + corpus_[i].id + "'");
    }
  }
  if (!corpus_.empty()) {
    cosine_encoder_ = encoder::PairEncoder::tfidf(encoder::build_vocab(corpus_));
    cosine_index_ = std::make_unique<retrieval::RankIndex>(corpus_, cosine_encoder_);
    if (relevance_) {
      learned_index_ = std::make_unique<retrieval::RankIndex>(corpus_, relevance_->encoder);
    }
  }
  doc_keywords_.reserve(corpus_.size());
  extractions_.reserve(corpus_.size());
  for (const auto& doc : corpus_) {
    doc_keywords_.push_back(retrieval::document_keywords(doc));
    extractions_.push_back(tagger_ ? pico::extract(*tagger_, doc)
                                   : pico::extract_spans(doc.tokens, doc.labels));
  }
  model_versions_ = json{
      {"relevance", relevance_ ? json(version_of(relevance_->to_json())) : json(nullptr)},
      {"pico", tagger_ ? json(version_of(tagger_->to_json())) : json(nullptr)},
      {"extraction_source", tagger_ ? "model" : "corpus_labels"}};
}

std::unique_ptr<SearchService> SearchService::load(const ServiceConfig& config) {
  Corpus corpus = corpus::read_jsonl(config.corpus_path);
  std::optional<encoder::EmbeddingTable> embeddings;
  if (config.embeddings_path) embeddings = encoder::load_embeddings(*config.embeddings_path);
  const auto* table = embeddings ? &*embeddings : nullptr;
  std::optional<retrieval::RelevanceModel> relevance;
  if (config.relevance_model_path) {
    relevance = retrieval::RelevanceModel::load(*config.relevance_model_path, table);
  }
  std::optional<pico::PicoTagger> tagger;
  if (config.pico_model_path) tagger = pico::PicoTagger::load(*config.pico_model_path, table);
  return std::make_unique<SearchService>(std::move(corpus), std::move(relevance),
                                         std::move(tagger));
}

json SearchService::hit_json(std::size_t i, double score, std::size_t rank) const {
  const auto& doc = corpus_[i];
  json hl = json::array();
  for (const auto& h : highlights(doc, extractions_[i])) hl.push_back(to_json(h));
  return json{{"doc_id", doc.id},
              {"title", doc.title},
              {"abstract", doc.abstract},
              {"score", score},
              {"rank", rank},
              {"extraction", pico::to_json(extractions_[i], doc.id)},
              {"highlight", std::move(hl)}};
}

json SearchService::document_json(std::size_t i) const {
  auto j = hit_json(i, 0.0, 0);
  j.erase("score");
  j.erase("rank");
  j["domain_tag"] = std::string(domain_name(corpus_[i].domain_tag));
  return j;
}

Response SearchService::run_search(const SearchRequest& request) const {
  const Scorer scorer = request.scorer.value_or(relevance_ ? Scorer::kLearned : Scorer::kCosine);
  if (scorer == Scorer::kLearned && !relevance_) {
    return error(503, "no relevance model loaded; use scorer 'cosine' or 'keyword'", "scorer");
  }
  const std::string query = request.query_text();
  std::vector<retrieval::RankedResult> ranked;
  if (!corpus_.empty()) {
    try {
      if (scorer == Scorer::kLearned) {
        ranked = learned_index_->rank(relevance_->model, query, request.k);
      } else if (scorer == Scorer::kCosine) {
        ranked = cosine_index_->rank_cosine(query, request.k);
      } else {
        const auto qk = retrieval::query_keywords(query);
        const std::size_t need = retrieval::required_keywords(qk.size(), request.keyword_threshold);
        std::vector<retrieval::RankedResult> all;
        for (std::size_t i = 0; i < corpus_.size(); ++i) {
          if (retrieval::keyword_overlap(qk, doc_keywords_[i]) < need) continue;
          all.push_back({corpus_[i].id, retrieval::keyword_fraction(qk, doc_keywords_[i]), 0});
        }
        ranked = retrieval::top_k(std::move(all), request.k);
      }
    } catch (const MissingEmbedding& e) {
      return error(400, e.what(), request.free_text ? "free_text" : "structured");
    }
  }
  json hits = json::array();
  for (const auto& r : ranked) hits.push_back(hit_json(by_id_.at(r.doc_id), r.score, r.rank));
  return {200, json{{"query", query},
                    {"scorer", std::string(scorer_name(scorer))},
                    {"k", request.k},
                    {"extraction_source", model_versions_["extraction_source"]},
                    {"results", std::move(hits)}}};
}

Response SearchService::search(std::string_view body) const {
  json parsed = json::parse(body, nullptr, false);
  if (parsed.is_discarded()) return error(400, "request body is not valid JSON");
  try {
    return run_search(SearchRequest::parse(parsed));
  } catch (const RequestError& e) {
    return error(400, e.what(), e.field());
  }
}

Response SearchService::extract(std::string_view body) const {
  json parsed = json::parse(body, nullptr, false);
  if (parsed.is_discarded()) return error(400, "request body is not valid JSON");
  if (!parsed.is_object()) return error(400, "request body must be a JSON object");
  if (!parsed.contains("text") || !parsed["text"].is_string()) {
    return error(400, "must be a string", "text");
  }
  const auto text = parsed["text"].get<std::string>();
  if (blank(text)) return error(400, "must not be empty", "text");
  if (!tagger_) return error(503, "no PICO model loaded");
  AnnotatedDocument doc;
  doc.abstract = text;
  doc.tokens = corpus::segment(text);
  doc.labels.assign(doc.tokens.size(), PicoLabel::kNone);
  const auto result = pico::extract(*tagger_, doc);
  json j = pico::to_json(result);
  json hl = json::array();
  for (const auto& h : highlights(doc, result)) hl.push_back(to_json(h));
  j["highlight"] = std::move(hl);
  return {200, std::move(j)};
}

Response SearchService::document(std::string_view id) const {
  const auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return error(404, "unknown document id '" + std::string(id) + "'");
  return {200, document_json(it->second)};
}

Response SearchService::health() const {
  return {200, json{{"status", "ok"},
                    {"corpus_size", corpus_.size()},
                    {"model_versions", model_versions_}}};
}

}  // namespace picoir::service
