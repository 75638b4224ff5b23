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

#include "picoir/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "picoir/errors.hpp"

namespace picoir::retrieval {

using encoder::EncodedQuery;
using encoder::EncodedText;
using encoder::PairEncoder;
using encoder::SparseVector;
using nlohmann::json;

Dataset featurize(const std::vector<querygen::QueryInstance>& instances,
                  const Corpus& corpus, const PairEncoder& encoder) {
  std::unordered_map<std::string, const AnnotatedDocument*> by_id;
  for (const auto& doc : corpus) by_id.emplace(doc.id, &doc);
  std::unordered_map<std::string, EncodedText> doc_cache;
  std::unordered_map<std::string, EncodedQuery> query_cache;

  Dataset data(encoder.dimension(), 2);
  for (const auto& inst : instances) {
    const auto it = by_id.find(inst.paired_doc_id);
    if (it == by_id.end()) {
      throw DataError("instance refers to unknown document '" +
                      inst.paired_doc_id + "'");
    }
    auto d = doc_cache.find(inst.paired_doc_id);
    if (d == doc_cache.end()) {
      d = doc_cache.emplace(inst.paired_doc_id, encoder.encode_document(*it->second))
              .first;
    }
    auto q = query_cache.find(inst.query_text);
    if (q == query_cache.end()) {
      q = query_cache.emplace(inst.query_text, encoder.encode_query(inst.query_text))
              .first;
    }
    data.add(encoder.combine(q->second, d->second, inst.paired_doc_id).features,
             static_cast<std::uint32_t>(inst.relevance));
  }
  return data;
}

TrainResult train_relevance(const Dataset& data, const TrainHyper& hyper) {
  if (data.class_count() != 2) {
    throw InvalidArgument("relevance training needs a 2-class dataset");
  }
  std::size_t positives = 0;
  for (std::size_t i = 0; i < data.size(); ++i) positives += data.label(i);
  if (positives == 0 || positives == data.size()) {
    throw InvalidArgument(
        "relevance training needs both positive and negative instances");
  }
  return train_sgd(data, Objective::kLogistic, hyper);
}

double logit(const LinearModel& model, const SparseVector& x) {
  if (model.class_count() != 2) {
    throw InvalidArgument("relevance scoring needs a 2-class model");
  }
  const auto z = model.logits(x);
  return z[1] - z[0];
}

double score(const LinearModel& model, const encoder::PairFeatures& pair) {
  return sigmoid(logit(model, pair.features));
}

bool ranks_before(const RankedResult& a, const RankedResult& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.doc_id < b.doc_id;
}

std::vector<RankedResult> top_k(std::vector<RankedResult> all, std::size_t k) {
  k = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k),
                    all.end(), ranks_before);
  all.resize(k);
  for (std::size_t i = 0; i < all.size(); ++i) all[i].rank = i + 1;
  return all;
}

RankIndex::RankIndex(const Corpus& corpus, const PairEncoder& encoder)
    : encoder_(&encoder) {
  ids_.reserve(corpus.size());
  docs_.reserve(corpus.size());
  for (const auto& doc : corpus) {
    ids_.push_back(doc.id);
    docs_.push_back(encoder.encode_document(doc));
  }
}

std::vector<double> RankIndex::scores(const LinearModel& model,
                                      std::string_view query) const {
  const EncodedQuery q = encoder_->encode_query(query);
  std::vector<double> out;
  out.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    out.push_back(sigmoid(logit(model, encoder_->combine(q, docs_[i], ids_[i]).features)));
  }
  return out;
}

std::vector<RankedResult> RankIndex::rank(const LinearModel& model,
                                          std::string_view query,
                                          std::size_t k) const {
  if (ids_.empty()) return {};
  const auto s = scores(model, query);
  std::vector<RankedResult> all;
  all.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) all.push_back({ids_[i], s[i], 0});
  return top_k(std::move(all), k);
}

std::vector<RankedResult> RankIndex::rank_cosine(std::string_view query,
                                                 std::size_t k) const {
  if (ids_.empty()) return {};
  std::vector<RankedResult> all;
  all.reserve(ids_.size());
  if (encoder_->backend() == encoder::Backend::kTfidf) {
    const EncodedQuery q = encoder_->encode_query(query);
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      all.push_back({ids_[i], encoder::cosine(q.text.tfidf, docs_[i].tfidf), 0});
    }
  } else {
    const auto& table = encoder_->embeddings();
    const auto& eq = table.at(encoder::query_embedding_id(query));
    for (const auto& id : ids_) {
      const auto& ed = table.at(id);
      double dot = 0.0, nq = 0.0, nd = 0.0;
      for (std::size_t j = 0; j < eq.size(); ++j) {
        dot += eq[j] * ed[j];
        nq += eq[j] * eq[j];
        nd += ed[j] * ed[j];
      }
      const double denom = std::sqrt(nq) * std::sqrt(nd);
      all.push_back({id, denom == 0.0 ? 0.0 : dot / denom, 0});
    }
  }
  return top_k(std::move(all), k);
}

std::vector<RankedResult> rank(const LinearModel& model, std::string_view query,
                               const Corpus& corpus, std::size_t k,
                               const PairEncoder& encoder) {
  return RankIndex(corpus, encoder).rank(model, query, k);
}

// ---------------------------------------------------------------------------
// Keyword baseline

std::vector<std::string> query_keywords(std::string_view query) {
  return encoder::query_keywords(query);
}

std::vector<std::string> document_keywords(const AnnotatedDocument& doc) {
  return encoder::keywords(encoder::terms(doc.abstract));
}

std::size_t required_keywords(std::size_t keyword_count, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw InvalidArgument("keyword threshold must lie in [0, 1]");
  }
  const double need = std::ceil(threshold * static_cast<double>(keyword_count) - 1e-9);
  return static_cast<std::size_t>(std::max(0.0, need));
}

std::size_t keyword_overlap(const std::vector<std::string>& query_kw,
                            const std::vector<std::string>& doc_kw) {
  std::size_t matched = 0;
  for (const auto& k : query_kw) {
    matched += std::binary_search(doc_kw.begin(), doc_kw.end(), k) ? 1 : 0;
  }
  return matched;
}

double keyword_fraction(const std::vector<std::string>& query_kw,
                        const std::vector<std::string>& doc_kw) {
  if (query_kw.empty()) return 1.0;
  return static_cast<double>(keyword_overlap(query_kw, doc_kw)) /
         static_cast<double>(query_kw.size());
}

std::vector<KeywordMatch> keyword_matches(std::string_view query,
                                          const Corpus& corpus) {
  const auto qk = query_keywords(query);
  std::vector<KeywordMatch> out;
  out.reserve(corpus.size());
  for (const auto& doc : corpus) {
    const auto dk = document_keywords(doc);
    out.push_back({doc.id, keyword_overlap(qk, dk), keyword_fraction(qk, dk)});
  }
  return out;
}

std::vector<std::string> keyword_retrieve(std::string_view query,
                                          const Corpus& corpus, double threshold) {
  const std::size_t need = required_keywords(query_keywords(query).size(), threshold);
  auto matches = keyword_matches(query, corpus);
  std::erase_if(matches, [need](const KeywordMatch& m) { return m.matched < need; });
  std::sort(matches.begin(), matches.end(),
            [](const KeywordMatch& a, const KeywordMatch& b) {
              if (a.fraction != b.fraction) return a.fraction > b.fraction;
              return a.doc_id < b.doc_id;
            });
  std::vector<std::string> ids;
  ids.reserve(matches.size());
  for (auto& m : matches) ids.push_back(std::move(m.doc_id));
  return ids;
}

// ---------------------------------------------------------------------------
// Serialization

json RelevanceModel::to_json() const {
  json j = model.to_json();
  json enc{{"backend", std::string(encoder::backend_name(encoder.backend()))}};
  if (encoder.backend() == encoder::Backend::kTfidf) {
    enc["vocab"] = encoder.vocabulary().to_json();
  }
  j["encoder"] = std::move(enc);
  return j;
}

RelevanceModel RelevanceModel::from_json(const json& j,
                                         const encoder::EmbeddingTable* embeddings) {
  try {
    RelevanceModel m;
    const json& enc = j.at("encoder");
    const auto name = enc.at("backend").get<std::string>();
    const auto backend = encoder::backend_from_name(name);
    if (!backend) throw DataError("unknown encoder backend '" + name + "'");
    if (*backend == encoder::Backend::kTfidf) {
      m.encoder = PairEncoder::tfidf(encoder::Vocabulary::from_json(enc.at("vocab")));
    } else {
      if (embeddings == nullptr) {
        throw DataError("dense relevance model needs its embedding table");
      }
      m.encoder = PairEncoder::dense(*embeddings);
    }
    m.model = LinearModel::from_json(j);
    if (m.model.class_count() != 2 || m.model.dimension() != m.encoder.dimension()) {
      throw DataError("relevance model shape does not match its encoder");
    }
    return m;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed relevance model: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw DataError(std::string("malformed relevance model: ") + e.what());
  }
}

void RelevanceModel::save(const std::filesystem::path& path) const {
  save_json(path, to_json());
}

RelevanceModel RelevanceModel::load(const std::filesystem::path& path,
                                    const encoder::EmbeddingTable* embeddings) {
  return from_json(load_json(path), embeddings);
}

}  // namespace picoir::retrieval
