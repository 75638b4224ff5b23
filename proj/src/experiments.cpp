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

#include "picoir/experiments.hpp"

#include <map>
#include <unordered_map>

#include "picoir/errors.hpp"
#include "picoir/random.hpp"

namespace picoir::experiments {

using nlohmann::json;
using querygen::QueryInstance;
using querygen::Relevance;

std::vector<double> default_sweep_thresholds() {
  std::vector<double> t;
  for (int i = 0; i <= 10; ++i) t.push_back(i / 10.0);
  return t;
}

json BaselineSweep::to_json() const {
  json rows_json = json::array();
  for (const auto& r : rows) {
    rows_json.push_back({{"threshold", r.threshold},
                         {"accuracy", r.accuracy},
                         {"f1_negative", r.f1_negative},
                         {"f1_positive", r.f1_positive},
                         {"confusion", r.confusion.to_json()},
                         {"best", r.best}});
  }
  return json{{"rows", std::move(rows_json)}, {"best_index", best}};
}

BaselineSweep run_baseline_sweep(const Corpus& corpus,
                                 const std::vector<QueryInstance>& instances,
                                 std::span<const double> thresholds) {
  if (thresholds.empty()) throw InvalidArgument("no sweep thresholds given");
  if (instances.empty()) throw InvalidArgument("no instances to classify");
  std::unordered_map<std::string, const AnnotatedDocument*> by_id;
  for (const auto& d : corpus) by_id.emplace(d.id, &d);

  std::unordered_map<std::string, std::vector<std::string>> doc_kw;
  std::unordered_map<std::string, std::vector<std::string>> query_kw;
  // (matched, query keyword count) per instance
  std::vector<std::pair<std::size_t, std::size_t>> counts;
  counts.reserve(instances.size());
  for (const auto& inst : instances) {
    const auto it = by_id.find(inst.paired_doc_id);
    if (it == by_id.end()) {
      throw DataError("instance refers to unknown document '" + inst.paired_doc_id + "'");
    }
    auto d = doc_kw.find(inst.paired_doc_id);
    if (d == doc_kw.end()) {
      d = doc_kw.emplace(inst.paired_doc_id, retrieval::document_keywords(*it->second)).first;
    }
    auto q = query_kw.find(inst.query_text);
    if (q == query_kw.end()) {
      q = query_kw.emplace(inst.query_text, retrieval::query_keywords(inst.query_text)).first;
    }
    counts.emplace_back(retrieval::keyword_overlap(q->second, d->second),
                        q->second.size());
  }

  BaselineSweep sweep;
  for (const double t : thresholds) {
    eval::ConfusionMatrix m(2);
    for (std::size_t i = 0; i < instances.size(); ++i) {
      const bool positive =
          counts[i].first >= retrieval::required_keywords(counts[i].second, t);
      m.add(static_cast<std::size_t>(instances[i].relevance), positive ? 1 : 0);
    }
    const auto met = eval::metrics(m);
    SweepRow row;
    row.threshold = t;
    row.accuracy = met.accuracy;
    row.f1_negative = met.per_class[0].f1;
    row.f1_positive = met.per_class[1].f1;
    row.confusion = m;
    sweep.rows.push_back(std::move(row));
  }
  for (std::size_t i = 1; i < sweep.rows.size(); ++i) {
    if (sweep.rows[i].accuracy > sweep.rows[sweep.best].accuracy) sweep.best = i;
  }
  sweep.rows[sweep.best].best = true;
  return sweep;
}

json RetrievalConfig::to_json() const {
  return json{{"runs", runs},
              {"train_count", train_count},
              {"seed", seed},
              {"backend", std::string(encoder::backend_name(backend))},
              {"epochs", hyper.epochs},
              {"learning_rate", hyper.learning_rate},
              {"l2", hyper.l2},
              {"batch_size", hyper.batch_size},
              {"threshold", threshold},
              {"min_df", min_df},
              {"sweep_thresholds", sweep_thresholds},
              {"rank_k", rank_k}};
}

json RunResult::to_json() const {
  json j{{"run", run},
         {"seed", seed},
         {"train_ids", train_ids},
         {"test_ids", test_ids},
         {"train_instances", train_instances},
         {"test_instances", test_instances},
         {"evaluation", report.to_json()},
         {"loss_trace", loss_trace},
         {"baseline", baseline.to_json()}};
  j["source_in_top_k"] = source_in_top_k ? json(*source_in_top_k) : json(nullptr);
  return j;
}

json RetrievalReport::to_json() const {
  json r = json::array();
  for (const auto& run : runs) r.push_back(run.to_json());
  return json{{"config", config.to_json()},
              {"runs", std::move(r)},
              {"aggregate", aggregate.to_json()}};
}

std::uint64_t run_seed(std::uint64_t master, std::size_t run) {
  return derive_seed(master, static_cast<std::uint64_t>(run));
}

double source_in_top_k(const retrieval::RankIndex& index, const LinearModel& model,
                       const std::vector<QueryInstance>& instances, std::size_t k) {
  std::size_t total = 0;
  std::size_t hits = 0;
  for (const auto& inst : instances) {
    if (inst.relevance != Relevance::kPositive) continue;
    ++total;
    for (const auto& r : index.rank(model, inst.query_text, k)) {
      if (r.doc_id == inst.source_doc_id) {
        ++hits;
        break;
      }
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(total);
}

namespace {

std::vector<std::string> ids_of(const Corpus& docs) {
  std::vector<std::string> ids;
  ids.reserve(docs.size());
  for (const auto& d : docs) ids.push_back(d.id);
  return ids;
}

encoder::PairEncoder make_encoder(const Corpus& train_docs, const RetrievalConfig& config) {
  if (config.backend == encoder::Backend::kDense) {
    if (config.embeddings == nullptr) {
      throw InvalidArgument("dense backend needs an embedding table");
    }
    return encoder::PairEncoder::dense(*config.embeddings);
  }
  return encoder::PairEncoder::tfidf(encoder::build_vocab(train_docs, config.min_df));
}

}  // namespace

RunArtifacts run_retrieval_once(const Corpus& corpus, const RetrievalConfig& config,
                                std::size_t run, std::uint64_t seed) {
  RunArtifacts art;
  auto& res = art.result;
  res.run = run;
  res.seed = seed;
  const auto sides = querygen::split(corpus, config.train_count, derive_seed(seed, "split"));
  res.train_ids = ids_of(sides.train);
  res.test_ids = ids_of(sides.test);

  art.train_instances =
      querygen::generate_instances(sides.train, derive_seed(seed, "train-queries")).instances;
  art.test_instances =
      querygen::generate_instances(sides.test, derive_seed(seed, "test-queries")).instances;
  res.train_instances = art.train_instances.size();
  res.test_instances = art.test_instances.size();

  art.model.encoder = make_encoder(sides.train, config);
  const Dataset train = retrieval::featurize(art.train_instances, sides.train, art.model.encoder);
  TrainHyper hyper = config.hyper;
  hyper.seed = derive_seed(seed, "sgd");
  auto trained = retrieval::train_relevance(train, hyper);
  art.model.model = std::move(trained.model);
  res.loss_trace = std::move(trained.loss_trace);

  const Dataset test = retrieval::featurize(art.test_instances, sides.test, art.model.encoder);
  eval::ConfusionMatrix m(2);
  for (std::size_t i = 0; i < test.size(); ++i) {
    const double p = sigmoid(retrieval::logit(art.model.model, test.row(i)));
    m.add(test.label(i), p >= config.threshold ? 1 : 0);
  }
  res.report = eval::make_report(m);
  res.baseline = run_baseline_sweep(sides.test, art.test_instances, config.sweep_thresholds);
  if (config.rank_k > 0) {
    const retrieval::RankIndex index(corpus, art.model.encoder);
    res.source_in_top_k =
        source_in_top_k(index, art.model.model, art.test_instances, config.rank_k);
  }
  return art;
}

RetrievalReport run_retrieval_experiment(const Corpus& corpus,
                                         const RetrievalConfig& config) {
  if (config.runs == 0) throw InvalidArgument("runs must be at least 1");
  RetrievalReport report;
  report.config = config;
  eval::ConfusionMatrix pooled(2);
  std::map<std::string, std::vector<double>> series;
  for (std::size_t r = 0; r < config.runs; ++r) {
    auto art = run_retrieval_once(corpus, config, r, run_seed(config.seed, r));
    const auto& res = art.result;
    for (std::size_t g = 0; g < 2; ++g) {
      for (std::size_t p = 0; p < 2; ++p) pooled.add(g, p, res.report.confusion.at(g, p));
    }
    const auto& met = res.report.metrics;
    series["accuracy"].push_back(met.accuracy);
    series["f1_negative"].push_back(met.per_class[0].f1);
    series["f1_positive"].push_back(met.per_class[1].f1);
    series["precision_positive"].push_back(met.per_class[1].precision);
    series["recall_positive"].push_back(met.per_class[1].recall);
    series["baseline_best_accuracy"].push_back(res.baseline.best_row().accuracy);
    if (res.source_in_top_k) series["source_in_top_k"].push_back(*res.source_in_top_k);
    report.runs.push_back(std::move(art.result));
  }
  report.aggregate = eval::make_report(pooled);
  report.aggregate.runs = config.runs;
  for (const auto& [name, values] : series) {
    report.aggregate.mean_std[name] = eval::mean_std(values);
  }
  return report;
}

json PicoExperiment::to_json() const {
  return json{{"report", report.to_json()}, {"loss_trace", trained.loss_trace}};
}

PicoExperiment run_pico_experiment(const Corpus& train_docs, const Corpus& test_docs,
                                   const pico::TokenFeatureConfig& config,
                                   const TrainHyper& hyper,
                                   const encoder::EmbeddingTable* embeddings) {
  PicoExperiment out;
  out.trained = pico::train_pico(train_docs, config, hyper, embeddings);
  out.report = pico::evaluate_pico(out.trained.tagger, test_docs);
  return out;
}

}  // namespace picoir::experiments
