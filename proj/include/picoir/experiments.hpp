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

// End-to-end experiment runners: repeated-split retrieval evaluation, the
// keyword-threshold baseline sweep, and PICO tagger evaluation.

#ifndef PICOIR_EXPERIMENTS_HPP_
#define PICOIR_EXPERIMENTS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "picoir/encoder.hpp"
#include "picoir/linear_model.hpp"
#include "picoir/metrics.hpp"
#include "picoir/pico.hpp"
#include "picoir/querygen.hpp"
#include "picoir/retrieval.hpp"
#include "picoir/types.hpp"

namespace picoir::experiments {

// 0, 0.1, ..., 1.
std::vector<double> default_sweep_thresholds();

struct SweepRow {
  double threshold = 0.0;
  double accuracy = 0.0;
  double f1_negative = 0.0;
  double f1_positive = 0.0;
  eval::ConfusionMatrix confusion{2};
  bool best = false;
};

struct BaselineSweep {
  std::vector<SweepRow> rows;
  std::size_t best = 0;  // first row of maximal accuracy

  const SweepRow& best_row() const { return rows.at(best); }
  nlohmann::json to_json() const;
};

// Predicts an instance positive iff its paired document contains at least
// retrieval::required_keywords(...) of the query keywords. Throws
// InvalidArgument for an empty threshold list or instance set, and
// DataError for an instance naming an unknown document.
BaselineSweep run_baseline_sweep(const Corpus& corpus,
                                 const std::vector<querygen::QueryInstance>& instances,
                                 std::span<const double> thresholds);

struct RetrievalConfig {
  std::size_t runs = 5;
  std::size_t train_count = 4000;
  std::uint64_t seed = 1;
  encoder::Backend backend = encoder::Backend::kTfidf;
  TrainHyper hyper = retrieval::default_hyper();
  double threshold = retrieval::kDefaultThreshold;
  std::size_t min_df = 1;
  std::vector<double> sweep_thresholds = default_sweep_thresholds();
  // When non-zero, every positive test query is ranked against the whole
  // corpus and the share whose source lands in the top rank_k is reported.
  std::size_t rank_k = 0;
  const encoder::EmbeddingTable* embeddings = nullptr;  // dense backend only

  nlohmann::json to_json() const;
};

struct RunResult {
  std::size_t run = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> train_ids;
  std::vector<std::string> test_ids;
  std::size_t train_instances = 0;
  std::size_t test_instances = 0;
  eval::EvalReport report;
  std::vector<double> loss_trace;
  BaselineSweep baseline;
  std::optional<double> source_in_top_k;

  nlohmann::json to_json() const;
};

struct RetrievalReport {
  RetrievalConfig config;
  std::vector<RunResult> runs;
  // Pooled confusion over all runs, plus mean and sample std of the per-run
  // metrics.
  eval::EvalReport aggregate;

  nlohmann::json to_json() const;
};

// Everything one run produces, including the trained model.
struct RunArtifacts {
  RunResult result;
  retrieval::RelevanceModel model;
  std::vector<querygen::QueryInstance> train_instances;
  std::vector<querygen::QueryInstance> test_instances;
};

// One split-train-evaluate cycle with seeds derived from run_seed.
RunArtifacts run_retrieval_once(const Corpus& corpus, const RetrievalConfig& config,
                                std::size_t run, std::uint64_t run_seed);

RetrievalReport run_retrieval_experiment(const Corpus& corpus,
                                         const RetrievalConfig& config);

// Seed of run i under a master seed.
std::uint64_t run_seed(std::uint64_t master, std::size_t run);

// Share of positive instances whose source document the model ranks
// within the top k of the index.
double source_in_top_k(const retrieval::RankIndex& index, const LinearModel& model,
                       const std::vector<querygen::QueryInstance>& instances,
                       std::size_t k);

struct PicoExperiment {
  pico::PicoTrainResult trained;
  pico::PicoReport report;

  nlohmann::json to_json() const;
};

PicoExperiment run_pico_experiment(const Corpus& train_docs, const Corpus& test_docs,
                                   const pico::TokenFeatureConfig& config,
                                   const TrainHyper& hyper,
                                   const encoder::EmbeddingTable* embeddings = nullptr);

}  // namespace picoir::experiments

#endif  // PICOIR_EXPERIMENTS_HPP_
