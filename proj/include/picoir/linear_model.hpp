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

// Multiclass linear model over sparse features and its mini-batch SGD
// trainer. The binary relevance scorer is the two-class case with class 0
// pinned at zero, so its score is sigmoid(w.x + b) with (w, b) = row 1.

#ifndef PICOIR_LINEAR_MODEL_HPP_
#define PICOIR_LINEAR_MODEL_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "picoir/encoder.hpp"

namespace picoir {

enum class Objective {
  kLogistic,  // two classes, reference class 0 frozen at zero
  kSoftmax,   // all rows trainable
};

struct TrainHyper {
  std::size_t epochs = 10;
  double learning_rate = 0.1;
  double l2 = 1e-4;
  std::uint64_t seed = 1;
  std::size_t batch_size = 32;

  friend bool operator==(const TrainHyper&, const TrainHyper&) = default;
};

class LinearModel {
 public:
  LinearModel() = default;
  // Zero-initialized. Throws InvalidArgument when class_count < 2.
  LinearModel(std::size_t class_count, std::size_t dimension);

  std::size_t class_count() const { return class_count_; }
  std::size_t dimension() const { return dimension_; }

  // Row-major class_count x dimension.
  std::vector<double>& weights() { return weights_; }
  const std::vector<double>& weights() const { return weights_; }
  std::vector<double>& bias() { return bias_; }
  const std::vector<double>& bias() const { return bias_; }
  double& weight(std::size_t k, std::size_t j) { return weights_[k * dimension_ + j]; }
  double weight(std::size_t k, std::size_t j) const {
    return weights_[k * dimension_ + j];
  }

  // Throws InvalidArgument on a dimension mismatch.
  std::vector<double> logits(const encoder::SparseVector& x) const;
  std::vector<double> probabilities(const encoder::SparseVector& x) const;

  Objective objective = Objective::kSoftmax;
  TrainHyper hyper;  // training metadata

  nlohmann::json to_json() const;
  static LinearModel from_json(const nlohmann::json& j);

  friend bool operator==(const LinearModel&, const LinearModel&) = default;

 private:
  std::size_t class_count_ = 0;
  std::size_t dimension_ = 0;
  std::vector<double> weights_;
  std::vector<double> bias_;
};

// Stable softmax.
std::vector<double> softmax(std::span<const double> logits);
double sigmoid(double z);

// Compressed sparse rows with one label per row.
class Dataset {
 public:
  Dataset(std::size_t dimension, std::size_t class_count)
      : dimension_(dimension), class_count_(class_count) {}

  // Throws InvalidArgument on dimension mismatch or out-of-range label.
  void add(const encoder::SparseVector& x, std::uint32_t label);

  std::size_t size() const { return labels_.size(); }
  std::size_t dimension() const { return dimension_; }
  std::size_t class_count() const { return class_count_; }
  std::uint32_t label(std::size_t row) const { return labels_[row]; }
  std::span<const std::uint32_t> row_indices(std::size_t row) const;
  std::span<const double> row_values(std::size_t row) const;
  encoder::SparseVector row(std::size_t i) const;

 private:
  std::size_t dimension_;
  std::size_t class_count_;
  std::vector<std::size_t> offsets_ = {0};
  std::vector<std::uint32_t> indices_;
  std::vector<double> values_;
  std::vector<std::uint32_t> labels_;
};

// Mean cross-entropy plus (l2 / 2) * ||trainable weights||^2. Biases are
// not regularized.
double objective_value(const LinearModel& model, const Dataset& data, double l2);

struct Gradient {
  std::vector<double> weights;  // same layout as LinearModel::weights()
  std::vector<double> bias;
};

Gradient objective_gradient(const LinearModel& model, const Dataset& data,
                            double l2);

struct TrainResult {
  LinearModel model;
  std::vector<double> loss_trace;  // objective after each epoch
};

// Mini-batch SGD from zero weights. Examples are first put in a canonical
// order, so results depend only on the multiset of examples and the seed.
// Throws TrainingError naming the epoch if the objective becomes non-finite.
TrainResult train_sgd(const Dataset& data, Objective objective,
                      const TrainHyper& hyper);

void save_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json load_json(const std::filesystem::path& path);

}  // namespace picoir

#endif  // PICOIR_LINEAR_MODEL_HPP_
