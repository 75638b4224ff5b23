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

#include "picoir/linear_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "picoir/errors.hpp"
#include "picoir/random.hpp"

namespace picoir {

using nlohmann::json;

LinearModel::LinearModel(std::size_t class_count, std::size_t dimension)
    : class_count_(class_count),
      dimension_(dimension),
      weights_(class_count * dimension, 0.0),
      bias_(class_count, 0.0) {
  if (class_count < 2) throw InvalidArgument("a linear model needs >= 2 classes");
}

std::vector<double> LinearModel::logits(const encoder::SparseVector& x) const {
  if (x.dimension() != dimension_) {
    throw InvalidArgument("feature dimension " + std::to_string(x.dimension()) +
                          " does not match model dimension " +
                          std::to_string(dimension_));
  }
  std::vector<double> z(bias_);
  const auto& idx = x.indices();
  const auto& val = x.values();
  for (std::size_t k = 0; k < class_count_; ++k) {
    const double* row = weights_.data() + k * dimension_;
    double s = 0.0;
    for (std::size_t n = 0; n < idx.size(); ++n) s += row[idx[n]] * val[n];
    z[k] += s;
  }
  return z;
}

std::vector<double> LinearModel::probabilities(const encoder::SparseVector& x) const {
  const auto z = logits(x);
  return softmax(z);
}

std::vector<double> softmax(std::span<const double> z) {
  std::vector<double> p(z.begin(), z.end());
  if (p.empty()) return p;
  const double m = *std::max_element(p.begin(), p.end());
  double sum = 0.0;
  for (double& v : p) {
    v = std::exp(v - m);
    sum += v;
  }
  for (double& v : p) v /= sum;
  return p;
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

namespace {

std::string objective_name(Objective o) {
  return o == Objective::kLogistic ? "logistic" : "softmax";
}

}  // namespace

json LinearModel::to_json() const {
  return json{{"class_count", class_count_},
              {"dimension", dimension_},
              {"weights", weights_},
              {"bias", bias_},
              {"metadata",
               {{"objective", objective_name(objective)},
                {"seed", hyper.seed},
                {"epochs", hyper.epochs},
                {"learning_rate", hyper.learning_rate},
                {"l2", hyper.l2},
                {"batch_size", hyper.batch_size}}}};
}

LinearModel LinearModel::from_json(const json& j) {
  try {
    LinearModel m(j.at("class_count").get<std::size_t>(),
                  j.at("dimension").get<std::size_t>());
    auto w = j.at("weights").get<std::vector<double>>();
    auto b = j.at("bias").get<std::vector<double>>();
    if (w.size() != m.weights_.size() || b.size() != m.bias_.size()) {
      throw DataError("model weights/bias sizes do not match its shape");
    }
    for (double v : w) {
      if (!std::isfinite(v)) throw DataError("model has non-finite weights");
    }
    for (double v : b) {
      if (!std::isfinite(v)) throw DataError("model has non-finite bias");
    }
    m.weights_ = std::move(w);
    m.bias_ = std::move(b);
    const json& meta = j.at("metadata");
    const auto obj = meta.at("objective").get<std::string>();
    if (obj != "logistic" && obj != "softmax") {
      throw DataError("unknown objective '" + obj + "'");
    }
    m.objective = obj == "logistic" ? Objective::kLogistic : Objective::kSoftmax;
    m.hyper.seed = meta.at("seed").get<std::uint64_t>();
    m.hyper.epochs = meta.at("epochs").get<std::size_t>();
    m.hyper.learning_rate = meta.at("learning_rate").get<double>();
    m.hyper.l2 = meta.at("l2").get<double>();
    m.hyper.batch_size = meta.at("batch_size").get<std::size_t>();
    return m;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed model: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw DataError(std::string("malformed model: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Dataset

void Dataset::add(const encoder::SparseVector& x, std::uint32_t label) {
  if (x.dimension() != dimension_) {
    throw InvalidArgument("example dimension " + std::to_string(x.dimension()) +
                          " differs from dataset dimension " +
                          std::to_string(dimension_));
  }
  if (label >= class_count_) throw InvalidArgument("label out of range");
  indices_.insert(indices_.end(), x.indices().begin(), x.indices().end());
  values_.insert(values_.end(), x.values().begin(), x.values().end());
  offsets_.push_back(indices_.size());
  labels_.push_back(label);
}

std::span<const std::uint32_t> Dataset::row_indices(std::size_t row) const {
  return {indices_.data() + offsets_[row], offsets_[row + 1] - offsets_[row]};
}

std::span<const double> Dataset::row_values(std::size_t row) const {
  return {values_.data() + offsets_[row], offsets_[row + 1] - offsets_[row]};
}

encoder::SparseVector Dataset::row(std::size_t i) const {
  std::vector<std::pair<std::uint32_t, double>> entries;
  const auto idx = row_indices(i);
  const auto val = row_values(i);
  for (std::size_t n = 0; n < idx.size(); ++n) entries.emplace_back(idx[n], val[n]);
  return encoder::SparseVector(dimension_, std::move(entries));
}

// ---------------------------------------------------------------------------
// Objective

namespace {

std::size_t first_trainable(Objective o) { return o == Objective::kLogistic ? 1 : 0; }

void row_logits(const std::vector<double>& weights, const std::vector<double>& bias,
                double scale, std::size_t dimension, const Dataset& data,
                std::size_t row, std::vector<double>& z) {
  const auto idx = data.row_indices(row);
  const auto val = data.row_values(row);
  for (std::size_t k = 0; k < bias.size(); ++k) {
    const double* w = weights.data() + k * dimension;
    double s = 0.0;
    for (std::size_t n = 0; n < idx.size(); ++n) s += w[idx[n]] * val[n];
    z[k] = scale * s + bias[k];
  }
}

// In-place stable softmax; returns the log-sum-exp.
double softmax_inplace(std::vector<double>& z) {
  const double m = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& v : z) {
    v = std::exp(v - m);
    sum += v;
  }
  for (double& v : z) v /= sum;
  return m + std::log(sum);
}

void check_model(const LinearModel& model, const Dataset& data) {
  if (model.dimension() != data.dimension() ||
      model.class_count() != data.class_count()) {
    throw InvalidArgument("model shape does not match dataset");
  }
}

}  // namespace

double objective_value(const LinearModel& model, const Dataset& data, double l2) {
  check_model(model, data);
  const std::size_t k0 = first_trainable(model.objective);
  std::vector<double> z(model.class_count());
  double ce = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    row_logits(model.weights(), model.bias(), 1.0, model.dimension(), data, i, z);
    const double zy = z[data.label(i)];
    const double m = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (double v : z) sum += std::exp(v - m);
    ce += m + std::log(sum) - zy;
  }
  double reg = 0.0;
  for (std::size_t j = k0 * model.dimension(); j < model.weights().size(); ++j) {
    reg += model.weights()[j] * model.weights()[j];
  }
  const double n = data.size() == 0 ? 1.0 : static_cast<double>(data.size());
  return ce / n + 0.5 * l2 * reg;
}

Gradient objective_gradient(const LinearModel& model, const Dataset& data,
                            double l2) {
  check_model(model, data);
  const std::size_t k0 = first_trainable(model.objective);
  const std::size_t d = model.dimension();
  Gradient g{std::vector<double>(model.weights().size(), 0.0),
             std::vector<double>(model.class_count(), 0.0)};
  std::vector<double> z(model.class_count());
  const double inv_n = data.size() == 0 ? 0.0 : 1.0 / static_cast<double>(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    row_logits(model.weights(), model.bias(), 1.0, d, data, i, z);
    softmax_inplace(z);
    const auto idx = data.row_indices(i);
    const auto val = data.row_values(i);
    for (std::size_t k = k0; k < model.class_count(); ++k) {
      const double delta = (z[k] - (data.label(i) == k ? 1.0 : 0.0)) * inv_n;
      g.bias[k] += delta;
      double* row = g.weights.data() + k * d;
      for (std::size_t n = 0; n < idx.size(); ++n) row[idx[n]] += delta * val[n];
    }
  }
  for (std::size_t j = k0 * d; j < g.weights.size(); ++j) {
    g.weights[j] += l2 * model.weights()[j];
  }
  return g;
}

// ---------------------------------------------------------------------------
// SGD

namespace {

// Lexicographic (label, indices, values) order over rows.
std::vector<std::size_t> canonical_order(const Dataset& data) {
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (data.label(a) != data.label(b)) return data.label(a) < data.label(b);
    const auto ia = data.row_indices(a);
    const auto ib = data.row_indices(b);
    if (!std::equal(ia.begin(), ia.end(), ib.begin(), ib.end())) {
      return std::lexicographical_compare(ia.begin(), ia.end(), ib.begin(), ib.end());
    }
    const auto va = data.row_values(a);
    const auto vb = data.row_values(b);
    return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end());
  });
  return order;
}

}  // namespace

TrainResult train_sgd(const Dataset& data, Objective objective,
                      const TrainHyper& hyper) {
  if (objective == Objective::kLogistic && data.class_count() != 2) {
    throw InvalidArgument("logistic objective needs exactly 2 classes");
  }
  if (hyper.batch_size == 0) throw InvalidArgument("batch_size must be >= 1");
  if (!(hyper.learning_rate > 0.0) || !std::isfinite(hyper.learning_rate)) {
    throw InvalidArgument("learning_rate must be positive and finite");
  }
  if (!(hyper.l2 >= 0.0) || !std::isfinite(hyper.l2)) {
    throw InvalidArgument("l2 must be non-negative and finite");
  }

  TrainResult result;
  result.model = LinearModel(data.class_count(), data.dimension());
  result.model.objective = objective;
  result.model.hyper = hyper;
  if (data.size() == 0 || hyper.epochs == 0) return result;

  LinearModel& model = result.model;
  const std::size_t d = model.dimension();
  const std::size_t classes = model.class_count();
  const std::size_t k0 = first_trainable(objective);
  std::vector<double>& w = model.weights();
  std::vector<double>& b = model.bias();

  // Weights are held as scale * w so the L2 shrinkage of each step costs
  // O(1); scale is folded back into w at the end of every epoch.
  double scale = 1.0;
  auto fold = [&] {
    if (scale == 1.0) return;
    for (std::size_t j = k0 * d; j < w.size(); ++j) w[j] *= scale;
    scale = 1.0;
  };

  std::vector<std::size_t> order = canonical_order(data);
  Rng rng(derive_seed(hyper.seed, "sgd"));
  const double decay = 1.0 - hyper.learning_rate * hyper.l2;
  if (!(decay > 0.0)) throw InvalidArgument("learning_rate * l2 must be < 1");

  std::vector<double> probs;
  for (std::size_t epoch = 1; epoch <= hyper.epochs; ++epoch) {
    shuffle(std::span<std::size_t>(order), rng);
    for (std::size_t start = 0; start < order.size(); start += hyper.batch_size) {
      const std::size_t end = std::min(order.size(), start + hyper.batch_size);
      const std::size_t batch = end - start;
      probs.assign(batch * classes, 0.0);
      std::vector<double> z(classes);
      for (std::size_t r = 0; r < batch; ++r) {
        // Row 0 of a logistic model stays zero, so scaling all rows is safe.
        row_logits(w, b, scale, d, data, order[start + r], z);
        softmax_inplace(z);
        std::copy(z.begin(), z.end(), probs.begin() + r * classes);
      }
      scale *= decay;
      const double step = hyper.learning_rate / static_cast<double>(batch);
      const double inv_scale = 1.0 / scale;
      for (std::size_t r = 0; r < batch; ++r) {
        const std::size_t row = order[start + r];
        const auto idx = data.row_indices(row);
        const auto val = data.row_values(row);
        for (std::size_t k = k0; k < classes; ++k) {
          const double delta =
              probs[r * classes + k] - (data.label(row) == k ? 1.0 : 0.0);
          const double coef = -step * delta;
          b[k] += coef;
          double* wk = w.data() + k * d;
          const double wcoef = coef * inv_scale;
          for (std::size_t n = 0; n < idx.size(); ++n) wk[idx[n]] += wcoef * val[n];
        }
      }
      if (scale < 1e-150) fold();
    }
    fold();
    const double loss = objective_value(model, data, hyper.l2);
    if (!std::isfinite(loss)) {
      throw TrainingError("training loss became non-finite at epoch " +
                          std::to_string(epoch));
    }
    result.loss_trace.push_back(loss);
  }
  return result;
}

void save_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << j.dump() << '\n';
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DataError(path.string() + ": invalid JSON: " + e.what());
  }
}

}  // namespace picoir
