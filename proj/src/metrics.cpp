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

#include "picoir/metrics.hpp"

#include <cmath>
#include <numeric>

#include "picoir/errors.hpp"

namespace picoir::eval {

using nlohmann::json;

ConfusionMatrix::ConfusionMatrix(std::size_t class_count)
    : class_count_(class_count), counts_(class_count * class_count, 0) {
  if (class_count == 0) throw InvalidArgument("confusion matrix needs >= 1 class");
}

void ConfusionMatrix::add(std::size_t gold, std::size_t predicted,
                          std::uint64_t count) {
  if (gold >= class_count_ || predicted >= class_count_) {
    throw InvalidArgument("label out of range for confusion matrix");
  }
  counts_[gold * class_count_ + predicted] += count;
}

std::uint64_t ConfusionMatrix::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::uint64_t ConfusionMatrix::trace() const {
  std::uint64_t t = 0;
  for (std::size_t c = 0; c < class_count_; ++c) t += at(c, c);
  return t;
}

std::uint64_t ConfusionMatrix::row_sum(std::size_t gold) const {
  std::uint64_t s = 0;
  for (std::size_t p = 0; p < class_count_; ++p) s += at(gold, p);
  return s;
}

std::uint64_t ConfusionMatrix::col_sum(std::size_t predicted) const {
  std::uint64_t s = 0;
  for (std::size_t g = 0; g < class_count_; ++g) s += at(g, predicted);
  return s;
}

json ConfusionMatrix::to_json() const {
  json rows = json::array();
  for (std::size_t g = 0; g < class_count_; ++g) {
    json row = json::array();
    for (std::size_t p = 0; p < class_count_; ++p) row.push_back(at(g, p));
    rows.push_back(std::move(row));
  }
  return rows;
}

ConfusionMatrix confusion(std::span<const int> predictions,
                          std::span<const int> golds, std::size_t class_count) {
  if (predictions.size() != golds.size()) {
    throw InvalidArgument("predictions and golds differ in length");
  }
  if (predictions.empty()) throw InvalidArgument("confusion of empty input");
  ConfusionMatrix m(class_count);
  for (std::size_t i = 0; i < golds.size(); ++i) {
    if (golds[i] < 0 || predictions[i] < 0) {
      throw InvalidArgument("negative label at position " + std::to_string(i));
    }
    m.add(static_cast<std::size_t>(golds[i]),
          static_cast<std::size_t>(predictions[i]));
  }
  return m;
}

namespace {

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

ClassMetrics from_counts(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn) {
  ClassMetrics m;
  m.precision = ratio(tp, tp + fp);
  m.recall = ratio(tp, tp + fn);
  m.f1 = ratio(2 * tp, 2 * tp + fp + fn);
  return m;
}

}  // namespace

Metrics metrics(const ConfusionMatrix& matrix) {
  const auto total = matrix.total();
  if (total == 0) throw InvalidArgument("metrics of an empty confusion matrix");
  Metrics out;
  out.accuracy = ratio(matrix.trace(), total);
  for (std::size_t c = 0; c < matrix.class_count(); ++c) {
    const auto tp = matrix.at(c, c);
    out.per_class.push_back(
        from_counts(tp, matrix.col_sum(c) - tp, matrix.row_sum(c) - tp));
  }
  return out;
}

ClassMetrics micro_average(const ConfusionMatrix& matrix,
                           std::span<const std::size_t> classes) {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  for (auto c : classes) {
    const auto diag = matrix.at(c, c);
    tp += diag;
    fp += matrix.col_sum(c) - diag;
    fn += matrix.row_sum(c) - diag;
  }
  return from_counts(tp, fp, fn);
}

ClassMetrics macro_average(const ConfusionMatrix& matrix,
                           std::span<const std::size_t> classes) {
  ClassMetrics out;
  if (classes.empty()) return out;
  for (auto c : classes) {
    const auto diag = matrix.at(c, c);
    const auto m = from_counts(diag, matrix.col_sum(c) - diag,
                               matrix.row_sum(c) - diag);
    out.precision += m.precision;
    out.recall += m.recall;
    out.f1 += m.f1;
  }
  const double n = static_cast<double>(classes.size());
  out.precision /= n;
  out.recall /= n;
  out.f1 /= n;
  return out;
}

MeanStd mean_std(std::span<const double> values) {
  MeanStd out;
  if (values.empty()) return out;
  const double n = static_cast<double>(values.size());
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() < 2) return out;
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.std = std::sqrt(ss / (n - 1.0));
  return out;
}

json to_json(const ClassMetrics& m) {
  return json{{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}};
}

json to_json(const MeanStd& m) { return json{{"mean", m.mean}, {"std", m.std}}; }

EvalReport make_report(const ConfusionMatrix& matrix) {
  EvalReport r;
  r.confusion = matrix;
  r.metrics = metrics(matrix);
  return r;
}

json EvalReport::to_json() const {
  json per_class = json::array();
  for (const auto& m : metrics.per_class) per_class.push_back(eval::to_json(m));
  json agg = json::object();
  for (const auto& [name, ms] : mean_std) agg[name] = eval::to_json(ms);
  return json{{"accuracy", metrics.accuracy},
              {"per_class", std::move(per_class)},
              {"confusion", confusion.to_json()},
              {"runs", runs},
              {"mean_std", std::move(agg)}};
}

}  // namespace picoir::eval
