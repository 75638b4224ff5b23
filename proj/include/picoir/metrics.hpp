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

// Confusion matrices, per-class metrics and multi-run aggregation.

#ifndef PICOIR_METRICS_HPP_
#define PICOIR_METRICS_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace picoir::eval {

// Rows are true classes, columns predicted classes.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::size_t class_count);

  std::size_t class_count() const { return class_count_; }
  void add(std::size_t gold, std::size_t predicted, std::uint64_t count = 1);
  std::uint64_t at(std::size_t gold, std::size_t predicted) const {
    return counts_[gold * class_count_ + predicted];
  }
  std::uint64_t total() const;
  std::uint64_t trace() const;
  std::uint64_t row_sum(std::size_t gold) const;
  std::uint64_t col_sum(std::size_t predicted) const;

  nlohmann::json to_json() const;  // nested rows

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

 private:
  std::size_t class_count_;
  std::vector<std::uint64_t> counts_;
};

// Throws InvalidArgument on length mismatch, empty input, or a label
// outside [0, class_count).
ConfusionMatrix confusion(std::span<const int> predictions,
                          std::span<const int> golds, std::size_t class_count);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct Metrics {
  double accuracy = 0.0;
  std::vector<ClassMetrics> per_class;
};

// Ratios with a zero denominator are 0. Throws InvalidArgument when the
// matrix is empty.
Metrics metrics(const ConfusionMatrix& matrix);

// Micro-averaged precision/recall/F1 over the listed classes.
ClassMetrics micro_average(const ConfusionMatrix& matrix,
                           std::span<const std::size_t> classes);
// Unweighted mean of per-class F1 over the listed classes.
ClassMetrics macro_average(const ConfusionMatrix& matrix,
                           std::span<const std::size_t> classes);

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // sample (n - 1); 0 for a single value
};

MeanStd mean_std(std::span<const double> values);

nlohmann::json to_json(const ClassMetrics& m);
nlohmann::json to_json(const MeanStd& m);

// Single-run evaluation summary plus optional multi-run aggregates.
struct EvalReport {
  ConfusionMatrix confusion{2};
  Metrics metrics;
  std::size_t runs = 1;
  std::map<std::string, MeanStd> mean_std;

  nlohmann::json to_json() const;
};

EvalReport make_report(const ConfusionMatrix& matrix);

}  // namespace picoir::eval

#endif  // PICOIR_METRICS_HPP_
