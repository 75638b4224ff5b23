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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "picoir/errors.hpp"
#include "picoir/linear_model.hpp"

using namespace picoir;
using encoder::SparseVector;

namespace {

Dataset random_dataset(std::size_t n, std::size_t dim, std::size_t classes,
                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  Dataset d(dim, classes);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::pair<std::uint32_t, double>> e;
    for (std::uint32_t j = 0; j < dim; ++j) {
      if (rng() % 2 == 0) e.emplace_back(j, val(rng));
    }
    d.add(SparseVector(dim, e), static_cast<std::uint32_t>(i % classes));
  }
  return d;
}

LinearModel random_model(std::size_t classes, std::size_t dim, Objective obj,
                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 0.5);
  LinearModel m(classes, dim);
  m.objective = obj;
  const std::size_t k0 = obj == Objective::kLogistic ? 1 : 0;
  for (std::size_t k = k0; k < classes; ++k) {
    m.bias()[k] = g(rng);
    for (std::size_t j = 0; j < dim; ++j) m.weight(k, j) = g(rng);
  }
  return m;
}

double rel_error(double a, double b) {
  const double denom = std::max(1e-8, std::abs(a) + std::abs(b));
  return std::abs(a - b) / denom;
}

// Largest relative error between the analytic gradient and central
// differences over every trainable parameter.
double gradient_check(LinearModel m, const Dataset& d, double l2) {
  const auto g = objective_gradient(m, d, l2);
  const double h = 1e-6;
  const std::size_t k0 = m.objective == Objective::kLogistic ? 1 : 0;
  double worst = 0.0;
  for (std::size_t j = k0 * m.dimension(); j < m.weights().size(); ++j) {
    const double keep = m.weights()[j];
    m.weights()[j] = keep + h;
    const double up = objective_value(m, d, l2);
    m.weights()[j] = keep - h;
    const double down = objective_value(m, d, l2);
    m.weights()[j] = keep;
    worst = std::max(worst, rel_error(g.weights[j], (up - down) / (2 * h)));
  }
  for (std::size_t k = k0; k < m.class_count(); ++k) {
    const double keep = m.bias()[k];
    m.bias()[k] = keep + h;
    const double up = objective_value(m, d, l2);
    m.bias()[k] = keep - h;
    const double down = objective_value(m, d, l2);
    m.bias()[k] = keep;
    worst = std::max(worst, rel_error(g.bias[k], (up - down) / (2 * h)));
  }
  return worst;
}

}  // namespace

TEST_CASE("logistic gradient matches finite differences") {
  const auto d = random_dataset(40, 6, 2, 3);
  const auto m = random_model(2, 6, Objective::kLogistic, 4);
  CHECK(gradient_check(m, d, 0.0) < 1e-4);
  CHECK(gradient_check(m, d, 0.3) < 1e-4);
  const auto g = objective_gradient(m, d, 0.3);
  for (std::size_t j = 0; j < 6; ++j) CHECK(g.weights[j] == 0.0);
  CHECK(g.bias[0] == 0.0);
}

TEST_CASE("softmax gradient matches finite differences") {
  const auto d = random_dataset(50, 5, 4, 5);
  const auto m = random_model(4, 5, Objective::kSoftmax, 6);
  CHECK(gradient_check(m, d, 0.0) < 1e-4);
  CHECK(gradient_check(m, d, 0.1) < 1e-4);
}

TEST_CASE("softmax rows sum to one") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> z(-50.0, 50.0);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> logits(1 + t % 7);
    for (auto& v : logits) v = z(rng);
    const auto p = softmax(logits);
    CHECK(std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0) < 1e-9);
  }
  const auto big = softmax(std::vector<double>{1000.0, 1000.0});
  CHECK(big[0] == doctest::Approx(0.5));
  CHECK(sigmoid(0.0) == 0.5);
  CHECK(sigmoid(-800.0) >= 0.0);
}

TEST_CASE("full-batch loss is non-increasing at small learning rates") {
  for (auto obj : {Objective::kLogistic, Objective::kSoftmax}) {
    const std::size_t classes = obj == Objective::kLogistic ? 2 : 3;
    const auto d = random_dataset(60, 8, classes, 11);
    for (double lr : {1e-2, 1e-3}) {
      const TrainHyper h{50, lr, 1e-3, 1, d.size()};
      const auto r = train_sgd(d, obj, h);
      REQUIRE(r.loss_trace.size() == 50);
      for (std::size_t e = 1; e < r.loss_trace.size(); ++e) {
        CHECK(r.loss_trace[e] <= r.loss_trace[e - 1] + 1e-12);
      }
    }
  }
}

TEST_CASE("training is deterministic and independent of row order") {
  const auto d = random_dataset(80, 6, 3, 13);
  const TrainHyper h{5, 0.2, 1e-4, 42, 8};
  const auto a = train_sgd(d, Objective::kSoftmax, h);
  const auto b = train_sgd(d, Objective::kSoftmax, h);
  CHECK(a.model.to_json().dump() == b.model.to_json().dump());
  CHECK(a.loss_trace == b.loss_trace);

  std::vector<std::size_t> perm(d.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::mt19937_64 rng(1);
  std::shuffle(perm.begin(), perm.end(), rng);
  Dataset shuffled(d.dimension(), d.class_count());
  for (auto i : perm) shuffled.add(d.row(i), d.label(i));
  const auto c = train_sgd(shuffled, Objective::kSoftmax, h);
  CHECK(c.model.to_json().dump() == a.model.to_json().dump());

  auto other = h;
  other.seed = 43;
  CHECK(train_sgd(d, Objective::kSoftmax, other).model.to_json().dump() !=
        a.model.to_json().dump());
}

TEST_CASE("the frozen logistic row stays zero and models round trip") {
  const auto d = random_dataset(30, 4, 2, 17);
  const auto r = train_sgd(d, Objective::kLogistic, TrainHyper{4, 0.3, 1e-3, 1, 4});
  for (std::size_t j = 0; j < 4; ++j) CHECK(r.model.weight(0, j) == 0.0);
  CHECK(r.model.bias()[0] == 0.0);
  CHECK(LinearModel::from_json(r.model.to_json()) == r.model);
}

TEST_CASE("trainer argument validation") {
  const auto d = random_dataset(10, 3, 3, 1);
  CHECK_THROWS_AS(train_sgd(d, Objective::kLogistic, {}), InvalidArgument);
  CHECK_THROWS_AS(train_sgd(d, Objective::kSoftmax, TrainHyper{1, 0.1, 0, 1, 0}),
                  InvalidArgument);
  CHECK_THROWS_AS(train_sgd(d, Objective::kSoftmax, TrainHyper{1, -1.0, 0, 1, 4}),
                  InvalidArgument);
  CHECK_THROWS_AS(train_sgd(d, Objective::kSoftmax, TrainHyper{1, 1e3, 1e200, 1, 4}),
                  InvalidArgument);
}
