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

#include <array>
#include <random>

#include "picoir/errors.hpp"
#include "picoir/metrics.hpp"

using namespace picoir;
using namespace picoir::eval;

static ConfusionMatrix two_class(std::uint64_t tn, std::uint64_t fp, std::uint64_t fn,
                                 std::uint64_t tp) {
  ConfusionMatrix m(2);
  m.add(0, 0, tn);
  m.add(0, 1, fp);
  m.add(1, 0, fn);
  m.add(1, 1, tp);
  return m;
}

TEST_CASE("retrieval result matrix reproduces hand-derived metrics") {
  const auto met = metrics(two_class(3940, 24, 21, 3943));
  CHECK(std::abs(met.accuracy - 7883.0 / 7928.0) < 1e-9);
  CHECK(std::abs(met.per_class[1].precision - 3943.0 / 3967.0) < 1e-9);
  CHECK(std::abs(met.per_class[1].recall - 3943.0 / 3964.0) < 1e-9);
  CHECK(std::abs(met.per_class[1].f1 - 7886.0 / 7931.0) < 1e-9);
  CHECK(std::abs(met.per_class[0].f1 - 7880.0 / 7925.0) < 1e-9);
}

TEST_CASE("micro f1 equals accuracy on random two-class matrices") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> cell(0, 500);
  const std::array<std::size_t, 2> both{0, 1};
  for (int trial = 0; trial < 1000; ++trial) {
    auto m = two_class(cell(rng), cell(rng), cell(rng), cell(rng));
    if (m.total() == 0) m.add(0, 0, 1);
    const auto micro = micro_average(m, both);
    CHECK(std::abs(micro.f1 - metrics(m).accuracy) < 1e-12);
  }
}

TEST_CASE("confusion from predictions") {
  const std::vector<int> pred{0, 1, 1, 2, 0};
  const std::vector<int> gold{0, 1, 0, 2, 2};
  const auto m = confusion(pred, gold, 3);
  CHECK(m.at(0, 0) == 1);
  CHECK(m.at(0, 1) == 1);
  CHECK(m.at(2, 0) == 1);
  CHECK(m.row_sum(2) == 2);
  CHECK(m.col_sum(1) == 2);
  CHECK_THROWS_AS(confusion(std::vector<int>{0}, gold, 3), InvalidArgument);
  CHECK_THROWS_AS(confusion(std::vector<int>{3}, std::vector<int>{0}, 3), InvalidArgument);
}

TEST_CASE("empty denominators give zero") {
  const auto met = metrics(two_class(5, 0, 0, 0));
  CHECK(met.per_class[1].precision == 0.0);
  CHECK(met.per_class[1].recall == 0.0);
  CHECK(met.per_class[1].f1 == 0.0);
  CHECK(met.accuracy == 1.0);
}

TEST_CASE("micro and macro over a subset of classes") {
  ConfusionMatrix m(3);
  m.add(0, 0, 10);
  m.add(1, 1, 3);
  m.add(1, 2, 1);
  m.add(2, 2, 4);
  m.add(2, 0, 2);
  const std::array<std::size_t, 2> ev{1, 2};
  const auto micro = micro_average(m, ev);
  // tp 7, fp 1, fn 3 over classes 1 and 2.
  CHECK(micro.precision == doctest::Approx(7.0 / 8.0));
  CHECK(micro.recall == doctest::Approx(7.0 / 10.0));
  const auto macro = macro_average(m, ev);
  const double f1_1 = 2.0 * 1.0 * 0.75 / 1.75;
  const double f1_2 = 2.0 * 0.8 * (4.0 / 6.0) / (0.8 + 4.0 / 6.0);
  CHECK(macro.f1 == doctest::Approx((f1_1 + f1_2) / 2.0));
}

TEST_CASE("mean and sample standard deviation") {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  const auto ms = mean_std(v);
  CHECK(ms.mean == doctest::Approx(2.5));
  CHECK(ms.std == doctest::Approx(1.2909944487358056));
  CHECK(mean_std(std::vector<double>{5.0}).std == 0.0);
}
