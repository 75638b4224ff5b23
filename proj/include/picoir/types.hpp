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

#ifndef PICOIR_TYPES_HPP_
#define PICOIR_TYPES_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace picoir {

// Token-level evidence class. Intervention and comparator share one class.
enum class PicoLabel : std::uint8_t {
  kNone = 0,
  kPopulation = 1,
  kInterventionComparator = 2,
  kOutcome = 3,
};

inline constexpr std::size_t kPicoClassCount = 4;

inline constexpr std::array<PicoLabel, 3> kEvidenceLabels = {
    PicoLabel::kPopulation, PicoLabel::kInterventionComparator,
    PicoLabel::kOutcome};

std::string_view label_name(PicoLabel label);
std::optional<PicoLabel> label_from_index(int index);
inline int label_index(PicoLabel label) { return static_cast<int>(label); }

enum class DomainTag : std::uint8_t { kUnknown, kCardiovascular, kAutism, kCancer };

std::string_view domain_name(DomainTag tag);
std::optional<DomainTag> domain_from_name(std::string_view name);

// A token is a half-open character range [start, end) into the abstract.
struct Token {
  std::string surface;
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

struct AnnotatedDocument {
  std::string id;
  std::string title;
  std::string abstract;
  std::vector<Token> tokens;
  std::vector<PicoLabel> labels;
  DomainTag domain_tag = DomainTag::kUnknown;

  friend bool operator==(const AnnotatedDocument&,
                         const AnnotatedDocument&) = default;
};

using Corpus = std::vector<AnnotatedDocument>;

struct PicoSpan {
  PicoLabel label = PicoLabel::kNone;
  std::size_t token_start = 0;
  std::size_t token_end = 0;  // exclusive
  std::string text;

  friend bool operator==(const PicoSpan&, const PicoSpan&) = default;
};

}  // namespace picoir

#endif  // PICOIR_TYPES_HPP_
