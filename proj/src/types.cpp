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

#include "picoir/types.hpp"

namespace picoir {

std::string_view label_name(PicoLabel label) {
  switch (label) {
    case PicoLabel::kNone:
      return "none";
    case PicoLabel::kPopulation:
      return "population";
    case PicoLabel::kInterventionComparator:
      return "intervention_comparator";
    case PicoLabel::kOutcome:
      return "outcome";
  }
  return "none";
}

std::optional<PicoLabel> label_from_index(int index) {
  if (index < 0 || index >= static_cast<int>(kPicoClassCount)) {
    return std::nullopt;
  }
  return static_cast<PicoLabel>(index);
}

std::string_view domain_name(DomainTag tag) {
  switch (tag) {
    case DomainTag::kCardiovascular:
      return "cardiovascular";
    case DomainTag::kAutism:
      return "autism";
    case DomainTag::kCancer:
      return "cancer";
    case DomainTag::kUnknown:
      return "unknown";
  }
  return "unknown";
}

std::optional<DomainTag> domain_from_name(std::string_view name) {
  if (name == "cardiovascular") return DomainTag::kCardiovascular;
  if (name == "autism") return DomainTag::kAutism;
  if (name == "cancer") return DomainTag::kCancer;
  if (name == "unknown") return DomainTag::kUnknown;
  return std::nullopt;
}

}  // namespace picoir
