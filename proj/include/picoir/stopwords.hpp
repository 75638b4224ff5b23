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

#ifndef PICOIR_STOPWORDS_HPP_
#define PICOIR_STOPWORDS_HPP_

#include <span>
#include <string_view>

namespace picoir {

// Bump when the list changes; recorded in model and report metadata.
inline constexpr int kStopwordListVersion = 1;

// Case-folded English function words excluded from keyword matching.
std::span<const std::string_view> stopwords();
bool is_stopword(std::string_view casefolded_term);

}  // namespace picoir

#endif  // PICOIR_STOPWORDS_HPP_
