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

#include "picoir/stopwords.hpp"

#include <algorithm>
#include <array>

namespace picoir {

namespace {

// Sorted; checked by the unit tests.
constexpr std::array<std::string_view, 124> kStopwords = {
    "a",       "about",   "above",   "after",   "again",   "against",
    "all",     "also",    "am",      "an",      "and",     "any",
    "are",     "as",      "at",      "be",      "because", "been",
    "before",  "being",   "below",   "between", "both",    "but",
    "by",      "can",     "could",   "did",     "do",      "does",
    "doing",   "down",    "during",  "each",    "either",  "few",
    "for",     "from",    "further", "had",     "has",     "have",
    "having",  "he",      "her",     "here",    "hers",    "him",
    "his",     "how",     "however", "i",       "if",      "in",
    "into",    "is",      "it",      "its",     "itself",  "may",
    "me",      "might",   "more",    "most",    "must",    "my",
    "no",      "nor",     "not",     "of",      "off",     "on",
    "once",    "only",    "or",      "other",   "our",     "ours",
    "out",     "over",    "own",     "same",    "she",     "should",
    "so",      "some",    "such",    "than",    "that",    "the",
    "their",   "them",    "then",    "there",   "these",   "they",
    "this",    "those",   "through", "to",      "too",     "under",
    "until",   "up",      "us",      "very",    "was",     "we",
    "were",    "what",    "when",    "where",   "which",   "while",
    "who",     "whom",    "why",     "will",    "with",    "within",
    "without", "would",   "you",     "your",
};

}  // namespace

std::span<const std::string_view> stopwords() { return kStopwords; }

bool is_stopword(std::string_view term) {
  return std::binary_search(kStopwords.begin(), kStopwords.end(), term);
}

}  // namespace picoir
