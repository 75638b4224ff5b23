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

// UTF-8 scanning and word segmentation shared by the corpus and encoder.

#ifndef PICOIR_TEXT_HPP_
#define PICOIR_TEXT_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace picoir::text {

struct Codepoint {
  char32_t value;
  std::size_t start;  // byte offset
  std::size_t end;
};

// Decodes UTF-8. Invalid sequences decode to U+FFFD covering one byte.
std::vector<Codepoint> decode_utf8(std::string_view text);

// Letters, digits and non-punctuation non-ASCII symbols.
bool is_word_char(char32_t c);
bool is_space(char32_t c);

// Simple lowercase mapping covering ASCII, Latin-1, Latin Extended-A, Greek
// and Cyrillic.
char32_t to_lower(char32_t c);
std::string casefold(std::string_view text);

// A word run: maximal sequence of word characters, where a single '-' joins
// two word characters.
struct Range {
  std::size_t start;
  std::size_t end;
};

// Word runs only; punctuation is skipped.
std::vector<Range> word_ranges(std::string_view text);

// Word runs plus one range per remaining non-space codepoint.
std::vector<Range> word_and_punct_ranges(std::string_view text);

// Whitespace-separated words.
std::vector<std::string_view> split_whitespace(std::string_view text);

}  // namespace picoir::text

#endif  // PICOIR_TEXT_HPP_
