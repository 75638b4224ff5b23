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

#include "picoir/text.hpp"

namespace picoir::text {

namespace {

void append_utf8(std::string& out, char32_t c) {
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
}

bool is_ascii_alnum(char32_t c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z');
}

}  // namespace

std::vector<Codepoint> decode_utf8(std::string_view text) {
  std::vector<Codepoint> out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto b0 = static_cast<unsigned char>(text[i]);
    std::size_t len = 0;
    char32_t cp = 0;
    if (b0 < 0x80) {
      len = 1;
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    }
    bool ok = len > 0 && i + len <= text.size();
    for (std::size_t k = 1; ok && k < len; ++k) {
      const auto b = static_cast<unsigned char>(text[i + k]);
      if ((b & 0xC0) != 0x80) {
        ok = false;
      } else {
        cp = (cp << 6) | (b & 0x3F);
      }
    }
    if (!ok) {
      out.push_back({0xFFFD, i, i + 1});
      ++i;
      continue;
    }
    out.push_back({cp, i, i + len});
    i += len;
  }
  return out;
}

bool is_space(char32_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v' || c == 0x00A0 || c == 0x1680 ||
         (c >= 0x2000 && c <= 0x200A) || c == 0x2028 || c == 0x2029 ||
         c == 0x202F || c == 0x205F || c == 0x3000 || c == 0xFEFF;
}

bool is_word_char(char32_t c) {
  if (c < 0x80) return is_ascii_alnum(c);
  if (c == 0xFFFD) return false;
  if (c >= 0x0080 && c <= 0x00BF) {
    // Latin-1 punctuation and symbols, except letter-like ones.
    return c == 0x00AA || c == 0x00B2 || c == 0x00B3 || c == 0x00B5 ||
           c == 0x00B9 || c == 0x00BA;
  }
  if (c == 0x00D7 || c == 0x00F7) return false;
  if (is_space(c)) return false;
  if (c >= 0x2000 && c <= 0x206F) return false;  // general punctuation
  if (c >= 0x2190 && c <= 0x23FF) return false;  // arrows, math operators
  if (c >= 0x2500 && c <= 0x27BF) return false;  // box drawing, dingbats
  if (c >= 0x3000 && c <= 0x303F) return false;  // CJK punctuation
  if (c >= 0xFE30 && c <= 0xFE4F) return false;
  if (c >= 0xFF00 && c <= 0xFF0F) return false;
  if (c >= 0xFF1A && c <= 0xFF20) return false;
  return true;
}

char32_t to_lower(char32_t c) {
  if (c >= 'A' && c <= 'Z') return c + 32;
  if (c < 0x80) return c;
  if ((c >= 0x00C0 && c <= 0x00DE) && c != 0x00D7) return c + 32;
  if (c >= 0x0100 && c <= 0x017F) {
    // Latin Extended-A alternates upper/lower, with a shifted run in the
    // middle (U+0139..U+0148) and U+0178..U+017E.
    if (c == 0x0130) return 'i';
    if (c == 0x0178) return 0x00FF;
    if ((c >= 0x0139 && c <= 0x0148) || (c >= 0x0179 && c <= 0x017E)) {
      return (c % 2 == 1) ? c + 1 : c;
    }
    if (c == 0x0131 || c == 0x0138 || c == 0x0149 || c == 0x017F) return c;
    return (c % 2 == 0) ? c + 1 : c;
  }
  if (c >= 0x0391 && c <= 0x03AB && c != 0x03A2) return c + 32;
  if (c >= 0x0410 && c <= 0x042F) return c + 32;
  if (c >= 0x0400 && c <= 0x040F) return c + 80;
  return c;
}

std::string casefold(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (const auto& cp : decode_utf8(s)) {
    if (cp.value == 0xFFFD && cp.end - cp.start == 1 &&
        static_cast<unsigned char>(s[cp.start]) >= 0x80) {
      out.push_back(s[cp.start]);  // keep invalid bytes untouched
    } else {
      append_utf8(out, to_lower(cp.value));
    }
  }
  return out;
}

namespace {

template <bool kKeepPunct>
std::vector<Range> scan(std::string_view s) {
  const auto cps = decode_utf8(s);
  std::vector<Range> out;
  std::size_t i = 0;
  while (i < cps.size()) {
    const char32_t c = cps[i].value;
    if (is_word_char(c)) {
      std::size_t j = i + 1;
      while (j < cps.size()) {
        if (is_word_char(cps[j].value)) {
          ++j;
        } else if (cps[j].value == '-' && j + 1 < cps.size() &&
                   is_word_char(cps[j + 1].value)) {
          j += 2;
        } else {
          break;
        }
      }
      out.push_back({cps[i].start, cps[j - 1].end});
      i = j;
    } else {
      if (kKeepPunct && !is_space(c)) out.push_back({cps[i].start, cps[i].end});
      ++i;
    }
  }
  return out;
}

}  // namespace

std::vector<Range> word_ranges(std::string_view s) { return scan<false>(s); }

std::vector<Range> word_and_punct_ranges(std::string_view s) {
  return scan<true>(s);
}

std::vector<std::string_view> split_whitespace(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' ||
                            s[i] == '\r' || s[i] == '\f' || s[i] == '\v')) {
      ++i;
    }
    std::size_t j = i;
    while (j < s.size() && !(s[j] == ' ' || s[j] == '\t' || s[j] == '\n' ||
                             s[j] == '\r' || s[j] == '\f' || s[j] == '\v')) {
      ++j;
    }
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace picoir::text
