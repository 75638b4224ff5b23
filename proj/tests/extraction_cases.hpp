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

#ifndef PICOIR_TESTS_EXTRACTION_CASES_HPP_
#define PICOIR_TESTS_EXTRACTION_CASES_HPP_

#include <sstream>
#include <string>
#include <vector>

#include "picoir/types.hpp"

// Hand-written extract_spans cases shared by the unit test and the
// acceptance run.
namespace picoir::testing {

struct Case {
  const char* words;   // space separated, "" for no tokens
  const char* labels;  // one of . P I O per token
  std::vector<std::string> p, i, o;
};

inline std::vector<Token> make_tokens(const std::string& words) {
  std::vector<Token> out;
  std::size_t pos = 0;
  std::istringstream in(words);
  std::string w;
  while (in >> w) {
    pos = words.find(w, pos);
    out.push_back({w, pos, pos + w.size()});
    pos += w.size();
  }
  return out;
}

inline std::vector<PicoLabel> make_labels(const std::string& s) {
  std::vector<PicoLabel> out;
  for (char c : s) {
    out.push_back(c == 'P'   ? PicoLabel::kPopulation
                  : c == 'I' ? PicoLabel::kInterventionComparator
                  : c == 'O' ? PicoLabel::kOutcome
                             : PicoLabel::kNone);
  }
  return out;
}

inline std::vector<std::string> texts(const std::vector<PicoSpan>& spans) {
  std::vector<std::string> out;
  for (const auto& s : spans) out.push_back(s.text);
  return out;
}

using V = std::vector<std::string>;

inline const std::vector<Case> kCases = {
    {"", "", {}, {}, {}},
    {"a", ".", {}, {}, {}},
    {"a", "P", {"a"}, {}, {}},
    {"a b", "PP", {"a b"}, {}, {}},
    {"a b", "PI", {"a"}, {"b"}, {}},
    {"a b c", "P.P", {"a", "c"}, {}, {}},
    {"a b a", "P.P", {"a"}, {}, {}},
    {"A b a", "P.P", {"A"}, {}, {}},
    {"a b c d", "OOOO", {}, {}, {"a b c d"}},
    {"a b c d", "IIOO", {}, {"a b"}, {"c d"}},
    {"x y x y", "PPPP", {"x y x y"}, {}, {}},
    {"x y z x y", "PP.PP", {"x y"}, {}, {}},
    {"x y z x y", "PP.P.", {"x y", "x"}, {}, {}},
    {"the drug the drug", ".I.I", {}, {"drug"}, {}},
    {"a b c", "POI", {"a"}, {"c"}, {"b"}},
    {"a b c d e", "P.I.O", {"a"}, {"c"}, {"e"}},
    {"a b c d e", ".....", {}, {}, {}},
    {"a b c d e", "PPPPP", {"a b c d e"}, {}, {}},
    {"a , b", "PPP", {"a , b"}, {}, {}},
    {"a , b", "P.P", {"a", "b"}, {}, {}},
    {"Pain pain PAIN", "O.O", {}, {}, {"Pain"}},
    {"pain Pain", "OO", {}, {}, {"pain Pain"}},
    {"pain x Pain", "O.O", {}, {}, {"pain"}},
    {"a b a b", "PIPI", {"a"}, {"b"}, {}},
    {"a b a b", "PIIP", {"a", "b"}, {"b a"}, {}},
    {"a b c a b c", "PPP.PP", {"a b c", "b c"}, {}, {}},
    {"m n m n", "II..", {}, {"m n"}, {}},
    {"m n m n", "..II", {}, {"m n"}, {}},
    {"m n m n", "IIII", {}, {"m n m n"}, {}},
    {"m n m n", "I.I.", {}, {"m"}, {}},
    {"m n m n", ".I.I", {}, {"n"}, {}},
    {"m n o", "I.O", {}, {"m"}, {"o"}},
    {"aspirin or placebo", "III", {}, {"aspirin or placebo"}, {}},
    {"aspirin or placebo", "I.I", {}, {"aspirin", "placebo"}, {}},
    {"adults with af", "PPP", {"adults with af"}, {}, {}},
    {"adults with af received aspirin", "PPP.I", {"adults with af"}, {"aspirin"}, {}},
    {"stroke rate fell", "OO.", {}, {}, {"stroke rate"}},
    {"OS and PFS", "O.O", {}, {}, {"OS", "PFS"}},
    {"OS and os", "O.O", {}, {}, {"OS"}},
    {"a a a a a", "P.P.P", {"a"}, {}, {}},
    {"a a a a a", "PP.PP", {"a a"}, {}, {}},
    {"a a a a a", "P.PPP", {"a", "a a a"}, {}, {}},
    {"a a a a a", "PIOPI", {"a"}, {"a"}, {"a"}},
    {"b c b c", "OOPP", {"b c"}, {}, {"b c"}},
    {"x", "I", {}, {"x"}, {}},
    {"x", "O", {}, {}, {"x"}},
    {"x y", ".O", {}, {}, {"y"}},
    {"x y", "O.", {}, {}, {"x"}},
    {"Trial x TRIAL", "P.P", {"Trial"}, {}, {}},
    {"a b c d e f", "PPIIOO", {"a b"}, {"c d"}, {"e f"}},
};

}  // namespace picoir::testing

#endif  // PICOIR_TESTS_EXTRACTION_CASES_HPP_
