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

#include "picoir/querygen.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include "picoir/errors.hpp"
#include "picoir/pico.hpp"
#include "picoir/random.hpp"
#include "picoir/text.hpp"

namespace picoir::querygen {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 3> kClauseLabels = {
    "population: ", "intervention: ", "outcome: "};

std::string truncate_words(const std::string& s, std::size_t max_words) {
  const auto words = text::split_whitespace(s);
  if (words.size() <= max_words) return s;
  std::string out;
  for (std::size_t i = 0; i < max_words; ++i) {
    if (i > 0) out.push_back(' ');
    out.append(words[i]);
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

}  // namespace

bool SubsetMask::includes(PicoLabel label) const {
  switch (label) {
    case PicoLabel::kPopulation:
      return population;
    case PicoLabel::kInterventionComparator:
      return intervention;
    case PicoLabel::kOutcome:
      return outcome;
    case PicoLabel::kNone:
      return false;
  }
  return false;
}

std::string SubsetMask::to_string() const {
  std::string s;
  if (population) s.push_back('P');
  if (intervention) s.push_back('I');
  if (outcome) s.push_back('O');
  return s;
}

std::optional<SubsetMask> SubsetMask::parse(std::string_view s) {
  SubsetMask m{false, false, false};
  for (char c : s) {
    bool* flag = c == 'P' ? &m.population
                 : c == 'I' ? &m.intervention
                 : c == 'O' ? &m.outcome
                            : nullptr;
    if (flag == nullptr || *flag) return std::nullopt;
    *flag = true;
  }
  if (!m.valid()) return std::nullopt;
  return m;
}

std::string render_query(const QueryClauses& clauses) {
  std::string out;
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    if (clauses[c].empty()) continue;
    if (!out.empty()) out.append("; ");
    out.append(kClauseLabels[c]);
    out.append(clauses[c]);
  }
  return truncate_words(out, kMaxQueryWords);
}

QueryClauses parse_query_clauses(std::string_view query) {
  QueryClauses clauses;
  auto label_at = [&](std::size_t pos) -> int {
    for (std::size_t c = 0; c < kClauseLabels.size(); ++c) {
      if (query.substr(pos, kClauseLabels[c].size()) == kClauseLabels[c]) {
        return static_cast<int>(c);
      }
    }
    return -1;
  };
  int current = label_at(0);
  if (current < 0) return clauses;
  std::size_t begin = kClauseLabels[current].size();
  std::size_t pos = begin;
  while (true) {
    const auto sep = query.find("; ", pos);
    const int next = sep == std::string_view::npos ? -1 : label_at(sep + 2);
    if (sep == std::string_view::npos || next >= 0) {
      const auto end = sep == std::string_view::npos ? query.size() : sep;
      auto& slot = clauses[current];
      if (!slot.empty()) slot.append(", ");
      slot.append(query.substr(begin, end - begin));
      if (sep == std::string_view::npos) break;
      current = next;
      begin = sep + 2 + kClauseLabels[current].size();
      pos = begin;
    } else {
      pos = sep + 2;  // "; " inside a phrase
    }
  }
  return clauses;
}

std::array<std::vector<std::string>, 3> gold_phrases(const AnnotatedDocument& doc) {
  const auto spans = pico::extract_spans(doc.tokens, doc.labels);
  std::array<std::vector<std::string>, 3> out;
  for (std::size_t c = 0; c < kEvidenceLabels.size(); ++c) {
    for (const auto& span : spans.of(kEvidenceLabels[c])) out[c].push_back(span.text);
  }
  return out;
}

std::string synthesize_query(const AnnotatedDocument& doc, const SubsetMask& mask) {
  if (!mask.valid()) throw InvalidArgument("subset mask enables no element");
  const auto phrases = gold_phrases(doc);
  QueryClauses clauses;
  for (std::size_t c = 0; c < kEvidenceLabels.size(); ++c) {
    if (!mask.includes(kEvidenceLabels[c])) continue;
    if (phrases[c].empty()) throw MissingElement(kEvidenceLabels[c]);
    clauses[c] = join(phrases[c], ", ");
  }
  return render_query(clauses);
}

bool is_eligible(const AnnotatedDocument& doc) {
  std::array<bool, kPicoClassCount> seen{};
  for (auto l : doc.labels) seen[static_cast<std::size_t>(l)] = true;
  return seen[1] && seen[2] && seen[3];
}

GenerationResult generate_instances(const Corpus& corpus, std::uint64_t seed) {
  GenerationResult result;
  std::vector<const AnnotatedDocument*> eligible;
  for (const auto& doc : corpus) {
    if (is_eligible(doc)) {
      eligible.push_back(&doc);
    } else {
      result.excluded_ids.push_back(doc.id);
    }
  }
  constexpr std::size_t kNegatives = kPositiveMasks.size();
  if (eligible.size() < kNegatives + 1) {
    throw InvalidArgument("need at least " + std::to_string(kNegatives + 1) +
                          " eligible documents for distinct negatives, have " +
                          std::to_string(eligible.size()));
  }

  result.instances.reserve(eligible.size() * kInstancesPerDocument);
  const std::uint64_t n = eligible.size();
  for (std::uint64_t i = 0; i < n; ++i) {
    const AnnotatedDocument& doc = *eligible[i];
    std::array<std::string, kPositiveMasks.size()> queries;
    for (std::size_t m = 0; m < kPositiveMasks.size(); ++m) {
      queries[m] = synthesize_query(doc, kPositiveMasks[m]);
      result.instances.push_back(
          {queries[m], doc.id, doc.id, Relevance::kPositive, kPositiveMasks[m]});
    }
    // Uniform sampling without replacement over the other documents.
    Rng rng(derive_seed(seed, doc.id));
    std::array<std::uint64_t, kNegatives> partners{};
    for (std::size_t m = 0; m < kNegatives; ++m) {
      std::uint64_t pick;
      do {
        pick = uniform_below(rng, n);
      } while (pick == i ||
               std::find(partners.begin(), partners.begin() + m, pick) !=
                   partners.begin() + m);
      partners[m] = pick;
      result.instances.push_back({queries[m], doc.id, eligible[pick]->id,
                                  Relevance::kNegative, kPositiveMasks[m]});
    }
  }
  return result;
}

Split split(const Corpus& corpus, std::size_t train_count, std::uint64_t seed) {
  if (train_count == 0 || train_count >= corpus.size()) {
    throw InvalidArgument("train_count must be in (0, " +
                          std::to_string(corpus.size()) + "), got " +
                          std::to_string(train_count));
  }
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(derive_seed(seed, "split"));
  shuffle(std::span<std::size_t>(order), rng);
  std::vector<bool> in_train(corpus.size(), false);
  for (std::size_t i = 0; i < train_count; ++i) in_train[order[i]] = true;
  Split out;
  out.train.reserve(train_count);
  out.test.reserve(corpus.size() - train_count);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    (in_train[i] ? out.train : out.test).push_back(corpus[i]);
  }
  return out;
}

json to_json(const QueryInstance& v) {
  return json{{"query_text", v.query_text},
              {"source_doc_id", v.source_doc_id},
              {"paired_doc_id", v.paired_doc_id},
              {"relevance", v.relevance == Relevance::kPositive ? "positive"
                                                                : "negative"},
              {"mask", v.mask.to_string()}};
}

QueryInstance instance_from_json(const json& j, std::size_t line) {
  auto str = [&](const char* field) {
    if (!j.is_object() || !j.contains(field) || !j[field].is_string()) {
      throw SchemaError(line, field, "expected a string");
    }
    return j[field].get<std::string>();
  };
  QueryInstance v;
  v.query_text = str("query_text");
  v.source_doc_id = str("source_doc_id");
  v.paired_doc_id = str("paired_doc_id");
  const auto rel = str("relevance");
  if (rel == "positive") {
    v.relevance = Relevance::kPositive;
  } else if (rel == "negative") {
    v.relevance = Relevance::kNegative;
  } else {
    throw SchemaError(line, "relevance", "expected 'positive' or 'negative'");
  }
  const auto mask = SubsetMask::parse(str("mask"));
  if (!mask) throw SchemaError(line, "mask", "expected a subset of 'PIO'");
  v.mask = *mask;
  if (v.query_text.empty()) throw SchemaError(line, "query_text", "empty");
  if ((v.relevance == Relevance::kPositive) !=
      (v.source_doc_id == v.paired_doc_id)) {
    throw SchemaError(line, "relevance",
                      "must be positive exactly when paired with the source");
  }
  return v;
}

void write_instances(std::ostream& out, const std::vector<QueryInstance>& v) {
  for (const auto& inst : v) out << to_json(inst).dump() << '\n';
}

void write_instances(const std::filesystem::path& path,
                     const std::vector<QueryInstance>& v) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  write_instances(out, v);
}

std::vector<QueryInstance> read_instances(std::istream& in) {
  std::vector<QueryInstance> out;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(raw);
    } catch (const json::parse_error& e) {
      throw SchemaError(line, "<root>", std::string("invalid JSON: ") + e.what());
    }
    out.push_back(instance_from_json(j, line));
  }
  return out;
}

std::vector<QueryInstance> read_instances(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return read_instances(in);
}

}  // namespace picoir::querygen
