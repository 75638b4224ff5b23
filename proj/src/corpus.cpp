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

#include "picoir/corpus.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <system_error>
#include <unordered_set>

#include "picoir/errors.hpp"
#include "picoir/text.hpp"

namespace picoir::corpus {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<Token> segment(std::string_view text) {
  std::vector<Token> tokens;
  for (const auto& r : text::word_and_punct_ranges(text)) {
    tokens.push_back(
        {std::string(text.substr(r.start, r.end - r.start)), r.start, r.end});
  }
  return tokens;
}

std::vector<std::string> validate(const AnnotatedDocument& doc) {
  std::vector<std::string> out;
  if (doc.id.empty()) out.push_back("id: empty document id");
  if (doc.labels.size() != doc.tokens.size()) {
    out.push_back("labels: length " + std::to_string(doc.labels.size()) +
                  " differs from tokens length " +
                  std::to_string(doc.tokens.size()));
  }
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    const Token& t = doc.tokens[i];
    const std::string at = "token " + std::to_string(i);
    if (t.start >= t.end) {
      out.push_back(at + ": empty or inverted range [" +
                    std::to_string(t.start) + ", " + std::to_string(t.end) +
                    ")");
    } else if (t.end > doc.abstract.size()) {
      out.push_back(at + ": range end " + std::to_string(t.end) +
                    " exceeds abstract length " +
                    std::to_string(doc.abstract.size()));
    } else if (doc.abstract.compare(t.start, t.end - t.start, t.surface) !=
               0) {
      out.push_back(at + ": surface does not match abstract slice");
    }
    if (i > 0 && t.start < doc.tokens[i - 1].end) {
      out.push_back("tokens " + std::to_string(i - 1) + " and " +
                    std::to_string(i) + ": overlapping or out of order");
    }
  }
  for (std::size_t i = 0; i < doc.labels.size(); ++i) {
    if (static_cast<std::size_t>(doc.labels[i]) >= kPicoClassCount) {
      out.push_back("label " + std::to_string(i) + ": out of range");
    }
  }
  return out;
}

std::vector<std::string> validate_corpus(const Corpus& corpus) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& doc : corpus) {
    for (auto& v : validate(doc)) out.push_back(doc.id + ": " + v);
    if (!seen.insert(doc.id).second) {
      out.push_back(doc.id + ": id: duplicate document id");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// EBM-NLP import

namespace {

// Element directories in the order used to resolve tokens carrying more
// than one annotation: the first element wins.
constexpr std::array<std::pair<std::string_view, PicoLabel>, 3> kElements = {{
    {"participants", PicoLabel::kPopulation},
    {"interventions", PicoLabel::kInterventionComparator},
    {"outcomes", PicoLabel::kOutcome},
}};

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Annotation files hold one integer per token, separated by commas or
// whitespace. Any nonzero value (including a fine-grained hierarchical
// sub-label) marks the token as belonging to the element.
std::optional<std::vector<int>> parse_ann(const std::string& content) {
  std::vector<int> values;
  std::size_t i = 0;
  while (i < content.size()) {
    const char c = content[i];
    if (c == ',' || c == ' ' || c == '\n' || c == '\r' || c == '\t') {
      ++i;
      continue;
    }
    int v = 0;
    const auto* first = content.data() + i;
    const auto* last = content.data() + content.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr == first || v < 0) return std::nullopt;
    values.push_back(v);
    i = static_cast<std::size_t>(ptr - content.data());
  }
  return values;
}

// Indexed annotation file for doc id.
std::optional<fs::path> find_ann(const std::string& id,
                                 const std::map<std::string, fs::path>& index) {
  auto it = index.find(id);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

// Maps doc id to its annotation file, matching "<id>.ann" or
// "<id>.<anything>.ann" (the release names them <id>.AGGREGATED.ann).
std::map<std::string, fs::path> index_ann_dir(const fs::path& dir) {
  std::map<std::string, fs::path> index;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return index;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name.size() < 4 || name.compare(name.size() - 4, 4, ".ann") != 0) {
      continue;
    }
    const std::string id = name.substr(0, name.find('.'));
    auto [it, inserted] = index.emplace(id, entry.path());
    if (!inserted && entry.path() < it->second) it->second = entry.path();
  }
  return index;
}

struct ElementDirs {
  std::map<std::string, fs::path> train;
  std::map<std::string, fs::path> gold;
  std::map<std::string, fs::path> crowd;
};

std::string make_title(const std::string& text) {
  const auto nl = text.find('\n');
  std::string title;
  if (nl != std::string::npos) {
    title = text.substr(0, nl);
  } else {
    const auto stop = text.find(". ");
    title = text.substr(0, stop == std::string::npos ? text.size() : stop + 1);
  }
  while (!title.empty() && (title.back() == '\r' || title.back() == ' ')) {
    title.pop_back();
  }
  return title;
}

// Aligns source tokens to the text left to right.
std::optional<std::vector<Token>> align_tokens(
    const std::string& text, const std::vector<std::string>& surfaces,
    std::string& problem) {
  std::vector<Token> tokens;
  tokens.reserve(surfaces.size());
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < surfaces.size(); ++i) {
    const auto pos = text.find(surfaces[i], cursor);
    if (pos == std::string::npos) {
      problem = "token " + std::to_string(i) + " '" + surfaces[i] +
                "' not found in text";
      return std::nullopt;
    }
    tokens.push_back({surfaces[i], pos, pos + surfaces[i].size()});
    cursor = pos + surfaces[i].size();
  }
  return tokens;
}

std::vector<std::string> read_token_lines(const std::string& content) {
  std::vector<std::string> out;
  std::istringstream in(content);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    // Tokens never contain whitespace; trim stray spaces.
    const auto b = line.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t");
    out.push_back(line.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

ImportResult import_ebm_nlp(const fs::path& root, const ImportOptions& options) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw DataError("not a readable directory: " + root.string());
  }
  ImportResult result;
  const fs::path docs_dir = root / "documents";
  if (!fs::is_directory(docs_dir, ec)) {
    // An empty directory is a valid, empty release.
    if (fs::is_empty(root, ec)) return result;
    throw DataError("missing documents/ directory under " + root.string());
  }

  std::vector<std::string> ids;
  for (const auto& entry : fs::directory_iterator(docs_dir, ec)) {
    if (!entry.is_regular_file()) continue;
    if (entry.path().extension() == ".text" ||
        entry.path().extension() == ".txt") {
      ids.push_back(entry.path().stem().string());
    }
  }
  if (ec) throw DataError("cannot list " + docs_dir.string());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  const fs::path ann_root =
      root / "annotations" / "aggregated" /
      (options.layout == AnnotationLayout::kStartingSpans
           ? "starting_spans"
           : "hierarchical_labels");
  std::array<ElementDirs, 3> dirs;
  for (std::size_t e = 0; e < kElements.size(); ++e) {
    const fs::path base = ann_root / std::string(kElements[e].first);
    dirs[e].train = index_ann_dir(base / "train");
    dirs[e].gold = index_ann_dir(base / "test" / "gold");
    dirs[e].crowd = index_ann_dir(base / "test" / "crowd");
  }

  for (const auto& id : ids) {
    auto text = read_file(docs_dir / (id + ".text"));
    if (!text) text = read_file(docs_dir / (id + ".txt"));
    if (!text) {
      result.report.add(id, "unreadable text file");
      continue;
    }
    const auto token_content = read_file(docs_dir / (id + ".tokens"));
    if (!token_content) {
      result.report.add(id, "missing tokens file");
      continue;
    }
    std::string problem;
    auto tokens = align_tokens(*text, read_token_lines(*token_content), problem);
    if (!tokens) {
      result.report.add(id, problem);
      continue;
    }

    AnnotatedDocument doc;
    doc.id = id;
    doc.title = make_title(*text);
    doc.abstract = std::move(*text);
    doc.tokens = std::move(*tokens);
    doc.labels.assign(doc.tokens.size(), PicoLabel::kNone);

    bool malformed = false;
    bool has_gold = false;
    for (std::size_t e = 0; e < kElements.size() && !malformed; ++e) {
      using Index = const std::map<std::string, fs::path>*;
      const std::array<Index, 3> order =
          options.tier == SourceTier::kExpert
              ? std::array<Index, 3>{&dirs[e].gold, &dirs[e].train, &dirs[e].crowd}
              : std::array<Index, 3>{&dirs[e].train, &dirs[e].crowd, &dirs[e].gold};
      std::optional<fs::path> path;
      for (const auto* index : order) {
        path = find_ann(id, *index);
        if (path) break;
      }
      if (dirs[e].gold.count(id) > 0) has_gold = true;
      const std::string element(kElements[e].first);
      if (!path) {
        result.report.add(id, "missing " + element + " annotation file");
        continue;
      }
      const auto content = read_file(*path);
      const auto values = content ? parse_ann(*content) : std::nullopt;
      if (!values) {
        result.report.add(id, "malformed " + element + " annotation file");
        malformed = true;
      } else if (values->size() != doc.tokens.size()) {
        result.report.add(id, element + " annotation has " +
                                  std::to_string(values->size()) +
                                  " labels for " +
                                  std::to_string(doc.tokens.size()) + " tokens");
        malformed = true;
      } else {
        for (std::size_t i = 0; i < values->size(); ++i) {
          if ((*values)[i] != 0 && doc.labels[i] == PicoLabel::kNone) {
            doc.labels[i] = kElements[e].second;
          }
        }
      }
    }
    if (malformed) continue;
    if (has_gold) result.withheld_ids.push_back(id);
    result.documents.push_back(std::move(doc));
  }
  return result;
}

// ---------------------------------------------------------------------------
// JSONL

json to_json(const AnnotatedDocument& doc) {
  json tokens = json::array();
  for (const auto& t : doc.tokens) tokens.push_back({{"s", t.start}, {"e", t.end}});
  json labels = json::array();
  for (auto l : doc.labels) labels.push_back(label_index(l));
  return json{{"id", doc.id},
              {"title", doc.title},
              {"abstract", doc.abstract},
              {"tokens", std::move(tokens)},
              {"labels", std::move(labels)},
              {"domain_tag", std::string(domain_name(doc.domain_tag))}};
}

namespace {

const json& require(const json& j, const char* field, std::size_t line) {
  auto it = j.find(field);
  if (it == j.end()) throw SchemaError(line, field, "missing");
  return *it;
}

std::string require_string(const json& j, const char* field, std::size_t line) {
  const json& v = require(j, field, line);
  if (!v.is_string()) throw SchemaError(line, field, "expected a string");
  return v.get<std::string>();
}

std::size_t require_offset(const json& j, const char* field, std::size_t line,
                           const std::string& ctx) {
  auto it = j.find(field);
  if (it == j.end() || !it->is_number_unsigned()) {
    throw SchemaError(line, ctx, "expected a non-negative integer '" +
                                     std::string(field) + "'");
  }
  return it->get<std::size_t>();
}

}  // namespace

AnnotatedDocument document_from_json(const json& j, std::size_t line) {
  if (!j.is_object()) throw SchemaError(line, "<root>", "expected an object");
  AnnotatedDocument doc;
  doc.id = require_string(j, "id", line);
  doc.title = require_string(j, "title", line);
  doc.abstract = require_string(j, "abstract", line);

  const json& tokens = require(j, "tokens", line);
  if (!tokens.is_array()) throw SchemaError(line, "tokens", "expected an array");
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string ctx = "tokens[" + std::to_string(i) + "]";
    if (!tokens[i].is_object()) throw SchemaError(line, ctx, "expected an object");
    const auto s = require_offset(tokens[i], "s", line, ctx);
    const auto e = require_offset(tokens[i], "e", line, ctx);
    if (s >= e || e > doc.abstract.size()) {
      throw SchemaError(line, ctx, "offsets out of range for abstract");
    }
    doc.tokens.push_back({doc.abstract.substr(s, e - s), s, e});
  }

  const json& labels = require(j, "labels", line);
  if (!labels.is_array()) throw SchemaError(line, "labels", "expected an array");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto label =
        labels[i].is_number_integer() ? label_from_index(labels[i].get<int>())
                                      : std::nullopt;
    if (!label) {
      throw SchemaError(line, "labels[" + std::to_string(i) + "]",
                        "expected an integer in 0..3");
    }
    doc.labels.push_back(*label);
  }
  if (doc.labels.size() != doc.tokens.size()) {
    throw SchemaError(line, "labels",
                      "length " + std::to_string(doc.labels.size()) +
                          " differs from tokens length " +
                          std::to_string(doc.tokens.size()));
  }

  const auto domain = domain_from_name(require_string(j, "domain_tag", line));
  if (!domain) throw SchemaError(line, "domain_tag", "unknown domain");
  doc.domain_tag = *domain;

  for (std::size_t i = 1; i < doc.tokens.size(); ++i) {
    if (doc.tokens[i].start < doc.tokens[i - 1].end) {
      throw SchemaError(line, "tokens[" + std::to_string(i) + "]",
                        "overlaps token " + std::to_string(i - 1));
    }
  }
  return doc;
}

Corpus read_jsonl(std::istream& in) {
  Corpus corpus;
  std::unordered_set<std::string> ids;
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
    auto doc = document_from_json(j, line);
    if (!ids.insert(doc.id).second) {
      throw SchemaError(line, "id", "duplicate document id '" + doc.id + "'");
    }
    corpus.push_back(std::move(doc));
  }
  return corpus;
}

Corpus read_jsonl(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return read_jsonl(in);
}

void write_jsonl(std::ostream& out, const Corpus& corpus) {
  for (const auto& doc : corpus) out << to_json(doc).dump() << '\n';
}

void write_jsonl(const fs::path& path, const Corpus& corpus) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  write_jsonl(out, corpus);
}

void write_report(const fs::path& path, const LoadReport& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  for (const auto& issue : report.issues) {
    out << json{{"doc_id", issue.doc_id}, {"issue", issue.issue}}.dump() << '\n';
  }
}

}  // namespace picoir::corpus
