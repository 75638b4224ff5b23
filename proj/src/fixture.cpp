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

#include "picoir/fixture.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <span>

#include "picoir/corpus.hpp"
#include "picoir/errors.hpp"
#include "picoir/pico.hpp"
#include "picoir/random.hpp"

namespace picoir::fixture {

namespace fs = std::filesystem;

namespace {

using Pool = std::vector<std::string_view>;

struct Domain {
  DomainTag tag;
  double weight;
  Pool conditions;
  Pool subjects;
  Pool severities;
  Pool suffixes;
  Pool drugs;
  Pool procedures;  // non-drug interventions
  Pool outcomes;
};

const std::vector<Domain>& domains() {
  static const std::vector<Domain> kDomains = {
      {DomainTag::kCardiovascular,
       0.40,
       {"heart failure", "atrial fibrillation", "hypertension",
        "coronary artery disease", "acute myocardial infarction", "stable angina",
        "peripheral artery disease", "hypercholesterolemia", "ischemic stroke",
        "type 2 diabetes and hypertension", "aortic stenosis", "venous thromboembolism"},
       {"patients", "adults", "elderly patients", "men and women", "outpatients",
        "veterans", "postmenopausal women", "older adults"},
       {"", "chronic", "stable", "severe", "mild to moderate", "symptomatic",
        "newly diagnosed", "high-risk", "resistant"},
       {"", "", "aged 40 to 75 years", "after hospital discharge",
        "undergoing percutaneous coronary intervention", "in primary care",
        "with reduced ejection fraction", "aged 65 years or older"},
       {"atorvastatin", "rosuvastatin", "metoprolol", "carvedilol", "ramipril",
        "losartan", "valsartan", "amlodipine", "aspirin", "clopidogrel", "ticagrelor",
        "warfarin", "apixaban", "rivaroxaban", "spironolactone",
        "sacubitril-valsartan", "digoxin", "ivabradine", "colchicine", "ezetimibe",
        "dapagliflozin", "empagliflozin", "chlorthalidone", "nebivolol"},
       {"supervised exercise training", "cardiac rehabilitation",
        "dietary sodium restriction", "nurse-led telemonitoring",
        "remote ischemic conditioning"},
       {"all-cause mortality", "hospitalization for heart failure",
        "systolic blood pressure", "left ventricular ejection fraction",
        "major adverse cardiovascular events", "LDL cholesterol levels",
        "recurrent stroke", "six-minute walk distance", "health-related quality of life",
        "major bleeding", "peak oxygen uptake", "serum potassium",
        "cardiovascular death", "myocardial infarction", "diastolic blood pressure",
        "NT-proBNP concentrations"}},
      {DomainTag::kCancer,
       0.45,
       {"breast cancer", "non-small-cell lung cancer", "colorectal cancer",
        "prostate cancer", "pancreatic cancer", "ovarian cancer", "gastric cancer",
        "head and neck cancer", "hepatocellular carcinoma",
        "diffuse large B-cell lymphoma", "melanoma", "glioblastoma",
        "small-cell lung cancer", "bladder cancer"},
       {"patients", "women", "men", "adults", "elderly patients", "survivors",
        "chemotherapy-naive patients"},
       {"", "advanced", "early", "metastatic", "locally advanced", "recurrent",
        "resected", "stage III", "inoperable", "HER2-positive"},
       {"", "", "receiving first-line therapy", "after surgical resection",
        "with good performance status", "aged 70 years or older",
        "previously treated with platinum"},
       {"docetaxel", "paclitaxel", "cisplatin", "carboplatin", "gemcitabine",
        "oxaliplatin", "capecitabine", "tamoxifen", "letrozole", "trastuzumab",
        "bevacizumab", "cetuximab", "rituximab", "temozolomide", "erlotinib",
        "pembrolizumab", "nivolumab", "zoledronic acid", "irinotecan",
        "anastrozole", "sorafenib", "vinorelbine"},
       {"radiotherapy", "androgen-deprivation therapy", "adjuvant chemotherapy",
        "a supervised exercise program", "psychoeducational support",
        "hypofractionated radiotherapy", "laparoscopic resection"},
       {"overall survival", "progression-free survival", "disease-free survival",
        "objective response rate", "grade 3 or 4 neutropenia", "quality of life scores",
        "time to progression", "local recurrence", "treatment-related toxicity",
        "cancer-related fatigue", "nausea and vomiting", "pathologic complete response",
        "cancer-related pain", "distant metastasis", "febrile neutropenia"}},
      {DomainTag::kAutism,
       0.15,
       {"autism spectrum disorder", "autistic disorder", "pervasive developmental disorder",
        "Asperger syndrome", "autism and intellectual disability"},
       {"children", "preschool children", "adolescents", "young adults", "boys",
        "toddlers", "school-age children"},
       {"", "", "high-functioning", "severe", "newly diagnosed"},
       {"", "", "aged 3 to 7 years", "aged 6 to 17 years", "and their parents",
        "attending mainstream schools", "with irritability"},
       {"risperidone", "aripiprazole", "methylphenidate", "oxytocin nasal spray",
        "melatonin", "memantine", "bumetanide", "sertraline", "guanfacine",
        "N-acetylcysteine", "omega-3 supplementation"},
       {"parent-mediated intervention", "applied behavior analysis",
        "social skills training", "early intensive behavioral intervention",
        "music therapy", "cognitive behavioral therapy", "a gluten-free diet",
        "joint attention training", "a peer-mediated program"},
       {"irritability subscale scores", "social responsiveness scale scores",
        "repetitive behaviors", "sleep onset latency", "adaptive behavior",
        "expressive language", "hyperactivity", "anxiety symptoms", "weight gain",
        "clinical global impression improvement", "parenting stress",
        "eye contact frequency", "joint attention", "sleep duration"}},
  };
  return kDomains;
}

const Pool kDoses = {"", "", "low-dose", "high-dose", "5 mg", "10 mg", "20 mg",
                     "40 mg", "80 mg", "100 mg", "0.5 mg/kg"};
const Pool kSchedules = {"", "", "once daily", "twice daily", "weekly",
                         "every 3 weeks"};
const Pool kPlainComparators = {"placebo", "matching placebo", "usual care",
                                "standard care", "no intervention", "a waiting list"};
const Pool kDurations = {"12 weeks", "6 months", "12 months", "24 weeks", "2 years",
                         "8 weeks", "3 years"};
const Pool kFillers = {
    "Analysis was by intention to treat.",
    "Baseline characteristics were similar between groups.",
    "The trial was registered with an international trial registry.",
    "Adverse events were generally mild and transient.",
    "Adherence to the assigned regimen was high in both groups.",
    "Randomization was stratified by centre and baseline severity.",
    "Outcome assessors were blinded to treatment allocation.",
};

std::string_view pick(Rng& rng, const Pool& pool) {
  return pool[uniform_below(rng, pool.size())];
}

bool chance(Rng& rng, double p) { return uniform_unit(rng) < p; }

std::string num(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::to_string(lo + uniform_below(rng, hi - lo + 1));
}

std::string capitalize(std::string_view s) {
  std::string out(s);
  if (!out.empty() && out[0] >= 'a' && out[0] <= 'z') out[0] = static_cast<char>(out[0] - 'a' + 'A');
  return out;
}

std::string join_words(std::initializer_list<std::string_view> parts) {
  std::string out;
  for (auto p : parts) {
    if (p.empty()) continue;
    if (!out.empty()) out.push_back(' ');
    out.append(p);
  }
  return out;
}

// Accumulates text with labelled character ranges.
class Builder {
 public:
  void add(std::string_view s, PicoLabel label = PicoLabel::kNone) {
    if (s.empty()) return;
    if (!text_.empty() && text_.back() != '\n' && text_.back() != '(' &&
        std::string_view(",.;:)%").find(s[0]) == std::string_view::npos) {
      text_.push_back(' ');
    }
    const std::size_t start = text_.size();
    text_.append(s);
    if (label != PicoLabel::kNone) ranges_.push_back({start, text_.size(), label});
  }
  void line_break() { text_.push_back('\n'); }

  AnnotatedDocument finish(std::string id, DomainTag domain) const {
    AnnotatedDocument doc;
    doc.id = std::move(id);
    doc.abstract = text_;
    const auto nl = text_.find('\n');
    doc.title = text_.substr(0, nl);
    doc.tokens = corpus::segment(text_);
    doc.labels.assign(doc.tokens.size(), PicoLabel::kNone);
    std::size_t r = 0;
    for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
      const auto start = doc.tokens[i].start;
      while (r < ranges_.size() && ranges_[r].end <= start) ++r;
      if (r < ranges_.size() && ranges_[r].start <= start) doc.labels[i] = ranges_[r].label;
    }
    doc.domain_tag = domain;
    return doc;
  }

 private:
  struct Labelled {
    std::size_t start;
    std::size_t end;
    PicoLabel label;
  };
  std::string text_;
  std::vector<Labelled> ranges_;
};

constexpr PicoLabel P = PicoLabel::kPopulation;
constexpr PicoLabel I = PicoLabel::kInterventionComparator;
constexpr PicoLabel O = PicoLabel::kOutcome;

struct Trial {
  std::string population;
  std::string condition;
  std::string intervention;
  std::string intervention_short;
  std::string comparator;
  std::string comparator_short;
  std::array<std::string, 3> outcomes;
};

Trial draw_trial(Rng& rng, const Domain& d) {
  Trial t;
  t.condition = std::string(pick(rng, d.conditions));
  t.population = join_words({pick(rng, d.subjects), "with", pick(rng, d.severities),
                             t.condition, pick(rng, d.suffixes)});
  if (chance(rng, 0.25)) {
    t.intervention_short = std::string(pick(rng, d.procedures));
    t.intervention = t.intervention_short;
  } else {
    t.intervention_short = std::string(pick(rng, d.drugs));
    if (chance(rng, 0.2)) {
      std::string second(pick(rng, d.drugs));
      if (second == t.intervention_short) second = std::string(pick(rng, d.procedures));
      t.intervention = t.intervention_short + " plus " + second;
    } else {
      t.intervention = join_words({pick(rng, kDoses), t.intervention_short,
                                   pick(rng, kSchedules)});
    }
  }
  if (chance(rng, 0.55)) {
    t.comparator = std::string(pick(rng, kPlainComparators));
    t.comparator_short = t.comparator;
  } else {
    std::string other(pick(rng, d.drugs));
    if (other == t.intervention_short) other = std::string(pick(rng, d.procedures));
    t.comparator_short = other;
    t.comparator = join_words({pick(rng, kDoses), other});
  }
  std::vector<std::string_view> outcomes(d.outcomes.begin(), d.outcomes.end());
  shuffle(std::span<std::string_view>(outcomes), rng);
  for (std::size_t k = 0; k < 3; ++k) t.outcomes[k] = std::string(outcomes[k]);
  return t;
}

std::string hazard(Rng& rng) {
  return "hazard ratio, 0." + num(rng, 55, 95) + "; 95% CI, 0." + num(rng, 40, 60) +
         " to 0." + num(rng, 70, 99) + "; P = 0.0" + num(rng, 1, 4);
}

void write_title(Builder& b, Rng& rng, const Trial& t) {
  switch (uniform_below(rng, 4)) {
    case 0:
      b.add(capitalize(t.intervention), I);
      b.add("versus");
      b.add(t.comparator, I);
      b.add("in");
      b.add(t.population, P);
      b.add(": a randomized controlled trial");
      break;
    case 1:
      b.add("Effect of");
      b.add(t.intervention, I);
      b.add("on");
      b.add(t.outcomes[0], O);
      b.add("in");
      b.add(t.population, P);
      break;
    case 2:
      b.add("A randomized trial of");
      b.add(t.intervention, I);
      b.add("for");
      b.add(t.condition);
      break;
    default:
      b.add(capitalize(t.intervention), I);
      b.add("compared with");
      b.add(t.comparator, I);
      b.add("for");
      b.add(t.outcomes[0], O);
      b.add(": results of a multicentre trial");
      break;
  }
  b.line_break();
}

void write_body(Builder& b, Rng& rng, const Trial& t) {
  const bool structured = chance(rng, 0.5);
  if (structured) b.add("BACKGROUND:");
  if (chance(rng, 0.7)) {
    switch (uniform_below(rng, 3)) {
      case 0:
        b.add(capitalize(t.condition));
        b.add("is a leading cause of morbidity.");
        break;
      case 1:
        b.add("The effect of");
        b.add(t.intervention_short, I);
        b.add("on");
        b.add(t.outcomes[0], O);
        b.add("in this setting is uncertain.");
        break;
      default:
        b.add("Few trials have evaluated");
        b.add(t.intervention, I);
        b.add("in");
        b.add(t.condition);
        b.add(".");
        break;
    }
  }
  if (chance(rng, 0.6)) {
    if (chance(rng, 0.5)) {
      b.add("We assessed whether");
      b.add(t.intervention, I);
      b.add("improves");
      b.add(t.outcomes[0], O);
      b.add("in");
      b.add(t.population, P);
    } else {
      b.add("This study aimed to compare");
      b.add(t.intervention, I);
      b.add("with");
      b.add(t.comparator, I);
      b.add("in");
      b.add(t.population, P);
    }
    b.add(".");
  }

  if (structured) b.add("METHODS:");
  switch (uniform_below(rng, 4)) {
    case 0:
      b.add("In this double-blind trial, we randomly assigned");
      b.add(num(rng, 40, 2400));
      b.add(t.population, P);
      b.add("to receive");
      b.add(t.intervention, I);
      b.add("or");
      b.add(t.comparator, I);
      b.add(".");
      break;
    case 1:
      b.add("A total of");
      b.add(num(rng, 40, 2400));
      b.add(t.population, P);
      b.add("were randomized to");
      b.add(t.intervention, I);
      b.add("(n = " + num(rng, 20, 1200) + ") or");
      b.add(t.comparator, I);
      b.add("(n = " + num(rng, 20, 1200) + ").");
      break;
    case 2:
      b.add("We enrolled");
      b.add(num(rng, 40, 2400));
      b.add(t.population, P);
      b.add("at " + num(rng, 2, 60) + " centres and allocated them to");
      b.add(t.intervention, I);
      b.add("or");
      b.add(t.comparator, I);
      b.add("for " + std::string(pick(rng, kDurations)) + ".");
      break;
    default:
      b.add("Eligible participants were");
      b.add(t.population, P);
      b.add("; they were assigned to");
      b.add(t.intervention, I);
      b.add("or");
      b.add(t.comparator, I);
      b.add(".");
      break;
  }
  switch (uniform_below(rng, 3)) {
    case 0:
      b.add("The primary end point was");
      b.add(t.outcomes[0], O);
      b.add("; secondary end points included");
      b.add(t.outcomes[1], O);
      b.add("and");
      b.add(t.outcomes[2], O);
      b.add(".");
      break;
    case 1:
      b.add("Outcome measures were");
      b.add(t.outcomes[0], O);
      b.add(",");
      b.add(t.outcomes[1], O);
      b.add("and");
      b.add(t.outcomes[2], O);
      b.add(".");
      break;
    default:
      b.add("The primary outcome was");
      b.add(t.outcomes[0], O);
      b.add("at " + std::string(pick(rng, kDurations)) + ". Secondary outcomes were");
      b.add(t.outcomes[1], O);
      b.add("and");
      b.add(t.outcomes[2], O);
      b.add(".");
      break;
  }
  const std::size_t fillers = uniform_below(rng, 3);
  for (std::size_t f = 0; f < fillers; ++f) b.add(pick(rng, kFillers));

  if (structured) b.add("RESULTS:");
  const bool benefit = chance(rng, 0.6);
  if (benefit) {
    b.add(capitalize(t.outcomes[0]), O);
    b.add("was improved with");
    b.add(t.intervention_short, I);
    b.add("compared with");
    b.add(t.comparator_short, I);
    b.add("(" + hazard(rng) + ").");
  } else {
    b.add("There was no significant difference in");
    b.add(t.outcomes[0], O);
    b.add("between the");
    b.add(t.intervention_short, I);
    b.add("and");
    b.add(t.comparator_short, I);
    b.add("groups (P = 0." + num(rng, 10, 90) + ").");
  }
  if (chance(rng, 0.6)) {
    b.add(capitalize(t.outcomes[1]), O);
    b.add("occurred in " + num(rng, 2, 40) + "% of the");
    b.add(t.intervention_short, I);
    b.add("group and " + num(rng, 2, 40) + "% of the");
    b.add(t.comparator_short, I);
    b.add("group.");
  }
  if (chance(rng, 0.4)) b.add("Median follow-up was " + num(rng, 6, 60) + " months.");

  b.add(structured ? "CONCLUSIONS: In" : "In");
  b.add(t.population, P);
  b.add(",");
  b.add(t.intervention, I);
  b.add(benefit ? "improved" : "did not significantly improve");
  b.add(t.outcomes[0], O);
  b.add(".");
}

// Gold labels perturbed the way crowd annotations disagree with experts:
// missed repeat mentions, shifted boundaries, spurious short spans and
// isolated token errors. The first span of each class is never dropped.
std::vector<PicoLabel> crowd_labels(const AnnotatedDocument& doc, Rng& rng,
                                    double noise) {
  std::vector<PicoLabel> out = doc.labels;
  if (noise <= 0.0) return out;
  const auto runs = pico::label_runs(doc.tokens, doc.labels);
  std::array<bool, kPicoClassCount> seen{};
  const std::size_t n = out.size();
  for (const auto& r : runs) {
    const auto c = static_cast<std::size_t>(r.label);
    const bool first = !seen[c];
    seen[c] = true;
    if (!first && chance(rng, 0.15 * noise)) {
      for (std::size_t i = r.token_start; i < r.token_end; ++i) out[i] = PicoLabel::kNone;
      continue;
    }
    if (r.token_end - r.token_start >= 2 && chance(rng, 0.12 * noise)) {
      out[chance(rng, 0.5) ? r.token_start : r.token_end - 1] = PicoLabel::kNone;
    }
    if (chance(rng, 0.12 * noise)) {
      if (chance(rng, 0.5)) {
        if (r.token_start > 0 && out[r.token_start - 1] == PicoLabel::kNone) {
          out[r.token_start - 1] = r.label;
        }
      } else if (r.token_end < n && out[r.token_end] == PicoLabel::kNone) {
        out[r.token_end] = r.label;
      }
    }
  }
  if (n > 0 && chance(rng, 0.5 * noise)) {
    const std::size_t start = uniform_below(rng, n);
    const std::size_t len = 1 + uniform_below(rng, 3);
    const auto label = static_cast<PicoLabel>(1 + uniform_below(rng, 3));
    for (std::size_t i = start; i < std::min(n, start + len); ++i) {
      if (out[i] == PicoLabel::kNone) out[i] = label;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (chance(rng, 0.01 * noise)) out[i] = static_cast<PicoLabel>(uniform_below(rng, 4));
  }
  // Keep every class present: restore the gold first span where needed.
  std::array<bool, kPicoClassCount> present{};
  for (auto l : out) present[static_cast<std::size_t>(l)] = true;
  for (const auto& r : runs) {
    const auto c = static_cast<std::size_t>(r.label);
    if (present[c]) continue;
    for (std::size_t i = r.token_start; i < r.token_end; ++i) out[i] = r.label;
    present[c] = true;
  }
  return out;
}

const Domain& draw_domain(Rng& rng) {
  const double u = uniform_unit(rng);
  double acc = 0.0;
  for (const auto& d : domains()) {
    acc += d.weight;
    if (u < acc) return d;
  }
  return domains().back();
}

}  // namespace

std::vector<SyntheticDocument> synthesize(const SyntheticOptions& options) {
  if (options.withheld > options.documents) {
    throw InvalidArgument("withheld count exceeds document count");
  }
  std::vector<SyntheticDocument> docs;
  docs.reserve(options.documents);
  for (std::size_t i = 0; i < options.documents; ++i) {
    Rng rng(derive_seed(options.seed, static_cast<std::uint64_t>(i)));
    const Domain& domain = draw_domain(rng);
    const Trial trial = draw_trial(rng, domain);
    Builder b;
    write_title(b, rng, trial);
    write_body(b, rng, trial);
    SyntheticDocument sd;
    sd.gold = b.finish(std::to_string(10000000 + 37 * i), domain.tag);
    sd.crowd = crowd_labels(sd.gold, rng, options.crowd_noise);
    docs.push_back(std::move(sd));
  }
  std::vector<std::size_t> order(docs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng pick_rng(derive_seed(options.seed, "withheld"));
  shuffle(std::span<std::size_t>(order), pick_rng);
  for (std::size_t k = 0; k < options.withheld; ++k) docs[order[k]].withheld = true;
  return docs;
}

Corpus gold_corpus(const std::vector<SyntheticDocument>& docs) {
  Corpus out;
  out.reserve(docs.size());
  for (const auto& d : docs) out.push_back(d.gold);
  return out;
}

Corpus crowd_corpus(const std::vector<SyntheticDocument>& docs) {
  Corpus out;
  out.reserve(docs.size());
  for (const auto& d : docs) {
    out.push_back(d.gold);
    out.back().labels = d.crowd;
  }
  return out;
}

namespace {

void write_text(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw Error("cannot write " + path.string());
}

void write_ann(const fs::path& dir, const std::string& id,
               const std::vector<PicoLabel>& labels, PicoLabel element) {
  std::string line;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i > 0) line.push_back(',');
    line.push_back(labels[i] == element ? '1' : '0');
  }
  line.push_back('\n');
  write_text(dir / (id + ".AGGREGATED.ann"), line);
}

}  // namespace

void write_ebm_nlp(const fs::path& root, const std::vector<SyntheticDocument>& docs) {
  const fs::path doc_dir = root / "documents";
  fs::create_directories(doc_dir);
  const std::array<std::pair<std::string_view, PicoLabel>, 3> elements = {{
      {"participants", P},
      {"interventions", I},
      {"outcomes", O},
  }};
  const fs::path ann = root / "annotations" / "aggregated" / "starting_spans";
  for (const auto& [name, label] : elements) {
    for (const char* sub : {"train", "test/gold", "test/crowd"}) {
      fs::create_directories(ann / std::string(name) / sub);
    }
  }
  for (const auto& d : docs) {
    write_text(doc_dir / (d.gold.id + ".text"), d.gold.abstract);
    std::string tokens;
    for (const auto& t : d.gold.tokens) {
      tokens.append(t.surface);
      tokens.push_back('\n');
    }
    write_text(doc_dir / (d.gold.id + ".tokens"), tokens);
    for (const auto& [name, label] : elements) {
      const fs::path base = ann / std::string(name);
      if (d.withheld) {
        write_ann(base / "test" / "gold", d.gold.id, d.gold.labels, label);
        write_ann(base / "test" / "crowd", d.gold.id, d.crowd, label);
      } else {
        write_ann(base / "train", d.gold.id, d.crowd, label);
      }
    }
  }
}

AnnotatedDocument from_markup(std::string id, std::string_view markup,
                              DomainTag domain) {
  Builder b;
  std::size_t i = 0;
  std::string plain;
  auto flush = [&] {
    // Builder inserts its own separators, so hand it whitespace-trimmed
    // pieces and keep explicit line breaks.
    std::size_t pos = 0;
    while (pos <= plain.size()) {
      const auto nl = plain.find('\n', pos);
      const std::string_view piece =
          std::string_view(plain).substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
      const auto first = piece.find_first_not_of(' ');
      if (first != std::string_view::npos) {
        const auto last = piece.find_last_not_of(' ');
        b.add(piece.substr(first, last - first + 1));
      }
      if (nl == std::string::npos) break;
      b.line_break();
      pos = nl + 1;
    }
    plain.clear();
  };
  while (i < markup.size()) {
    const char c = markup[i];
    if (c == ']') throw InvalidArgument("unbalanced ']' at offset " + std::to_string(i));
    if (c != '[') {
      plain.push_back(c);
      ++i;
      continue;
    }
    if (i + 2 >= markup.size() || markup[i + 2] != ' ') {
      throw InvalidArgument("malformed span opening at offset " + std::to_string(i));
    }
    PicoLabel label;
    switch (markup[i + 1]) {
      case 'P':
        label = P;
        break;
      case 'I':
        label = I;
        break;
      case 'O':
        label = O;
        break;
      default:
        throw InvalidArgument("unknown span tag at offset " + std::to_string(i));
    }
    const auto close = markup.find(']', i + 3);
    const auto nested = markup.find('[', i + 3);
    if (close == std::string_view::npos) {
      throw InvalidArgument("unterminated span at offset " + std::to_string(i));
    }
    if (nested != std::string_view::npos && nested < close) {
      throw InvalidArgument("nested span at offset " + std::to_string(nested));
    }
    flush();
    b.add(markup.substr(i + 3, close - i - 3), label);
    i = close + 1;
  }
  flush();
  return b.finish(std::move(id), domain);
}

AnnotatedDocument prostate_trial() {
  return from_markup(
      "prostate-adt-rt",
      "Final report of the intergroup randomized study of [I combined "
      "androgen-deprivation therapy plus radiotherapy versus androgen-deprivation "
      "therapy alone] in [P locally advanced prostate cancer]\n"
      "PURPOSE: We report the final analysis of a trial comparing [I lifelong ADT "
      "alone] with [I ADT plus radiotherapy] in [P patients with locally advanced "
      "prostate cancer] . PATIENTS AND METHODS: [P Patients with T3-4, N0/Nx, M0 "
      "prostate cancer or T1-2 disease with either prostate-specific antigen (PSA) of "
      "more than 40 \xC2\xB5g/L or PSA of 20 to 40 \xC2\xB5g/L plus Gleason score of 8 "
      "to 10] were randomly assigned to [I lifelong ADT alone] or [I ADT plus "
      "radiotherapy] . The primary end point was [O overall survival] . Secondary end "
      "points included [O deaths from prostate cancer] and [O frequency of adverse "
      "events related to bowel toxicity] . RESULTS: A total of 1,205 patients were "
      "randomly assigned; median follow-up was 8 years. The addition of radiotherapy "
      "to ADT reduced [O deaths from prostate cancer] and improved [O overall "
      "survival] (hazard ratio, 0.70; P < .001). The [O frequency of adverse events "
      "related to bowel toxicity] was low. CONCLUSION: Radiotherapy should be part of "
      "standard care for [P patients with locally advanced prostate cancer] receiving "
      "ADT.",
      DomainTag::kCancer);
}

}  // namespace picoir::fixture
